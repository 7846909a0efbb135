#include "shadowlab/distributions.hpp"

#include <cmath>
#include <limits>

#include "shadowlab/errors.hpp"

namespace shadowlab {

namespace {

constexpr std::uint64_t kStallLimit = 1'000'000;

double lgamma_int(Index n) { return std::lgamma(static_cast<double>(n)); }

// log integral_r^inf u^{d-1} e^{-u r} du + r^2/2, i.e. the log tail mass of
// the unnormalized radial density (angular factor dropped; it cancels).
double log_tail_mass(Index d, double r) {
    // Closed form: (d-1)! r^{-d} e^{-r^2} sum_{j<d} r^{2j}/j!, then + r^2/2.
    double lse = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < d; ++j) {
        const double term = 2.0 * j * std::log(r) - lgamma_int(j + 1);
        const double hi = std::max(lse, term);
        lse = hi + std::log(std::exp(lse - hi) + std::exp(term - hi));
    }
    return lgamma_int(d) - d * std::log(r) - 0.5 * r * r + lse;
}

// log integral_0^r u^{d-1} e^{-u^2/2} du by Simpson quadrature on a scaled
// integrand (peak value divided out to stay in range).
double log_core_mass(Index d, double r) {
    const double peak_u = std::min(r, std::sqrt(static_cast<double>(d > 1 ? d - 1 : 1)));
    const double log_peak =
        (d > 1) ? (d - 1) * std::log(peak_u) - 0.5 * peak_u * peak_u : 0.0;
    auto f = [&](double u) {
        if (u <= 0.0) return d == 1 ? std::exp(-log_peak) : 0.0;
        return std::exp((d - 1) * std::log(u) - 0.5 * u * u - log_peak);
    };
    const int steps = 4096;  // even
    const double h = r / steps;
    double s = f(0.0) + f(r);
    for (int i = 1; i < steps; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return std::log(s * h / 3.0) + log_peak;
}

Vector unit_direction(Index d, SeededRng& rng) {
    Vector g(d);
    double n2;
    do {
        for (Index i = 0; i < d; ++i) g[i] = rng.next_gaussian();
        n2 = g.squaredNorm();
    } while (n2 == 0.0);
    return g / std::sqrt(n2);
}

// Radius of the core branch: ||g|| for g standard Gaussian, conditioned on
// ||g|| <= r, by rejection.
double core_radius(Index d, double r, SeededRng& rng, LgSampleStats* stats) {
    for (std::uint64_t it = 0; it < kStallLimit; ++it) {
        Vector g(d);
        for (Index i = 0; i < d; ++i) g[i] = rng.next_gaussian();
        const double n = g.norm();
        if (stats) ++stats->proposals;
        if (n <= r) {
            if (stats) ++stats->accepts;
            return n;
        }
    }
    throw RejectionStall("sample_laplace_gaussian: core branch stalled");
}

// Radius of the tail branch: density proportional to u^{d-1} e^{-u r} on
// [r, inf). Shifted-exponential envelope when r^2 > d-1, otherwise a
// gamma(d, rate r) proposal truncated to u >= r.
double tail_radius(Index d, double r, SeededRng& rng, LgSampleStats* stats) {
    if (d == 1) return r - std::log(rng.next_double()) / r;  // exact Exp(r) shift
    const double lam = r - (d - 1) / r;
    if (lam > 0.0) {
        // target(r+v) <= r^{d-1} e^{-r^2} e^{-lam v}; accept w.p.
        // ((r+v)/r)^{d-1} e^{-(d-1)v/r}.
        for (std::uint64_t it = 0; it < kStallLimit; ++it) {
            const double v = -std::log(rng.next_double()) / lam;
            const double log_acc =
                (d - 1) * (std::log1p(v / r) - v / r);
            if (stats) ++stats->proposals;
            if (std::log(rng.next_double()) <= log_acc) {
                if (stats) ++stats->accepts;
                return r + v;
            }
        }
    } else {
        for (std::uint64_t it = 0; it < kStallLimit; ++it) {
            double u = 0.0;  // gamma(d, rate r) as a sum of exponentials
            for (Index j = 0; j < d; ++j) u -= std::log(rng.next_double()) / r;
            if (stats) ++stats->proposals;
            if (u >= r) {
                if (stats) ++stats->accepts;
                return u;
            }
        }
    }
    throw RejectionStall("sample_laplace_gaussian: tail branch stalled");
}

}  // namespace

Vector sample_gaussian(const GaussianSpec& spec, SeededRng& rng) {
    if (!(spec.sigma >= 0.0))
        throw PreconditionViolated("sample_gaussian: sigma < 0");
    Vector x = spec.mean;
    for (Index i = 0; i < x.size(); ++i) x[i] += spec.sigma * rng.next_gaussian();
    return x;
}

double lg_log_density_unnormalized(const LaplaceGaussianSpec& spec, const Vector& x) {
    const double dist = (x - spec.mean).norm();
    const double seam = spec.r * spec.sigma;
    if (dist <= seam) return -dist * dist / (2.0 * spec.sigma * spec.sigma);
    return -dist * spec.r / spec.sigma + 0.5 * spec.r * spec.r;
}

double lg_density_unnormalized(const LaplaceGaussianSpec& spec, const Vector& x) {
    return std::exp(lg_log_density_unnormalized(spec, x));
}

double lg_core_mass_fraction(Index dim, double r) {
    if (dim < 1 || !(r > 0.0))
        throw PreconditionViolated("lg_core_mass_fraction: need dim >= 1, r > 0");
    const double lc = log_core_mass(dim, r);
    const double lt = log_tail_mass(dim, r);
    return 1.0 / (1.0 + std::exp(lt - lc));
}

Vector sample_laplace_gaussian(const LaplaceGaussianSpec& spec, SeededRng& rng,
                               LgSampleStats* stats) {
    if (!(spec.sigma > 0.0) || !(spec.r > 0.0))
        throw PreconditionViolated("sample_laplace_gaussian: need sigma, r > 0");
    const Index d = spec.mean.size();
    const double p_core = lg_core_mass_fraction(d, spec.r);
    const bool core = rng.next_double() < p_core;
    const double radius = core ? core_radius(d, spec.r, rng, stats)
                               : tail_radius(d, spec.r, rng, stats);
    if (d == 1) {
        const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
        return spec.mean + Vector::Constant(1, sign * spec.sigma * radius);
    }
    return spec.mean + spec.sigma * radius * unit_direction(d, rng);
}

double empirical_global_diameter(int n, Index d, double sigma, int trials,
                                 SeededRng& rng) {
    if (n < 2) throw PreconditionViolated("empirical_global_diameter: n < 2");
    const double thresh =
        4.0 * sigma * std::sqrt(static_cast<double>(d) * std::log(static_cast<double>(n)));
    int exceed = 0;
    for (int t = 0; t < trials; ++t) {
        SeededRng trial_rng = rng.stream(static_cast<std::uint64_t>(t));
        double maxn = 0.0;
        for (int i = 0; i < n; ++i) {
            double s2 = 0.0;
            for (Index j = 0; j < d; ++j) {
                const double g = sigma * trial_rng.next_gaussian();
                s2 += g * g;
            }
            maxn = std::max(maxn, std::sqrt(s2));
        }
        if (maxn > thresh) ++exceed;
    }
    return trials > 0 ? static_cast<double>(exceed) / trials : 0.0;
}

}  // namespace shadowlab
