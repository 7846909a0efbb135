#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include <shadowlab/distributions.hpp>
#include <shadowlab/rng.hpp>
#include <shadowlab/types.hpp>

#include "helpers.hpp"

using namespace shadowlab;

namespace {

// chi distribution CDF for the radius of a standard d-dim Gaussian
double chi_cdf(double t, int d) {
    if (t <= 0.0) return 0.0;
    return boost::math::gamma_p(d / 2.0, t * t / 2.0);
}

// one-sample Kolmogorov-Smirnov statistic against a given CDF
double ks_stat(std::vector<double> xs, int d) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = chi_cdf(xs[i], d);
        worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
        worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return worst;
}

// unnormalized 1d radial mass integrals of the laplace-gaussian at sigma = 1
double core_mass_quadrature_1d(double r) {
    const int steps = 200000;
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double x = r * (i + 0.5) / steps;
        acc += std::exp(-x * x / 2.0) * (r / steps);
    }
    return 2.0 * acc;  // both signs
}

double tail_mass_closed_form_1d(double r) {
    // 2 int_r^inf exp(-x r + r^2/2) dx = 2 exp(-r^2/2) / r
    return 2.0 * std::exp(-r * r / 2.0) / r;
}

}  // namespace

TEST_CASE("gaussian sampler: sigma = 0, moments, tails") {
    Vector mean(3);
    mean << 1.0, -2.0, 0.5;
    SeededRng rng(11);

    SUBCASE("sigma = 0 returns the mean exactly") {
        const Vector x = sample_gaussian({mean, 0.0}, rng);
        CHECK((x - mean).norm() == 0.0);
    }

    SUBCASE("first and second moments") {
        const int n = 200000;
        const double sigma = 0.7;
        Vector sum = Vector::Zero(3);
        double sumsq = 0.0;
        for (int i = 0; i < n; ++i) {
            const Vector x = sample_gaussian({mean, sigma}, rng) - mean;
            sum += x;
            sumsq += x.squaredNorm();
        }
        // mean of each coordinate: stderr = sigma / sqrt(n)
        const double se = sigma / std::sqrt(static_cast<double>(n));
        for (int j = 0; j < 3; ++j) CHECK(std::abs(sum(j) / n) < 5.0 * se);
        // E|x|^2 = 3 sigma^2
        CHECK(sumsq / n == doctest::Approx(3.0 * sigma * sigma).epsilon(0.02));
    }

    SUBCASE("tail fraction at t = 1.5 sigma per coordinate") {
        const int n = 100000;
        int exceed = 0;
        for (int i = 0; i < n; ++i) {
            const Vector x = sample_gaussian({Vector::Zero(1), 1.0}, rng);
            if (std::abs(x(0)) > 1.5) ++exceed;
        }
        // 2 Phi(-1.5) = 0.13361
        CHECK(static_cast<double>(exceed) / n == doctest::Approx(0.13361).epsilon(0.05));
    }
}

TEST_CASE("laplace-gaussian density: value, seam, shape") {
    Vector mean = Vector::Zero(4);
    const LaplaceGaussianSpec spec{mean, 0.8, 2.5};

    SUBCASE("unit value at the mean") {
        CHECK(lg_density_unnormalized(spec, mean) == 1.0);
        CHECK(lg_log_density_unnormalized(spec, mean) == 0.0);
    }

    SUBCASE("branches agree at the seam to machine precision") {
        Vector x = mean;
        x(0) = spec.r * spec.sigma;
        const double core = std::exp(-x.squaredNorm() / (2.0 * spec.sigma * spec.sigma));
        const double tail =
            std::exp(-x.norm() * spec.r / spec.sigma + spec.r * spec.r / 2.0);
        CHECK(core == doctest::Approx(tail).epsilon(1e-14));
        CHECK(lg_density_unnormalized(spec, x) == doctest::Approx(core).epsilon(1e-14));
        // just inside / just outside the seam differ by O(eps)
        Vector in = x, out = x;
        in(0) = std::nextafter(in(0), 0.0);
        out(0) = std::nextafter(out(0), 1e300);
        CHECK(lg_log_density_unnormalized(spec, in) ==
              doctest::Approx(lg_log_density_unnormalized(spec, out)).epsilon(1e-12));
    }

    SUBCASE("radially nonincreasing") {
        Vector dir(4);
        dir << 1, -2, 0.5, 3;
        dir.normalize();
        double prev = 1.0;
        for (int i = 1; i <= 100; ++i) {
            const Vector x = mean + (0.1 * i) * dir;
            const double f = lg_density_unnormalized(spec, x);
            CHECK(f <= prev + 1e-15);
            prev = f;
        }
    }

    SUBCASE("log density is (r/sigma)-Lipschitz") {
        SeededRng rng(3);
        const double lip = spec.r / spec.sigma;
        int violations = 0;
        for (int i = 0; i < 100000; ++i) {
            Vector x(4), y(4);
            for (int j = 0; j < 4; ++j) {
                x(j) = 3.0 * rng.next_gaussian();
                y(j) = 3.0 * rng.next_gaussian();
            }
            const double lhs = std::abs(lg_log_density_unnormalized(spec, x) -
                                        lg_log_density_unnormalized(spec, y));
            if (lhs > lip * (x - y).norm() + 1e-9) ++violations;
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("core mass fraction matches quadrature in one dimension") {
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
        CAPTURE(r);
        const double core = core_mass_quadrature_1d(r);
        const double tail = tail_mass_closed_form_1d(r);
        CHECK(lg_core_mass_fraction(1, r) ==
              doctest::Approx(core / (core + tail)).epsilon(1e-4));
    }
    // the core takes all the mass as r grows
    CHECK(lg_core_mass_fraction(3, 1.0) < lg_core_mass_fraction(3, 2.0));
    CHECK(lg_core_mass_fraction(3, 8.0) > 1.0 - 1e-9);
}

TEST_CASE("laplace-gaussian sampler converges to the gaussian for large r") {
    // r = 12: tail mass < 1e-30, so radii must pass a KS test against chi_d
    const int d = 3;
    const LaplaceGaussianSpec spec{Vector::Zero(d), 1.0, 12.0};
    SeededRng rng(2718);
    const int n = 100000;
    std::vector<double> radii;
    radii.reserve(n);
    LgSampleStats stats;
    for (int i = 0; i < n; ++i)
        radii.push_back(sample_laplace_gaussian(spec, rng, &stats).norm());
    CHECK(stats.accepts == static_cast<std::uint64_t>(n));
    CHECK(stats.proposals >= stats.accepts);
    // alpha = 0.001 critical value 1.949 / sqrt(n)
    CHECK(ks_stat(radii, d) < 1.949 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("laplace-gaussian sampler matches the density in one dimension") {
    const LaplaceGaussianSpec spec{Vector::Zero(1), 1.0, 1.2};
    SeededRng rng(99);
    const int n = 1000000;
    const double lo = -8.0, hi = 8.0;
    const int bins = 64;
    std::vector<double> counts(bins, 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = sample_laplace_gaussian(spec, rng)(0);
        const int b = static_cast<int>((x - lo) / (hi - lo) * bins);
        if (b >= 0 && b < bins) counts[b] += 1.0;
    }
    // bin masses by quadrature of the unnormalized density
    std::vector<double> mass(bins, 0.0);
    double total = 0.0;
    const int sub = 2000;
    for (int b = 0; b < bins; ++b) {
        const double a = lo + (hi - lo) * b / bins;
        const double w = (hi - lo) / bins;
        double acc = 0.0;
        for (int j = 0; j < sub; ++j) {
            Vector x(1);
            x(0) = a + w * (j + 0.5) / sub;
            acc += lg_density_unnormalized(spec, x) * (w / sub);
        }
        mass[b] = acc;
        total += acc;
    }
    for (int b = 0; b < bins; ++b) {
        const double expected = mass[b] / total;
        const double got = counts[b] / n;
        // 2% of the peak bin mass as an absolute band
        CHECK(std::abs(got - expected) < 0.02 * (*std::max_element(mass.begin(), mass.end()) / total) + 6.0 / n);
    }
}

TEST_CASE("sampler is reproducible for a fixed seed") {
    const LaplaceGaussianSpec spec{Vector::Zero(5), 2.0, 1.5};
    SeededRng a(31337), b(31337);
    for (int i = 0; i < 100; ++i) {
        const Vector x = sample_laplace_gaussian(spec, a);
        const Vector y = sample_laplace_gaussian(spec, b);
        CHECK((x - y).norm() == 0.0);
    }
}

TEST_CASE("empirical global diameter exceedance is tiny") {
    SeededRng rng(8);
    SUBCASE("n = 100, d = 10") {
        const double frac = empirical_global_diameter(100, 10, 0.3, 10000, rng);
        CHECK(frac <= 1e-3);
    }
    SUBCASE("sigma = 0 never exceeds") {
        CHECK(empirical_global_diameter(50, 5, 0.0, 100, rng) == 0.0);
    }
    SUBCASE("the threshold scales with sigma") {
        // paired seeds: the exceedance indicator is scale-free in sigma
        SeededRng r1(4242), r2(4242);
        const double f1 = empirical_global_diameter(64, 6, 0.1, 2000, r1);
        const double f2 = empirical_global_diameter(64, 6, 10.0, 2000, r2);
        CHECK(f1 == f2);
    }
}

TEST_CASE("labelled rng streams look uncorrelated") {
    SeededRng root(1);
    SeededRng s1 = root.stream("alpha");
    SeededRng s2 = root.stream("beta");
    const int n = 100000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double x = s1.next_double() - 0.5;
        const double y = s2.next_double() - 0.5;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double rho = cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) *
                                       (syy / n - (sy / n) * (sy / n)));
    CHECK(std::abs(rho) < 0.01);
    // indexed streams differ from each other and from the parent
    CHECK(root.stream(0).state() != root.stream(1).state());
    CHECK(root.stream(0).state() != root.state());
}
