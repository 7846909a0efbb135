#pragma once

#include <cstdint>

#include "shadowlab/rng.hpp"
#include "shadowlab/types.hpp"

namespace shadowlab {

struct GaussianSpec {
    Vector mean;
    double sigma = 1.0;
};

Vector sample_gaussian(const GaussianSpec& spec, SeededRng& rng);

/// Gaussian core inside radius r*sigma around the mean, radially exponential
/// tail outside; the two branches agree exactly on the seam.
struct LaplaceGaussianSpec {
    Vector mean;
    double sigma = 1.0;
    double r = 1.0;
};

/// Unnormalized density: exp(-|x-m|^2 / 2s^2) for |x-m| <= rs,
/// exp(-|x-m| r / s + r^2 / 2) beyond. Log version avoids underflow.
double lg_density_unnormalized(const LaplaceGaussianSpec& spec, const Vector& x);
double lg_log_density_unnormalized(const LaplaceGaussianSpec& spec, const Vector& x);

struct LgSampleStats {
    std::uint64_t proposals = 0;
    std::uint64_t accepts = 0;
};

/// Exact sampler: branch on the core/tail mass split, truncated-Gaussian core
/// by rejection, tail radius by shifted-exponential or gamma-proposal
/// rejection. Throws RejectionStall after 1e6 failed proposals in one branch.
Vector sample_laplace_gaussian(const LaplaceGaussianSpec& spec, SeededRng& rng,
                               LgSampleStats* stats = nullptr);

/// Probability mass of the core branch, exposed for testing the split.
double lg_core_mass_fraction(Index dim, double r);

/// Fraction of trials where the max l2 norm over n centered Gaussian(sigma)
/// vectors in dimension d exceeds 4 sigma sqrt(d log n).
double empirical_global_diameter(int n, Index d, double sigma, int trials,
                                 SeededRng& rng);

}  // namespace shadowlab
