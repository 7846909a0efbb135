#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shadowlab/rng.hpp"
#include "shadowlab/shadow.hpp"
#include "shadowlab/smoothed2d.hpp"

namespace shadowlab {

struct ExperimentConfig {
    std::vector<int> k_list = {4};
    double sigma_start = 0.01;
    double sigma_end = 0.0;  // <= 0 means the per-k default 0.0001 / 2^k
    int sigma_count = 20;
    int trials = 5;
    std::uint64_t master_seed = 1;
    std::string method = "sweep";  // sweep | exact | slice
    double dedup_tol = 1e-7;
    std::vector<double> dedup_ladder = {1e-5, 1e-7, 1e-9};
    bool exact_mode = false;
    std::string out;
};

/// Log-spaced grid from start down to end, decreasing. count == 1 yields
/// {start}. start == 0 yields {0} (the unperturbed instance).
std::vector<double> sigma_grid(double start, double end, int count);

double default_sigma_end(int k);

struct ExperimentRecord {
    int k = 0;
    Index d = 0;
    Index n = 0;
    double sigma = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string method;
    Index shadow_count = 0;
    double perimeter = 0.0;
    double angle_sum = 0.0;
    double runtime_ms = 0.0;
    std::string status = "ok";  // error name when a row's solve failed
};

/// One measurement: perturb the instance with the given sigma and per-row
/// seed, then count shadow vertices by the configured method. Solver failures
/// are captured in `status`; the run keeps going.
ExperimentRecord measure_lb_row(int k, double sigma, int trial, std::uint64_t seed,
                                const std::string& method, double dedup_tol);

/// The full grid in deterministic order: k ascending, sigma descending,
/// trial ascending. Seeds derive from (master_seed, k, sigma index, trial).
std::vector<ExperimentRecord> run_lb_experiment(const ExperimentConfig& cfg);

std::string lb_records_to_csv(const std::vector<ExperimentRecord>& records);

struct Record2D {
    std::string layout;
    int n = 0;
    double sigma = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::size_t edges = 0;
};

std::vector<Record2D> run_2d_records(const Layout2D& layout, const std::string& name,
                                     const std::vector<double>& sigmas, int trials,
                                     std::uint64_t master_seed);

std::string records_2d_to_csv(const std::vector<Record2D>& records);

/// Least-squares slope of log(y) against log(x); pairs with y <= 0 or x <= 0
/// are skipped.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace shadowlab
