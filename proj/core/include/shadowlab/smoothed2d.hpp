#pragma once

#include <vector>

#include "shadowlab/polytope.hpp"
#include "shadowlab/rng.hpp"
#include "shadowlab/types.hpp"

namespace shadowlab {

/// Sign of the orientation of (a, b, c): +1 left turn, -1 right turn, 0
/// collinear. Floating-point filtered with an exact rational fallback, so the
/// result is always the true sign of the determinant of the given doubles.
int orientation(const Vector2& a, const Vector2& b, const Vector2& c);

/// Monotone-chain convex hull, counterclockwise, collinear points dropped.
/// Degenerate inputs yield fewer than 3 vertices (point or segment).
Polygon2D convex_hull_2d(const std::vector<Vector2>& points);

std::size_t hull_edge_count(const Polygon2D& hull);

struct Layout2D {
    std::vector<Vector2> means;

    static Layout2D unit_circle_equally_spaced(int n);
    static Layout2D single_point(int n, const Vector2& p = Vector2::Zero());
    static Layout2D fixed_cloud(std::vector<Vector2> pts);
};

struct Experiment2DResult {
    std::vector<std::size_t> edge_counts;  // one per trial
    double mean = 0.0;
    double stddev = 0.0;
    bool any_degenerate = false;  // some trial collapsed below 3 hull vertices
};

/// Perturbs each mean by an isotropic Gaussian of the given sigma, takes the
/// hull, and records edge counts across independent trials.
Experiment2DResult run_2d_experiment(const Layout2D& layout, double sigma, int trials,
                                     SeededRng& rng);

}  // namespace shadowlab
