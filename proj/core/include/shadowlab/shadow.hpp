#pragma once

#include <functional>
#include <vector>

#include "shadowlab/lp.hpp"
#include "shadowlab/polytope.hpp"
#include "shadowlab/types.hpp"

namespace shadowlab {

struct SweepConfig {
    int num_angles = 360;
    double angle_offset = 0.3;  // dodges symmetry-aligned ties at sigma = 0
    double dedup_tol = 1e-7;    // absolute, per coordinate, after polishing
};

struct ShadowPolygon {
    std::vector<Vector2> vertices;  // counterclockwise
    bool closed = true;

    Index size() const { return static_cast<Index>(vertices.size()); }
};

struct PolygonStats {
    double perimeter = 0.0;
    std::vector<double> edge_lengths;
    std::vector<double> exterior_angles;
    bool origin_inside = false;
    double inradius = 0.0;   // min distance origin -> edge line (needs interior origin)
    double outradius = 0.0;  // max vertex norm

    std::size_t edge_count() const { return edge_lengths.size(); }
    double inradius_about_origin() const {
        if (!origin_inside) throw OriginOutside("polygon_stats: origin not interior");
        return inradius;
    }
};

struct SweepResult {
    Index count = 0;
    ShadowPolygon polygon;
};

/// The experiment's counting protocol: one support LP per grid angle
/// theta_i = (i + offset) * 2pi / num_angles over {Az <= 1}, optima projected
/// to the plane and deduplicated at dedup_tol.
SweepResult sweep_count(const HPolytope& h, const Plane2D& plane, const SweepConfig& cfg);

struct BisectOptions {
    int depth_cap = 256;  // guards non-progress; real recursions stay shallow
    double collinear_tol = 1e-12;  // on twice-signed-area / scale^2
    double dedup_tol = 1e-9;
};

/// All shadow vertices of pi_W({Az <= 1}) by recursive support bisection.
ShadowPolygon exact_shadow(const HPolytope& h, const Plane2D& plane,
                           const BisectOptions& opts = {});

/// The slice polygon conv(cloud) cap span(plane) by the same bisection,
/// driven by the slice support oracle.
ShadowPolygon slice_polygon(const PointCloud& cloud, const Plane2D& plane,
                            const BisectOptions& opts = {});

PolygonStats polygon_stats(const ShadowPolygon& poly);

struct EdgeBound {
    double bound = 0.0;
    bool holds = false;
    bool diverged = false;  // beta == alpha: bound is +infinity, flagged
};

/// Edge count lower bound pi / sqrt(2 eps + eps^2), eps = beta/alpha - 1,
/// asserted against the polygon's actual edge count.
EdgeBound edgecount_bound_check(const PolygonStats& stats);

/// Checks (1 - 2eps/r) conv(base) inside conv(pert) inside (1 + eps/r) conv(base)
/// by LP membership of each scaled extreme-point candidate.
bool hausdorff_inclusion_check(const PointCloud& base, const PointCloud& pert, double r,
                               double eps);

/// Shared bisection core: `support(angle)` returns the maximizing point (in
/// plane coordinates) of a convex body's support problem.
std::vector<Vector2> bisect_support_polygon(
    const std::function<Vector2(double)>& support, const BisectOptions& opts);

}  // namespace shadowlab
