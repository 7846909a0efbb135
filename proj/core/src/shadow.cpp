#include "shadowlab/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shadowlab/errors.hpp"
#include "shadowlab/smoothed2d.hpp"

namespace shadowlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Clusters near-duplicate points: lexicographic sort, then greedy merge of
// runs within tol per coordinate. Safe because genuine vertices are separated
// by far more than tol in every intended use.
std::vector<Vector2> dedup_points(std::vector<Vector2> pts, double tol) {
    if (pts.empty()) return pts;
    std::sort(pts.begin(), pts.end(), [](const Vector2& a, const Vector2& b) {
        if (a.x() != b.x()) return a.x() < b.x();
        return a.y() < b.y();
    });
    // Distinct clusters may interleave in x order (e.g. mirror-image vertices
    // sharing an x coordinate), so compare against every accepted rep whose x
    // is within tol, not just the most recent one.
    std::vector<Vector2> reps;
    for (const Vector2& p : pts) {
        bool dup = false;
        for (auto it = reps.rbegin(); it != reps.rend(); ++it) {
            if (p.x() - it->x() > tol) break;
            if (std::abs(p.y() - it->y()) <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) reps.push_back(p);
    }
    return reps;
}

struct Bisector {
    const std::function<Vector2(double)>& support;
    const BisectOptions& opts;
    double scale2 = 1.0;
    std::vector<Vector2> out;

    void refine(double ta, const Vector2& pa, double tb, const Vector2& pb, int depth) {
        if (depth > opts.depth_cap)
            throw DepthExceeded("bisect_support_polygon: depth cap reached");
        if ((pb - pa).lpNorm<Eigen::Infinity>() <= opts.dedup_tol) return;
        // Probe the outward normal of the chord pa -> pb (quickhull-style):
        // a vertex exists strictly between pa and pb iff the support in that
        // direction clears the chord. Probing the angular midpoint instead
        // fails to terminate when pa and pb are adjacent vertices.
        const Vector2 e = pb - pa;
        const double tc = std::atan2(-e.x(), e.y());
        const Vector2 pm = support(tc);
        const double area2 = (pm.x() - pa.x()) * (pb.y() - pa.y()) -
                             (pm.y() - pa.y()) * (pb.x() - pa.x());
        if (std::abs(area2) <= opts.collinear_tol * scale2) return;
        if ((pm - pa).lpNorm<Eigen::Infinity>() <= opts.dedup_tol ||
            (pm - pb).lpNorm<Eigen::Infinity>() <= opts.dedup_tol)
            return;  // best point beyond the chord is an endpoint: chord is an edge
        refine(ta, pa, tc, pm, depth + 1);
        out.push_back(pm);
        refine(tc, pm, tb, pb, depth + 1);
    }
};

}  // namespace

std::vector<Vector2> bisect_support_polygon(
    const std::function<Vector2(double)>& support, const BisectOptions& opts) {
    // Four probes a quarter turn apart: any vertex's optimality arc that
    // covers two consecutive probes covers everything between them.
    constexpr int kProbes = 4;
    const double off = 0.3;
    std::vector<double> angles(kProbes);
    std::vector<Vector2> probes(kProbes);
    double scale2 = 0.0;
    for (int j = 0; j < kProbes; ++j) {
        angles[j] = off + j * kTwoPi / kProbes;
        probes[j] = support(angles[j]);
        scale2 = std::max(scale2, probes[j].squaredNorm());
    }
    scale2 = std::max(scale2, 1e-30);

    Bisector bis{support, opts, scale2, {}};
    for (int j = 0; j < kProbes; ++j) {
        bis.out.push_back(probes[j]);
        bis.refine(angles[j], probes[j], angles[j] + kTwoPi / kProbes,
                   probes[(j + 1) % kProbes], 0);
    }
    // Drop consecutive (and wraparound) duplicates; order stays angular.
    std::vector<Vector2> verts;
    for (const Vector2& p : bis.out) {
        if (!verts.empty() &&
            (p - verts.back()).lpNorm<Eigen::Infinity>() <= opts.dedup_tol)
            continue;
        verts.push_back(p);
    }
    while (verts.size() > 1 &&
           (verts.back() - verts.front()).lpNorm<Eigen::Infinity>() <= opts.dedup_tol)
        verts.pop_back();
    return verts;
}

SweepResult sweep_count(const HPolytope& h, const Plane2D& plane, const SweepConfig& cfg) {
    if (cfg.num_angles <= 0) throw PreconditionViolated("sweep_count: num_angles <= 0");
    ActiveSetSolver solver(h.A, h.rhs, SolverOptions{});

    bool first = true;
    auto support = [&](double theta) -> Vector2 {
        const Vector c = plane.direction(theta);
        const LpStatus st = first ? solver.solve(c) : solver.reoptimize(c);
        first = false;
        if (st == LpStatus::Unbounded)
            throw UnboundedShadow("sweep_count: support LP unbounded");
        if (st != LpStatus::Optimal)
            throw NumericalBreakdown("sweep_count: support LP failed");
        solver.polish();
        return plane.project(solver.vertex());
    };

    const int n = cfg.num_angles;
    std::vector<double> thetas(static_cast<std::size_t>(n));
    std::vector<Vector2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    double scale2 = 0.0;
    for (int i = 0; i < n; ++i) {
        thetas[static_cast<std::size_t>(i)] = (i + cfg.angle_offset) * kTwoPi / n;
        pts.push_back(support(thetas[static_cast<std::size_t>(i)]));
        scale2 = std::max(scale2, pts.back().squaredNorm());
    }
    scale2 = std::max(scale2, 1e-30);

    // Certify each grid cell: when adjacent sample angles land on different
    // vertices, the cell may straddle more than one normal cone, so vertices
    // whose cones are narrower than the grid step would be skipped. The
    // chord-normal refinement recovers exactly those.
    BisectOptions bopts;
    bopts.dedup_tol = cfg.dedup_tol;
    Bisector bis{support, bopts, scale2, {}};
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const double tb = thetas[static_cast<std::size_t>(j)] + (j == 0 ? kTwoPi : 0.0);
        bis.refine(thetas[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(i)],
                   tb, pts[static_cast<std::size_t>(j)], 0);
    }
    pts.insert(pts.end(), bis.out.begin(), bis.out.end());

    SweepResult res;
    const std::vector<Vector2> reps = dedup_points(std::move(pts), cfg.dedup_tol);
    res.count = static_cast<Index>(reps.size());
    Polygon2D hull = convex_hull_2d(reps);
    res.polygon.vertices = std::move(hull.vertices);
    return res;
}

ShadowPolygon exact_shadow(const HPolytope& h, const Plane2D& plane,
                           const BisectOptions& opts) {
    ActiveSetSolver solver(h.A, h.rhs, SolverOptions{});
    bool first = true;
    auto support = [&](double theta) -> Vector2 {
        const Vector c = plane.direction(theta);
        const LpStatus st = first ? solver.solve(c) : solver.reoptimize(c);
        first = false;
        if (st == LpStatus::Unbounded)
            throw UnboundedShadow("exact_shadow: support LP unbounded");
        if (st != LpStatus::Optimal)
            throw NumericalBreakdown("exact_shadow: support LP failed");
        solver.polish();
        return plane.project(solver.vertex());
    };
    ShadowPolygon poly;
    poly.vertices = bisect_support_polygon(support, opts);
    return poly;
}

ShadowPolygon slice_polygon(const PointCloud& cloud, const Plane2D& plane,
                            const BisectOptions& opts) {
    auto support = [&](double theta) -> Vector2 {
        const SliceSupport s = slice_support(cloud, plane, theta);
        if (s.empty) throw EmptySlice("slice_polygon: slice is empty");
        return s.point;
    };
    ShadowPolygon poly;
    poly.vertices = bisect_support_polygon(support, opts);
    return poly;
}

PolygonStats polygon_stats(const ShadowPolygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) throw PreconditionViolated("polygon_stats: need at least 3 vertices");

    PolygonStats st;
    st.edge_lengths.reserve(n);
    st.exterior_angles.reserve(n);
    st.origin_inside = true;
    st.inradius = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vector2& a = v[i];
        const Vector2& b = v[(i + 1) % n];
        const Vector2 e = b - a;
        const double len = e.norm();
        if (len <= 0.0) throw PreconditionViolated("polygon_stats: zero-length edge");
        st.edge_lengths.push_back(len);
        st.perimeter += len;
        st.outradius = std::max(st.outradius, a.norm());

        const Vector2& cnext = v[(i + 2) % n];
        const Vector2 f = cnext - b;
        const double cross = e.x() * f.y() - e.y() * f.x();
        const double dot = e.dot(f);
        st.exterior_angles.push_back(std::atan2(cross, dot));

        // cross(e, -a) > 0 means the origin sits strictly left of edge a->b.
        const double side = e.x() * (-a.y()) - e.y() * (-a.x());
        if (side <= 0.0)
            st.origin_inside = false;
        else
            st.inradius = std::min(st.inradius, side / len);
    }
    if (!st.origin_inside) st.inradius = std::numeric_limits<double>::quiet_NaN();
    return st;
}

EdgeBound edgecount_bound_check(const PolygonStats& stats) {
    if (!stats.origin_inside)
        throw OriginOutside("edgecount_bound_check: origin not interior");
    EdgeBound eb;
    const double eps = stats.outradius / stats.inradius - 1.0;
    if (!(eps > 0.0)) {
        eb.diverged = true;
        eb.bound = std::numeric_limits<double>::infinity();
        eb.holds = false;
        return eb;
    }
    eb.bound = std::numbers::pi / std::sqrt(2.0 * eps + eps * eps);
    eb.holds = static_cast<double>(stats.edge_count()) >= eb.bound;
    return eb;
}

bool hausdorff_inclusion_check(const PointCloud& base, const PointCloud& pert, double r,
                               double eps) {
    if (base.size() != pert.size() || base.dim() != pert.dim())
        throw DimensionMismatch("hausdorff_inclusion_check: cloud shapes differ");
    if (!(r > 0.0) || eps < 0.0)
        throw PreconditionViolated("hausdorff_inclusion_check: need r > 0, eps >= 0");
    if (eps > 0.5 * r)
        throw PreconditionViolated("hausdorff_inclusion_check: eps > r/2");
    if (!contains_ball_l1(base, r))
        throw PreconditionViolated("hausdorff_inclusion_check: base misses l1 ball");
    for (std::size_t i = 0; i < base.points.size(); ++i) {
        const double d1 = (pert.points[i] - base.points[i]).lpNorm<1>();
        if (d1 > eps * (1.0 + 1e-12) + 1e-15)
            throw PreconditionViolated(
                "hausdorff_inclusion_check: point perturbation exceeds eps");
    }

    const double shrink = 1.0 - 2.0 * eps / r;
    const double grow = 1.0 / (1.0 + eps / r);
    for (const Vector& p : base.points)
        if (!cloud_contains(pert, shrink * p)) return false;
    for (const Vector& p : pert.points)
        if (!cloud_contains(base, grow * p)) return false;
    return true;
}

}  // namespace shadowlab
