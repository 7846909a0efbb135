#include "shadowlab/smoothed2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

namespace shadowlab {

namespace {

using Rational = boost::multiprecision::cpp_rational;

int orientation_exact(const Vector2& a, const Vector2& b, const Vector2& c) {
    const Rational det = (Rational(b.x()) - Rational(a.x())) *
                             (Rational(c.y()) - Rational(a.y())) -
                         (Rational(b.y()) - Rational(a.y())) *
                             (Rational(c.x()) - Rational(a.x()));
    if (det > 0) return 1;
    if (det < 0) return -1;
    return 0;
}

}  // namespace

int orientation(const Vector2& a, const Vector2& b, const Vector2& c) {
    const double l = (b.x() - a.x()) * (c.y() - a.y());
    const double r = (b.y() - a.y()) * (c.x() - a.x());
    const double det = l - r;
    // Static filter in the style of adaptive-precision predicates: outside
    // the error envelope the double sign is certain.
    const double errbound = 3.3306690738754716e-16 * (std::abs(l) + std::abs(r));
    if (det > errbound) return 1;
    if (det < -errbound) return -1;
    return orientation_exact(a, b, c);
}

Polygon2D convex_hull_2d(const std::vector<Vector2>& points) {
    std::vector<Vector2> pts = points;
    std::sort(pts.begin(), pts.end(), [](const Vector2& a, const Vector2& b) {
        if (a.x() != b.x()) return a.x() < b.x();
        return a.y() < b.y();
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vector2& a, const Vector2& b) {
                              return a.x() == b.x() && a.y() == b.y();
                          }),
              pts.end());

    Polygon2D hull;
    const std::size_t n = pts.size();
    if (n <= 2) {
        hull.vertices = std::move(pts);
        return hull;
    }
    std::vector<Vector2> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && orientation(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && orientation(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);  // last point repeats the first
    hull.vertices = std::move(h);
    return hull;
}

std::size_t hull_edge_count(const Polygon2D& hull) {
    const std::size_t v = hull.vertices.size();
    if (v >= 3) return v;
    if (v == 2) return 1;
    return 0;
}

Layout2D Layout2D::unit_circle_equally_spaced(int n) {
    Layout2D l;
    l.means.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * i / n;
        l.means.emplace_back(std::cos(t), std::sin(t));
    }
    return l;
}

Layout2D Layout2D::single_point(int n, const Vector2& p) {
    Layout2D l;
    l.means.assign(static_cast<std::size_t>(n), p);
    return l;
}

Layout2D Layout2D::fixed_cloud(std::vector<Vector2> pts) {
    Layout2D l;
    l.means = std::move(pts);
    return l;
}

Experiment2DResult run_2d_experiment(const Layout2D& layout, double sigma, int trials,
                                     SeededRng& rng) {
    Experiment2DResult res;
    res.edge_counts.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        SeededRng trial_rng = rng.stream(static_cast<std::uint64_t>(t));
        std::vector<Vector2> pts;
        pts.reserve(layout.means.size());
        for (const Vector2& m : layout.means)
            pts.emplace_back(m.x() + sigma * trial_rng.next_gaussian(),
                             m.y() + sigma * trial_rng.next_gaussian());
        const Polygon2D h = convex_hull_2d(pts);
        if (h.vertices.size() < 3) res.any_degenerate = true;
        res.edge_counts.push_back(hull_edge_count(h));
    }
    double sum = 0.0;
    for (std::size_t c : res.edge_counts) sum += static_cast<double>(c);
    res.mean = trials > 0 ? sum / trials : 0.0;
    double ss = 0.0;
    for (std::size_t c : res.edge_counts) {
        const double d = static_cast<double>(c) - res.mean;
        ss += d * d;
    }
    res.stddev = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
    return res;
}

}  // namespace shadowlab
