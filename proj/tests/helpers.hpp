#pragma once

// Shared oracles and generators for the test suite.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <shadowlab/lp.hpp>
#include <shadowlab/polytope.hpp>
#include <shadowlab/rng.hpp>
#include <shadowlab/types.hpp>

namespace testutil {

using shadowlab::Index;
using shadowlab::Matrix;
using shadowlab::Vector;
using shadowlab::Vector2;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RandomLp {
    Matrix A;
    Vector b;
    Vector c;
};

/// Random instance with iid standard normal A and c, b = 1. The origin is
/// always strictly feasible.
inline RandomLp random_lp(shadowlab::SeededRng& rng, Index d, Index m) {
    RandomLp lp;
    lp.A = Matrix(m, d);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < d; ++j) lp.A(i, j) = rng.next_gaussian();
    lp.b = Vector::Ones(m);
    lp.c = Vector(d);
    for (Index j = 0; j < d; ++j) lp.c(j) = rng.next_gaussian();
    return lp;
}

/// Max of c'v over the brute-force vertex list; -inf if none.
inline double bruteforce_max(const Matrix& A, const Vector& c) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vector& v : shadowlab::enumerate_vertices_bruteforce(A))
        best = std::max(best, c.dot(v));
    return best;
}

/// Is {Az <= 1} unbounded in direction c? Checks the recession cone by
/// maximizing c'z over {Az <= 0, |z_j| <= 1}.
inline bool recession_unbounded(const Matrix& A, const Vector& c) {
    const Index m = A.rows(), d = A.cols();
    Matrix B(m + 2 * d, d);
    Vector b = Vector::Zero(m + 2 * d);
    B.topRows(m) = A;
    for (Index j = 0; j < d; ++j) {
        B.row(m + 2 * j).setZero();
        B(m + 2 * j, j) = 1.0;
        B.row(m + 2 * j + 1).setZero();
        B(m + 2 * j + 1, j) = -1.0;
        b(m + 2 * j) = 1.0;
        b(m + 2 * j + 1) = 1.0;
    }
    shadowlab::LinearProgram lp{B, b, c};
    const auto sol = shadowlab::solve_lp(lp);
    return sol.status == shadowlab::LpStatus::Optimal && sol.objective > 1e-7;
}

/// Klee-Minty cube in inequality form:
///   0 <= x_1 <= 1,  eps x_{i-1} <= x_i <= 1 - eps x_{i-1}.
inline RandomLp klee_minty(Index dim, double eps = 0.3) {
    RandomLp lp;
    lp.A = Matrix::Zero(2 * dim, dim);
    lp.b = Vector::Zero(2 * dim);
    for (Index i = 0; i < dim; ++i) {
        lp.A(2 * i, i) = 1.0;
        lp.b(2 * i) = 1.0;
        lp.A(2 * i + 1, i) = -1.0;
        if (i > 0) {
            lp.A(2 * i, i - 1) = eps;
            lp.A(2 * i + 1, i - 1) = eps;
        }
    }
    lp.c = Vector::Zero(dim);
    lp.c(dim - 1) = 1.0;
    return lp;
}

/// O(n^3) hull-vertex oracle by exhaustive support maximization: every hull
/// edge normal is the perp of some point pair; a point is a hull vertex iff
/// it is an endpoint of the maximizer set of some such direction. Collinear
/// maximizer runs keep only their two endpoints, so points interior to a hull
/// edge are not counted. Returns the count of distinct hull vertices.
inline std::size_t hull_vertex_count_oracle(const std::vector<Vector2>& pts,
                                            double tol = 1e-9) {
    // dedup first, so repeated visits of the same vertex count once
    std::vector<Vector2> p;
    for (const Vector2& q : pts) {
        bool dup = false;
        for (const Vector2& r : p)
            if ((q - r).lpNorm<Eigen::Infinity>() <= tol) {
                dup = true;
                break;
            }
        if (!dup) p.push_back(q);
    }
    const std::size_t n = p.size();
    if (n <= 2) return n;
    double scale = 0.0;
    for (const Vector2& q : p) scale = std::max(scale, q.lpNorm<Eigen::Infinity>());
    const double eps = tol * std::max(1.0, scale);

    std::vector<bool> extreme(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            const Vector2 edge = p[k] - p[j];
            if (edge.squaredNorm() <= eps * eps) continue;
            for (int sign : {+1, -1}) {
                const Vector2 d = sign * Vector2(-edge.y(), edge.x());
                double best = -std::numeric_limits<double>::infinity();
                for (std::size_t l = 0; l < n; ++l) best = std::max(best, d.dot(p[l]));
                // endpoints of the tie run along the edge direction
                std::size_t lo = n, hi = n;
                for (std::size_t l = 0; l < n; ++l) {
                    if (d.dot(p[l]) < best - eps * d.norm()) continue;
                    if (lo == n || edge.dot(p[l]) < edge.dot(p[lo])) lo = l;
                    if (hi == n || edge.dot(p[l]) > edge.dot(p[hi])) hi = l;
                }
                extreme[lo] = true;
                extreme[hi] = true;
            }
        }
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (extreme[i]) ++count;
    return count;
}

/// Exact support of the slice conv(points) cap {z = 0} for a 3D cloud, by
/// enumerating the segment crossings of every point pair (sufficient for a
/// simplex, where slice vertices lie on edges).
inline double slice_support_oracle_3d(const std::vector<Vector>& pts, double angle) {
    const Vector2 dir(std::cos(angle), std::sin(angle));
    double best = -std::numeric_limits<double>::infinity();
    const auto score = [&](const Vector& p) {
        best = std::max(best, dir.x() * p(0) + dir.y() * p(1));
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i](2) == 0.0) score(pts[i]);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double zi = pts[i](2), zj = pts[j](2);
            if (zi * zj < 0.0) {
                const double t = zi / (zi - zj);
                score(pts[i] + t * (pts[j] - pts[i]));
            }
        }
    }
    return best;
}

inline std::size_t count_distinct(std::vector<Vector2> pts, double tol = 1e-7) {
    std::sort(pts.begin(), pts.end(), [](const Vector2& a, const Vector2& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    std::size_t distinct = 0;
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
        if (!dup) {
            reps.push_back(p);
            ++distinct;
        }
    }
    return distinct;
}

}  // namespace testutil
