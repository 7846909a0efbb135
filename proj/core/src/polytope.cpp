#include "shadowlab/polytope.hpp"

#include <cmath>
#include <limits>

#include "shadowlab/simplex_core.hpp"

namespace shadowlab {

PointCloud polar_dual_points(const HPolytope& p) {
    if (((p.rhs.array() - 1.0).abs() > 1e-12).any())
        throw NotNormalized("polar_dual_points: rhs must be all-ones (normalize first)");
    PointCloud cloud;
    cloud.points.reserve(p.rows());
    cloud.labels.reserve(p.rows());
    for (Index i = 0; i < p.rows(); ++i) {
        cloud.points.push_back(p.A.row(i).transpose());
        cloud.labels.push_back(i);
    }
    return cloud;
}

BallCertificate contains_ball_linf(const HPolytope& p, const Vector& center, double r) {
    if (center.size() != p.dim())
        throw DimensionMismatch("contains_ball_linf: center dimension mismatch");
    if (r < 0.0) throw Error("contains_ball_linf: negative radius");
    BallCertificate cert;
    cert.margin = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < p.rows(); ++i) {
        const double slack =
            p.rhs(i) - p.A.row(i).dot(center) - r * p.A.row(i).lpNorm<1>();
        cert.margin = std::min(cert.margin, slack);
    }
    cert.contained = cert.margin >= 0.0;
    return cert;
}

bool cloud_contains(const PointCloud& cloud, const Vector& target) {
    const Index n = cloud.size();
    const Index d = cloud.dim();
    if (n == 0) return false;
    if (target.size() != d)
        throw DimensionMismatch("cloud_contains: target dimension mismatch");

    // Feasibility of: sum lambda_i a_i = target, sum lambda_i = 1, lambda >= 0.
    std::vector<std::vector<double>> A(d + 1, std::vector<double>(n));
    std::vector<double> b(d + 1);
    for (Index row = 0; row < d; ++row) {
        for (Index i = 0; i < n; ++i) A[row][i] = cloud.points[i](row);
        b[row] = target(row);
    }
    for (Index i = 0; i < n; ++i) A[d][i] = 1.0;
    b[d] = 1.0;
    const std::vector<double> c(n, 0.0);
    auto res = StandardSimplex<double>::solve(A, b, c, 1e-9);
    return res.status == SimplexStatus::Optimal;
}

bool contains_ball_l1(const PointCloud& cloud, double r) {
    if (r < 0.0) throw Error("contains_ball_l1: negative radius");
    const Index d = cloud.dim();
    for (Index j = 0; j < d; ++j) {
        for (double sign : {1.0, -1.0}) {
            if (!cloud_contains(cloud, sign * r * Vector::Unit(d, j))) return false;
        }
    }
    return true;
}

double max_l1_norm(const PointCloud& cloud) {
    if (cloud.points.empty()) throw Error("max_l1_norm: empty cloud");
    double best = 0.0;
    for (const Vector& p : cloud.points) best = std::max(best, p.lpNorm<1>());
    return best;
}

Matrix plane_complement(const Plane2D& plane) {
    const Index d = plane.dim();
    Matrix C(d, d - 2);
    Index got = 0;
    std::vector<Vector> ortho{plane.u, plane.v};
    for (Index j = 0; j < d && got < d - 2; ++j) {
        Vector w = Vector::Unit(d, j);
        for (const Vector& o : ortho) w -= o.dot(w) * o;
        if (w.norm() < 1e-8) continue;
        w.normalize();
        ortho.push_back(w);
        C.col(got++) = w;
    }
    if (got != d - 2) throw Error("plane_complement: failed to complete basis");
    return C;
}

SliceSupport slice_support(const PointCloud& cloud, const Plane2D& plane, double angle) {
    const Index n = cloud.size();
    const Index d = cloud.dim();
    if (n == 0) throw Error("slice_support: empty cloud");
    if (plane.dim() != d)
        throw DimensionMismatch("slice_support: plane dimension mismatch");

    const Matrix C = plane_complement(plane);  // d x (d-2)
    // max sum_i lambda_i (dir . pi_W(a_i))  s.t.
    //   C' (sum_i lambda_i a_i) = 0,  sum lambda = 1,  lambda >= 0.
    const Index m = d - 2 + 1;
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    std::vector<double> b(m, 0.0), c(n);
    for (Index i = 0; i < n; ++i) {
        const Vector w = C.transpose() * cloud.points[i];
        for (Index row = 0; row < d - 2; ++row) A[row][i] = w(row);
        A[d - 2][i] = 1.0;
        const Vector2 q = plane.project(cloud.points[i]);
        c[i] = std::cos(angle) * q(0) + std::sin(angle) * q(1);
    }
    b[d - 2] = 1.0;

    auto res = StandardSimplex<double>::solve(A, b, c, 1e-9);
    SliceSupport out;
    if (res.status == SimplexStatus::Infeasible) {
        out.empty = true;
        return out;
    }
    if (res.status != SimplexStatus::Optimal)
        throw NumericalBreakdown("slice_support: LP not optimal");
    Vector y = Vector::Zero(d);
    for (Index i = 0; i < n; ++i) y += res.x[i] * cloud.points[i];
    out.value = res.objective;
    out.point = plane.project(y);
    return out;
}

}  // namespace shadowlab
