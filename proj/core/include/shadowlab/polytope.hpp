#pragma once

#include <optional>
#include <vector>

#include "shadowlab/types.hpp"

namespace shadowlab {

/// Inequality representation {z : Az <= rhs}.
struct HPolytope {
    Matrix A;
    Vector rhs;

    HPolytope(Matrix A_, Vector rhs_) : A(std::move(A_)), rhs(std::move(rhs_)) {
        if (A.rows() != rhs.size())
            throw DimensionMismatch("HPolytope: A rows != rhs length");
    }

    Index dim() const { return A.cols(); }
    Index rows() const { return A.rows(); }
};

struct PointCloud {
    std::vector<Vector> points;
    std::vector<Index> labels;  // optional row-origin indices (empty if unused)

    Index dim() const { return points.empty() ? 0 : points.front().size(); }
    Index size() const { return static_cast<Index>(points.size()); }
};

/// Convex polygon, counterclockwise vertex order.
struct Polygon2D {
    std::vector<Vector2> vertices;
};

/// Rows of a normalized system {Az <= 1} as the vertex candidates of the
/// polar dual conv(0, a_1, ..., a_n).
PointCloud polar_dual_points(const HPolytope& p);

struct BallCertificate {
    bool contained = false;
    double margin = 0.0;  // min over rows of slack; negative when violated
};

/// Row-wise certificate for center + r*Binf inside {Az <= rhs}: the support
/// of an l-infinity ball on row a is r*||a||_1.
BallCertificate contains_ball_linf(const HPolytope& p, const Vector& center, double r);

/// Membership LPs for the 2d points +-r*e_j inside conv(cloud).
bool contains_ball_l1(const PointCloud& cloud, double r);

/// Is `target` a convex combination of the cloud points?
bool cloud_contains(const PointCloud& cloud, const Vector& target);

double max_l1_norm(const PointCloud& cloud);

struct SliceSupport {
    bool empty = false;     // conv(cloud) does not meet W
    double value = 0.0;     // support of conv(cloud) cap W in the plane direction
    Vector2 point{0, 0};    // maximizer, in plane coordinates
};

/// Support oracle for the slice polygon conv(cloud) cap span(plane):
/// maximizes (cos angle, sin angle) . pi_W(y) over y in conv(cloud) with
/// pi_{W_perp}(y) = 0, as an LP in the convex coefficients.
SliceSupport slice_support(const PointCloud& cloud, const Plane2D& plane, double angle);

/// Orthonormal basis of the orthogonal complement of span(plane), d x (d-2).
Matrix plane_complement(const Plane2D& plane);

}  // namespace shadowlab
