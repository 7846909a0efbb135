#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "shadowlab/errors.hpp"

namespace shadowlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Vector2 = Eigen::Vector2d;
using Index = Eigen::Index;

/// Orthonormal 2-frame (u, v) spanning a plane W inside R^d.
struct Plane2D {
    Vector u;
    Vector v;

    Plane2D(Vector u_, Vector v_) : u(std::move(u_)), v(std::move(v_)) {
        if (u.size() != v.size())
            throw DimensionMismatch("Plane2D: frame vectors of unequal dimension");
        const double tol = 1e-12;
        if (std::abs(u.norm() - 1.0) > tol || std::abs(v.norm() - 1.0) > tol ||
            std::abs(u.dot(v)) > tol)
            throw Error("Plane2D: frame not orthonormal");
    }

    Index dim() const { return u.size(); }

    /// First two coordinate directions of R^d.
    static Plane2D coordinate_frame(Index d) {
        Vector u = Vector::Zero(d), v = Vector::Zero(d);
        u(0) = 1.0;
        v(1) = 1.0;
        return Plane2D(std::move(u), std::move(v));
    }

    /// Unit direction at angle theta inside the plane, embedded in R^d.
    Vector direction(double theta) const {
        return std::cos(theta) * u + std::sin(theta) * v;
    }

    /// (u'x, v'x).
    Vector2 project(const Vector& x) const {
        if (x.size() != u.size())
            throw DimensionMismatch("project_to_plane: vector dimension mismatch");
        return Vector2(u.dot(x), v.dot(x));
    }
};

inline Vector2 project_to_plane(const Vector& x, const Plane2D& plane) {
    return plane.project(x);
}

}  // namespace shadowlab
