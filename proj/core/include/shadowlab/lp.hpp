#pragma once

#include <optional>
#include <vector>

#include "shadowlab/types.hpp"

namespace shadowlab {

/// max c'x subject to Ax <= b.
struct LinearProgram {
    Matrix A;
    Vector b;
    Vector c;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vector x;                       // optimum (valid iff Optimal)
    std::vector<Index> active_set;  // sorted indices of tight rows
    double objective = 0.0;
};

/// Vertices visited by the shadow vertex rule over a full objective rotation.
struct ShadowPath {
    std::vector<Vector> vertices;
    std::vector<double> pivot_angles;  // strictly increasing in [0, 2pi)
};

struct SolverOptions {
    double feas_tol = 1e-9;    // absolute, on unit-norm rows
    double pivot_tol = 1e-11;  // minimum usable pivot magnitude
    int bland_after = 0;       // degenerate pivots before Bland; 0 = 50*d
    std::size_t max_pivots = 2'000'000;
};

/// Primal simplex on the inequality form, maintaining an active-set basis of
/// d tight rows. Rows are normalized to unit Euclidean norm internally (rhs
/// rescaled accordingly). Instances hold mutable state; distinct instances
/// may run in parallel threads.
class ActiveSetSolver {
public:
    ActiveSetSolver(Matrix A, Vector b, SolverOptions opts = {});

    /// Optimize c from scratch (crash phase 1, then simplex).
    LpStatus solve(const Vector& c);

    /// Re-optimize from the current basis (warm start). Requires a prior
    /// successful solve().
    LpStatus reoptimize(const Vector& c);

    const Vector& vertex() const { return x_; }
    const std::vector<Index>& basis() const { return basis_; }
    double objective(const Vector& c) const { return c.dot(x_); }
    bool has_vertex() const { return !basis_.empty(); }

    /// Tight rows of the original system at the current point.
    std::vector<Index> active_set() const;

    /// Re-solve the active dxd system to refine the vertex coordinates.
    void polish();

    /// Walks the optimal basis as the objective rotates counterclockwise
    /// through span(plane), starting from the optimum of the plane's angle-0
    /// direction. Requires a bounded, full-dimensional feasible region.
    ShadowPath rotation_path(const Plane2D& plane);

    Index dim() const { return A_.cols(); }
    Index rows() const { return A_.rows(); }

private:
    friend class ParametricRun;

    bool find_feasible_point(Vector& x) const;
    LpStatus crash_to_vertex(const Vector& c);  // from feasible x_, fills basis_
    LpStatus simplex(const Vector& c);       // phase 2 from current basis_
    void refactor();
    // Ratio test along direction z (basis row `leaving` relaxed). Returns the
    // entering row or -1 when no constraint blocks.
    Index ratio_test(const Vector& z, double& step, bool bland) const;
    bool lex_less(Index i, Index j, const Vector& z) const;

    Matrix A_;       // normalized rows
    Vector b_;       // rescaled rhs
    SolverOptions opts_;
    Vector x_;
    std::vector<Index> basis_;
    Eigen::PartialPivLU<Matrix> lu_;  // factorization of A_basis
    Matrix Abasis_;
};

/// General-purpose entry point; status is always classified and, at optimum,
/// x is polished onto a vertex of the feasible region when it is pointed.
LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& opts = {});

/// solve_lp specialized to {Az <= 1} with objective `direction`.
LpSolution support_point(const Matrix& A, const Vector& direction,
                         const SolverOptions& opts = {});

/// All vertices of {Az <= 1}: feasible intersections of d independent rows,
/// deduplicated. Combinatorial test oracle; guarded to d <= 6, m <= 16.
std::vector<Vector> enumerate_vertices_bruteforce(const Matrix& A,
                                                  double dedup_tol = 1e-7);

/// Convenience wrapper around ActiveSetSolver::rotation_path.
ShadowPath parametric_rotation_path(const Matrix& A, const Plane2D& plane,
                                    const SolverOptions& opts = {});

}  // namespace shadowlab
