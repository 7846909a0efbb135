#include "shadowlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shadowlab/simplex_core.hpp"

namespace shadowlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace

ActiveSetSolver::ActiveSetSolver(Matrix A, Vector b, SolverOptions opts)
    : A_(std::move(A)), b_(std::move(b)), opts_(opts) {
    if (A_.rows() != b_.size())
        throw DimensionMismatch("ActiveSetSolver: A rows != b length");
    if (A_.rows() < 1 || A_.cols() < 1)
        throw DimensionMismatch("ActiveSetSolver: empty system");
    if (!all_finite(A_) || !b_.allFinite())
        throw Error("ActiveSetSolver: non-finite entries");
    if (opts_.bland_after <= 0) opts_.bland_after = 50 * static_cast<int>(A_.cols());
    // Unit-norm rows, rhs rescaled.
    for (Index i = 0; i < A_.rows(); ++i) {
        const double nrm = A_.row(i).norm();
        if (nrm > 0.0) {
            A_.row(i) /= nrm;
            b_(i) /= nrm;
        }
    }
}

bool ActiveSetSolver::find_feasible_point(Vector& x) const {
    const Index d = A_.cols();
    x = Vector::Zero(d);
    if ((b_.array() >= -opts_.feas_tol).all()) return true;

    // Phase-1 via the standard-form engine: x = u - v plus slacks.
    const Index m = A_.rows();
    const std::size_t n = static_cast<std::size_t>(2 * d + m);
    std::vector<std::vector<double>> As(m, std::vector<double>(n, 0.0));
    std::vector<double> bs(m), cs(n, 0.0);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < d; ++j) {
            As[i][j] = A_(i, j);
            As[i][d + j] = -A_(i, j);
        }
        As[i][2 * d + i] = 1.0;
        bs[i] = b_(i);
    }
    auto res = StandardSimplex<double>::solve(As, bs, cs, opts_.feas_tol);
    if (res.status != SimplexStatus::Optimal) return false;
    for (Index j = 0; j < d; ++j) x(j) = res.x[j] - res.x[d + j];
    // Verify: a numerically marginal phase-1 answer counts as infeasible.
    return ((A_ * x - b_).array() <= 10 * opts_.feas_tol).all();
}

void ActiveSetSolver::refactor() {
    const Index d = A_.cols();
    Abasis_.resize(d, d);
    for (Index p = 0; p < d; ++p) Abasis_.row(p) = A_.row(basis_[p]);
    lu_.compute(Abasis_);
    if (!(lu_.rcond() > 1e-14))
        throw NumericalBreakdown("ActiveSetSolver: singular active-set basis");
}

LpStatus ActiveSetSolver::crash_to_vertex(const Vector& c) {
    const Index d = A_.cols();
    const Index m = A_.rows();
    basis_.clear();

    // Orthonormalized normals of the rows already in the working set.
    std::vector<Vector> ortho;
    auto try_add = [&](Index row, double min_norm) {
        Vector w = A_.row(row).transpose();
        for (const Vector& o : ortho) w -= o.dot(w) * o;
        if (w.norm() < min_norm) return false;
        ortho.push_back(w.normalized());
        basis_.push_back(row);
        return true;
    };

    for (Index i = 0; i < m; ++i) {
        if (static_cast<Index>(basis_.size()) == d) break;
        if (std::abs(b_(i) - A_.row(i).dot(x_)) <= opts_.feas_tol * (1.0 + std::abs(b_(i))))
            try_add(i, 1e-8);
    }

    while (static_cast<Index>(basis_.size()) < d) {
        // Direction in the null space of the working set, preferring the
        // projection of the objective.
        Vector z = c;
        for (const Vector& o : ortho) z -= o.dot(z) * o;
        if (z.norm() < 1e-11 * (1.0 + c.norm())) {
            z = Vector::Zero(d);
            for (Index j = 0; j < d; ++j) {
                Vector e = Vector::Unit(d, j);
                for (const Vector& o : ortho) e -= o.dot(e) * o;
                if (e.norm() > z.norm()) z = e;
            }
        }
        z.normalize();
        if (c.dot(z) < 0.0) z = -z;

        bool progressed = false;
        for (int attempt = 0; attempt < 2 && !progressed; ++attempt) {
            const Vector dir = attempt == 0 ? z : Vector(-z);
            // Rows are unit-norm, so a blocker with denom > 1e-8 always has
            // enough residual to extend the working set. Nearly dependent
            // blockers (denom down to pivot_tol) are a fallback tier only;
            // for those the residual still dominates denom, so a relaxed
            // independence threshold suffices.
            Index block = -1;
            double denom_floor = 1e-8;
            for (int tier = 0; tier < 2 && block < 0; ++tier, denom_floor = opts_.pivot_tol) {
                double best = std::numeric_limits<double>::infinity();
                for (Index i = 0; i < m; ++i) {
                    const double denom = A_.row(i).dot(dir);
                    if (denom <= denom_floor) continue;
                    const double slack = std::max(0.0, b_(i) - A_.row(i).dot(x_));
                    const double ratio = slack / denom;
                    if (ratio < best) {
                        best = ratio;
                        block = i;
                    }
                }
                if (block >= 0) {
                    x_ += best * dir;
                    if (!try_add(block, denom_floor / 2.0))
                        throw NumericalBreakdown("crash: dependent blocking row");
                    progressed = true;
                }
            }
            if (block < 0 && attempt == 0 &&
                c.dot(dir) > opts_.feas_tol * (1.0 + c.norm())) {
                return LpStatus::Unbounded;
            }
        }
        if (!progressed)
            throw Error("ActiveSetSolver: feasible region has no vertex (not pointed)");
    }
    std::sort(basis_.begin(), basis_.end());
    refactor();
    return LpStatus::Optimal;
}

Index ActiveSetSolver::ratio_test(const Vector& z, double& step, bool bland) const {
    const Index m = A_.rows();
    std::vector<char> in_basis(m, 0);
    for (Index r : basis_) in_basis[r] = 1;

    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
        if (in_basis[i]) continue;
        const double denom = A_.row(i).dot(z);
        if (denom <= opts_.pivot_tol) continue;
        const double slack = std::max(0.0, b_(i) - A_.row(i).dot(x_));
        const double ratio = slack / denom;
        if (ratio < best) best = ratio;
    }
    if (!std::isfinite(best)) {
        step = 0.0;
        return -1;
    }
    const double tie_tol = 1e-12 * (1.0 + std::abs(best));
    std::vector<Index> ties;
    for (Index i = 0; i < m; ++i) {
        if (in_basis[i]) continue;
        const double denom = A_.row(i).dot(z);
        if (denom <= opts_.pivot_tol) continue;
        const double slack = std::max(0.0, b_(i) - A_.row(i).dot(x_));
        if (slack / denom <= best + tie_tol) ties.push_back(i);
    }
    step = best;
    if (ties.size() == 1) return ties.front();
    if (bland) return *std::min_element(ties.begin(), ties.end());
    Index pick = ties.front();
    for (std::size_t t = 1; t < ties.size(); ++t)
        if (lex_less(ties[t], pick, z)) pick = ties[t];
    return pick;
}

// Lexicographic comparison of the perturbed ratio rows: the rhs perturbed by
// b_j + tau^j yields for candidate row i the ratio coefficient
// (delta_ij - (A_i A_B^{-1})_{pos(j)}) / (A_i z) at each power tau^j.
bool ActiveSetSolver::lex_less(Index i, Index j, const Vector& z) const {
    const Index d = A_.cols();
    const Index m = A_.rows();
    std::vector<Index> pos(m, -1);
    for (Index p = 0; p < d; ++p) pos[basis_[p]] = p;

    const double di = A_.row(i).dot(z);
    const double dj = A_.row(j).dot(z);
    const Vector gi = lu_.transpose().solve(A_.row(i).transpose());
    const Vector gj = lu_.transpose().solve(A_.row(j).transpose());
    for (Index col = 0; col < m; ++col) {
        double ci = (col == i ? 1.0 : 0.0) - (pos[col] >= 0 ? gi(pos[col]) : 0.0);
        double cj = (col == j ? 1.0 : 0.0) - (pos[col] >= 0 ? gj(pos[col]) : 0.0);
        ci /= di;
        cj /= dj;
        if (std::abs(ci - cj) > 1e-14 * (1.0 + std::abs(ci) + std::abs(cj)))
            return ci < cj;
    }
    return i < j;
}

LpStatus ActiveSetSolver::simplex(const Vector& c) {
    const Index d = A_.cols();
    const double dual_tol = opts_.feas_tol * (1.0 + c.norm());
    int degenerate_streak = 0;
    bool bland = false;

    for (std::size_t iter = 0; iter < opts_.max_pivots; ++iter) {
        const Vector y = lu_.transpose().solve(c);
        Index leave_pos = -1;
        if (bland) {
            // Smallest original row index with a negative multiplier.
            Index best_row = std::numeric_limits<Index>::max();
            for (Index p = 0; p < d; ++p)
                if (y(p) < -dual_tol && basis_[p] < best_row) {
                    best_row = basis_[p];
                    leave_pos = p;
                }
        } else {
            double worst = -dual_tol;
            for (Index p = 0; p < d; ++p)
                if (y(p) < worst) {
                    worst = y(p);
                    leave_pos = p;
                }
        }
        if (leave_pos < 0) return LpStatus::Optimal;

        const Vector z = lu_.solve(-Vector::Unit(d, leave_pos));
        double step = 0.0;
        const Index enter = ratio_test(z, step, bland);
        if (enter < 0) {
            x_ += z;  // ray base stays at the current vertex
            return LpStatus::Unbounded;
        }
        if (step <= opts_.feas_tol) {
            if (++degenerate_streak > opts_.bland_after) bland = true;
        } else {
            degenerate_streak = 0;
        }
        x_ += step * z;
        basis_[leave_pos] = enter;
        refactor();
    }
    throw NumericalBreakdown("ActiveSetSolver: pivot limit exceeded");
}

LpStatus ActiveSetSolver::solve(const Vector& c) {
    if (c.size() != A_.cols())
        throw DimensionMismatch("ActiveSetSolver: objective dimension mismatch");
    if (!find_feasible_point(x_)) {
        basis_.clear();
        return LpStatus::Infeasible;
    }
    if (crash_to_vertex(c) == LpStatus::Unbounded) return LpStatus::Unbounded;
    x_ = lu_.solve(Vector(b_(basis_).matrix()));
    const LpStatus st = simplex(c);
    if (st == LpStatus::Optimal) polish();
    return st;
}

LpStatus ActiveSetSolver::reoptimize(const Vector& c) {
    if (basis_.empty()) return solve(c);
    const LpStatus st = simplex(c);
    if (st == LpStatus::Optimal) polish();
    return st;
}

void ActiveSetSolver::polish() {
    Vector bb(basis_.size());
    for (std::size_t p = 0; p < basis_.size(); ++p) bb(p) = b_(basis_[p]);
    x_ = Abasis_.colPivHouseholderQr().solve(bb);
}

std::vector<Index> ActiveSetSolver::active_set() const {
    std::vector<Index> act;
    for (Index i = 0; i < A_.rows(); ++i)
        if (std::abs(b_(i) - A_.row(i).dot(x_)) <= opts_.feas_tol * (1.0 + std::abs(b_(i))))
            act.push_back(i);
    return act;
}

ShadowPath ActiveSetSolver::rotation_path(const Plane2D& plane) {
    const Index d = A_.cols();
    if (plane.dim() != d)
        throw DimensionMismatch("rotation_path: plane dimension mismatch");
    const Vector& u = plane.u;
    const Vector& v = plane.v;

    // Seed: lexicographic two-stage optimum, i.e. the vertex optimal for
    // objectives at angle 0+.
    if (solve(u) != LpStatus::Optimal)
        throw UnboundedShadow("rotation_path: support LP not optimal");
    const double val = u.dot(x_);
    {
        Matrix A2(A_.rows() + 1, d);
        A2.topRows(A_.rows()) = A_;
        A2.row(A_.rows()) = -u.transpose();
        Vector b2(b_.size() + 1);
        b2.head(b_.size()) = b_;
        b2(b_.size()) = -val + opts_.feas_tol;
        ActiveSetSolver face(A2, b2, opts_);
        if (face.solve(v) != LpStatus::Optimal)
            throw UnboundedShadow("rotation_path: face LP not optimal");
        x_ = face.vertex();
    }

    // Recover a basis of d independent tight original rows at the seed.
    basis_.clear();
    std::vector<Vector> ortho;
    Index tight_count = 0;
    for (Index i = 0; i < A_.rows(); ++i) {
        if (std::abs(b_(i) - A_.row(i).dot(x_)) > 1e-7 * (1.0 + std::abs(b_(i)))) continue;
        ++tight_count;
        if (static_cast<Index>(basis_.size()) == d) continue;
        Vector w = A_.row(i).transpose();
        for (const Vector& o : ortho) w -= o.dot(w) * o;
        if (w.norm() < 1e-8) continue;
        ortho.push_back(w.normalized());
        basis_.push_back(i);
    }
    if (static_cast<Index>(basis_.size()) < d || tight_count > d)
        throw DegeneratePivot("rotation_path: degenerate seed vertex");
    refactor();
    polish();

    // Validate optimality just counterclockwise of angle 0.
    {
        const Vector yu = lu_.transpose().solve(u);
        const Vector yv = lu_.transpose().solve(v);
        for (Index p = 0; p < d; ++p) {
            if (yu(p) < -1e-9 || (std::abs(yu(p)) <= 1e-9 && yv(p) < -1e-9))
                throw DegeneratePivot("rotation_path: seed basis not optimal at 0+");
        }
    }

    ShadowPath path;
    path.vertices.push_back(x_);
    std::vector<Index> start_basis = basis_;
    std::sort(start_basis.begin(), start_basis.end());

    double theta = 0.0;
    bool closing_pivot_at_zero = false;
    for (std::size_t iter = 0; iter < opts_.max_pivots; ++iter) {
        const Vector yu = lu_.transpose().solve(u);
        const Vector yv = lu_.transpose().solve(v);
        double exit = std::numeric_limits<double>::infinity();
        Index leave_pos = -1;
        for (Index p = 0; p < d; ++p) {
            const double R = std::hypot(yu(p), yv(p));
            if (R < 1e-13) continue;  // row invisible to the plane, never leaves
            const double cross = std::atan2(yv(p), yu(p)) + std::numbers::pi / 2.0;
            double delta = std::fmod(cross - theta, kTwoPi);
            if (delta < 0.0) delta += kTwoPi;
            if (delta < 1e-12) delta = kTwoPi;  // just pivoted here
            const double cand = theta + delta;
            if (cand < exit - 1e-12) {
                exit = cand;
                leave_pos = p;
            } else if (cand < exit + 1e-12) {
                throw DegeneratePivot("rotation_path: simultaneous crossing angles");
            }
        }
        if (leave_pos < 0)
            throw Error("rotation_path: no basis row ever leaves (flat shadow)");
        if (exit >= kTwoPi - 1e-12) {
            closing_pivot_at_zero = exit <= kTwoPi + 1e-12;
            break;
        }

        const Vector z = lu_.solve(-Vector::Unit(d, leave_pos));
        double step = 0.0;
        const Index enter = ratio_test(z, step, /*bland=*/false);
        if (enter < 0) throw Error("rotation_path: unbounded feasible region");
        x_ += step * z;
        basis_[leave_pos] = enter;
        refactor();
        polish();
        theta = exit;

        std::vector<Index> sorted = basis_;
        std::sort(sorted.begin(), sorted.end());
        if (sorted == start_basis) break;  // wrapped around
        if ((x_ - path.vertices.back()).norm() > 1e-10 * (1.0 + x_.norm())) {
            path.vertices.push_back(x_);
            path.pivot_angles.push_back(theta);
        }
    }
    if (closing_pivot_at_zero)
        path.pivot_angles.insert(path.pivot_angles.begin(), 0.0);
    return path;
}

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& opts) {
    if (lp.A.rows() != lp.b.size() || lp.A.cols() != lp.c.size())
        throw DimensionMismatch("solve_lp: inconsistent dimensions");
    if (!lp.A.allFinite() || !lp.b.allFinite() || !lp.c.allFinite())
        throw Error("solve_lp: non-finite entries");

    ActiveSetSolver solver(lp.A, lp.b, opts);
    LpSolution sol;
    const LpStatus st = solver.solve(lp.c);
    sol.status = st;
    if (st == LpStatus::Optimal) {
        sol.x = solver.vertex();
        sol.active_set = solver.active_set();
        sol.objective = lp.c.dot(sol.x);
    } else if (st == LpStatus::Unbounded) {
        sol.x = solver.vertex();
    }
    return sol;
}

LpSolution support_point(const Matrix& A, const Vector& direction,
                         const SolverOptions& opts) {
    LinearProgram lp{A, Vector::Ones(A.rows()), direction};
    return solve_lp(lp, opts);
}

ShadowPath parametric_rotation_path(const Matrix& A, const Plane2D& plane,
                                    const SolverOptions& opts) {
    ActiveSetSolver solver(A, Vector::Ones(A.rows()), opts);
    return solver.rotation_path(plane);
}

std::vector<Vector> enumerate_vertices_bruteforce(const Matrix& A, double dedup_tol) {
    const Index m = A.rows();
    const Index d = A.cols();
    if (d > 6 || m > 16)
        throw TooLarge("enumerate_vertices_bruteforce: guard d<=6, m<=16 violated");
    const Vector b = Vector::Ones(m);

    std::vector<Vector> verts;
    std::vector<Index> idx(d);
    // Iterate over d-subsets of rows.
    for (Index i = 0; i < d; ++i) idx[i] = i;
    auto advance = [&]() {
        Index i = d - 1;
        while (i >= 0 && idx[i] == m - d + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (Index j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    if (m < d) return verts;
    do {
        Matrix S(d, d);
        Vector rhs(d);
        for (Index i = 0; i < d; ++i) {
            S.row(i) = A.row(idx[i]);
            rhs(i) = b(idx[i]);
        }
        Eigen::FullPivLU<Matrix> lu(S);
        if (lu.rank() < d) continue;
        const Vector x = lu.solve(rhs);
        if (((A * x - b).array() > 1e-9 * (1.0 + x.norm())).any()) continue;
        bool dup = false;
        for (const Vector& w : verts)
            if ((w - x).lpNorm<Eigen::Infinity>() <= dedup_tol) {
                dup = true;
                break;
            }
        if (!dup) verts.push_back(x);
    } while (advance());
    return verts;
}

}  // namespace shadowlab
