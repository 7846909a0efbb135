#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "shadowlab/errors.hpp"

namespace shadowlab {

enum class SimplexStatus { Optimal, Unbounded, Infeasible };

/// Dense two-phase tableau simplex on standard form
///     max c'x  s.t.  Ax = b, x >= 0,
/// templated on the scalar so the same code runs in double (with tolerances)
/// and in exact rational arithmetic (tolerance zero). Anti-cycling is Bland's
/// rule throughout; instances here are small, so speed of the entering rule
/// does not matter.
template <typename Scalar>
class StandardSimplex {
public:
    struct Result {
        SimplexStatus status = SimplexStatus::Infeasible;
        std::vector<Scalar> x;   // primal solution, length n (valid if Optimal)
        Scalar objective{};      // c'x (valid if Optimal)
    };

    /// feas_tol: treated as exact zero for rational Scalar.
    static Result solve(std::vector<std::vector<Scalar>> A, std::vector<Scalar> b,
                        const std::vector<Scalar>& c, Scalar feas_tol = Scalar(0)) {
        const std::size_t m = A.size();
        const std::size_t n = m == 0 ? 0 : A[0].size();
        if (b.size() != m || c.size() != n)
            throw DimensionMismatch("StandardSimplex: inconsistent dimensions");

        // Make b >= 0.
        for (std::size_t i = 0; i < m; ++i) {
            if (b[i] < Scalar(0)) {
                b[i] = -b[i];
                for (auto& a : A[i]) a = -a;
            }
        }

        // Tableau with n structural + m artificial columns, plus rhs.
        const std::size_t ncols = n + m;
        std::vector<std::vector<Scalar>> T(m, std::vector<Scalar>(ncols + 1, Scalar(0)));
        std::vector<std::size_t> basis(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
            T[i][n + i] = Scalar(1);
            T[i][ncols] = b[i];
            basis[i] = n + i;
        }

        // Phase 1: minimize the sum of artificials. Reduced costs against the
        // all-artificial basis: row sums on structural columns and the rhs,
        // exactly zero on the (basic) artificial columns themselves.
        std::vector<Scalar> z(ncols + 1, Scalar(0));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) z[j] += T[i][j];
            z[ncols] += T[i][ncols];
        }
        if (!run(T, basis, z, n /* artificials start here */, feas_tol))
            throw NumericalBreakdown("StandardSimplex: phase 1 unbounded");
        if (z[ncols] > feas_tol) return Result{SimplexStatus::Infeasible, {}, Scalar(0)};

        // Drive any artificial still basic out of the basis (degenerate rows).
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n) continue;
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < n; ++j) {
                if (abs_val(T[i][j]) > feas_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols) continue;  // redundant row, harmless
            pivot(T, basis, i, enter);
        }

        // Phase 2 objective row: reduced costs of max c'x; columns with
        // positive reduced cost improve the maximum.
        std::vector<Scalar> obj(ncols + 1, Scalar(0));
        for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n && obj[basis[i]] != Scalar(0)) {
                const Scalar f = obj[basis[i]];
                for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= f * T[i][j];
            }
        }
        // Block artificial columns from re-entering.
        if (!run(T, basis, obj, n, feas_tol, /*phase2=*/true))
            return Result{SimplexStatus::Unbounded, {}, Scalar(0)};

        Result res;
        res.status = SimplexStatus::Optimal;
        res.x.assign(n, Scalar(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) res.x[basis[i]] = T[i][ncols];
        res.objective = Scalar(0);
        for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
        return res;
    }

private:
    static Scalar abs_val(const Scalar& v) { return v < Scalar(0) ? Scalar(-v) : v; }

    static void pivot(std::vector<std::vector<Scalar>>& T, std::vector<std::size_t>& basis,
                      std::size_t row, std::size_t col) {
        const std::size_t ncols = T[0].size() - 1;
        const Scalar p = T[row][col];
        for (std::size_t j = 0; j <= ncols; ++j) T[row][j] /= p;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (i == row || T[i][col] == Scalar(0)) continue;
            const Scalar f = T[i][col];
            for (std::size_t j = 0; j <= ncols; ++j) T[i][j] -= f * T[row][j];
        }
        basis[row] = col;
    }

    // Minimizes the objective row `z` in place. Returns false on unboundedness.
    static bool run(std::vector<std::vector<Scalar>>& T, std::vector<std::size_t>& basis,
                    std::vector<Scalar>& z, std::size_t n_structural, Scalar tol,
                    bool phase2 = false) {
        const std::size_t m = T.size();
        const std::size_t ncols = T[0].size() - 1;
        const std::size_t max_iter = 200 * (m + ncols) + 10000;
        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            // Bland: first column with positive reduced cost (we minimize z,
            // stored so that improving columns have z[j] > 0).
            std::size_t enter = ncols;
            const std::size_t limit = phase2 ? n_structural : ncols;
            for (std::size_t j = 0; j < limit; ++j) {
                if (z[j] > tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols) return true;

            // Ratio test, Bland tie-break on the basis index.
            std::size_t leave = m;
            Scalar best{};
            for (std::size_t i = 0; i < m; ++i) {
                if (T[i][enter] > tol) {
                    const Scalar ratio = T[i][ncols] / T[i][enter];
                    if (leave == m || ratio < best ||
                        (ratio == best && basis[i] < basis[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave == m) return false;

            pivot(T, basis, leave, enter);
            const Scalar f = z[enter];
            for (std::size_t j = 0; j <= ncols; ++j) z[j] -= f * T[leave][j];
        }
        throw NumericalBreakdown("StandardSimplex: iteration limit reached");
    }
};

}  // namespace shadowlab
