#include "shadowlab/exact.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "shadowlab/simplex_core.hpp"

namespace shadowlab::exact {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// Round a positive float to 30 significant decimal digits, exactly, as a
// rational mantissa/10^29 * 10^exp.
Rational round_to_30_digits(const Float50& v) {
    if (v == 0) return Rational(0);
    if (v < 0) return -round_to_30_digits(Float50(-v));
    int exp10 = static_cast<int>(floor(log10(v)));
    // mantissa in [1, 10); guard against log10 boundary error
    Float50 scale = pow(Float50(10), 29 - exp10);
    boost::multiprecision::cpp_int mant = static_cast<boost::multiprecision::cpp_int>(
        boost::multiprecision::round(v * scale));
    boost::multiprecision::cpp_int den = 1;
    int e = 29 - exp10;
    if (e >= 0)
        for (int i = 0; i < e; ++i) den *= 10;
    else
        for (int i = 0; i < -e; ++i) mant *= 10;
    return Rational(mant, den);
}

Float50 chain_angle(int i) {
    const Float50 pi = boost::math::constants::pi<Float50>();
    return pi / pow(Float50(2), i + 1);
}

}  // namespace

Rational rational_cos(int i) { return round_to_30_digits(cos(chain_angle(i))); }
Rational rational_sin(int i) { return round_to_30_digits(sin(chain_angle(i))); }

RVector center_point_rational(int k) {
    RVector c(k + 5, Rational(0));
    c[2] = Rational(1, 6);
    c[3] = Rational(1, 6);
    for (int i = 0; i < k; ++i) c[4 + i] = Rational(1, 30);
    c[4 + k] = Rational(1, 3);
    return c;
}

RationalSystem build_primal_rational(const ConstructionParams& params) {
    const int k = params.k;
    if (k < 1) throw InvalidK("build_primal_rational: k >= 1 required");
    const int d = k + 5;
    const int m = 4 * k + 7 - (params.drop_s_rows ? 2 : 0);

    // Chain maps L_i (2 x d) over (x, y, p0, t, s), mirroring build_primal.
    std::vector<RMatrix> L;
    RMatrix L0(2, RVector(d, Rational(0)));
    L0[0][2] = 1;
    L0[1][3] = 1;
    L.push_back(L0);
    for (int i = 1; i <= k; ++i) {
        const Rational c = rational_cos(i), s = rational_sin(i);
        const Rational w0 = c, w1 = s, v0 = s, v1 = -c;
        const RMatrix& prev = L.back();
        RMatrix Li(2, RVector(d, Rational(0)));
        for (int col = 0; col < d; ++col) {
            const Rational wp = w0 * prev[0][col] + w1 * prev[1][col];
            Li[0][col] = w0 * wp;
            Li[1][col] = w1 * wp;
        }
        Li[0][4 + (i - 1)] += v0;
        Li[1][4 + (i - 1)] += v1;
        Li[0][4 + k] += v0 * i;
        Li[1][4 + k] += v1 * i;
        L.push_back(std::move(Li));
    }

    RationalSystem sys;
    sys.k = k;
    sys.A.assign(m, RVector(d, Rational(0)));
    sys.b.assign(m, Rational(0));
    int r = 0;
    // abs rows
    sys.A[r][0] = 1;
    sys.A[r][2] = -1;
    ++r;
    sys.A[r][0] = -1;
    sys.A[r][2] = -1;
    ++r;
    sys.A[r][1] = 1;
    sys.A[r][3] = -1;
    ++r;
    sys.A[r][1] = -1;
    sys.A[r][3] = -1;
    ++r;
    // v rows
    for (int i = 1; i <= k; ++i) {
        const Rational v0 = rational_sin(i), v1 = -rational_cos(i);
        for (int sign : {1, -1}) {
            for (int col = 0; col < d; ++col)
                sys.A[r][col] = sign * (v0 * L[i - 1][0][col] + v1 * L[i - 1][1][col]);
            sys.A[r][4 + (i - 1)] -= 1;
            sys.A[r][4 + k] -= i;
            ++r;
        }
    }
    // death barrier
    for (int col = 0; col < d; ++col) sys.A[r][col] = L[k][0][col];
    sys.b[r] = 1;
    ++r;
    // t bounds
    for (int i = 1; i <= k; ++i) {
        sys.A[r][4 + (i - 1)] = -1;
        ++r;
        sys.A[r][4 + (i - 1)] = 1;
        sys.b[r] = 1;
        ++r;
    }
    // s bounds
    if (!params.drop_s_rows) {
        sys.A[r][4 + k] = -1;
        ++r;
        sys.A[r][4 + k] = 1;
        sys.b[r] = 1;
        ++r;
    }
    return sys;
}

RMatrix dual_means_rational(const ConstructionParams& params) {
    const RationalSystem sys = build_primal_rational(params);
    const RVector center = center_point_rational(params.k);
    const int d = params.k + 5;
    RMatrix means(sys.A.size(), RVector(d));
    for (std::size_t i = 0; i < sys.A.size(); ++i) {
        Rational slack = sys.b[i];
        for (int col = 0; col < d; ++col) slack -= sys.A[i][col] * center[col];
        if (slack <= 0) throw CenterNotInterior("dual_means_rational: center not interior");
        for (int col = 0; col < d; ++col) means[i][col] = sys.A[i][col] / (30 * slack);
    }
    return means;
}

Rational innerball_margin_rational(const RationalSystem& sys, const RVector& center,
                                   const Rational& r) {
    Rational margin;
    bool first = true;
    for (std::size_t i = 0; i < sys.A.size(); ++i) {
        Rational dot(0), l1(0);
        for (std::size_t col = 0; col < center.size(); ++col) {
            dot += sys.A[i][col] * center[col];
            l1 += sys.A[i][col] < 0 ? Rational(-sys.A[i][col]) : sys.A[i][col];
        }
        const Rational slack = sys.b[i] - dot - r * l1;
        if (first || slack < margin) margin = slack;
        first = false;
    }
    return margin;
}

Rational max_l1_norm_rational(const RMatrix& points) {
    Rational best(0);
    for (const RVector& p : points) {
        Rational l1(0);
        for (const Rational& x : p) l1 += x < 0 ? Rational(-x) : x;
        if (l1 > best) best = l1;
    }
    return best;
}

bool contains_ball_l1_rational(const RMatrix& points, const Rational& r) {
    const std::size_t n = points.size();
    const std::size_t d = points.front().size();
    for (std::size_t j = 0; j < d; ++j) {
        for (int sign : {1, -1}) {
            RMatrix A(d + 1, RVector(n));
            RVector b(d + 1, Rational(0));
            for (std::size_t row = 0; row < d; ++row)
                for (std::size_t i = 0; i < n; ++i) A[row][i] = points[i][row];
            for (std::size_t i = 0; i < n; ++i) A[d][i] = 1;
            b[j] = sign * r;
            b[d] = 1;
            const RVector c(n, Rational(0));
            auto res = StandardSimplex<Rational>::solve(A, b, c, Rational(0));
            if (res.status != SimplexStatus::Optimal) return false;
        }
    }
    return true;
}

ExactReport verify_certificates_exact(const ConstructionParams& params) {
    ExactReport rep;
    const RationalSystem sys = build_primal_rational(params);
    const RVector center = center_point_rational(params.k);
    rep.innerball_margin = innerball_margin_rational(sys, center, Rational(1, 30));
    rep.innerball_ok = rep.innerball_margin >= 0;
    const RMatrix means = dual_means_rational(params);
    rep.dual_max_l1 = max_l1_norm_rational(means);
    rep.dual_l1_le_one = rep.dual_max_l1 <= 1;
    rep.dual_l1_ball_ok = contains_ball_l1_rational(means, Rational(1, 45));
    return rep;
}

}  // namespace shadowlab::exact
