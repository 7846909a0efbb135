#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "shadowlab/construction.hpp"

namespace shadowlab::exact {

using Rational = boost::multiprecision::cpp_rational;
using RMatrix = std::vector<std::vector<Rational>>;
using RVector = std::vector<Rational>;

/// cos/sin(pi/2^{i+1}) rounded to 30 significant decimal digits. These
/// rationals ARE the exact-mode instance; all certificates below are exact
/// statements about it.
Rational rational_cos(int i);
Rational rational_sin(int i);

struct RationalSystem {
    RMatrix A;
    RVector b;
    int k = 0;
};

RationalSystem build_primal_rational(const ConstructionParams& params);
RVector center_point_rational(int k);

/// Shifted, normalized rows divided by 30 (the dual means).
RMatrix dual_means_rational(const ConstructionParams& params);

/// Exact min over rows of rhs_i - A_i.center - r*||A_i||_1.
Rational innerball_margin_rational(const RationalSystem& sys, const RVector& center,
                                   const Rational& r);

Rational max_l1_norm_rational(const RMatrix& points);

/// Exact membership LPs for +-r e_j in conv(points), Bland rule, no tolerance.
bool contains_ball_l1_rational(const RMatrix& points, const Rational& r);

struct ExactReport {
    Rational innerball_margin;
    bool innerball_ok = false;
    Rational dual_max_l1;
    bool dual_l1_le_one = false;
    bool dual_l1_ball_ok = false;
    bool all_ok() const { return innerball_ok && dual_l1_le_one && dual_l1_ball_ok; }
};

/// Exact-arithmetic re-derivation of the containment certificates
/// (inner l-infinity ball of P, dual l1 bounds) for the rounded-trig instance.
ExactReport verify_certificates_exact(const ConstructionParams& params);

}  // namespace shadowlab::exact
