#pragma once

#include <vector>

#include "shadowlab/polytope.hpp"
#include "shadowlab/rng.hpp"
#include "shadowlab/types.hpp"

namespace shadowlab {

struct ConstructionParams {
    int k = 1;
    // The literal derivation yields 4k+7 rows; dropping the two (redundant
    // in the shifted system) s-bound rows gives the 4k+5-row variant.
    bool drop_s_rows = false;
};

/// Reflection frame: w_i = (cos(pi/2^{i+1}), sin(pi/2^{i+1})), v_i its
/// clockwise orthogonal complement, i = 1..k.
struct FrameVectors {
    std::vector<Vector2> w;
    std::vector<Vector2> v;
    static FrameVectors build(int k);
};

enum class RowTag {
    AbsXPos,
    AbsXNeg,
    AbsYPos,
    AbsYNeg,
    VPos,   // +v_i' p_{i-1} <= t_i + i s
    VNeg,   // -v_i' p_{i-1} <= t_i + i s
    Death,  // e1' p_k <= 1
    TLow,
    THigh,
    SLow,
    SHigh,
};

/// Inequalities over (x, y, p0, t, s) after eliminating the chain p_1..p_k
/// via p_i = (w_i' p_{i-1}) w_i + (t_i + i s) v_i.
struct PrimalSystem {
    Matrix A;  // (4k+7) x (k+5)
    Vector b;
    std::vector<RowTag> tags;
    std::vector<int> tag_index;  // chain index i for v/t rows, 0 otherwise
    int k = 0;

    Index dim() const { return A.cols(); }
    Index rows() const { return A.rows(); }
};

/// Strictly interior point (0, 0, 1/6, 1/6, 1_k/30, 1/3).
Vector center_point(int k);

PrimalSystem build_primal(const ConstructionParams& params);

/// 2 x (k+5) linear maps expressing each chain point p_i over (x,y,p0,t,s).
std::vector<Matrix> chain_maps(int k);

/// Rows scaled to A_i / (b_i - A_i . center); {Az <= 1} = P - center.
HPolytope shift_and_normalize(const PrimalSystem& sys, const Vector& center);

struct DualInstance {
    PointCloud means;  // normalized shifted rows, divided by 30
    Plane2D plane;     // first two coordinate directions
    int k = 0;
    Index d = 0;
    Index n = 0;
};

DualInstance build_dual_instance(const ConstructionParams& params);

/// A + G with G_ij iid N(0, (sigma R)^2), R = max row Euclidean norm.
HPolytope perturb_primal(const HPolytope& h, double sigma, SeededRng& rng);

/// Each mean + N(0, sigma^2 I_d).
PointCloud perturb_dual(const DualInstance& inst, double sigma, SeededRng& rng);

struct VerificationReport {
    // (a) inner disk of the projection: witness feasibility over sampled angles
    double innerdisk_min_margin = 0.0;
    bool innerdisk_ok = false;
    // (b) outer disk of the projection: support of pi_W(P) over sampled angles
    double support_min = 0.0;
    double support_max = 0.0;
    bool outerdisk_ok = false;
    // (c) l-infinity inner ball of P at r = 1/30
    double innerball_margin = 0.0;
    bool innerball_ok = false;
    // (d) dual containments
    double dual_max_l1 = 0.0;
    bool dual_l1_ball_ok = false;
    double slice_support_min = 0.0;
    double slice_support_max = 0.0;
    bool dual_ok = false;

    bool all_ok() const { return innerdisk_ok && outerdisk_ok && innerball_ok && dual_ok; }
};

/// Numerical verification of the radius and duality lemmas backing the
/// construction, sampling `angle_samples` directions on the circle.
VerificationReport verify_radii(const ConstructionParams& params, int angle_samples);

/// Feasible witness for (x, y) on the unit circle: tight chain with s = 0.
Vector innerdisk_witness(int k, double x, double y);

}  // namespace shadowlab
