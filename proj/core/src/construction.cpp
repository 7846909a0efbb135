#include "shadowlab/construction.hpp"

#include <cmath>
#include <numbers>

#include "shadowlab/lp.hpp"

namespace shadowlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Variable order (x, y, p0, t, s).
inline Index var_x() { return 0; }
inline Index var_y() { return 1; }
inline Index var_p0(Index c) { return 2 + c; }
inline Index var_t(int k, int i) { return 4 + (i - 1); (void)k; }
inline Index var_s(int k) { return 4 + k; }
}  // namespace

FrameVectors FrameVectors::build(int k) {
    if (k < 1) throw InvalidK("FrameVectors: k >= 1 required");
    FrameVectors f;
    f.w.reserve(k);
    f.v.reserve(k);
    for (int i = 1; i <= k; ++i) {
        const double ang = std::numbers::pi / std::pow(2.0, i + 1);
        f.w.emplace_back(std::cos(ang), std::sin(ang));
        f.v.emplace_back(std::sin(ang), -std::cos(ang));
    }
    return f;
}

Vector center_point(int k) {
    if (k < 1) throw InvalidK("center_point: k >= 1 required");
    Vector c = Vector::Zero(k + 5);
    c(var_p0(0)) = 1.0 / 6.0;
    c(var_p0(1)) = 1.0 / 6.0;
    for (int i = 1; i <= k; ++i) c(var_t(k, i)) = 1.0 / 30.0;
    c(var_s(k)) = 1.0 / 3.0;
    return c;
}

std::vector<Matrix> chain_maps(int k) {
    const FrameVectors f = FrameVectors::build(k);
    const Index d = k + 5;
    std::vector<Matrix> L;
    L.reserve(k + 1);
    Matrix L0 = Matrix::Zero(2, d);
    L0(0, var_p0(0)) = 1.0;
    L0(1, var_p0(1)) = 1.0;
    L.push_back(L0);
    for (int i = 1; i <= k; ++i) {
        const Vector2& w = f.w[i - 1];
        const Vector2& v = f.v[i - 1];
        Matrix Li = w * (w.transpose() * L.back());
        Li.row(0) += v(0) * Vector::Unit(d, var_t(k, i)).transpose();
        Li.row(1) += v(1) * Vector::Unit(d, var_t(k, i)).transpose();
        Li(0, var_s(k)) += v(0) * i;
        Li(1, var_s(k)) += v(1) * i;
        L.push_back(std::move(Li));
    }
    return L;
}

PrimalSystem build_primal(const ConstructionParams& params) {
    const int k = params.k;
    if (k < 1) throw InvalidK("build_primal: k >= 1 required");
    const Index d = k + 5;
    const Index m = 4 * k + 7 - (params.drop_s_rows ? 2 : 0);
    const FrameVectors f = FrameVectors::build(k);
    const std::vector<Matrix> L = chain_maps(k);

    PrimalSystem sys;
    sys.k = k;
    sys.A = Matrix::Zero(m, d);
    sys.b = Vector::Zero(m);
    sys.tags.resize(m);
    sys.tag_index.assign(m, 0);

    Index r = 0;
    auto put = [&](RowTag tag, int idx) {
        sys.tags[r] = tag;
        sys.tag_index[r] = idx;
        return r++;
    };

    // |x| <= e1' p0, |y| <= e2' p0.
    {
        Index row = put(RowTag::AbsXPos, 0);
        sys.A(row, var_x()) = 1.0;
        sys.A(row, var_p0(0)) = -1.0;
        row = put(RowTag::AbsXNeg, 0);
        sys.A(row, var_x()) = -1.0;
        sys.A(row, var_p0(0)) = -1.0;
        row = put(RowTag::AbsYPos, 0);
        sys.A(row, var_y()) = 1.0;
        sys.A(row, var_p0(1)) = -1.0;
        row = put(RowTag::AbsYNeg, 0);
        sys.A(row, var_y()) = -1.0;
        sys.A(row, var_p0(1)) = -1.0;
    }

    // |v_i' p_{i-1}| <= t_i + i s.
    for (int i = 1; i <= k; ++i) {
        const Vector2& v = f.v[i - 1];
        const Vector row_prev = (v.transpose() * L[i - 1]).transpose();
        for (double sign : {1.0, -1.0}) {
            Index row = put(sign > 0 ? RowTag::VPos : RowTag::VNeg, i);
            sys.A.row(row) = sign * row_prev.transpose();
            sys.A(row, var_t(k, i)) -= 1.0;
            sys.A(row, var_s(k)) -= static_cast<double>(i);
        }
    }

    // Death barrier e1' p_k <= 1.
    {
        Index row = put(RowTag::Death, 0);
        sys.A.row(row) = L[k].row(0);
        sys.b(row) = 1.0;
    }

    // 0 <= t <= 1.
    for (int i = 1; i <= k; ++i) {
        Index row = put(RowTag::TLow, i);
        sys.A(row, var_t(k, i)) = -1.0;
        row = put(RowTag::THigh, i);
        sys.A(row, var_t(k, i)) = 1.0;
        sys.b(row) = 1.0;
    }

    // 0 <= s <= 1.
    if (!params.drop_s_rows) {
        Index row = put(RowTag::SLow, 0);
        sys.A(row, var_s(k)) = -1.0;
        row = put(RowTag::SHigh, 0);
        sys.A(row, var_s(k)) = 1.0;
        sys.b(row) = 1.0;
    }
    return sys;
}

HPolytope shift_and_normalize(const PrimalSystem& sys, const Vector& center) {
    if (center.size() != sys.dim())
        throw DimensionMismatch("shift_and_normalize: center dimension mismatch");
    Matrix A(sys.rows(), sys.dim());
    for (Index i = 0; i < sys.rows(); ++i) {
        const double slack = sys.b(i) - sys.A.row(i).dot(center);
        if (slack <= 1e-12)
            throw CenterNotInterior("shift_and_normalize: center slack <= 1e-12");
        A.row(i) = sys.A.row(i) / slack;
    }
    return HPolytope(std::move(A), Vector::Ones(sys.rows()));
}

DualInstance build_dual_instance(const ConstructionParams& params) {
    const PrimalSystem sys = build_primal(params);
    const HPolytope shifted = shift_and_normalize(sys, center_point(params.k));
    DualInstance inst{PointCloud{}, Plane2D::coordinate_frame(shifted.dim()), params.k,
                      shifted.dim(), shifted.rows()};
    inst.means = polar_dual_points(shifted);
    for (Vector& p : inst.means.points) p /= 30.0;
    return inst;
}

HPolytope perturb_primal(const HPolytope& h, double sigma, SeededRng& rng) {
    if (sigma < 0.0) throw Error("perturb_primal: sigma < 0");
    double R = 0.0;
    for (Index i = 0; i < h.rows(); ++i) R = std::max(R, h.A.row(i).norm());
    Matrix A = h.A;
    if (sigma > 0.0) {
        const double std_dev = sigma * R;
        for (Index i = 0; i < A.rows(); ++i)
            for (Index j = 0; j < A.cols(); ++j) A(i, j) += std_dev * rng.next_gaussian();
    }
    return HPolytope(std::move(A), h.rhs);
}

PointCloud perturb_dual(const DualInstance& inst, double sigma, SeededRng& rng) {
    if (sigma < 0.0) throw Error("perturb_dual: sigma < 0");
    PointCloud out = inst.means;
    if (sigma > 0.0) {
        for (Vector& p : out.points)
            for (Index j = 0; j < p.size(); ++j) p(j) += sigma * rng.next_gaussian();
    }
    return out;
}

Vector innerdisk_witness(int k, double x, double y) {
    const FrameVectors f = FrameVectors::build(k);
    Vector z = Vector::Zero(k + 5);
    z(var_x()) = x;
    z(var_y()) = y;
    Vector2 p(std::abs(x), std::abs(y));
    z(var_p0(0)) = p(0);
    z(var_p0(1)) = p(1);
    for (int i = 1; i <= k; ++i) {
        const Vector2& w = f.w[i - 1];
        const Vector2& v = f.v[i - 1];
        const double ti = std::abs(v.dot(p));
        z(var_t(k, i)) = ti;
        p = w.dot(p) * w + ti * v;
    }
    z(var_s(k)) = 0.0;
    return z;
}

VerificationReport verify_radii(const ConstructionParams& params, int angle_samples) {
    if (angle_samples < 4) throw Error("verify_radii: angle_samples >= 4 required");
    const int k = params.k;
    const PrimalSystem sys = build_primal(params);
    const Vector center = center_point(k);
    const double outer_bound = 1.0 + std::pow(4.0, -(k + 2));

    VerificationReport rep;

    // (a) Inner disk: the tight-chain witness is feasible on the unit circle.
    rep.innerdisk_min_margin = std::numeric_limits<double>::infinity();
    for (int a = 0; a < angle_samples; ++a) {
        const double th = kTwoPi * (a + 0.5) / angle_samples;
        const Vector z = innerdisk_witness(k, std::cos(th), std::sin(th));
        const double margin = (sys.b - sys.A * z).minCoeff();
        rep.innerdisk_min_margin = std::min(rep.innerdisk_min_margin, margin);
    }
    rep.innerdisk_ok = rep.innerdisk_min_margin >= -1e-9;

    // (b) Outer disk: support of pi_W(P) over sampled directions.
    {
        ActiveSetSolver solver(sys.A, sys.b);
        rep.support_min = std::numeric_limits<double>::infinity();
        rep.support_max = -std::numeric_limits<double>::infinity();
        const Plane2D W = Plane2D::coordinate_frame(k + 5);
        for (int a = 0; a < angle_samples; ++a) {
            const double th = kTwoPi * (a + 0.3) / angle_samples;
            const Vector c = W.direction(th);
            const LpStatus st = a == 0 ? solver.solve(c) : solver.reoptimize(c);
            if (st != LpStatus::Optimal)
                throw NumericalBreakdown("verify_radii: support LP not optimal");
            const double val = c.dot(solver.vertex());
            rep.support_min = std::min(rep.support_min, val);
            rep.support_max = std::max(rep.support_max, val);
        }
        rep.outerdisk_ok =
            rep.support_min >= 1.0 - 1e-9 && rep.support_max <= outer_bound + 1e-9;
    }

    // (c) l-infinity inner ball at the center, r = 1/30.
    {
        const HPolytope P(sys.A, sys.b);
        const BallCertificate cert = contains_ball_linf(P, center, 1.0 / 30.0);
        rep.innerball_margin = cert.margin;
        rep.innerball_ok = cert.contained;
    }

    // (d) Dual containments.
    {
        const DualInstance dual = build_dual_instance(params);
        rep.dual_max_l1 = max_l1_norm(dual.means);
        rep.dual_l1_ball_ok = contains_ball_l1(dual.means, 1.0 / 45.0);
        rep.slice_support_min = std::numeric_limits<double>::infinity();
        rep.slice_support_max = -std::numeric_limits<double>::infinity();
        const int slice_samples = std::min(angle_samples, 512);
        for (int a = 0; a < slice_samples; ++a) {
            const double th = kTwoPi * (a + 0.3) / slice_samples;
            const SliceSupport s = slice_support(dual.means, dual.plane, th);
            if (s.empty) throw EmptySlice("verify_radii: dual slice empty");
            rep.slice_support_min = std::min(rep.slice_support_min, s.value);
            rep.slice_support_max = std::max(rep.slice_support_max, s.value);
        }
        const double lo = 1.0 / (30.0 * (1.0 + std::pow(4.0, -k)));
        rep.dual_ok = rep.dual_max_l1 <= 1.0 + 1e-12 && rep.dual_l1_ball_ok &&
                      rep.slice_support_min >= lo - 1e-9 &&
                      rep.slice_support_max <= 1.0 / 30.0 + 1e-9;
    }
    return rep;
}

}  // namespace shadowlab
