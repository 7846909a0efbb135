#include "shadowlab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "shadowlab/construction.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/io.hpp"

namespace shadowlab {

std::vector<double> sigma_grid(double start, double end, int count) {
    if (count < 1) throw PreconditionViolated("sigma_grid: count < 1");
    if (start <= 0.0) return std::vector<double>(static_cast<std::size_t>(count), 0.0);
    if (count == 1) return {start};
    if (end <= 0.0 || end > start)
        throw PreconditionViolated("sigma_grid: need 0 < end <= start");
    std::vector<double> g(static_cast<std::size_t>(count));
    const double la = std::log(start), lb = std::log(end);
    for (int i = 0; i < count; ++i)
        g[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (count - 1));
    g.front() = start;
    g.back() = end;
    return g;
}

double default_sigma_end(int k) { return 1e-4 / std::pow(2.0, k); }

ExperimentRecord measure_lb_row(int k, double sigma, int trial, std::uint64_t seed,
                                const std::string& method, double dedup_tol) {
    ExperimentRecord rec;
    rec.k = k;
    rec.sigma = sigma;
    rec.trial = trial;
    rec.seed = seed;
    rec.method = method;
    rec.perimeter = std::numeric_limits<double>::quiet_NaN();
    rec.angle_sum = std::numeric_limits<double>::quiet_NaN();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        ConstructionParams params;
        params.k = k;
        SeededRng rng(seed);
        const int num_angles = 1 << (k + 5);

        ShadowPolygon poly;
        if (method == "slice") {
            const DualInstance inst = build_dual_instance(params);
            rec.d = inst.d;
            rec.n = inst.n;
            const PointCloud cloud =
                sigma > 0.0 ? perturb_dual(inst, sigma, rng) : inst.means;
            poly = slice_polygon(cloud, inst.plane);
            rec.shadow_count = poly.size();
        } else {
            const PrimalSystem sys = build_primal(params);
            HPolytope h = shift_and_normalize(sys, center_point(k));
            rec.d = h.dim();
            rec.n = h.rows();
            if (sigma > 0.0) h = perturb_primal(h, sigma, rng);
            const Plane2D plane = Plane2D::coordinate_frame(h.dim());
            if (method == "exact") {
                poly = exact_shadow(h, plane);
                rec.shadow_count = poly.size();
            } else if (method == "sweep") {
                SweepConfig sc;
                sc.num_angles = num_angles;
                sc.dedup_tol = dedup_tol;
                const SweepResult res = sweep_count(h, plane, sc);
                rec.shadow_count = res.count;
                poly = res.polygon;
            } else {
                throw PreconditionViolated("measure_lb_row: unknown method " + method);
            }
        }
        if (poly.size() >= 3) {
            const PolygonStats st = polygon_stats(poly);
            rec.perimeter = st.perimeter;
            double s = 0.0;
            for (double a : st.exterior_angles) s += a;
            rec.angle_sum = s;
        }
    } catch (const Error& e) {
        rec.status = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

std::vector<ExperimentRecord> run_lb_experiment(const ExperimentConfig& cfg) {
    std::vector<ExperimentRecord> out;
    const SeededRng root(cfg.master_seed, "experiment-lb");
    for (int k : cfg.k_list) {
        const double end = cfg.sigma_end > 0.0 ? cfg.sigma_end : default_sigma_end(k);
        const std::vector<double> grid =
            sigma_grid(cfg.sigma_start, std::min(end, cfg.sigma_start), cfg.sigma_count);
        const SeededRng krng = root.stream(static_cast<std::uint64_t>(k));
        for (std::size_t si = 0; si < grid.size(); ++si) {
            const SeededRng srng = krng.stream(static_cast<std::uint64_t>(si));
            for (int t = 0; t < cfg.trials; ++t) {
                const std::uint64_t seed =
                    srng.stream(static_cast<std::uint64_t>(t)).state();
                out.push_back(measure_lb_row(k, grid[si], t, seed, cfg.method,
                                             cfg.dedup_tol));
            }
        }
    }
    return out;
}

std::string lb_records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream os;
    os << "k,d,n,sigma,trial,seed,method,shadow_count,perimeter,angle_sum,"
          "runtime_ms,status\n";
    for (const ExperimentRecord& r : records) {
        os << r.k << ',' << r.d << ',' << r.n << ',' << format_double(r.sigma) << ','
           << r.trial << ',' << r.seed << ',' << r.method << ',' << r.shadow_count
           << ',' << format_double(r.perimeter) << ',' << format_double(r.angle_sum)
           << ',' << format_double(r.runtime_ms) << ',' << r.status << '\n';
    }
    return os.str();
}

std::vector<Record2D> run_2d_records(const Layout2D& layout, const std::string& name,
                                     const std::vector<double>& sigmas, int trials,
                                     std::uint64_t master_seed) {
    std::vector<Record2D> out;
    const SeededRng root(master_seed, "experiment-2d");
    for (std::size_t si = 0; si < sigmas.size(); ++si) {
        const SeededRng srng = root.stream(static_cast<std::uint64_t>(si));
        for (int t = 0; t < trials; ++t) {
            SeededRng trng = srng.stream(static_cast<std::uint64_t>(t));
            Record2D rec;
            rec.layout = name;
            rec.n = static_cast<int>(layout.means.size());
            rec.sigma = sigmas[si];
            rec.trial = t;
            rec.seed = trng.state();
            std::vector<Vector2> pts;
            pts.reserve(layout.means.size());
            for (const Vector2& m : layout.means)
                pts.emplace_back(m.x() + rec.sigma * trng.next_gaussian(),
                                 m.y() + rec.sigma * trng.next_gaussian());
            rec.edges = hull_edge_count(convex_hull_2d(pts));
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::string records_2d_to_csv(const std::vector<Record2D>& records) {
    std::ostringstream os;
    os << "layout,n,sigma,trial,seed,edges\n";
    for (const Record2D& r : records)
        os << r.layout << ',' << r.n << ',' << format_double(r.sigma) << ',' << r.trial
           << ',' << r.seed << ',' << r.edges << '\n';
    return os.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DimensionMismatch("loglog_slope: size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw PreconditionViolated("loglog_slope: fewer than 2 usable points");
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw NumericalBreakdown("loglog_slope: degenerate x values");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace shadowlab
