// Command-line front end: construct instances, verify the radius lemmas,
// and run the lower-bound and 2D experiment grids with CSV output.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shadowlab/construction.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/exact.hpp"
#include "shadowlab/experiment.hpp"
#include "shadowlab/io.hpp"

namespace {

using namespace shadowlab;

// Flat key=value config file; keys mirror the long flag names without the
// leading dashes. Flags given on the command line take precedence.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

struct CommonArgs {
    std::vector<int> k_list;
    double sigma_start = 0.01;
    double sigma_end = 0.0;
    int sigma_count = 20;
    int trials = 5;
    std::uint64_t seed = 1;
    std::string method = "sweep";
    double dedup_tol = 1e-7;
    bool exact_mode = false;
    std::string out;
    std::string config_path;
};

void apply_config_defaults(CommonArgs& a, CLI::App* cmd) {
    if (a.config_path.empty()) return;
    const auto kv = read_config_file(a.config_path);
    auto absent = [&](const std::string& flag) {
        const CLI::Option* o = cmd->get_option_no_throw("--" + flag);
        return o == nullptr || o->count() == 0;
    };
    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("k"); v && absent("k")) {
        a.k_list.clear();
        std::istringstream is(*v);
        std::string tok;
        while (std::getline(is, tok, ',')) a.k_list.push_back(std::stoi(tok));
    }
    if (const auto* v = get("sigma-start"); v && absent("sigma-start"))
        a.sigma_start = std::stod(*v);
    if (const auto* v = get("sigma-end"); v && absent("sigma-end"))
        a.sigma_end = std::stod(*v);
    if (const auto* v = get("sigma-count"); v && absent("sigma-count"))
        a.sigma_count = std::stoi(*v);
    if (const auto* v = get("trials"); v && absent("trials")) a.trials = std::stoi(*v);
    if (const auto* v = get("seed"); v && absent("seed")) a.seed = std::stoull(*v);
    if (const auto* v = get("method"); v && absent("method")) a.method = *v;
    if (const auto* v = get("dedup-tol"); v && absent("dedup-tol"))
        a.dedup_tol = std::stod(*v);
    if (const auto* v = get("exact-mode"); v && absent("exact-mode"))
        a.exact_mode = (*v == "1" || *v == "true" || *v == "yes");
    if (const auto* v = get("out"); v && absent("out")) a.out = *v;
}

void add_common_flags(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--k", a.k_list, "Construction size parameter(s)");
    cmd->add_option("--sigma-start", a.sigma_start, "Largest sigma of the grid");
    cmd->add_option("--sigma-end", a.sigma_end,
                    "Smallest sigma (default 0.0001/2^k per k)");
    cmd->add_option("--sigma-count", a.sigma_count, "Grid size");
    cmd->add_option("--trials", a.trials, "Trials per (k, sigma)");
    cmd->add_option("--seed", a.seed, "Master seed");
    cmd->add_option("--method", a.method, "sweep | exact | slice");
    cmd->add_option("--dedup-tol", a.dedup_tol, "Vertex deduplication tolerance");
    cmd->add_flag("--exact-mode", a.exact_mode, "Rational-arithmetic certificates");
    cmd->add_option("--out", a.out, "Output path (or directory prefix)");
    cmd->add_option("--config", a.config_path, "key=value config file");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    save_text(path, content);
    std::cerr << "wrote " << path << "\n";
}

int cmd_construct(const CommonArgs& a) {
    if (a.k_list.empty()) throw InvalidK("construct: no --k given");
    for (int k : a.k_list) {
        if (k < 1) throw InvalidK("construct: k must be >= 1");
        ConstructionParams params;
        params.k = k;
        const PrimalSystem sys = build_primal(params);
        const HPolytope shifted = shift_and_normalize(sys, center_point(k));
        const DualInstance dual = build_dual_instance(params);

        std::ostringstream hs;
        write_hpolytope(hs, shifted);
        std::ostringstream cs;
        write_cloud(cs, dual.means);

        const std::string prefix = a.out.empty() ? std::string("instance") : a.out;
        std::ostringstream hname;
        hname << prefix << "_k" << k << "_" << std::hex << content_hash(hs.str())
              << ".hpoly";
        std::ostringstream cname;
        cname << prefix << "_k" << k << "_" << std::hex << content_hash(cs.str())
              << ".cloud";
        save_text(hname.str(), hs.str());
        save_text(cname.str(), cs.str());
        std::cout << "k=" << k << " rows=" << shifted.rows() << " cols=" << shifted.dim()
                  << " " << hname.str() << " " << cname.str() << "\n";
    }
    return 0;
}

int cmd_verify(const CommonArgs& a, int angle_samples) {
    if (a.k_list.empty()) throw InvalidK("verify: no --k given");
    bool all_ok = true;
    std::ostringstream report;
    for (int k : a.k_list) {
        if (k < 1) throw InvalidK("verify: k must be >= 1");
        ConstructionParams params;
        params.k = k;
        const VerificationReport r = verify_radii(params, angle_samples);
        const double outer_margin = std::pow(4.0, -k - 2);
        report << "k=" << k << "\n"
               << "  innerdisk  min_margin=" << format_double(r.innerdisk_min_margin)
               << (r.innerdisk_ok ? "  ok" : "  FAIL") << "\n"
               << "  outerdisk  support=[" << format_double(r.support_min) << ", "
               << format_double(r.support_max) << "]"
               << (r.outerdisk_ok ? "  ok" : "  FAIL") << "\n"
               << "  innerball  margin=" << format_double(r.innerball_margin)
               << (r.innerball_ok ? "  ok" : "  FAIL") << "\n"
               << "  dual       max_l1=" << format_double(r.dual_max_l1)
               << " slice_support=[" << format_double(r.slice_support_min) << ", "
               << format_double(r.slice_support_max) << "]"
               << (r.dual_ok ? "  ok" : "  FAIL") << "\n";
        if (outer_margin < 1e-7 && !a.exact_mode)
            report << "  warning: outer-disk margin " << format_double(outer_margin)
                   << " is below float resolution; rerun with --exact-mode\n";
        all_ok = all_ok && r.all_ok();
        if (a.exact_mode) {
            const exact::ExactReport er = exact::verify_certificates_exact(params);
            report << "  exact      innerball "
                   << (er.innerball_ok ? "ok" : "FAIL") << ", dual l1 "
                   << (er.dual_l1_le_one ? "ok" : "FAIL") << ", l1-ball "
                   << (er.dual_l1_ball_ok ? "ok" : "FAIL") << "\n";
            all_ok = all_ok && er.all_ok();
        }
    }
    report << (all_ok ? "verify: PASS\n" : "verify: FAIL\n");
    write_output(a.out, report.str());
    return all_ok ? 0 : 1;
}

int cmd_experiment_lb(const CommonArgs& a) {
    ExperimentConfig cfg;
    if (!a.k_list.empty()) cfg.k_list = a.k_list;
    cfg.sigma_start = a.sigma_start;
    cfg.sigma_end = a.sigma_end;
    cfg.sigma_count = a.sigma_count;
    cfg.trials = a.trials;
    cfg.master_seed = a.seed;
    cfg.method = a.method;
    cfg.dedup_tol = a.dedup_tol;
    if (cfg.trials < 1) throw PreconditionViolated("experiment-lb: trials < 1");
    const std::vector<ExperimentRecord> recs = run_lb_experiment(cfg);
    write_output(a.out, lb_records_to_csv(recs));
    return 0;
}

int cmd_experiment_2d(const CommonArgs& a, int n, const std::string& layout_name) {
    if (a.trials < 1) throw PreconditionViolated("experiment-2d: trials < 1");
    Layout2D layout;
    if (layout_name == "circle")
        layout = Layout2D::unit_circle_equally_spaced(n);
    else if (layout_name == "point")
        layout = Layout2D::single_point(n);
    else
        throw ParseError("experiment-2d: unknown layout " + layout_name);
    std::vector<double> sigmas;
    if (a.sigma_start <= 0.0) {
        sigmas.assign(static_cast<std::size_t>(a.sigma_count), 0.0);
        sigmas.resize(1);
    } else {
        const double end = a.sigma_end > 0.0 ? a.sigma_end : a.sigma_start;
        sigmas = sigma_grid(a.sigma_start, end, a.sigma_count);
    }
    const auto recs = run_2d_records(layout, layout_name, sigmas, a.trials, a.seed);
    write_output(a.out, records_2d_to_csv(recs));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shadow-size experiment toolkit"};
    app.require_subcommand(1);

    CommonArgs construct_args, verify_args, lb_args, d2_args;
    int angle_samples = 1024;
    int n2d = 64;
    std::string layout_name = "circle";

    CLI::App* c_construct = app.add_subcommand("construct", "Emit instance files");
    add_common_flags(c_construct, construct_args);

    CLI::App* c_verify = app.add_subcommand("verify", "Check the radius lemmas");
    add_common_flags(c_verify, verify_args);
    c_verify->add_option("--angle-samples", angle_samples, "Directions sampled");

    CLI::App* c_lb = app.add_subcommand("experiment-lb", "Lower-bound shadow grid");
    add_common_flags(c_lb, lb_args);

    CLI::App* c_2d = app.add_subcommand("experiment-2d", "Planar hull experiments");
    add_common_flags(c_2d, d2_args);
    c_2d->add_option("--n", n2d, "Point count");
    c_2d->add_option("--layout", layout_name, "circle | point");

    try {
        app.parse(argc, argv);
        if (c_construct->parsed()) {
            apply_config_defaults(construct_args, c_construct);
            return cmd_construct(construct_args);
        }
        if (c_verify->parsed()) {
            apply_config_defaults(verify_args, c_verify);
            return cmd_verify(verify_args, angle_samples);
        }
        if (c_lb->parsed()) {
            apply_config_defaults(lb_args, c_lb);
            return cmd_experiment_lb(lb_args);
        }
        if (c_2d->parsed()) {
            apply_config_defaults(d2_args, c_2d);
            return cmd_experiment_2d(d2_args, n2d, layout_name);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const shadowlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
