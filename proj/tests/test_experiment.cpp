#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <shadowlab/experiment.hpp>
#include <shadowlab/io.hpp>

#include "helpers.hpp"

using namespace shadowlab;
namespace fs = std::filesystem;

namespace {

// CSV with the wall-clock runtime_ms column blanked out; everything else in a
// run is seed-determined
std::string mask_runtime(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (fields.size() == 12) fields[10] = "-";
        for (std::size_t i = 0; i < fields.size(); ++i)
            out << (i ? "," : "") << fields[i];
        out << '\n';
    }
    return out.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SHADOWLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("shadowlab_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("sigma grid is log-spaced and decreasing") {
    const std::vector<double> g = sigma_grid(0.01, 1e-5, 7);
    REQUIRE(g.size() == 7);
    CHECK(g.front() == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(g.back() == doctest::Approx(1e-5).epsilon(1e-12));
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g[i] < g[i - 1]);
        // constant ratio
        CHECK(g[i] / g[i - 1] == doctest::Approx(g[1] / g[0]).epsilon(1e-10));
    }
    CHECK(sigma_grid(0.5, 1e-3, 1) == std::vector<double>{0.5});
    CHECK(sigma_grid(0.0, 1e-3, 5) == std::vector<double>(5, 0.0));
    for (int k : {1, 4, 10})
        CHECK(default_sigma_end(k) == doctest::Approx(1e-4 / std::pow(2.0, k)).epsilon(1e-15));
}

TEST_CASE("unperturbed measurement row") {
    const ExperimentRecord rec = measure_lb_row(4, 0.0, 0, 12345, "sweep", 1e-7);
    CHECK(rec.status == "ok");
    CHECK(rec.k == 4);
    CHECK(rec.d == 9);
    CHECK(rec.n == 23);
    CHECK(rec.shadow_count == 32);
    CHECK(rec.angle_sum == doctest::Approx(2.0 * testutil::kPi).epsilon(1e-9));
    CHECK(rec.perimeter ==
          doctest::Approx(64.0 * std::tan(testutil::kPi / 32.0)).epsilon(1e-9));
    CHECK(rec.runtime_ms >= 0.0);

    // all three methods agree at sigma = 0
    CHECK(measure_lb_row(4, 0.0, 0, 12345, "exact", 1e-7).shadow_count == 32);
    CHECK(measure_lb_row(4, 0.0, 0, 12345, "slice", 1e-7).shadow_count == 32);
}

TEST_CASE("experiment grid is deterministic and replayable") {
    ExperimentConfig cfg;
    cfg.k_list = {2};
    cfg.sigma_start = 1e-3;
    cfg.sigma_end = 1e-4;
    cfg.sigma_count = 3;
    cfg.trials = 2;
    cfg.master_seed = 7;

    const std::vector<ExperimentRecord> a = run_lb_experiment(cfg);
    const std::vector<ExperimentRecord> b = run_lb_experiment(cfg);
    REQUIRE(a.size() == 6);
    CHECK(mask_runtime(lb_records_to_csv(a)) == mask_runtime(lb_records_to_csv(b)));

    // sigma descending, trials ascending within sigma
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(a[i].sigma <= a[i - 1].sigma + 1e-15);

    // each row replays exactly from its own (k, sigma, trial, seed)
    for (const ExperimentRecord& r : a) {
        const ExperimentRecord replay =
            measure_lb_row(r.k, r.sigma, r.trial, r.seed, r.method, cfg.dedup_tol);
        CHECK(replay.shadow_count == r.shadow_count);
        CHECK(replay.perimeter == r.perimeter);
    }

    // a different master seed produces different perturbation seeds
    cfg.master_seed = 8;
    const std::vector<ExperimentRecord> c = run_lb_experiment(cfg);
    CHECK(c[0].seed != a[0].seed);
}

TEST_CASE("csv headers and field counts") {
    ExperimentConfig cfg;
    cfg.k_list = {2};
    cfg.sigma_start = 0.0;
    cfg.trials = 1;
    const std::string csv = lb_records_to_csv(run_lb_experiment(cfg));
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "k,d,n,sigma,trial,seed,method,shadow_count,perimeter,angle_sum,runtime_ms,status");
    std::string row;
    REQUIRE(std::getline(in, row));
    CHECK(std::count(row.begin(), row.end(), ',') == 11);
    CHECK(row.substr(0, 2) == "2,");
    CHECK(row.find(",8,") != std::string::npos);  // 2^{k+1} = 8

    const auto recs2d = run_2d_records(Layout2D::unit_circle_equally_spaced(16), "circle",
                                       {0.0}, 2, 1);
    const std::string csv2d = records_2d_to_csv(recs2d);
    CHECK(csv2d.rfind("layout,n,sigma,trial,seed,edges\n", 0) == 0);
    CHECK(records_2d_to_csv(run_2d_records(Layout2D::unit_circle_equally_spaced(16),
                                           "circle", {0.0}, 2, 1)) == csv2d);
    for (const Record2D& r : recs2d) CHECK(r.edges == 16);
}

TEST_CASE("loglog slope recovers synthetic exponents") {
    std::vector<double> x, y, y2;
    for (int i = 0; i < 12; ++i) {
        const double xi = std::pow(10.0, -0.25 * i);
        x.push_back(xi);
        y.push_back(3.0 * std::pow(xi, -0.75));
        y2.push_back(std::pow(xi, 0.5));
    }
    CHECK(loglog_slope(x, y) == doctest::Approx(-0.75).epsilon(1e-10));
    CHECK(loglog_slope(x, y2) == doctest::Approx(0.5).epsilon(1e-10));
    // non-positive pairs are skipped, not poisoning the fit
    x.push_back(1e-9);
    y.push_back(0.0);
    CHECK(loglog_slope(x, y) == doctest::Approx(-0.75).epsilon(1e-10));
}

TEST_CASE("cli construct emits loadable instance files") {
    const fs::path dir = fresh_dir("construct");
    REQUIRE(run_cli("construct --k 4 --k 1 --out " + (dir / "inst").string() +
                    " >/dev/null") == 0);
    int hpoly_seen = 0, cloud_seen = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        std::ifstream in(entry.path());
        REQUIRE(in.good());
        if (entry.path().extension() == ".hpoly") {
            const HPolytope h = read_hpolytope(in);
            if (name.find("_k4_") != std::string::npos) {
                CHECK(h.rows() == 23);
                CHECK(h.dim() == 9);
            } else {
                CHECK(h.rows() == 11);
                CHECK(h.dim() == 6);
            }
            ++hpoly_seen;
        } else if (entry.path().extension() == ".cloud") {
            const PointCloud c = read_cloud(in);
            if (name.find("_k4_") != std::string::npos) {
                CHECK(c.size() == 23);
                CHECK(c.dim() == 9);
            }
            ++cloud_seen;
        }
    }
    CHECK(hpoly_seen == 2);
    CHECK(cloud_seen == 2);

    CHECK(run_cli("construct --k 0 >/dev/null") != 0);
}

TEST_CASE("cli experiment-2d writes the expected csv") {
    const fs::path dir = fresh_dir("exp2d");
    const fs::path out = dir / "runs.csv";
    REQUIRE(run_cli("experiment-2d --layout circle --n 64 --sigma-start 0 --trials 2 "
                    "--seed 3 --out " +
                    out.string()) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "layout,n,sigma,trial,seed,edges");
    int rows = 0;
    while (std::getline(in, row)) {
        CHECK(row.rfind("circle,64,0,", 0) == 0);
        CHECK(row.substr(row.rfind(',') + 1) == "64");
        ++rows;
    }
    CHECK(rows == 2);

    CHECK(run_cli("experiment-2d --layout circle --n 8 --trials 0 >/dev/null") != 0);
    CHECK(run_cli("experiment-2d --layout hexagon --n 8 >/dev/null") != 0);
}

TEST_CASE("cli experiment-lb at sigma 0 reports 2^{k+1}") {
    const fs::path dir = fresh_dir("explb");
    const fs::path out = dir / "lb.csv";
    REQUIRE(run_cli("experiment-lb --k 2 --sigma-start 0 --trials 1 --seed 1 --out " +
                    out.string()) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string header, row;
    std::getline(in, header);
    REQUIRE(std::getline(in, row));
    // k,d,n,sigma,...: shadow_count is field 8
    std::vector<std::string> fields;
    std::istringstream ls(row);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() == 12);
    CHECK(fields[0] == "2");
    CHECK(fields[7] == "8");
    CHECK(fields[11] == "ok");
}

TEST_CASE("cli config file supplies defaults, flags override") {
    const fs::path dir = fresh_dir("config");
    const fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "# comment\n"
            << "k = 1\n"
            << "trials = 1\n"
            << "sigma-start = 0\n"
            << "out = " << (dir / "from_config.csv").string() << "\n";
    }
    REQUIRE(run_cli("experiment-lb --config " + cfg.string()) == 0);
    CHECK(fs::exists(dir / "from_config.csv"));

    // explicit --out beats the config value
    REQUIRE(run_cli("experiment-lb --config " + cfg.string() + " --out " +
                    (dir / "flag_wins.csv").string()) == 0);
    CHECK(fs::exists(dir / "flag_wins.csv"));
}
