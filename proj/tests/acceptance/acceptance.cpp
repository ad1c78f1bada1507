// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/analysis/fit.hpp"
#include "dfarm/analysis/hypothesis.hpp"
#include "dfarm/analysis/pareto.hpp"
#include "dfarm/analysis/special.hpp"
#include "dfarm/csv.hpp"
#include "dfarm/doe/design.hpp"
#include "dfarm/exec/controller.hpp"
#include "dfarm/geo/coords.hpp"
#include "dfarm/models/estimators.hpp"
#include "dfarm/models/metrics.hpp"
#include "dfarm/models/model.hpp"
#include "dfarm/models/search.hpp"
#include "dfarm/models/smote.hpp"
#include "dfarm/rng.hpp"
#include "dfarm/simkit/navsim.hpp"
#include "oracles/frozen_values.hpp"

#ifdef DFARM_HAVE_CLI
#include "dfarm_cli/cli.hpp"
#include "json.hpp"
#endif

using namespace dfarm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects named sub-checks; the criterion passes when all of them do.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failed_.push_back(what);
        notes_.push_back((ok ? "" : "!") + what);
    }
    Outcome outcome() const {
        std::string detail;
        for (const auto& n : notes_) detail += (detail.empty() ? "" : "; ") + n;
        return {failed_.empty(), detail};
    }

private:
    std::vector<std::string> failed_;
    std::vector<std::string> notes_;
};

std::string fmt(double v, int digits = 6) { return csv::format_short(v, digits); }

Outcome lhs_stratification() {
    const std::vector<doe::FactorSpec> space{{"speed", doe::Continuous{350.0, 550.0}},
                                             {"altitude", doe::Continuous{10000.0, 35000.0}},
                                             {"tactic", doe::Categorical{{"aggressive", "defensive", "neutral"}}},
                                             {"radar", doe::Boolean{}}};
    Checks c;
    for (std::size_t n : {10u, 100u, 1000u}) {
        const auto d = doe::lhs_design(space, n, 1000 + n);
        bool strata_ok = true;
        for (std::size_t col : {0u, 1u}) {
            const auto& k = std::get<doe::Continuous>(space[col].kind);
            std::vector<int> hits(n, 0);
            for (const auto& row : d.rows) {
                const double u = (std::get<double>(row[col]) - k.lo) / (k.hi - k.lo);
                const auto s = static_cast<std::size_t>(std::floor(u * static_cast<double>(n)));
                if (s < n) ++hits[s];
            }
            strata_ok = strata_ok && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
        }
        std::map<std::string, int> levels;
        std::map<bool, int> flags;
        for (const auto& row : d.rows) {
            ++levels[std::get<std::string>(row[2])];
            ++flags[std::get<bool>(row[3])];
        }
        auto spread = [](const auto& m) {
            int lo = INT32_MAX, hi = 0;
            for (const auto& [key, v] : m) lo = std::min(lo, v), hi = std::max(hi, v);
            return hi - lo;
        };
        c.expect(strata_ok, "n=" + std::to_string(n) + " one sample per stratum");
        c.expect(levels.size() == 3 && spread(levels) <= 1 && spread(flags) <= 1,
                 "n=" + std::to_string(n) + " level counts differ by <= 1");
    }
    return c.outcome();
}

Outcome execution_prefix() {
    const auto params = simkit::calibrate();
    const auto design = doe::lhs_design(simkit::navigation_factors(), 1000, 42);
    const auto runner = simkit::navsim_runner(params, 42);
    exec::StopCriterion after_two = [](const ResultTable& cur, const ResultTable& prev) {
        return !prev.empty() && cur.rows() >= 200;
    };
    const auto [stopped, rs] = exec::run_batches(design, runner, after_two, 100);
    const auto [full, rf] = exec::run_batches(design, runner, exec::never_stop(), 100);
    Checks c;
    c.expect(stopped == full.slice(0, 200), "stopped run equals first 200 rows of exhaustive run");
    c.expect(rs.rows_executed == 200 && rs.chunks_executed == 2 && rs.stop_chunk == std::optional<std::size_t>(2) &&
                 rs.stop_reason == exec::StopReason::criterion_met,
             "stopped accounting 200 rows / 2 chunks / stop at chunk 2");
    c.expect(rf.rows_executed == 1000 && rf.chunks_executed == 10 && rf.stop_reason == exec::StopReason::design_exhausted,
             "exhaustive accounting 1000 rows / 10 chunks");
    return c.outcome();
}

Outcome convergence_early_stop() {
    const auto design = doe::lhs_design({{"u", doe::Continuous{0.0, 1.0}}}, 10000, 3);
    int stopped = 0;
    std::size_t max_rows = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        exec::Runner stream = [seed](const doe::DesignChunk& chunk) {
            std::vector<std::size_t> idx(chunk.size());
            std::vector<double> y(chunk.size());
            for (std::size_t i = 0; i < chunk.size(); ++i) {
                idx[i] = chunk.index(i);
                y[i] = CounterRng::substream(seed, idx[i]).normal(100.0, 1.0);
            }
            ResultTable t(idx);
            t.add_column(DataColumn::numeric("metric", std::move(y)));
            return t;
        };
        const auto [res, rep] =
            exec::run_batches(design, stream, exec::mean_convergence_criterion("metric", 0.005, 1e-9), 100);
        if (rep.stop_reason == exec::StopReason::criterion_met && rep.rows_executed < 10000) ++stopped;
        max_rows = std::max(max_rows, rep.rows_executed);
    }
    Checks c;
    c.expect(stopped >= 90, std::to_string(stopped) + "/100 runs stopped early (max rows " + std::to_string(max_rows) + ")");
    return c.outcome();
}

Outcome pareto_oracle() {
    using analysis::Direction;
    Checks c;
    for (std::size_t m : {2u, 3u}) {
        int matches = 0;
        std::size_t largest = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            CounterRng rng = CounterRng::substream(seed, m);
            std::vector<std::vector<double>> pts(1000, std::vector<double>(m));
            for (auto& p : pts)
                for (auto& v : p) v = rng.uniform();
            std::vector<Direction> dirs(m, Direction::minimize);
            if (seed % 2 == 1) dirs[0] = Direction::maximize;
            std::vector<std::size_t> brute;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                bool dominated = false;
                for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
                    bool no_worse = true, better = false;
                    for (std::size_t k = 0; k < m; ++k) {
                        const double a = dirs[k] == Direction::minimize ? pts[j][k] : -pts[j][k];
                        const double b = dirs[k] == Direction::minimize ? pts[i][k] : -pts[i][k];
                        no_worse = no_worse && a <= b;
                        better = better || a < b;
                    }
                    dominated = no_worse && better;
                }
                if (!dominated) brute.push_back(i);
            }
            const auto front = analysis::pareto_front(pts, dirs).front;
            matches += front == brute;
            largest = std::max(largest, front.size());
        }
        c.expect(matches == 20, std::to_string(m) + " objectives: " + std::to_string(matches) +
                                    "/20 fronts identical (largest " + std::to_string(largest) + ")");
    }
    return c.outcome();
}

Outcome hypothesis_calibration() {
    auto sample = [](std::uint64_t seed, std::uint64_t group, double mean) {
        CounterRng rng = CounterRng::substream(seed, group);
        std::vector<double> v(100);
        for (auto& x : v) x = rng.normal(mean, 1.0);
        return v;
    };
    int power = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::vector<std::vector<double>> g{sample(seed, 0, 0.0), sample(seed, 1, 1.0)};
        power += analysis::run_hypothesis_test(g, false, 0.05).decision == analysis::Decision::reject;
    }
    int false_rejects = 0;
    for (std::uint64_t seed = 1000; seed < 2000; ++seed) {
        const std::vector<std::vector<double>> g{sample(seed, 0, 0.0), sample(seed, 1, 0.0)};
        false_rejects += analysis::run_hypothesis_test(g, false, 0.05).decision == analysis::Decision::reject;
    }
    const std::vector<std::vector<double>> shifted{{1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}, {3, 4, 5, 6, 7}};
    const double f = analysis::one_way_anova(shifted).statistic;
    const double rate = false_rejects / 1000.0;
    Checks c;
    c.expect(power >= 99, "shift 1: " + std::to_string(power) + "/100 rejected");
    c.expect(rate >= 0.03 && rate <= 0.07, "null: type-I rate " + fmt(rate, 3));
    c.expect(std::abs(f - 2.0) <= 1e-9, "ANOVA F = " + fmt(f, 15));
    return c.outcome();
}

Outcome special_functions() {
    double worst_gamma = 0.0, worst_beta = 0.0;
    for (const auto& r : oracle::kGammaP)
        worst_gamma = std::max(worst_gamma, std::abs(analysis::regularized_gamma_p(r[0], r[1]) - r[2]));
    for (const auto& r : oracle::kBetaI)
        worst_beta = std::max(worst_beta, std::abs(analysis::regularized_beta(r[0], r[1], r[2]) - r[3]));
    const std::size_t probes = std::size(oracle::kGammaP) + std::size(oracle::kBetaI);
    Checks c;
    c.expect(probes == 100, std::to_string(probes) + " probes");
    c.expect(worst_gamma < 1e-10, "gamma max error " + fmt(worst_gamma, 3));
    c.expect(worst_beta < 1e-10, "beta max error " + fmt(worst_beta, 3));
    return c.outcome();
}

Outcome distribution_recovery() {
    using analysis::Family;
    // Uniform samples come from U(2, 7): on (0, 1) the beta family contains
    // the uniform law and fits it with one more parameter.
    const std::vector<std::pair<Family, std::function<double(CounterRng&)>>> truths{
        {Family::normal, [](CounterRng& r) { return r.normal(3.0, 2.0); }},
        {Family::uniform, [](CounterRng& r) { return r.uniform(2.0, 7.0); }},
        {Family::exponential, [](CounterRng& r) { return -std::log1p(-r.uniform()) / 1.5; }},
        {Family::chi_squared,
         [](CounterRng& r) {
             double s = 0.0;
             for (int k = 0; k < 4; ++k) {
                 const double z = r.normal();
                 s += z * z;
             }
             return s;
         }},
        {Family::beta, [](CounterRng& r) {
             // Beta(2, 5) is the 2nd order statistic of 6 uniforms.
             double u[6];
             for (double& v : u) v = r.uniform();
             std::nth_element(u, u + 1, u + 6);
             return u[1];
         }}};
    Checks c;
    for (std::size_t f = 0; f < truths.size(); ++f) {
        int first = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            CounterRng rng = CounterRng::substream(seed, f);
            std::vector<double> x(5000);
            for (auto& v : x) v = truths[f].second(rng);
            const auto rep = analysis::fit_distributions(x, analysis::applicable_families(x));
            first += rep.ranking.front() == truths[f].first;
        }
        c.expect(first >= 18, std::string(analysis::to_string(truths[f].first)) + " " + std::to_string(first) + "/20");
    }
    return c.outcome();
}

Outcome geo_round_trip() {
    CounterRng rng(8);
    double dlat = 0.0, dlon = 0.0, dalt = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const geo::GeodeticCoord g{rng.uniform(-89.9, 89.9), rng.uniform(-180.0, 180.0), rng.uniform(-5000.0, 50000.0)};
        const auto back = geo::ecef_to_geodetic(geo::geodetic_to_ecef(g));
        double lon = std::abs(back.lon - g.lon);
        lon = std::min(lon, 360.0 - lon);
        dlat = std::max(dlat, std::abs(back.lat - g.lat));
        dlon = std::max(dlon, lon);
        dalt = std::max(dalt, std::abs(back.alt - g.alt));
    }
    const auto eq = geo::geodetic_to_ecef({0.0, 0.0, 0.0});
    const auto pole = geo::geodetic_to_ecef({90.0, 0.0, 0.0});
    Checks c;
    c.expect(dlat < 1e-9 && dlon < 1e-9, "max |dlat| " + fmt(dlat, 3) + " deg, |dlon| " + fmt(dlon, 3) + " deg");
    c.expect(dalt < 1e-4, "max |dalt| " + fmt(dalt, 3) + " m");
    c.expect(eq.x == 6378137.0 && eq.y == 0.0 && eq.z == 0.0, "(0,0,0) -> (6378137,0,0)");
    c.expect(std::abs(pole.z - 6356752.3142) <= 1e-4, "(90,0,0) -> z " + fmt(pole.z, 12));
    return c.outcome();
}

Outcome model_suite() {
    using namespace dfarm::models;
    Checks c;
    auto matrix = [](std::size_t rows, std::size_t cols, std::uint64_t seed) {
        CounterRng rng(seed);
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform(-1.0, 1.0);
        return m;
    };

    {
        Eigen::MatrixXd x(6, 1);
        x << -3, -1, 0, 2, 5, 8;
        Targets t;
        t.values = (2.0 * x.col(0)).array() + 1.0;
        const auto m = RidgeModel::fit(x, t, 0.0);
        const double err = std::max(std::abs(m.coef(0, 0) - 2.0), std::abs(m.intercept(0) - 1.0));
        c.expect(err < 1e-9, "ridge (2,1) error " + fmt(err, 3));
    }
    {
        const Eigen::MatrixXd x = matrix(20, 4, 1);
        Targets t;
        t.values = x.col(0) - x.col(1).cwiseProduct(x.col(2)) + 0.5 * x.col(3);
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const MlpModel net(4, {6, 5}, 1, false, seed);
            const Eigen::VectorXd g = net.gradient(x, t);
            for (Eigen::Index i = 0; i < g.size(); ++i) {
                MlpModel probe = net;
                Eigen::VectorXd p = net.parameters();
                p[i] += 1e-5;
                probe.set_parameters(p);
                const double up = probe.loss(x, t);
                p[i] -= 2e-5;
                probe.set_parameters(p);
                const double fd = (up - probe.loss(x, t)) / 2e-5;
                worst = std::max(worst, std::abs(fd - g[i]) / std::max({std::abs(fd), std::abs(g[i]), 1e-8}));
            }
        }
        c.expect(worst < 1e-4, "mlp gradient max rel error " + fmt(worst, 3));
    }
    {
        const Eigen::MatrixXd x = matrix(200, 3, 2);
        Targets t;
        t.values = (3.0 * x.col(0)).array().sin() + x.col(1).array() * x.col(2).array();
        const Eigen::MatrixXd q = matrix(100, 3, 3);
        bool same = true;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const TreeParams p{8, 1, 1.0};
            same = same && ForestModel::fit(x, t, 1, false, p, seed).predict(q) == TreeModel::fit(x, t, p, seed).predict(q);
        }
        c.expect(same, "one-tree forest == tree");
    }
    {
        bool counts = true, segments = true;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Eigen::MatrixXd x = matrix(60, 3, 100 + seed);
            std::vector<std::string> lab(60, "major");
            for (int i = 0; i < 60; i += 6) lab[i] = "minor";
            const auto r = smote(x, lab, "minor", 5, 200, seed);
            counts = counts && r.samples.rows() == 20;
            for (Eigen::Index s = 0; s < r.samples.rows(); ++s) {
                const auto p = r.parent[s], q = r.neighbor[s];
                const Eigen::RowVectorXd on = x.row(p) + r.gap[s] * (x.row(q) - x.row(p));
                const double dq = (x.row(q) - x.row(p)).norm();
                int closer = 0;
                for (int i = 0; i < 60; ++i)
                    if (lab[i] == "minor" && static_cast<std::size_t>(i) != p && (x.row(i) - x.row(p)).norm() < dq) ++closer;
                segments = segments && lab[p] == "minor" && lab[q] == "minor" && r.gap[s] >= 0.0 && r.gap[s] <= 1.0 &&
                           (r.samples.row(s) - on).cwiseAbs().maxCoeff() < 1e-12 && closer < 5;
            }
        }
        c.expect(counts, "smote 10 minority x 200% -> 20 points on 20 seeds");
        c.expect(segments, "smote points on parent-neighbour segments");
    }
    {
        auto noisy = [](std::size_t n, std::uint64_t seed) {
            CounterRng rng(seed);
            std::vector<double> x(n), y(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = rng.uniform(-3.0, 3.0);
                y[i] = 2.0 * x[i] + 1.0 + rng.normal(0.0, 0.1);
            }
            return Dataset{{DataColumn::numeric("x", x)}, DataColumn::numeric("y", y)};
        };
        const ModelSpec spec{ModelFamily::linear_ridge, Task::regression, default_ranges(ModelFamily::linear_ridge), {}};
        SearchOptions opt;
        opt.seed = 5;
        const auto res = random_search_cv(spec, noisy(400, 1), opt);
        const auto hold = noisy(400, 2);
        const auto m = regression_metrics(res.model.predict(hold.features).values, hold.target.numbers());
        c.expect(m.r2 && *m.r2 >= 0.95, "search holdout R2 " + fmt(m.r2.value_or(NAN), 6));
    }
    return c.outcome();
}

Outcome case_study() {
#ifdef DFARM_HAVE_CLI
    const auto dir = std::filesystem::path(DFARM_TEST_DATA_DIR) / "acceptance_casestudy";
    std::filesystem::remove_all(dir);
    std::ostringstream out, err;
    const int code = cli::run({"casestudy", "navigation", "--out", dir.string(), "--n", "4000", "--seed", "7"}, out, err);
    Checks c;
    c.expect(code == 0, "casestudy exit code " + std::to_string(code));
    if (code != 0) return c.outcome();
    const auto doc = nlohmann::json::parse(csv::read_text((dir / "casestudy.json").string()));
    for (const auto& check : doc["checks"])
        c.expect(check["pass"].get<bool>(), check["name"].get<std::string>() + " (" + check["detail"].get<std::string>() + ")");
    const std::string svg = csv::read_text((dir / "fuel_surface.svg").string());
    c.expect(svg.find("class=\"cell\"") != std::string::npos && svg.find("legend-swatch") != std::string::npos,
             "fuel heatmap SVG emitted");
    return c.outcome();
#else
    return {false, "built without the command-line tool"};
#endif
}

struct Criterion {
    const char* name;
    double budget_s;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"LHS stratification", 1.0, lhs_stratification},
    {"execution prefix property", 5.0, execution_prefix},
    {"convergence early stop", 30.0, convergence_early_stop},
    {"Pareto oracle equivalence", 10.0, pareto_oracle},
    {"hypothesis-flow calibration", 60.0, hypothesis_calibration},
    {"special functions", 1.0, special_functions},
    {"distribution-fit recovery", 30.0, distribution_recovery},
    {"geo round trip", 1.0, geo_round_trip},
    {"model suite", 120.0, model_suite},
    {"navigation case study", 60.0, case_study},
};

bool run_one(std::size_t number) {
    const Criterion& cr = kCriteria[number - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = cr.run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < cr.budget_s;
    const bool pass = o.pass && in_time;
    std::printf("%s criterion %zu: %s [%.3fs / %.0fs%s] %s\n", pass ? "PASS" : "FAIL", number, cr.name, secs,
                cr.budget_s, in_time ? "" : " over budget", o.detail.c_str());
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    constexpr std::size_t count = std::size(kCriteria);
    std::vector<std::size_t> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            const long n = std::strtol(argv[++i], nullptr, 10);
            if (n < 1 || n > static_cast<long>(count)) {
                std::fprintf(stderr, "criterion must be in 1..%zu\n", count);
                return 2;
            }
            selected.push_back(static_cast<std::size_t>(n));
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
            return 2;
        }
    }
    if (selected.empty())
        for (std::size_t n = 1; n <= count; ++n) selected.push_back(n);
    bool all = true;
    for (auto n : selected) all = run_one(n) && all;
    return all ? 0 : 1;
}
