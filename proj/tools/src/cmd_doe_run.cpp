#include "common.hpp"

#include "dfarm/doe/design.hpp"
#include "dfarm/error.hpp"
#include "dfarm/exec/controller.hpp"
#include "dfarm/simkit/navsim.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>

namespace dfarm::cli {

namespace {

using nlohmann::ordered_json;

struct ExperimentConfig {
    std::vector<doe::FactorSpec> factors;
    std::optional<std::string> design_path;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t chunk_size = 100;
    std::string runner = "navsim";  // navsim, echo or command
    std::string command;
    double noise_sigma = 0.0;
    unsigned threads = 1;
    std::optional<std::string> metric;
    double epsilon = 0.0;
    double floor = 1e-9;
    std::string output_dir = "results";
};

std::string resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? p : (base / path).string();
}

ExperimentConfig load_config(const std::string& path) {
    const std::string text = read_text_file(path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    const auto base = std::filesystem::path(path).parent_path();
    ExperimentConfig c;
    try {
        const auto& factors = doc.at("factors");
        if (factors.is_string())
            c.factors = doe::read_factor_space(resolve(base, factors.get<std::string>()));
        else if (factors.is_array())
            c.factors = doe::parse_factor_space(ordered_json{{"factors", factors}}.dump());
        else
            c.factors = doe::parse_factor_space(factors.dump());
        if (doc.contains("design")) c.design_path = resolve(base, doc.at("design").get<std::string>());
        c.n = doc.value("n", std::size_t{0});
        c.seed = doc.value("seed", std::uint64_t{0});
        c.chunk_size = doc.value("chunk_size", std::size_t{100});
        const auto& runner = doc.at("runner");
        if (runner.is_string()) {
            c.runner = runner.get<std::string>();
        } else {
            c.runner = "command";
            c.command = runner.at("command").get<std::string>();
        }
        if (doc.contains("navsim")) {
            c.noise_sigma = doc["navsim"].value("noise_sigma", 0.0);
            c.threads = doc["navsim"].value("threads", 1u);
        }
        if (doc.contains("stop") && !doc["stop"].is_null()) {
            const auto& s = doc["stop"];
            c.metric = s.at("metric").get<std::string>();
            c.epsilon = s.at("epsilon").get<double>();
            c.floor = s.value("floor", 1e-9);
        }
        c.output_dir = resolve(base, doc.value("output_dir", std::string("results")));
    } catch (const ordered_json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (c.chunk_size < 1) throw ConfigError("chunk_size must be >= 1");
    if (!c.design_path && c.n < 1) throw ConfigError("config needs \"n\" >= 1 or a \"design\" file");
    if (c.metric && !(c.epsilon > 0.0)) throw ConfigError("stop epsilon must be > 0");
    if (c.metric && !(c.floor > 0.0)) throw ConfigError("stop floor must be > 0");
    if (c.runner != "navsim" && c.runner != "echo" && c.runner != "command")
        throw ConfigError("unknown runner '" + c.runner + "' (navsim, echo or {\"command\": ...})");
    if (c.noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
    return c;
}

std::string execution_report_json(const exec::ExecutionReport& r, const ResultTable& results,
                                  const ExperimentConfig& c, std::size_t design_rows) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "execution";
    doc["runner"] = c.runner == "command" ? c.command : c.runner;
    doc["seed"] = c.seed;
    doc["design_rows"] = design_rows;
    doc["chunk_size"] = r.chunk_size;
    doc["chunks_executed"] = r.chunks_executed;
    doc["rows_executed"] = r.rows_executed;
    doc["ok_rows"] = results.ok_count();
    doc["failed_rows"] = results.rows() - results.ok_count();
    doc["stop_reason"] = exec::to_string(r.stop_reason);
    doc["stop_chunk"] = r.stop_chunk ? ordered_json(*r.stop_chunk) : ordered_json(nullptr);
    if (c.metric)
        doc["criterion"] = {{"metric", *c.metric}, {"epsilon", c.epsilon}, {"floor", c.floor}};
    else
        doc["criterion"] = nullptr;
    return doc.dump(2) + "\n";
}

std::string timings_json(const exec::ExecutionReport& r) {
    ordered_json doc;
    doc["chunk_seconds"] = r.chunk_seconds;
    return doc.dump(2) + "\n";
}

}  // namespace

void add_doe_command(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("doe", "Generate a Latin hypercube design from a factor-space JSON file");
    struct Opts {
        std::string factors, out;
        std::size_t n = 0;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--factors", o->factors, "Factor-space JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--n", o->n, "Number of design points")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    cmd->add_option("--out", o->out, "Design CSV (default: standard output)");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const auto design = doe::lhs_design(doe::read_factor_space(o->factors), o->n, o->seed);
            emit(ctx, o->out, doe::design_to_csv(design));
        };
    });
}

void add_run_command(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("run", "Execute an experiment config in chunks with optional early stopping");
    struct Opts {
        std::string config, out;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--config", o->config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", o->out, "Output directory (overrides the config)");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            ExperimentConfig c = load_config(o->config);
            if (!o->out.empty()) c.output_dir = o->out;

            const doe::Design design = c.design_path ? doe::read_design(*c.design_path, c.factors)
                                                     : doe::lhs_design(c.factors, c.n, c.seed);
            exec::Runner runner;
            if (c.runner == "navsim") {
                auto params = simkit::calibrate();
                params.noise_sigma = c.noise_sigma;
                runner = simkit::navsim_runner(params, c.seed, c.threads);
            } else if (c.runner == "echo") {
                runner = exec::echo_runner;
            } else {
                runner = exec::subprocess_runner(c.command);
            }
            const auto criterion = c.metric ? exec::mean_convergence_criterion(*c.metric, c.epsilon, c.floor)
                                            : exec::never_stop();
            const auto [results, report] = exec::run_batches(design, runner, criterion, c.chunk_size);

            ensure_directory(c.output_dir);
            doe::write_design(design, join_path(c.output_dir, "design.csv"));
            results.write_csv(join_path(c.output_dir, "results.csv"));
            emit(ctx, join_path(c.output_dir, "report.json"), execution_report_json(report, results, c, design.size()));
            emit(ctx, join_path(c.output_dir, "timings.json"), timings_json(report));
            ctx.out << "rows_executed=" << report.rows_executed << " chunks=" << report.chunks_executed
                    << " stop_reason=" << exec::to_string(report.stop_reason);
            if (report.stop_chunk) ctx.out << " stop_chunk=" << *report.stop_chunk;
            ctx.out << "\n";
        };
    });
}

}  // namespace dfarm::cli
