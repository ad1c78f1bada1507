#include "common.hpp"

#include "dfarm/analysis/plot.hpp"
#include "dfarm/doe/design.hpp"
#include "dfarm/exec/controller.hpp"
#include "dfarm/simkit/navsim.hpp"
#include "dfarm/simkit/surface.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <ostream>

namespace dfarm::cli {

namespace {

using nlohmann::ordered_json;

ordered_json point_json(const simkit::GridPoint& p) {
    return {{"speed_kt", p.speed_kt}, {"altitude_ft", p.altitude_ft}, {"fuel_lb", p.fuel_lb}};
}

bool inside(double v, double lo, double hi) { return v >= lo && v <= hi; }

}  // namespace

void add_casestudy_command(CLI::App& app, Context& ctx) {
    auto* group = app.add_subcommand("casestudy", "Reference pipelines");
    group->require_subcommand(1);
    auto* cmd = group->add_subcommand(
        "navigation", "Calibrated flight-fuel study: LHS design, chunked run, surface scan, heatmap");
    struct Opts {
        std::string out = "casestudy-navigation";
        std::uint64_t seed = 7;
        std::size_t n = 4000;
        std::size_t chunk_size = 100;
        double noise = 0.0;
        unsigned threads = 1;
        std::optional<double> epsilon;
        double floor = 1e-9;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--out", o->out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    cmd->add_option("--n", o->n, "Design points")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--chunk-size", o->chunk_size, "Rows per chunk")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--noise", o->noise, "Relative lognormal fuel noise sigma")->capture_default_str();
    cmd->add_option("--threads", o->threads, "Threads per chunk")->capture_default_str();
    cmd->add_option("--epsilon", o->epsilon, "Stop when mean fuel_consumed changes by less than this ratio");
    cmd->add_option("--floor", o->floor, "Denominator guard for --epsilon")->capture_default_str();
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            auto params = simkit::calibrate();
            params.noise_sigma = o->noise;
            auto clean = params;
            clean.noise_sigma = 0.0;

            const auto factors = simkit::navigation_factors();
            const doe::Design design = doe::lhs_design(factors, o->n, o->seed);
            const auto criterion = o->epsilon ? exec::mean_convergence_criterion("fuel_consumed", *o->epsilon, o->floor)
                                              : exec::never_stop();
            const auto [results, report] =
                exec::run_batches(design, simkit::navsim_runner(params, o->seed, o->threads), criterion, o->chunk_size);

            const ResultTable ok = results.ok_rows();
            const auto tof = ok.column("time_of_flight").present_numbers();
            const auto fuel = ok.column("fuel_consumed").present_numbers();
            const double r2 = simkit::linear_fit_r2(tof, fuel);

            const auto grid = simkit::fuel_grid(clean);
            const auto ext = simkit::surface_extrema(grid);

            ordered_json anchors = ordered_json::array();
            ordered_json checks = ordered_json::array();
            auto check = [&](const std::string& name, bool pass, const std::string& detail) {
                checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
            };
            for (const auto& a : {simkit::kHighFuelAnchor, simkit::kLowFuelAnchor}) {
                const double model = simkit::total_fuel(a.speed_kt, a.altitude_ft, clean);
                anchors.push_back({{"speed_kt", a.speed_kt},
                                   {"altitude_ft", a.altitude_ft},
                                   {"target_lb", a.fuel_lb},
                                   {"model_lb", model},
                                   {"residual_lb", model - a.fuel_lb}});
                check("anchor_" + format_number(a.speed_kt) + "kt_" + format_number(a.altitude_ft) + "ft",
                      std::abs(model - a.fuel_lb) <= 1e-6, "fuel " + format_number(model) + " lb");
            }
            check("argmax_in_500-550kt_10000-12000ft",
                  inside(ext.max.speed_kt, 500, 550) && inside(ext.max.altitude_ft, 10000, 12000),
                  format_number(ext.max.speed_kt) + " kt, " + format_number(ext.max.altitude_ft) + " ft");
            check("argmin_in_400-450kt_25000-30000ft",
                  inside(ext.min.speed_kt, 400, 450) && inside(ext.min.altitude_ft, 25000, 30000),
                  format_number(ext.min.speed_kt) + " kt, " + format_number(ext.min.altitude_ft) + " ft");
            check("grid_min_in_900-1100lb", inside(ext.min.fuel_lb, 900, 1100), format_number(ext.min.fuel_lb) + " lb");
            check("grid_max_in_1700-1900lb", inside(ext.max.fuel_lb, 1700, 1900), format_number(ext.max.fuel_lb) + " lb");
            check("time_fuel_r2_below_0.5", r2 < 0.5, "R2 " + format_number(r2));

            ordered_json doc;
            doc["schema_version"] = 1;
            doc["kind"] = "casestudy_navigation";
            doc["seed"] = o->seed;
            doc["n"] = o->n;
            doc["chunk_size"] = o->chunk_size;
            doc["noise_sigma"] = o->noise;
            doc["calibration"] = {{"a_lb_per_hr", params.a},
                                  {"b_lb_per_hr", params.b},
                                  {"route_nm", params.route_nm},
                                  {"hold_s", params.hold_s},
                                  {"anchors", std::move(anchors)}};
            doc["grid"] = {{"speed_steps", grid.speeds.size()},
                           {"altitude_steps", grid.altitudes.size()},
                           {"max", point_json(ext.max)},
                           {"min", point_json(ext.min)}};
            doc["execution"] = {{"rows_executed", report.rows_executed},
                                {"chunks_executed", report.chunks_executed},
                                {"ok_rows", results.ok_count()},
                                {"stop_reason", exec::to_string(report.stop_reason)},
                                {"stop_chunk", report.stop_chunk ? ordered_json(*report.stop_chunk) : ordered_json(nullptr)}};
            doc["linear_fit_time_fuel_r2"] = r2;
            doc["checks"] = std::move(checks);

            ordered_json exec_doc;
            exec_doc["schema_version"] = 1;
            exec_doc["kind"] = "execution";
            exec_doc["runner"] = "navsim";
            exec_doc["design_rows"] = design.size();
            exec_doc["chunk_size"] = report.chunk_size;
            exec_doc["chunks_executed"] = report.chunks_executed;
            exec_doc["rows_executed"] = report.rows_executed;
            exec_doc["stop_reason"] = exec::to_string(report.stop_reason);
            exec_doc["stop_chunk"] = report.stop_chunk ? ordered_json(*report.stop_chunk) : ordered_json(nullptr);

            const auto heat = simkit::fuel_grid(clean, 41, 51);
            ensure_directory(o->out);
            emit(ctx, join_path(o->out, "factors.json"), doe::factor_space_to_json(factors));
            doe::write_design(design, join_path(o->out, "design.csv"));
            results.write_csv(join_path(o->out, "results.csv"));
            emit(ctx, join_path(o->out, "report.json"), exec_doc.dump(2) + "\n");
            emit(ctx, join_path(o->out, "casestudy.json"), doc.dump(2) + "\n");
            emit(ctx, join_path(o->out, "fuel_surface.svg"),
                 analysis::heatmap_svg(heat.fuel, heat.speeds, heat.altitudes,
                                       {"Total fuel (lb) over speed and altitude", "speed (kt)", "altitude (ft)"}));
            emit(ctx, join_path(o->out, "time_vs_fuel.svg"),
                 analysis::scatter_svg(tof, fuel, {"Fuel against time of flight", "time_of_flight (s)", "fuel_consumed (lb)"}));

            ctx.out << "calibrated A=" << format_number(params.a) << " B=" << format_number(params.b) << "\n"
                    << "rows_executed=" << report.rows_executed << " stop_reason=" << exec::to_string(report.stop_reason)
                    << "\n"
                    << "grid max " << format_number(ext.max.fuel_lb) << " lb at (" << format_number(ext.max.speed_kt)
                    << " kt, " << format_number(ext.max.altitude_ft) << " ft)\n"
                    << "grid min " << format_number(ext.min.fuel_lb) << " lb at (" << format_number(ext.min.speed_kt)
                    << " kt, " << format_number(ext.min.altitude_ft) << " ft)\n"
                    << "R2(time_of_flight, fuel_consumed)=" << format_number(r2) << "\n";
            for (const auto& c : doc["checks"])
                ctx.out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " ("
                        << c["detail"].get<std::string>() << ")\n";
        };
    });
}

}  // namespace dfarm::cli
