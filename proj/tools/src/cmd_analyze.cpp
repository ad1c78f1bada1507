#include "common.hpp"

#include "dfarm/analysis/eda.hpp"
#include "dfarm/analysis/features.hpp"
#include "dfarm/analysis/fit.hpp"
#include "dfarm/analysis/hypothesis.hpp"
#include "dfarm/analysis/outliers.hpp"
#include "dfarm/analysis/pareto.hpp"
#include "dfarm/analysis/plot.hpp"
#include "dfarm/analysis/report_json.hpp"
#include "dfarm/error.hpp"

#include <cmath>
#include <memory>

namespace dfarm::cli {

namespace {

using namespace dfarm::analysis;

const DataColumn& numeric_column(const ResultTable& t, const std::string& name) {
    const DataColumn& c = t.column(name);
    if (!c.is_numeric()) throw InvalidArgument("column '" + name + "' is not numeric");
    return c;
}

// One numeric group per level of `by`, in order of first appearance.
std::vector<DataColumn> split_by(const ResultTable& t, const std::string& by, const std::string& value) {
    const DataColumn& key = t.column(by);
    const auto values = numeric_column(t, value).numbers();
    std::vector<std::string> order;
    std::vector<std::vector<double>> groups;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (key.is_missing(i)) continue;
        const std::string level = key.cell_text(i);
        auto it = std::find(order.begin(), order.end(), level);
        if (it == order.end()) {
            order.push_back(level);
            groups.emplace_back();
            it = order.end() - 1;
        }
        groups[static_cast<std::size_t>(it - order.begin())].push_back(values[i]);
    }
    std::vector<DataColumn> out;
    for (std::size_t g = 0; g < order.size(); ++g) out.push_back(DataColumn::numeric(order[g], std::move(groups[g])));
    return out;
}

struct Common {
    std::string input, out;
    bool include_failed = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--input", c.input, "Result table CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "Report JSON (default: standard output)");
    cmd->add_flag("--include-failed", c.include_failed, "Keep rows whose status is failed");
}

void add_test(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("test", "Automatically selected hypothesis test with a decision trace");
    struct Opts : Common {
        std::vector<std::string> columns;
        std::string group_by, value;
        bool paired = false;
        double alpha = 0.05;
    };
    auto o = std::make_shared<Opts>();
    add_common(cmd, *o);
    cmd->add_option("--columns", o->columns, "Numeric columns, one group each")->delimiter(',');
    cmd->add_option("--group-by", o->group_by, "Column whose levels define the groups");
    cmd->add_option("--value", o->value, "Numeric column tested across --group-by levels");
    cmd->add_flag("--paired", o->paired, "Paired samples (two groups)");
    cmd->add_option("--alpha", o->alpha, "Significance level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const bool by_columns = !o->columns.empty();
            const bool by_group = !o->group_by.empty() || !o->value.empty();
            if (by_columns == by_group) throw UsageError("give either --columns or --group-by with --value");
            if (by_group && (o->group_by.empty() || o->value.empty()))
                throw UsageError("--group-by and --value go together");
            if (!(o->alpha > 0.0 && o->alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
            const ResultTable t = load_table(o->input, o->include_failed);
            std::vector<DataColumn> groups;
            if (by_columns)
                for (const auto& name : o->columns) groups.push_back(numeric_column(t, name));
            else
                groups = split_by(t, o->group_by, o->value);
            emit(ctx, o->out, to_json(run_hypothesis_test(groups, o->paired, o->alpha)));
        };
    });
}

void add_fit(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("fit", "Fit candidate distributions and rank them by Kolmogorov-Smirnov D");
    struct Opts : Common {
        std::string column, svg;
        std::vector<std::string> families;
        bool rescale_beta = false;
    };
    auto o = std::make_shared<Opts>();
    add_common(cmd, *o);
    cmd->add_option("--column", o->column, "Numeric column")->required();
    cmd->add_option("--families", o->families, "normal,uniform,exponential,chi_squared,beta (default: all that apply)")
        ->delimiter(',');
    cmd->add_flag("--rescale-beta", o->rescale_beta, "Min-max rescale into (0,1) before fitting beta");
    cmd->add_option("--svg", o->svg, "Histogram SVG of the column");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const ResultTable t = load_table(o->input, o->include_failed);
            const DataColumn& col = numeric_column(t, o->column);
            std::vector<Family> families;
            for (const auto& f : o->families) families.push_back(family_from_string(f));
            if (families.empty()) {
                families = applicable_families(col.present_numbers());
                if (o->rescale_beta && std::find(families.begin(), families.end(), Family::beta) == families.end())
                    families.push_back(Family::beta);
            }
            emit(ctx, o->out, to_json(fit_distributions(col, families, FitOptions{o->rescale_beta})));
            if (!o->svg.empty())
                emit(ctx, o->svg,
                     histogram_svg(freedman_diaconis(col.present_numbers()), {"Histogram of " + o->column, o->column, "count"}));
        };
    });
}

void add_pareto(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("pareto", "Non-dominated rows for two or more objectives");
    struct Opts : Common {
        std::vector<std::string> objectives;
        std::string svg;
    };
    auto o = std::make_shared<Opts>();
    add_common(cmd, *o);
    cmd->add_option("--objectives", o->objectives, "name:min or name:max, comma separated")->required()->delimiter(',');
    cmd->add_option("--svg", o->svg, "Scatter SVG of the first two objectives with the front highlighted");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            if (o->objectives.size() < 2) throw UsageError("--objectives needs at least two entries");
            const ResultTable t = load_table(o->input, o->include_failed);
            std::vector<std::string> names;
            std::vector<Direction> dirs;
            for (const auto& spec : o->objectives) {
                const auto colon = spec.rfind(':');
                if (colon == std::string::npos) throw UsageError("objective '" + spec + "' needs :min or :max");
                names.push_back(spec.substr(0, colon));
                dirs.push_back(direction_from_string(spec.substr(colon + 1)));
            }
            std::vector<std::vector<double>> points;
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < t.rows(); ++i) {
                std::vector<double> p;
                for (const auto& n : names) p.push_back(numeric_column(t, n).numbers()[i]);
                if (std::any_of(p.begin(), p.end(), [](double v) { return std::isnan(v); })) continue;
                points.push_back(std::move(p));
                rows.push_back(i);
            }
            if (points.empty()) throw InvalidArgument("no rows with every objective present");
            ParetoResult result = pareto_front(points, dirs);
            const std::vector<std::size_t> local = result.front;
            for (auto& f : result.front) f = t.index()[rows[f]];
            emit(ctx, o->out, to_json(result, names));
            if (!o->svg.empty()) {
                std::vector<double> x, y;
                for (auto i : local) {
                    x.push_back(points[i][0]);
                    y.push_back(points[i][1]);
                }
                emit(ctx, o->svg, scatter_svg(x, y, {"Pareto front", names[0], names[1]}));
            }
        };
    });
}

void add_outliers(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("outliers", "Flag outliers by z-score or interquartile range");
    struct Opts : Common {
        std::string column, method = "iqr";
        std::optional<double> k;
    };
    auto o = std::make_shared<Opts>();
    add_common(cmd, *o);
    cmd->add_option("--column", o->column, "Numeric column")->required();
    cmd->add_option("--method", o->method, "iqr or zscore")->capture_default_str()->check(CLI::IsMember({"iqr", "zscore"}));
    cmd->add_option("--k", o->k, "Multiplier (default 1.5 for iqr, 3 for zscore)");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const ResultTable t = load_table(o->input, o->include_failed);
            const auto method = outlier_method_from_string(o->method);
            const double k = o->k.value_or(default_outlier_k(method));
            emit(ctx, o->out, to_json(detect_outliers(numeric_column(t, o->column), method, k), o->column));
        };
    });
}

void add_eda(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("eda", "Summary statistics, class balance, correlations and histograms");
    struct Opts : Common {
        std::string svg_dir;
    };
    auto o = std::make_shared<Opts>();
    add_common(cmd, *o);
    cmd->add_option("--svg-dir", o->svg_dir, "Directory for histogram and correlation-heatmap SVGs");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const ResultTable t = load_table(o->input, o->include_failed);
            const EdaReport report = eda_summary(t.columns());
            emit(ctx, o->out, to_json(report));
            if (o->svg_dir.empty()) return;
            ensure_directory(o->svg_dir);
            for (const auto& s : report.numeric)
                if (s.count > 0)
                    emit(ctx, join_path(o->svg_dir, "hist_" + s.name + ".svg"),
                         histogram_svg(s.histogram, {"Histogram of " + s.name, s.name, "count"}));
            const auto& m = report.pearson;
            if (!m.names.empty()) {
                std::vector<double> centers(m.names.size());
                for (std::size_t i = 0; i < centers.size(); ++i) centers[i] = static_cast<double>(i);
                emit(ctx, join_path(o->svg_dir, "pearson.svg"),
                     heatmap_svg(m.values, centers, centers, {"Pearson correlation", "column", "column"}));
            }
        };
    });
}

void add_features(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("features", "Rank columns by association with a numeric target");
    struct Opts : Common {
        std::string target;
    };
    auto o = std::make_shared<Opts>();
    add_common(cmd, *o);
    cmd->add_option("--target", o->target, "Numeric target column")->required();
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const ResultTable t = load_table(o->input, o->include_failed);
            const DataColumn& target = numeric_column(t, o->target);
            std::vector<DataColumn> features;
            for (const auto& c : t.columns())
                if (c.name() != o->target) features.push_back(c);
            if (features.empty()) throw InvalidArgument("no feature columns besides the target");
            emit(ctx, o->out, to_json(feature_scores(features, target), o->target));
        };
    });
}

}  // namespace

void add_analyze_command(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("analyze", "Statistical analysis of a result table");
    cmd->require_subcommand(1);
    add_test(cmd, ctx);
    add_fit(cmd, ctx);
    add_pareto(cmd, ctx);
    add_outliers(cmd, ctx);
    add_eda(cmd, ctx);
    add_features(cmd, ctx);
}

}  // namespace dfarm::cli
