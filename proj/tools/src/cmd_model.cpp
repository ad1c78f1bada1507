#include "common.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"
#include "dfarm/models/metrics.hpp"
#include "dfarm/models/search.hpp"
#include "dfarm/models/serialize.hpp"
#include "dfarm/models/smote.hpp"

#include <json.hpp>

#include <memory>
#include <sstream>

namespace dfarm::cli {

namespace {

using namespace dfarm::models;
using nlohmann::ordered_json;

struct Loaded {
    ModelConfig config;
    Dataset data;
    PreprocessorSpec preprocess;
};

Loaded load(const std::string& spec_path, const std::string& input) {
    Loaded l;
    l.config = model_config_from_json(read_text_file(spec_path));
    l.data = dataset_from_table(ResultTable::read_csv(input), l.config.target, l.config.features);
    const bool trees = l.config.spec.family == ModelFamily::cart_tree || l.config.spec.family == ModelFamily::random_forest;
    l.preprocess = l.config.preprocess.columns.empty()
                       ? default_preprocessor(l.data.features, trees ? Scaling::none : Scaling::zscore)
                       : l.config.preprocess;
    return l;
}

std::string metrics_json(const TrainedModel& model, const Prediction& p, const DataColumn& truth) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "metrics";
    doc["task"] = to_string(model.task);
    if (model.task == Task::regression) {
        const auto m = regression_metrics(p.values, truth.numbers());
        doc["mse"] = m.mse;
        doc["mae"] = m.mae;
        doc["r2"] = m.r2 ? ordered_json(*m.r2) : ordered_json(nullptr);
    } else {
        const auto m = classification_metrics(p.labels, target_labels(truth));
        doc["accuracy"] = m.accuracy;
        doc["macro_precision"] = m.macro_precision;
        doc["macro_recall"] = m.macro_recall;
        doc["macro_f1"] = m.macro_f1;
        ordered_json per = ordered_json::array();
        for (const auto& c : m.per_class)
            per.push_back({{"label", c.label}, {"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1},
                           {"support", c.support}});
        doc["per_class"] = std::move(per);
    }
    return doc.dump(2) + "\n";
}

void add_search(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("search", "Random hyperparameter search with k-fold cross-validation");
    struct Opts {
        std::string input, spec, out, report;
        std::size_t k = 5, budget = 20;
        std::uint64_t seed = 0;
        unsigned threads = 1;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--input", o->input, "Training table CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--spec", o->spec, "Model spec JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--k", o->k, "Folds")->capture_default_str();
    cmd->add_option("--budget", o->budget, "Configurations to sample")->capture_default_str();
    cmd->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    cmd->add_option("--threads", o->threads, "Worker threads (0 = all cores)")->capture_default_str();
    cmd->add_option("--out", o->out, "Best model JSON")->required();
    cmd->add_option("--report", o->report, "Cross-validation report JSON (default: standard output)");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const Loaded l = load(o->spec, o->input);
            SearchOptions opts{o->k, o->budget, o->seed, o->threads, l.preprocess};
            const SearchResult r = random_search_cv(l.config.spec, l.data, opts);
            emit(ctx, o->out, model_to_json(r.model));
            emit(ctx, o->report, cv_report_to_json(r.report));
        };
    });
}

void add_train(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("train", "Train one model with the spec's fixed hyperparameters");
    struct Opts {
        std::string input, spec, out;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--input", o->input, "Training table CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--spec", o->spec, "Model spec JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    cmd->add_option("--out", o->out, "Model JSON (default: standard output)");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const Loaded l = load(o->spec, o->input);
            const TrainedModel m =
                train(l.config.spec.family, l.config.spec.task, l.config.spec.fixed, l.preprocess, l.data, o->seed);
            emit(ctx, o->out, model_to_json(m));
        };
    });
}

void add_predict(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("predict", "Predict with a saved model");
    struct Opts {
        std::string model, input, out, metrics;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--model", o->model, "Model JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--input", o->input, "Table CSV with the model's feature columns")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", o->out, "Predictions CSV (default: standard output)");
    cmd->add_option("--metrics", o->metrics, "Metrics JSON, when the input holds the target column");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const TrainedModel m = model_from_json(read_text_file(o->model));
            const ResultTable t = ResultTable::read_csv(o->input).ok_rows();
            std::vector<DataColumn> features;
            for (const auto& name : m.features) features.push_back(t.column(name));
            const Prediction p = m.predict(features);

            ResultTable out(t.index());
            if (m.task == Task::regression)
                out.add_column(DataColumn::numeric("prediction", p.values));
            else
                out.add_column(DataColumn::categorical("prediction", p.labels));
            emit(ctx, o->out, out.to_csv());
            if (!o->metrics.empty()) {
                if (!t.has_column(m.target))
                    throw InvalidArgument("--metrics needs the target column '" + m.target + "' in the input");
                emit(ctx, o->metrics, metrics_json(m, p, t.column(m.target)));
            }
        };
    });
}

void add_smote(CLI::App* parent, Context& ctx) {
    auto* cmd = parent->add_subcommand("smote", "Synthesize minority-class rows by SMOTE");
    struct Opts {
        std::string input, label, minority, out;
        std::vector<std::string> features;
        int k = 5, amount = 100;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--input", o->input, "Table CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--label", o->label, "Class column")->required();
    cmd->add_option("--minority", o->minority, "Minority class label")->required();
    cmd->add_option("--features", o->features, "Numeric feature columns (default: all numeric)")->delimiter(',');
    cmd->add_option("--k", o->k, "Neighbours")->capture_default_str();
    cmd->add_option("--amount", o->amount, "Oversampling percentage, a multiple of 100")->capture_default_str();
    cmd->add_option("--seed", o->seed, "Random seed")->capture_default_str();
    cmd->add_option("--out", o->out, "Synthetic rows CSV (default: standard output)");
    cmd->callback([&ctx, o] {
        ctx.action = [&ctx, o] {
            const ResultTable t = ResultTable::read_csv(o->input).ok_rows();
            std::vector<std::string> names = o->features;
            if (names.empty())
                for (const auto& c : t.columns())
                    if (c.is_numeric() && c.name() != o->label) names.push_back(c.name());
            if (names.empty()) throw InvalidArgument("no numeric feature columns");
            Eigen::MatrixXd x(static_cast<Eigen::Index>(t.rows()), static_cast<Eigen::Index>(names.size()));
            for (std::size_t j = 0; j < names.size(); ++j) {
                const DataColumn& c = t.column(names[j]);
                if (!c.is_numeric()) throw InvalidArgument("feature '" + names[j] + "' is not numeric");
                for (std::size_t i = 0; i < t.rows(); ++i) {
                    if (c.is_missing(i)) throw InvalidArgument("feature '" + names[j] + "' has missing values");
                    x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c.numbers()[i];
                }
            }
            const auto labels = target_labels(t.column(o->label));
            const SmoteResult r = smote(x, labels, o->minority, o->k, o->amount, o->seed);
            if (r.k_reduced) ctx.err << "note: " << r.note << "\n";

            std::ostringstream csv;
            csv::Record header(names.begin(), names.end());
            for (const char* extra : {"", "parent_row", "neighbor_row", "gap"}) header.push_back(extra);
            header[names.size()] = o->label;
            csv::write_record(csv, header);
            for (Eigen::Index i = 0; i < r.samples.rows(); ++i) {
                csv::Record rec;
                for (Eigen::Index j = 0; j < r.samples.cols(); ++j) rec.push_back(csv::format_real(r.samples(i, j)));
                const auto s = static_cast<std::size_t>(i);
                rec.push_back(o->minority);
                rec.push_back(std::to_string(t.index()[r.parent[s]]));
                rec.push_back(std::to_string(t.index()[r.neighbor[s]]));
                rec.push_back(csv::format_real(r.gap[s]));
                csv::write_record(csv, rec);
            }
            emit(ctx, o->out, csv.str());
        };
    });
}

}  // namespace

void add_model_command(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("model", "Surrogate models: search, train, predict, SMOTE");
    cmd->require_subcommand(1);
    add_search(cmd, ctx);
    add_train(cmd, ctx);
    add_predict(cmd, ctx);
    add_smote(cmd, ctx);
}

}  // namespace dfarm::cli
