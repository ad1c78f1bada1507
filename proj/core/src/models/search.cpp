#include "dfarm/models/search.hpp"

#include "dfarm/error.hpp"
#include "dfarm/models/metrics.hpp"
#include "dfarm/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace dfarm::models {

namespace {

constexpr std::uint64_t kFoldStream = 0xf01d5ULL;

std::uint64_t fold_seed(std::uint64_t seed, std::size_t config, std::size_t fold) {
    return CounterRng::derive_key(CounterRng::derive_key(seed, config), fold);
}

PreprocessorSpec preprocess_for(const ModelSpec& spec, const SearchOptions& options, const Dataset& data) {
    if (!options.preprocess.columns.empty()) return options.preprocess;
    const bool trees = spec.family == ModelFamily::cart_tree || spec.family == ModelFamily::random_forest;
    return default_preprocessor(data.features, trees ? Scaling::none : Scaling::zscore);
}

double fold_score(const ModelSpec& spec, const Hyperparameters& params, const PreprocessorSpec& preprocess,
                  const Dataset& train_set, const Dataset& test_set, std::uint64_t seed) {
    const TrainedModel m = train(spec.family, spec.task, params, preprocess, train_set, seed);
    const Prediction p = m.predict(test_set.features);
    if (spec.task == Task::regression)
        return regression_metrics(p.values, test_set.target.numbers()).mse;
    return classification_metrics(p.labels, target_labels(test_set.target)).accuracy;
}

}  // namespace

Hyperparameters sample_configuration(const ModelSpec& spec, std::uint64_t seed, std::size_t index) {
    const auto ranges = spec.ranges.empty() ? default_ranges(spec.family) : spec.ranges;
    auto rng = CounterRng::substream(seed, index);
    Hyperparameters params = spec.fixed;
    for (const auto& [name, r] : ranges) {
        const bool integer = r.integer || is_integer_parameter(spec.family, name);
        const double u = rng.uniform();
        double v;
        if (integer) {
            const double hi = r.hi + 1.0;
            v = r.log ? std::exp(std::log(r.lo) + u * (std::log(hi) - std::log(r.lo))) : r.lo + u * (hi - r.lo);
            v = std::clamp(std::floor(v), r.lo, r.hi);
        } else {
            v = r.log ? std::exp(std::log(r.lo) + u * (std::log(r.hi) - std::log(r.lo))) : r.lo + u * (r.hi - r.lo);
            v = std::clamp(v, r.lo, r.hi);
        }
        params[name] = v;
    }
    return resolve_hyperparameters(spec.family, params);
}

SearchResult random_search_cv(const ModelSpec& spec, const Dataset& data, const SearchOptions& options) {
    validate_spec(spec);
    if (options.budget < 1) throw InvalidArgument("search budget must be >= 1");
    if (data.rows() == 0) throw InvalidArgument("search needs data");
    const PreprocessorSpec preprocess = preprocess_for(spec, options, data);

    const auto folds = kfold_split(data.rows(), options.k, CounterRng::derive_key(options.seed, kFoldStream));
    std::vector<Dataset> train_sets, test_sets;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::size_t> rest;
        for (std::size_t g = 0; g < folds.size(); ++g)
            if (g != f) rest.insert(rest.end(), folds[g].begin(), folds[g].end());
        std::sort(rest.begin(), rest.end());
        train_sets.push_back(data.select(rest));
        test_sets.push_back(data.select(folds[f]));
    }

    CvReport report;
    report.k = options.k;
    report.metric = spec.task == Task::regression ? "mse" : "accuracy";
    report.configs.resize(options.budget);
    for (std::size_t i = 0; i < options.budget; ++i)
        report.configs[i].params = sample_configuration(spec, options.seed, i);

    auto evaluate = [&](std::size_t i) {
        auto& cfg = report.configs[i];
        for (std::size_t f = 0; f < folds.size(); ++f) {
            double score;
            try {
                score = fold_score(spec, cfg.params, preprocess, train_sets[f], test_sets[f], fold_seed(options.seed, i, f));
            } catch (const TrainingError&) {
                score = std::numeric_limits<double>::quiet_NaN();
            }
            cfg.fold_scores.push_back(score);
        }
        double sum = 0.0;
        for (double s : cfg.fold_scores) sum += s;
        cfg.mean = sum / static_cast<double>(cfg.fold_scores.size());
        double ss = 0.0;
        for (double s : cfg.fold_scores) ss += (s - cfg.mean) * (s - cfg.mean);
        cfg.sd = cfg.fold_scores.size() > 1 ? std::sqrt(ss / static_cast<double>(cfg.fold_scores.size() - 1)) : 0.0;
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(options.budget));
    if (threads <= 1) {
        for (std::size_t i = 0; i < options.budget; ++i) evaluate(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < options.budget;) evaluate(i);
            });
        for (auto& th : pool) th.join();
    }

    const bool lower_better = spec.task == Task::regression;
    bool found = false;
    for (std::size_t i = 0; i < report.configs.size(); ++i) {
        const double m = report.configs[i].mean;
        if (std::isnan(m)) continue;
        if (!found || (lower_better ? m < report.configs[report.best].mean : m > report.configs[report.best].mean)) {
            report.best = i;
            found = true;
        }
    }
    if (!found) throw TrainingError("every sampled configuration failed to train");

    TrainedModel best = train(spec.family, spec.task, report.configs[report.best].params, preprocess, data,
                              fold_seed(options.seed, report.best, folds.size()));
    return {std::move(best), std::move(report)};
}

}  // namespace dfarm::models
