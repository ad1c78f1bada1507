#include "dfarm/analysis/report_json.hpp"

#include <json.hpp>

#include <cmath>

namespace dfarm::analysis {

namespace {

using nlohmann::ordered_json;

ordered_json real(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json header(const char* kind) {
    ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["kind"] = kind;
    return doc;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json matrix(const AssociationMatrix& m) {
    ordered_json out;
    out["names"] = m.names;
    ordered_json rows = ordered_json::array();
    for (const auto& row : m.values) {
        ordered_json r = ordered_json::array();
        for (double v : row) r.push_back(real(v));
        rows.push_back(std::move(r));
    }
    out["values"] = std::move(rows);
    return out;
}

}  // namespace

std::string to_json(const TestReport& report) {
    auto doc = header("hypothesis_test");
    doc["test"] = report.test;
    doc["statistic"] = real(report.statistic);
    doc["p_value"] = real(report.p_value);
    doc["alpha"] = report.alpha;
    doc["decision"] = to_string(report.decision);
    doc["groups"] = report.group_names;
    ordered_json path = ordered_json::array();
    for (const auto& step : report.decision_path)
        path.push_back({{"check", step.check},
                        {"statistic", real(step.statistic)},
                        {"p_value", real(step.p_value)},
                        {"outcome", step.outcome}});
    doc["decision_path"] = std::move(path);
    if (report.post_hoc) {
        ordered_json rows = ordered_json::array();
        for (const auto& c : *report.post_hoc) {
            ordered_json row;
            if (c.first < report.group_names.size() && c.second < report.group_names.size())
                row["pair"] = {report.group_names[c.first], report.group_names[c.second]};
            else
                row["pair"] = {c.first, c.second};
            row["statistic"] = real(c.statistic);
            row["p_adjusted"] = real(c.p_adjusted);
            rows.push_back(std::move(row));
        }
        doc["post_hoc"] = {{"method", report.post_hoc_method}, {"comparisons", std::move(rows)}};
    } else {
        doc["post_hoc"] = nullptr;
    }
    return dump(doc);
}

std::string to_json(const FitReport& report) {
    auto doc = header("distribution_fit");
    doc["n"] = report.n;
    doc["beta_rescaled"] = report.beta_rescaled;
    if (report.beta_rescaled)
        doc["rescale"] = {{"offset", real(report.rescale_offset)}, {"scale", real(report.rescale_scale)}};
    ordered_json fits = ordered_json::array();
    for (const auto& f : report.fits) {
        ordered_json params;
        for (const auto& p : f.parameters) params[p.name] = real(p.value);
        fits.push_back({{"family", to_string(f.family)},
                        {"parameters", std::move(params)},
                        {"ks_statistic", real(f.ks_statistic)},
                        {"p_indicative", real(f.p_indicative)}});
    }
    doc["fits"] = std::move(fits);
    ordered_json ranking = ordered_json::array();
    for (Family family : report.ranking) ranking.push_back(to_string(family));
    doc["ranking"] = std::move(ranking);
    return dump(doc);
}

std::string to_json(const EdaReport& report) {
    auto doc = header("eda");
    ordered_json numeric = ordered_json::array();
    for (const auto& s : report.numeric) {
        ordered_json hist;
        ordered_json edges = ordered_json::array();
        for (double e : s.histogram.edges) edges.push_back(real(e));
        hist["edges"] = std::move(edges);
        hist["counts"] = s.histogram.counts;
        numeric.push_back({{"name", s.name},
                           {"count", s.count},
                           {"missing", s.missing},
                           {"mean", real(s.mean)},
                           {"sd", real(s.sd)},
                           {"min", real(s.min)},
                           {"q1", real(s.q1)},
                           {"median", real(s.median)},
                           {"q3", real(s.q3)},
                           {"max", real(s.max)},
                           {"iqr_outliers", s.iqr_outliers},
                           {"histogram", std::move(hist)}});
    }
    doc["numeric"] = std::move(numeric);
    ordered_json categorical = ordered_json::array();
    for (const auto& s : report.categorical) {
        ordered_json levels = ordered_json::array();
        for (const auto& l : s.levels) levels.push_back({{"level", l.level}, {"count", l.count}, {"share", real(l.share)}});
        categorical.push_back({{"name", s.name}, {"count", s.count}, {"missing", s.missing}, {"levels", std::move(levels)}});
    }
    doc["categorical"] = std::move(categorical);
    doc["pearson"] = matrix(report.pearson);
    doc["spearman"] = matrix(report.spearman);
    doc["cramers_v"] = matrix(report.cramers_v);
    return dump(doc);
}

std::string to_json(const OutlierReport& report, const std::string& column) {
    auto doc = header("outliers");
    if (!column.empty()) doc["column"] = column;
    doc["method"] = to_string(report.method);
    doc["k"] = report.k;
    doc["n"] = report.n;
    if (report.method == OutlierMethod::zscore) {
        doc["mean"] = real(report.center);
        doc["sd"] = real(report.scale);
    } else {
        doc["q1"] = real(report.q1);
        doc["q3"] = real(report.q3);
        doc["iqr"] = real(report.scale);
    }
    doc["lower"] = real(report.lower);
    doc["upper"] = real(report.upper);
    doc["degenerate"] = report.degenerate;
    if (!report.note.empty()) doc["note"] = report.note;
    doc["flagged"] = report.flagged;
    return dump(doc);
}

std::string to_json(const ParetoResult& result, const std::vector<std::string>& objectives) {
    auto doc = header("pareto_front");
    if (!objectives.empty()) doc["objectives"] = objectives;
    ordered_json dirs = ordered_json::array();
    for (Direction d : result.directions) dirs.push_back(to_string(d));
    doc["directions"] = std::move(dirs);
    doc["front"] = result.front;
    return dump(doc);
}

std::string to_json(const std::vector<FeatureScore>& scores, const std::string& target) {
    auto doc = header("feature_scores");
    if (!target.empty()) doc["target"] = target;
    ordered_json rows = ordered_json::array();
    for (const auto& s : scores) rows.push_back({{"feature", s.feature}, {"score", real(s.score)}});
    doc["scores"] = std::move(rows);
    return dump(doc);
}

}  // namespace dfarm::analysis
