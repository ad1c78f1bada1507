#include "dfarm/analysis/hypothesis.hpp"

#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/error.hpp"

#include <cmath>

namespace dfarm::analysis {

namespace {

std::string group_label(const std::vector<std::string>& names, std::size_t i) {
    return i < names.size() ? names[i] : "group " + std::to_string(i);
}

// Returns true when the sample passes; records the check either way.
bool normality_check(std::span<const double> x, double alpha, const std::string& label,
                     std::vector<DecisionStep>& path) {
    if (variance(x) <= 0.0) {
        path.push_back({"zero_variance[" + label + "]", 0.0, 0.0, "route_nonparametric"});
        return false;
    }
    const bool large = x.size() > 5000;
    const auto r = large ? dagostino_k2(x) : shapiro_wilk(x);
    const bool pass = r.p_value >= alpha;
    path.push_back({std::string(large ? "normality:dagostino_k2[" : "normality:shapiro_wilk[") + label + "]",
                    r.statistic, r.p_value, pass ? "pass" : "fail"});
    return pass;
}

}  // namespace

TestReport run_hypothesis_test(Groups groups, bool paired, double alpha, std::vector<std::string> group_names) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
    if (groups.size() < 2) throw InvalidArgument("hypothesis test needs at least 2 groups");
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (groups[i].size() < 3)
            throw InvalidArgument(group_label(group_names, i) + " has fewer than 3 observations");
    if (paired) {
        if (groups.size() != 2) throw InvalidArgument("paired tests take exactly two groups");
        if (groups[0].size() != groups[1].size()) throw InvalidArgument("paired groups must have equal lengths");
    }

    TestReport report;
    report.alpha = alpha;
    report.group_names = group_names;
    auto& path = report.decision_path;

    bool parametric = true;
    if (paired) {
        std::vector<double> diff(groups[0].size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = groups[0][i] - groups[1][i];
        parametric = normality_check(diff, alpha, "differences", path);
    } else {
        for (std::size_t i = 0; i < groups.size(); ++i)
            parametric = normality_check(groups[i], alpha, group_label(group_names, i), path) && parametric;
    }

    bool homogeneous = true;
    if (parametric && !paired) {
        const auto bf = brown_forsythe(groups);
        homogeneous = bf.p_value >= alpha;
        path.push_back({"variance_homogeneity:brown_forsythe", bf.statistic, bf.p_value,
                        homogeneous ? "homogeneous" : "heterogeneous"});
    }

    TestResult omnibus;
    if (paired) {
        report.test = parametric ? "paired_t" : "wilcoxon_signed_rank";
        omnibus = parametric ? paired_t(groups[0], groups[1]) : wilcoxon_signed_rank(groups[0], groups[1]);
    } else if (groups.size() == 2) {
        if (!parametric) {
            report.test = "mann_whitney_u";
            omnibus = mann_whitney_u(groups[0], groups[1]);
        } else if (homogeneous) {
            report.test = "student_t";
            omnibus = student_t(groups[0], groups[1]);
        } else {
            report.test = "welch_t";
            omnibus = welch_t(groups[0], groups[1]);
        }
    } else {
        if (!parametric) {
            report.test = "kruskal_wallis";
            omnibus = kruskal_wallis(groups);
        } else if (homogeneous) {
            report.test = "one_way_anova";
            omnibus = one_way_anova(groups);
        } else {
            report.test = "welch_anova";
            omnibus = welch_anova(groups);
        }
    }
    report.statistic = omnibus.statistic;
    report.p_value = std::clamp(omnibus.p_value, 0.0, 1.0);
    report.decision = report.p_value < alpha ? Decision::reject : Decision::fail_to_reject;
    path.push_back({"omnibus:" + report.test, report.statistic, report.p_value, to_string(report.decision)});

    if (groups.size() >= 3 && report.decision == Decision::reject) {
        report.post_hoc_method = parametric ? "tukey_hsd" : "dunn_bonferroni";
        report.post_hoc = parametric ? tukey_hsd(groups) : dunn_bonferroni(groups);
        path.push_back({"post_hoc:" + report.post_hoc_method, 0.0, 0.0,
                        std::to_string(report.post_hoc->size()) + " pairs"});
    }
    return report;
}

TestReport run_hypothesis_test(std::span<const DataColumn> columns, bool paired, double alpha) {
    std::vector<std::vector<double>> groups;
    std::vector<std::string> names;
    for (const auto& c : columns) {
        if (!c.is_numeric()) throw InvalidArgument("column '" + c.name() + "' is not numeric");
        names.push_back(c.name());
    }
    if (paired) {
        if (columns.size() != 2) throw InvalidArgument("paired tests take exactly two groups");
        const auto a = columns[0].numbers(), b = columns[1].numbers();
        if (a.size() != b.size()) throw InvalidArgument("paired groups must have equal lengths");
        groups.resize(2);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (std::isnan(a[i]) || std::isnan(b[i])) continue;
            groups[0].push_back(a[i]);
            groups[1].push_back(b[i]);
        }
    } else {
        for (const auto& c : columns) groups.push_back(c.present_numbers());
    }
    return run_hypothesis_test(groups, paired, alpha, std::move(names));
}

}  // namespace dfarm::analysis
