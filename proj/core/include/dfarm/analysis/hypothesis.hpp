#pragma once

#include "dfarm/table.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dfarm::analysis {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double df1 = 0.0;  // 0 when the test has no degrees of freedom
    double df2 = 0.0;
};

using Groups = std::span<const std::vector<double>>;

// Normality. Shapiro-Wilk uses Royston's AS R94 coefficients and p-value
// approximation, valid for 3 <= n <= 5000; D'Agostino's K^2 combines the
// skewness and kurtosis z-scores and needs n >= 20.
TestResult shapiro_wilk(std::span<const double> x);
TestResult dagostino_k2(std::span<const double> x);

// Brown-Forsythe (median-centred Levene) test of equal variances.
TestResult brown_forsythe(Groups groups);

TestResult student_t(std::span<const double> a, std::span<const double> b);
TestResult welch_t(std::span<const double> a, std::span<const double> b);
TestResult paired_t(std::span<const double> a, std::span<const double> b);
// U of the first sample; normal approximation with tie and continuity corrections.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);
// W+ over non-zero differences a - b; normal approximation, tie and continuity corrected.
TestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

TestResult one_way_anova(Groups groups);
TestResult welch_anova(Groups groups);
// H with midranks and tie correction, chi-squared with k - 1 df.
TestResult kruskal_wallis(Groups groups);

struct PairwiseComparison {
    std::size_t first = 0;
    std::size_t second = 0;
    double statistic = 0.0;
    double p_adjusted = 1.0;
};

// Tukey HSD: studentized range q per pair with the pooled within-group variance.
std::vector<PairwiseComparison> tukey_hsd(Groups groups);
// Dunn's rank test, p-values multiplied by the number of pairs and capped at 1.
std::vector<PairwiseComparison> dunn_bonferroni(Groups groups);

enum class Decision { reject, fail_to_reject };

const char* to_string(Decision decision) noexcept;

struct DecisionStep {
    std::string check;
    double statistic = 0.0;
    double p_value = 1.0;
    std::string outcome;
};

struct TestReport {
    std::string test;
    double statistic = 0.0;
    double p_value = 1.0;
    double alpha = 0.05;
    Decision decision = Decision::fail_to_reject;
    std::vector<DecisionStep> decision_path;
    std::optional<std::vector<PairwiseComparison>> post_hoc;
    std::string post_hoc_method;
    std::vector<std::string> group_names;
};

// Automatic test selection:
//  1. normality of every group (differences when paired): Shapiro-Wilk for
//     n <= 5000, D'Agostino K^2 above; a zero-variance group sends the flow
//     to the rank-based branch;
//  2. for independent groups on the parametric branch, Brown-Forsythe
//     decides between equal- and unequal-variance tests;
//  3. two groups: Student t / Welch t / Mann-Whitney U, paired t / Wilcoxon
//     signed-rank when paired; three or more: ANOVA / Welch ANOVA /
//     Kruskal-Wallis, followed by Tukey HSD or Dunn-Bonferroni when the
//     omnibus test rejects.
// Every check is recorded in decision_path at the same alpha.
TestReport run_hypothesis_test(Groups groups, bool paired, double alpha,
                               std::vector<std::string> group_names = {});
// Missing values are dropped (pairwise when paired).
TestReport run_hypothesis_test(std::span<const DataColumn> groups, bool paired, double alpha);

}  // namespace dfarm::analysis
