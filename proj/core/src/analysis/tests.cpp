#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/analysis/hypothesis.hpp"
#include "dfarm/analysis/special.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dfarm::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_groups(Groups groups, std::size_t min_groups, std::size_t min_size, const char* who) {
    if (groups.size() < min_groups)
        throw InvalidArgument(std::string(who) + " needs at least " + std::to_string(min_groups) + " groups");
    for (const auto& g : groups)
        if (g.size() < min_size)
            throw InvalidArgument(std::string(who) + " needs at least " + std::to_string(min_size) +
                                  " observations per group");
}

double ratio_p(double numerator, double denominator, double df1, double df2, double& stat) {
    if (denominator > 0.0) {
        stat = numerator / denominator;
        return fisher_f_sf(stat, df1, df2);
    }
    stat = numerator > 0.0 ? kInf : 0.0;
    return numerator > 0.0 ? 0.0 : 1.0;
}

struct PooledRanks {
    std::vector<std::vector<double>> ranks;
    double tie_term = 0.0;
    double total = 0.0;
};

PooledRanks pooled_ranks(Groups groups) {
    std::vector<double> all;
    for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
    const auto r = midranks(all);
    PooledRanks out;
    out.tie_term = r.tie_term;
    out.total = static_cast<double>(all.size());
    std::size_t offset = 0;
    for (const auto& g : groups) {
        out.ranks.emplace_back(r.ranks.begin() + static_cast<std::ptrdiff_t>(offset),
                               r.ranks.begin() + static_cast<std::ptrdiff_t>(offset + g.size()));
        offset += g.size();
    }
    return out;
}

}  // namespace

const char* to_string(Decision decision) noexcept {
    return decision == Decision::reject ? "reject" : "fail_to_reject";
}

TestResult one_way_anova(Groups groups) {
    require_groups(groups, 2, 1, "one_way_anova");
    double total_n = 0.0, grand = 0.0;
    for (const auto& g : groups) {
        total_n += static_cast<double>(g.size());
        for (double v : g) grand += v;
    }
    grand /= total_n;
    double ssb = 0.0, ssw = 0.0;
    for (const auto& g : groups) {
        const double m = mean(g);
        ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double v : g) ssw += (v - m) * (v - m);
    }
    const double k = static_cast<double>(groups.size());
    const double df1 = k - 1.0, df2 = total_n - k;
    if (df2 <= 0.0) throw InvalidArgument("one_way_anova needs more observations than groups");
    TestResult r{0.0, 1.0, df1, df2};
    r.p_value = ratio_p(ssb / df1, ssw / df2, df1, df2, r.statistic);
    return r;
}

TestResult brown_forsythe(Groups groups) {
    require_groups(groups, 2, 2, "brown_forsythe");
    std::vector<std::vector<double>> deviations;
    for (const auto& g : groups) {
        const double med = median(g);
        std::vector<double> z;
        z.reserve(g.size());
        for (double v : g) z.push_back(std::abs(v - med));
        deviations.push_back(std::move(z));
    }
    return one_way_anova(deviations);
}

TestResult student_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw InvalidArgument("student_t needs two samples of size >= 2");
    const double n1 = static_cast<double>(a.size()), n2 = static_cast<double>(b.size());
    const double df = n1 + n2 - 2.0;
    const double pooled = ((n1 - 1.0) * variance(a) + (n2 - 1.0) * variance(b)) / df;
    const double diff = mean(a) - mean(b);
    const double se = std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
    TestResult r{0.0, 1.0, df, 0.0};
    if (se > 0.0) {
        r.statistic = diff / se;
        r.p_value = student_t_two_sided(r.statistic, df);
    } else if (diff != 0.0) {
        r.statistic = std::copysign(kInf, diff);
        r.p_value = 0.0;
    }
    return r;
}

TestResult welch_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw InvalidArgument("welch_t needs two samples of size >= 2");
    const double n1 = static_cast<double>(a.size()), n2 = static_cast<double>(b.size());
    const double v1 = variance(a) / n1, v2 = variance(b) / n2;
    const double diff = mean(a) - mean(b);
    const double se2 = v1 + v2;
    TestResult r{0.0, 1.0, 0.0, 0.0};
    if (se2 > 0.0) {
        r.df1 = se2 * se2 / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
        r.statistic = diff / std::sqrt(se2);
        r.p_value = student_t_two_sided(r.statistic, r.df1);
    } else if (diff != 0.0) {
        r.statistic = std::copysign(kInf, diff);
        r.p_value = 0.0;
    }
    return r;
}

TestResult paired_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidArgument("paired_t needs samples of equal length");
    if (a.size() < 2) throw InvalidArgument("paired_t needs at least 2 pairs");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double n = static_cast<double>(d.size());
    const double md = mean(d);
    const double se = stddev(d) / std::sqrt(n);
    TestResult r{0.0, 1.0, n - 1.0, 0.0};
    if (se > 0.0) {
        r.statistic = md / se;
        r.p_value = student_t_two_sided(r.statistic, n - 1.0);
    } else if (md != 0.0) {
        r.statistic = std::copysign(kInf, md);
        r.p_value = 0.0;
    }
    return r;
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("mann_whitney_u needs two non-empty samples");
    const std::vector<std::vector<double>> groups{{a.begin(), a.end()}, {b.begin(), b.end()}};
    const auto pooled = pooled_ranks(groups);
    const double n1 = static_cast<double>(a.size()), n2 = static_cast<double>(b.size());
    double r1 = 0.0;
    for (double r : pooled.ranks[0]) r1 += r;
    const double u1 = r1 - n1 * (n1 + 1.0) / 2.0;
    const double mu = n1 * n2 / 2.0;
    const double big_n = n1 + n2;
    const double var = n1 * n2 / 12.0 * ((big_n + 1.0) - pooled.tie_term / (big_n * (big_n - 1.0)));
    TestResult r{u1, 1.0, 0.0, 0.0};
    if (var > 0.0) {
        const double z = std::max(std::abs(u1 - mu) - 0.5, 0.0) / std::sqrt(var);
        r.p_value = std::min(1.0, 2.0 * normal_sf(z));
    }
    return r;
}

TestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidArgument("wilcoxon_signed_rank needs samples of equal length");
    std::vector<double> d, absd;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        if (diff != 0.0) {
            d.push_back(diff);
            absd.push_back(std::abs(diff));
        }
    }
    TestResult r{0.0, 1.0, 0.0, 0.0};
    if (d.empty()) return r;
    const auto ranks = midranks(absd);
    double w_plus = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > 0.0) w_plus += ranks.ranks[i];
    const double n = static_cast<double>(d.size());
    const double mu = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ranks.tie_term / 48.0;
    r.statistic = w_plus;
    if (var > 0.0) {
        const double z = std::max(std::abs(w_plus - mu) - 0.5, 0.0) / std::sqrt(var);
        r.p_value = std::min(1.0, 2.0 * normal_sf(z));
    }
    return r;
}

TestResult welch_anova(Groups groups) {
    require_groups(groups, 2, 2, "welch_anova");
    const double k = static_cast<double>(groups.size());
    std::vector<double> w, m, n;
    for (const auto& g : groups) {
        const double v = variance(g);
        if (!(v > 0.0)) throw DegenerateSample("welch_anova: a group has zero variance");
        n.push_back(static_cast<double>(g.size()));
        m.push_back(mean(g));
        w.push_back(n.back() / v);
    }
    double sw = 0.0, swm = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        sw += w[i];
        swm += w[i] * m[i];
    }
    const double mw = swm / sw;
    double a = 0.0, tmp = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        a += w[i] * (m[i] - mw) * (m[i] - mw);
        const double share = 1.0 - w[i] / sw;
        tmp += share * share / (n[i] - 1.0);
    }
    a /= (k - 1.0);
    const double b = 1.0 + 2.0 * (k - 2.0) / (k * k - 1.0) * tmp;
    const double df2 = (k * k - 1.0) / (3.0 * tmp);
    TestResult r{a / b, 1.0, k - 1.0, df2};
    r.p_value = fisher_f_sf(r.statistic, r.df1, r.df2);
    return r;
}

TestResult kruskal_wallis(Groups groups) {
    require_groups(groups, 2, 1, "kruskal_wallis");
    const auto pooled = pooled_ranks(groups);
    const double big_n = pooled.total;
    double sum = 0.0;
    for (const auto& r : pooled.ranks) {
        double rs = 0.0;
        for (double v : r) rs += v;
        sum += rs * rs / static_cast<double>(r.size());
    }
    const double h_raw = 12.0 / (big_n * (big_n + 1.0)) * sum - 3.0 * (big_n + 1.0);
    const double correction = 1.0 - pooled.tie_term / (big_n * big_n * big_n - big_n);
    const double df = static_cast<double>(groups.size()) - 1.0;
    TestResult r{0.0, 1.0, df, 0.0};
    if (correction > 0.0) {
        r.statistic = std::max(h_raw / correction, 0.0);
        r.p_value = chi_squared_sf(r.statistic, df);
    }
    return r;
}

std::vector<PairwiseComparison> tukey_hsd(Groups groups) {
    require_groups(groups, 2, 1, "tukey_hsd");
    const int k = static_cast<int>(groups.size());
    double ssw = 0.0, total_n = 0.0;
    std::vector<double> means;
    for (const auto& g : groups) {
        const double m = mean(g);
        means.push_back(m);
        total_n += static_cast<double>(g.size());
        for (double v : g) ssw += (v - m) * (v - m);
    }
    const double df = total_n - k;
    if (df <= 0.0) throw InvalidArgument("tukey_hsd needs more observations than groups");
    const double msw = ssw / df;
    std::vector<PairwiseComparison> out;
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            const double se = std::sqrt(msw / 2.0 *
                                        (1.0 / static_cast<double>(groups[i].size()) +
                                         1.0 / static_cast<double>(groups[j].size())));
            const double diff = std::abs(means[i] - means[j]);
            PairwiseComparison c{i, j, 0.0, 1.0};
            if (se > 0.0) {
                c.statistic = diff / se;
                c.p_adjusted = std::clamp(1.0 - studentized_range_cdf(c.statistic, k, df), 0.0, 1.0);
            } else if (diff > 0.0) {
                c.statistic = kInf;
                c.p_adjusted = 0.0;
            }
            out.push_back(c);
        }
    return out;
}

std::vector<PairwiseComparison> dunn_bonferroni(Groups groups) {
    require_groups(groups, 2, 1, "dunn_bonferroni");
    const auto pooled = pooled_ranks(groups);
    const double big_n = pooled.total;
    const double base = big_n * (big_n + 1.0) / 12.0 - pooled.tie_term / (12.0 * (big_n - 1.0));
    const double pairs = static_cast<double>(groups.size() * (groups.size() - 1) / 2);
    std::vector<double> mean_rank;
    for (const auto& r : pooled.ranks) mean_rank.push_back(mean(r));
    std::vector<PairwiseComparison> out;
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            const double se = std::sqrt(base * (1.0 / static_cast<double>(groups[i].size()) +
                                                1.0 / static_cast<double>(groups[j].size())));
            PairwiseComparison c{i, j, 0.0, 1.0};
            if (se > 0.0) {
                c.statistic = std::abs(mean_rank[i] - mean_rank[j]) / se;
                c.p_adjusted = std::min(1.0, 2.0 * normal_sf(c.statistic) * pairs);
            }
            out.push_back(c);
        }
    return out;
}

}  // namespace dfarm::analysis
