#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/analysis/hypothesis.hpp"
#include "dfarm/analysis/special.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace dfarm::analysis {

namespace {

// c[0] + c[1] x + ... + c[n-1] x^(n-1)
double poly(std::span<const double> c, double x) {
    double result = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) result = result * x + c[i];
    return result;
}

}  // namespace

TestResult shapiro_wilk(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 3) throw InvalidArgument("shapiro_wilk needs at least 3 observations");
    if (n > 5000) throw InvalidArgument("shapiro_wilk is valid up to 5000 observations");

    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    if (x.back() - x.front() <= 0.0) throw DegenerateSample("shapiro_wilk: sample has zero range");

    static constexpr double g[] = {-2.273, 0.459};
    static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
    static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

    const std::size_t half = n / 2;
    const double an = static_cast<double>(n);
    std::vector<double> a(half + 1, 0.0);  // 1-based
    if (n == 3) {
        a[1] = std::sqrt(0.5);
    } else {
        std::vector<double> m(half + 1);
        double summ2 = 0.0;
        for (std::size_t i = 1; i <= half; ++i) {
            m[i] = normal_quantile((static_cast<double>(i) - 0.375) / (an + 0.25));
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(c1, rsn) - m[1] / ssumm2;
        std::size_t first_free = 2;
        double fac = 0.0;
        if (n > 5) {
            first_free = 3;
            const double a2 = -m[2] / ssumm2 + poly(c2, rsn);
            fac = std::sqrt((summ2 - 2.0 * m[1] * m[1] - 2.0 * m[2] * m[2]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[2] = a2;
        } else {
            fac = std::sqrt((summ2 - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1));
        }
        a[1] = a1;
        for (std::size_t i = first_free; i <= half; ++i) a[i] = -m[i] / fac;
    }

    double numerator = 0.0;
    for (std::size_t i = 1; i <= half; ++i) numerator += a[i] * (x[n - i] - x[i - 1]);
    const double xm = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - xm) * (v - xm);
    double w = numerator * numerator / ss;
    w = std::min(w, 1.0);

    TestResult result{w, 1.0, 0.0, 0.0};
    if (n == 3) {
        const double pi6 = 6.0 / std::numbers::pi;
        const double stqr = std::numbers::pi / 3.0;
        result.p_value = std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), 0.0, 1.0);
        return result;
    }
    if (w >= 1.0) return result;
    double y = std::log(1.0 - w);
    double mu = 0.0, sigma = 1.0;
    if (n <= 11) {
        const double gamma = poly(g, an);
        if (y >= gamma) {
            result.p_value = 1e-99;
            return result;
        }
        y = -std::log(gamma - y);
        mu = poly(c3, an);
        sigma = std::exp(poly(c4, an));
    } else {
        const double xx = std::log(an);
        mu = poly(c5, xx);
        sigma = std::exp(poly(c6, xx));
    }
    result.p_value = std::clamp(normal_sf((y - mu) / sigma), 0.0, 1.0);
    return result;
}

TestResult dagostino_k2(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 20) throw InvalidArgument("dagostino_k2 needs at least 20 observations");
    const double m = mean(x);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 <= 0.0) throw DegenerateSample("dagostino_k2: sample has zero variance");

    const double skew = m3 / std::pow(m2, 1.5);
    double y = skew * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
    const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                         ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
    const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
    const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
    const double alpha = std::sqrt(2.0 / (w2 - 1.0));
    if (y == 0.0) y = 1.0;
    const double z_skew = delta * std::log(y / alpha + std::sqrt((y / alpha) * (y / alpha) + 1.0));

    const double b2 = m4 / (m2 * m2);
    const double expected = 3.0 * (n - 1.0) / (n + 1.0);
    const double var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
    const double xk = (b2 - expected) / std::sqrt(var_b2);
    const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                              std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
    const double a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
    const double term1 = 1.0 - 2.0 / (9.0 * a);
    const double denom = 1.0 + xk * std::sqrt(2.0 / (a - 4.0));
    const double term2 = std::copysign(std::cbrt((1.0 - 2.0 / a) / std::abs(denom)), denom);
    const double z_kurt = (term1 - term2) / std::sqrt(2.0 / (9.0 * a));

    const double k2 = z_skew * z_skew + z_kurt * z_kurt;
    return {k2, chi_squared_sf(k2, 2.0), 2.0, 0.0};
}

}  // namespace dfarm::analysis
