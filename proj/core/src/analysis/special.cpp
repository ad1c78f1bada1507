#include "dfarm/analysis/special.hpp"

#include "dfarm/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dfarm::analysis {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 20000;

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kGlNodes{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                         0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGlWeights{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                           0.1494513491505806, 0.0666713443086881};

template <class F>
double gauss_legendre(F&& f, double lo, double hi, int panels) {
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        const double half = 0.5 * width;
        double s = 0.0;
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
            s += kGlWeights[i] * (f(mid - half * kGlNodes[i]) + f(mid + half * kGlNodes[i]));
        }
        total += s * half;
    }
    return total;
}

double gamma_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

double gamma_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return h;
}

double clamp01(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

}  // namespace

double log_gamma(double x) { return std::lgamma(x); }

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("regularized_gamma_p requires a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return clamp01(gamma_series(a, x));
    return clamp01(1.0 - gamma_continued_fraction(a, x));
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("regularized_gamma_q requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return clamp01(1.0 - gamma_series(a, x));
    return clamp01(gamma_continued_fraction(a, x));
}

double regularized_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
        throw DomainError("regularized_beta requires a, b > 0 and 0 <= x <= 1");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                                  b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return clamp01(front * beta_continued_fraction(a, b, x) / a);
    return clamp01(1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw DomainError("normal_quantile requires 0 <= p <= 1");
    }
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement against the erfc-based CDF; use the tail nearest p.
    const double e = p < 0.5 ? normal_cdf(x) - p : -(normal_sf(x) - (1.0 - p));
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw DomainError("student_t_cdf requires df > 0");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = 0.5 * regularized_beta(0.5 * df, 0.5, df / (df + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_two_sided(double t, double df) {
    if (!(df > 0.0)) throw DomainError("student_t_two_sided requires df > 0");
    if (std::isnan(t)) return 1.0;
    if (std::isinf(t)) return 0.0;
    return clamp01(regularized_beta(0.5 * df, 0.5, df / (df + t * t)));
}

double fisher_f_cdf(double f, double df1, double df2) {
    if (!(df1 > 0.0) || !(df2 > 0.0)) throw DomainError("fisher_f_cdf requires positive degrees of freedom");
    if (f <= 0.0) return 0.0;
    if (std::isinf(f)) return 1.0;
    return regularized_beta(0.5 * df1, 0.5 * df2, df1 * f / (df1 * f + df2));
}

double fisher_f_sf(double f, double df1, double df2) {
    if (!(df1 > 0.0) || !(df2 > 0.0)) throw DomainError("fisher_f_sf requires positive degrees of freedom");
    if (f <= 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    return regularized_beta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f));
}

double chi_squared_cdf(double x, double df) {
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi_squared_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * df, 0.5 * x);
}

double kolmogorov_sf(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 1.18) {
        // Jacobi theta form, fast for small x.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double sum = 0.0;
        for (int k = 1; k <= 50; ++k) {
            const double m = 2.0 * k - 1.0;
            const double term = std::exp(-m * m * pi2 / (8.0 * x * x));
            sum += term;
            if (term < 1e-18) break;
        }
        return clamp01(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * sum);
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 ? term : -term);
        if (term < 1e-18) break;
    }
    return clamp01(2.0 * sum);
}

namespace {

// Range distribution of k standard normals, P(R <= w).
double normal_range_cdf(double w, int k) {
    if (w <= 0.0) return 0.0;
    const auto integrand = [&](double z) {
        const double inner = normal_cdf(z) - normal_cdf(z - w);
        return inner <= 0.0 ? 0.0 : normal_pdf(z) * std::pow(inner, k - 1);
    };
    return clamp01(k * gauss_legendre(integrand, -8.5, 8.5 + w, 40));
}

}  // namespace

double studentized_range_cdf(double q, int k, double df) {
    if (k < 2) throw DomainError("studentized_range_cdf requires k >= 2");
    if (!(q > 0.0)) return 0.0;
    if (df <= 0.0 || df > 25000.0) return normal_range_cdf(q, k);

    // s = sqrt(chi2_df / df) has density
    // df^(df/2) s^(df-1) exp(-df s^2 / 2) / (Gamma(df/2) 2^(df/2 - 1)).
    const double log_norm = 0.5 * df * std::log(df) - log_gamma(0.5 * df) - (0.5 * df - 1.0) * std::log(2.0);
    const auto density = [&](double s) {
        if (s <= 0.0) return 0.0;
        return std::exp(log_norm + (df - 1.0) * std::log(s) - 0.5 * df * s * s);
    };
    const double mode = std::sqrt(std::max(df - 1.0, 0.0) / df);
    const double spread = 12.0 / std::sqrt(2.0 * df);
    const double lo = std::max(0.0, mode - spread);
    const double hi = mode + spread + (df < 3.0 ? 4.0 : 0.0);
    const auto integrand = [&](double s) { return density(s) * normal_range_cdf(q * s, k); };
    return clamp01(gauss_legendre(integrand, lo, hi, 48));
}

}  // namespace dfarm::analysis
