#pragma once

// Special functions and distribution tails used by the statistical tests.
//
// The incomplete gamma function uses its power series below x = a + 1 and a
// modified-Lentz continued fraction above; the incomplete beta function uses
// the Lentz continued fraction on whichever side of the mean converges fast.
// Both are accurate to about 1e-13 absolute over ordinary arguments.

namespace dfarm::analysis {

double log_gamma(double x);

// Regularized lower/upper incomplete gamma P(a, x), Q(a, x); a > 0, x >= 0.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b); a, b > 0, 0 <= x <= 1.
double regularized_beta(double a, double b, double x);

double normal_pdf(double x);
double normal_cdf(double x);
double normal_sf(double x);
// Acklam's rational approximation followed by one Halley step.
double normal_quantile(double p);

double student_t_cdf(double t, double df);
// P(|T| >= |t|).
double student_t_two_sided(double t, double df);

double fisher_f_cdf(double f, double df1, double df2);
double fisher_f_sf(double f, double df1, double df2);

double chi_squared_cdf(double x, double df);
double chi_squared_sf(double x, double df);

// Survival function of the asymptotic Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

// CDF of the studentized range Q for k groups and df error degrees of
// freedom, by nested Gauss-Legendre quadrature. df <= 0 selects the
// infinite-df limit.
double studentized_range_cdf(double q, int k, double df);

}  // namespace dfarm::analysis
