#pragma once

#include <functional>
#include <vector>

namespace igof::numeric {

inline constexpr double kPi = 3.14159265358979323846;

[[nodiscard]] double std_normal_pdf(double x);

/// Standard normal cdf. Absolute error below 1e-15 (erfc based).
[[nodiscard]] double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x) without cancellation for large x.
[[nodiscard]] double std_normal_sf(double x);

/// Inverse of the standard normal cdf (Wichura, AS241). Requires p in (0, 1).
[[nodiscard]] double std_normal_quantile(double p);

/// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
[[nodiscard]] double gamma_p(double a, double x);
[[nodiscard]] double gamma_q(double a, double x);

/// log Q(a, x), finite even when Q underflows a double.
[[nodiscard]] double log_gamma_q(double a, double x);

/// Chi-squared survival function P(chi2_df > x).
///
/// Evaluated as exp(chi2_logsf), so values below ~1e-308 flush to zero; use
/// chi2_logsf when the magnitude matters. Throws DomainError for df == 0 or
/// x < 0.
[[nodiscard]] double chi2_sf(double x, unsigned df);
[[nodiscard]] double chi2_logsf(double x, unsigned df);

/// Regularized incomplete beta I_x(a, b).
[[nodiscard]] double incomplete_beta(double a, double b, double x);

/// Student-t cdf with real df > 0.
[[nodiscard]] double student_t_cdf(double t, double df);

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }

    /// Integral of f over [lo, hi] by the affine image of this rule.
    [[nodiscard]] double integrate(const std::function<double(double)>& f, double lo = 0.0,
                                   double hi = 1.0) const;
};

/// n-point Gauss-Legendre rule on [0, 1]; 1 <= n <= 512.
[[nodiscard]] QuadratureRule gauss_legendre(int n);

/// Bracketing root finder: secant steps inside a bisection bracket.
///
/// Returns x with |f(x)| <= tol or with the bracket narrowed below tol.
/// Throws BracketError when f(lo) and f(hi) share a sign.
[[nodiscard]] double find_root(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

}  // namespace igof::numeric
