#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "igof/basis.hpp"
#include "igof/model.hpp"
#include "igof/numeric.hpp"
#include "igof/points.hpp"

namespace igof {

/// Estimated coefficients theta_k for every k in K, in enumerate_K order.
struct CoefficientSet {
    BasisConfig config;
    std::vector<MultiIndex> indices;
    std::vector<double> theta;
    std::size_t n = 0;
    /// Sample covariance of the scores divided by n, row-major M x M.
    std::optional<std::vector<double>> sigma;

    [[nodiscard]] std::size_t size() const { return theta.size(); }
    /// Position of k in the index order; throws LookupError when absent.
    [[nodiscard]] std::size_t position(const MultiIndex& k) const;
    [[nodiscard]] double at(const MultiIndex& k) const { return theta[position(k)]; }
};

struct FitOptions {
    /// Also accumulate the M x M score covariance (refused above kMaxSigmaSize).
    bool with_sigma = false;
    unsigned threads = 1;
};

inline constexpr std::size_t kMaxSigmaSize = 4096;

/// theta_k = mean of T_k(u_i). Accepts n >= 1; throws DomainError on an empty
/// sample or a dimension mismatch.
[[nodiscard]] CoefficientSet fit(const PointSet& u, const BasisConfig& config,
                                 const FitOptions& options = {});
[[nodiscard]] CoefficientSet fit(const USample& u, const BasisConfig& config,
                                 const FitOptions& options = {});

/// Reference implementation: one tensor_eval call per observation and index.
[[nodiscard]] std::vector<double> fit_naive(const PointSet& u, const BasisConfig& config);

/// d(u) = 1 + sum over the active set of theta_k T_k(u).
class ComparisonDensity {
public:
    explicit ComparisonDensity(CoefficientSet coeffs);
    ComparisonDensity(CoefficientSet coeffs, std::vector<std::size_t> active);

    [[nodiscard]] const CoefficientSet& coefficients() const { return coeffs_; }
    [[nodiscard]] const std::vector<std::size_t>& active() const { return active_; }
    [[nodiscard]] const TensorBasis& basis() const { return basis_; }

private:
    CoefficientSet coeffs_;
    std::vector<std::size_t> active_;
    TensorBasis basis_;
};

[[nodiscard]] double eval_d(const ComparisonDensity& cd, std::span<const double> u);

/// g(x) d(G_R(x)). Throws DomainError outside the model support.
[[nodiscard]] double eval_f(const ComparisonDensity& cd, const ModelSpec& model,
                            std::span<const double> x);

/// Variance of d(u): (1/n) sum_active T_k(u)^2 under the null, otherwise the
/// quadratic form with the sample covariance (StateError if it was not kept).
[[nodiscard]] double variance_d(const ComparisonDensity& cd, std::span<const double> u,
                                bool under_null);

struct IsbResult {
    double divergence = 0.0;  // integral of (d - 1)^2 over the cube
    double theta_sq = 0.0;    // sum of theta_k^2 over K
    double theta_sum = 0.0;   // sum of theta_k over K
    std::vector<double> theta;

    /// Truncation remainder: divergence - theta'theta.
    [[nodiscard]] double isb() const { return divergence - theta_sq; }
    /// Variant with the plain coefficient sum subtracted.
    [[nodiscard]] double isb_sum_form() const { return divergence - theta_sum; }
};

/// Integrated squared bias of the degree-limited expansion of d = f/g,
/// by product Gauss-Legendre quadrature on the cube (p <= 3).
[[nodiscard]] IsbResult isb_oracle(const std::function<double(std::span<const double>)>& true_density,
                                   const ModelSpec& null_model, const BasisConfig& config,
                                   const numeric::QuadratureRule& rule);
[[nodiscard]] IsbResult isb_oracle(const ModelSpec& true_model, const ModelSpec& null_model,
                                   const BasisConfig& config, const numeric::QuadratureRule& rule);

}  // namespace igof
