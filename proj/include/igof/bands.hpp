#pragma once

#include <span>
#include <string>
#include <vector>

#include "igof/basis.hpp"
#include "igof/estimate.hpp"
#include "igof/points.hpp"
#include "igof/rng.hpp"
#include "igof/select.hpp"

namespace igof {

/// Regular lattice over [0,1]^p with `resolution` points per axis (ends
/// included), last coordinate varying fastest.
[[nodiscard]] PointSet cube_grid(std::size_t dimension, std::size_t resolution);

/// Null standard error of d at u: sqrt(sum_active T_k(u)^2 / n).
[[nodiscard]] double se0(const TensorBasis& basis, const std::vector<std::size_t>& active,
                         std::span<const double> u, std::size_t n);

/// Band classification over a lattice.
struct FieldGrid {
    std::size_t resolution = 0;
    PointSet u;
    std::vector<double> d_hat;
    std::vector<double> se0;
    std::vector<int> classification;  // +1 above 1 + c se0, -1 below 1 - c se0, else 0
    double c = 0.0;
    std::size_t n = 0;

    [[nodiscard]] std::size_t size() const { return d_hat.size(); }
};

/// Classifies each lattice point against 1 +/- c se0. Coverage holds only if
/// the coefficients left out of the active set are o(n^{-1/2}) under the
/// truth; that cannot be checked from the data and is assumed.
[[nodiscard]] FieldGrid band_grid(const ComparisonDensity& cd, double c, std::size_t resolution);

/// Euler characteristic (vertices - edges + squares) of {field >= t} on a
/// rows x cols lattice stored row-major.
[[nodiscard]] long empirical_ec(std::span<const double> field, std::size_t rows, std::size_t cols,
                                double t);

/// Expected-EC tail densities used in the curvature fit.
///   Gkf:     rho1 = e^{-t^2/2} / (2 pi),   rho2 = t e^{-t^2/2} / (2 pi)^{3/2}
///   Printed: rho1 = e^{-t^2/2} / pi,       rho2 = e^{-t^2/2} / (sqrt(2) pi^{3/2})
enum class EcForm { Gkf, Printed };

[[nodiscard]] std::string ec_form_name(EcForm f);
[[nodiscard]] EcForm ec_form_from_name(const std::string& name);

[[nodiscard]] double ec_rho1(double t, EcForm form);
[[nodiscard]] double ec_rho2(double t, EcForm form);
/// (1 - Phi(t)) + L1 rho1(t) + L2 rho2(t).
[[nodiscard]] double expected_ec(double t, double L1, double L2, EcForm form);

struct LKCEstimate {
    double L1 = 0.0;
    double L2 = 0.0;
    double se_L1 = 0.0;  // Monte Carlo standard errors propagated through the fit
    double se_L2 = 0.0;
    std::vector<double> thresholds;
    std::vector<double> mean_ec;
    std::vector<double> ec_se;
    double residual_norm = 0.0;
    std::size_t B = 0;
    EcForm form = EcForm::Gkf;
};

/// Least-squares fit of L1, L2 to an averaged EC curve. RankError with fewer
/// than two distinct thresholds. Under the printed form the two densities are
/// proportional, so only their combination is fitted and (L1, L2) is the
/// minimum-norm pair reproducing it.
[[nodiscard]] LKCEstimate fit_lkc(const std::vector<double>& thresholds,
                                  const std::vector<double>& mean_ec,
                                  const std::vector<double>& ec_se, std::size_t B, EcForm form);

/// Unit-variance null field Z(u) = xi'T(u)/|T(u)| with xi ~ N(0, I) on a lattice.
class NullField {
public:
    NullField(const BasisConfig& config, std::size_t resolution,
              std::vector<std::size_t> active = {});

    [[nodiscard]] std::size_t points() const { return points_; }
    [[nodiscard]] std::size_t resolution() const { return resolution_; }
    [[nodiscard]] std::size_t terms() const { return terms_; }
    /// One field realization into out (size points()).
    void draw(Rng& rng, std::span<double> out) const;

private:
    std::size_t resolution_;
    std::size_t points_;
    std::size_t terms_;
    std::vector<double> normalized_;  // points x terms
};

struct LkcOptions {
    std::size_t B = 2000;
    std::vector<double> thresholds{0.5, 1.0, 1.5, 2.0};
    std::size_t resolution = 101;
    EcForm form = EcForm::Gkf;
    RngSeed seed{};
    unsigned threads = 1;
};

/// Simulates B null fields over all of K (p = 2 only) and fits L1, L2.
[[nodiscard]] LKCEstimate estimate_lkc(const BasisConfig& config, const LkcOptions& options);

/// Root in [1, 10] of expected_ec(c) = alpha / 2. BracketError if none.
[[nodiscard]] double solve_c_alpha(const LKCEstimate& lkc, double alpha);

struct McOptions {
    std::size_t n = 5000;
    double alpha = 0.05;
    std::size_t B = 10000;
    std::size_t resolution = 101;
    bool redo_selection = false;
    Criterion criterion = Criterion::AIC;
    RngSeed seed{};
    unsigned threads = 1;
};

/// Empirical 1 - alpha/2 quantile of the lattice supremum of the standardized
/// null field. With redo_selection each replicate fits n uniform draws,
/// reselects, and standardizes over the selected terms only.
[[nodiscard]] double mc_sup_quantile(const BasisConfig& config, const McOptions& options);

}  // namespace igof
