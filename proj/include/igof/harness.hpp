#pragma once

#include <functional>
#include <string>
#include <vector>

#include "igof/basis.hpp"
#include "igof/model.hpp"
#include "igof/rng.hpp"
#include "igof/select.hpp"

namespace igof {

[[nodiscard]] std::vector<std::string> catalog_names();

/// Built-in models: example1-null, example1-truth, example2-null,
/// example2-truth, fermi-disc-uniform, fermi-disc-perturbed, uniform-2d.
/// Throws LookupError for unknown names.
[[nodiscard]] ModelSpec catalog(const std::string& name);

/// Conditional chain of a multivariate normal in the given order.
[[nodiscard]] std::vector<ConditionalLaw> gaussian_chain(const std::vector<std::string>& names,
                                                        const std::vector<double>& mean,
                                                        const std::vector<std::vector<double>>& cov,
                                                        const std::vector<std::size_t>& positions);

/// Bivariate normal truncated to [lo1, hi1] x [lo2, hi2], as a two-step chain.
[[nodiscard]] ModelSpec truncated_bivariate_normal(double mean1, double mean2, double var1,
                                                   double var2, double cov, double lo1, double hi1,
                                                   double lo2, double hi2);

struct StudyConfig {
    ModelSpec truth;
    ModelSpec null;
    std::size_t n = 2000;
    std::size_t B = 500;
    double alpha = 0.05;
    BasisConfig degrees;
    Criterion criterion = Criterion::AIC;
    RngSeed seed{};
    unsigned threads = 0;  // 0: IGOF_THREADS or hardware concurrency
};

struct ReplicateOutcome {
    double statistic = 0.0;
    double log10_p_value = 0.0;
    std::size_t k_star = 0;
    bool rejected = false;
};

struct SubsetRate {
    std::vector<std::size_t> subset;
    std::size_t M_q = 0;
    double rejection_rate = 0.0;
    double standard_error = 0.0;
};

struct StudyResult {
    std::size_t n = 0;
    std::size_t B = 0;
    double rejection_rate = 0.0;
    double standard_error = 0.0;
    std::vector<ReplicateOutcome> replicates;
    std::vector<SubsetRate> subsets;
};

/// sqrt(r (1 - r) / B).
[[nodiscard]] double rate_standard_error(double rate, std::size_t B);

using ReplicateVisitor =
    std::function<void(std::size_t b, const CoefficientSet& coeffs, const SelectionResult& selection)>;

/// Draws replicate b from seed.substream(b), transforms it through the null,
/// fits and selects, then calls visit. Workers call visit concurrently, each
/// with distinct b.
void for_each_replicate(const StudyConfig& config, const ReplicateVisitor& visit);

/// Rejection rate of the deviance test (adjusted unless criterion is None)
/// on B samples of size n drawn from the truth and transformed by the null.
[[nodiscard]] StudyResult type1_power_study(const StudyConfig& config);

/// Per-subset rejection rates of the diagnostic tests.
[[nodiscard]] StudyResult diagnostic_study(const StudyConfig& config,
                                           const std::vector<std::vector<std::size_t>>& subsets);

}  // namespace igof
