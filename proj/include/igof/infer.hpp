#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igof/estimate.hpp"
#include "igof/model.hpp"
#include "igof/select.hpp"

namespace igof {

struct DevianceReport {
    double statistic = 0.0;
    unsigned df = 0;
    double p_value = 1.0;
    double log10_p_value = 0.0;
    bool adjusted = false;
    std::size_t k_star = 0;
    std::size_t M = 0;
    std::vector<std::size_t> active;  // positions in K, index order
};

/// Without a selection (or with Criterion::None): D = n theta'theta over all of
/// K. With one: D = n times the sum over the selected terms, referred to
/// chi2 with M degrees of freedom as a conservative bound.
[[nodiscard]] DevianceReport deviance_test(const CoefficientSet& coeffs,
                                           const SelectionResult* selection = nullptr);

struct DiagnosticRow {
    std::vector<std::size_t> subset;  // zero-based coordinate positions, sorted
    std::size_t M_q = 0;
    double statistic = 0.0;
    double p_value = 1.0;
    double log10_p_value = 0.0;

    /// "X1,X2,X5"-style label with one-based positions.
    [[nodiscard]] std::string label(const std::vector<std::string>& names = {}) const;
};

/// Indices of K with j_d = 0 outside the subset.
[[nodiscard]] bool in_subspace(const MultiIndex& k, const std::vector<std::size_t>& subset);

/// Sub-vector test. Throws MarginalityError naming the missing parents when
/// the subset is not closed under the model's parent relation.
[[nodiscard]] DiagnosticRow diagnose(const CoefficientSet& coeffs, const SelectionResult& selection,
                                     const ModelSpec& model, std::vector<std::size_t> subset);

/// Same statistic without the parent check (callers validated already).
[[nodiscard]] DiagnosticRow diagnose_unchecked(const CoefficientSet& coeffs,
                                               const SelectionResult& selection,
                                               std::vector<std::size_t> subset);

[[nodiscard]] std::vector<DiagnosticRow> diagnostic_table(
    const CoefficientSet& coeffs, const SelectionResult& selection, const ModelSpec& model,
    const std::vector<std::vector<std::size_t>>& subsets);

}  // namespace igof
