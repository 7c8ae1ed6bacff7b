#pragma once

#include <string>
#include <vector>

#include "igof/estimate.hpp"

namespace igof {

enum class Criterion { None, AIC, BIC };

[[nodiscard]] std::string criterion_name(Criterion c);
/// "aic", "bic" or "none" (case-insensitive).
[[nodiscard]] Criterion criterion_from_name(const std::string& name);

/// Ordered-coefficient selection of K*.
struct SelectionResult {
    Criterion criterion = Criterion::None;
    std::vector<std::size_t> order;  // positions in K by decreasing theta^2, ties by position
    std::size_t k_star = 0;
    std::vector<double> path;          // criterion value for K = 0..M
    std::vector<std::size_t> active;   // first k_star entries of order

    /// Active positions sorted by index order (for reporting).
    [[nodiscard]] std::vector<std::size_t> active_sorted() const;
};

/// Penalty per retained term: 2/n (AIC), log(n)/n (BIC), 0 (None keeps all).
[[nodiscard]] double penalty_per_term(Criterion c, std::size_t n);

/// K* = argmax over K in 0..M of sum_{k<=K} theta^2_(k) - K * penalty; the
/// smallest maximizer wins.
[[nodiscard]] SelectionResult select(const CoefficientSet& coeffs, Criterion criterion);

}  // namespace igof
