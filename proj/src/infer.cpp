#include "igof/infer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "igof/errors.hpp"
#include "igof/numeric.hpp"

namespace igof {

namespace {

void set_p(double statistic, std::size_t df, double& p, double& log10_p) {
    const double lp = numeric::chi2_logsf(statistic, static_cast<unsigned>(df));
    p = std::exp(lp);
    log10_p = lp / std::numbers::ln10;
}

std::vector<std::size_t> normalize_subset(std::vector<std::size_t> subset, std::size_t p) {
    if (subset.empty()) throw DomainError("diagnose: subset must be nonempty");
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (subset.back() >= p) {
        throw DomainError("diagnose: coordinate " + std::to_string(subset.back() + 1) +
                          " exceeds dimension " + std::to_string(p));
    }
    return subset;
}

}  // namespace

DevianceReport deviance_test(const CoefficientSet& coeffs, const SelectionResult* selection) {
    DevianceReport r;
    r.M = coeffs.size();
    r.df = static_cast<unsigned>(r.M);
    const double n = static_cast<double>(coeffs.n);
    if (selection == nullptr || selection->criterion == Criterion::None) {
        for (double t : coeffs.theta) r.statistic += t * t;
        r.k_star = r.M;
        r.active.resize(r.M);
        for (std::size_t k = 0; k < r.M; ++k) r.active[k] = k;
    } else {
        r.adjusted = true;
        r.k_star = selection->k_star;
        r.active = selection->active_sorted();
        for (std::size_t k : r.active) r.statistic += coeffs.theta[k] * coeffs.theta[k];
    }
    r.statistic *= n;
    set_p(r.statistic, r.df, r.p_value, r.log10_p_value);
    return r;
}

std::string DiagnosticRow::label(const std::vector<std::string>& names) const {
    std::string s;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ',';
        const std::size_t d = subset[i];
        s += d < names.size() ? names[d] : "X" + std::to_string(d + 1);
    }
    return s;
}

bool in_subspace(const MultiIndex& k, const std::vector<std::size_t>& subset) {
    for (std::size_t d = 0; d < k.j.size(); ++d) {
        if (k.j[d] != 0 && !std::binary_search(subset.begin(), subset.end(), d)) return false;
    }
    return true;
}

DiagnosticRow diagnose_unchecked(const CoefficientSet& coeffs, const SelectionResult& selection,
                                 std::vector<std::size_t> subset) {
    const auto& degrees = coeffs.config.degrees();
    DiagnosticRow row;
    row.subset = normalize_subset(std::move(subset), degrees.size());
    std::size_t full = 1;
    for (std::size_t d : row.subset) full *= static_cast<std::size_t>(degrees[d] + 1);
    row.M_q = full - 1;
    const bool all = selection.criterion == Criterion::None;
    auto add = [&](std::size_t k) {
        if (in_subspace(coeffs.indices[k], row.subset)) row.statistic += coeffs.theta[k] * coeffs.theta[k];
    };
    if (all) {
        for (std::size_t k = 0; k < coeffs.size(); ++k) add(k);
    } else {
        for (std::size_t k : selection.active) add(k);
    }
    row.statistic *= static_cast<double>(coeffs.n);
    set_p(row.statistic, row.M_q, row.p_value, row.log10_p_value);
    return row;
}

DiagnosticRow diagnose(const CoefficientSet& coeffs, const SelectionResult& selection,
                       const ModelSpec& model, std::vector<std::size_t> subset) {
    if (model.dimension() != coeffs.config.dimension()) {
        throw DomainError("diagnose: model and coefficient dimensions differ");
    }
    subset = normalize_subset(std::move(subset), model.dimension());
    const auto missing = missing_parents(model, subset);
    if (!missing.empty()) {
        std::string members, parents;
        for (std::size_t d : subset) members += (members.empty() ? "" : ",") + std::to_string(d + 1);
        for (std::size_t d : missing) parents += (parents.empty() ? "" : ",") + std::to_string(d + 1);
        throw MarginalityError("subset {" + members + "} is not closed under conditioning; missing parents " +
                               parents);
    }
    return diagnose_unchecked(coeffs, selection, std::move(subset));
}

std::vector<DiagnosticRow> diagnostic_table(const CoefficientSet& coeffs,
                                            const SelectionResult& selection,
                                            const ModelSpec& model,
                                            const std::vector<std::vector<std::size_t>>& subsets) {
    std::vector<DiagnosticRow> rows;
    rows.reserve(subsets.size());
    for (const auto& s : subsets) rows.push_back(diagnose(coeffs, selection, model, s));
    return rows;
}

}  // namespace igof
