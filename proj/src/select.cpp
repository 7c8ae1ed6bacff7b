#include "igof/select.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "igof/errors.hpp"

namespace igof {

std::string criterion_name(Criterion c) {
    switch (c) {
        case Criterion::AIC:
            return "aic";
        case Criterion::BIC:
            return "bic";
        case Criterion::None:
            return "none";
    }
    return "none";
}

Criterion criterion_from_name(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "aic") return Criterion::AIC;
    if (lower == "bic") return Criterion::BIC;
    if (lower == "none") return Criterion::None;
    throw LookupError("unknown selection criterion '" + name + "' (expected aic, bic or none)");
}

std::vector<std::size_t> SelectionResult::active_sorted() const {
    std::vector<std::size_t> out(active);
    std::sort(out.begin(), out.end());
    return out;
}

double penalty_per_term(Criterion c, std::size_t n) {
    const double nn = static_cast<double>(n);
    switch (c) {
        case Criterion::AIC:
            return 2.0 / nn;
        case Criterion::BIC:
            return std::log(nn) / nn;
        case Criterion::None:
            return 0.0;
    }
    return 0.0;
}

SelectionResult select(const CoefficientSet& coeffs, Criterion criterion) {
    if (coeffs.n == 0) throw DomainError("select: coefficient set has n = 0");
    const std::size_t M = coeffs.size();
    SelectionResult out;
    out.criterion = criterion;
    out.order.resize(M);
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    const auto& th = coeffs.theta;
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t a, std::size_t b) { return th[a] * th[a] > th[b] * th[b]; });

    const double pen = penalty_per_term(criterion, coeffs.n);
    out.path.assign(M + 1, 0.0);
    double best = 0.0;
    out.k_star = 0;
    for (std::size_t K = 1; K <= M; ++K) {
        const double t = th[out.order[K - 1]];
        out.path[K] = out.path[K - 1] + t * t - pen;
        if (out.path[K] > best) {
            best = out.path[K];
            out.k_star = K;
        }
    }
    if (criterion == Criterion::None) out.k_star = M;
    out.active.assign(out.order.begin(), out.order.begin() + static_cast<std::ptrdiff_t>(out.k_star));
    return out;
}

}  // namespace igof
