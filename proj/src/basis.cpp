#include "igof/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "igof/errors.hpp"

namespace igof {

bool MultiIndex::is_zero() const {
    return std::all_of(j.begin(), j.end(), [](int v) { return v == 0; });
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (std::size_t d = 0; d < j.size(); ++d) {
        if (d) s += ',';
        s += std::to_string(j[d]);
    }
    return s + ")";
}

void DiscreteMarginal::validate() const {
    if (support.empty() || support.size() != pmf.size()) {
        throw DomainError("discrete marginal: support and pmf must be nonempty and equal length");
    }
    for (std::size_t i = 1; i < support.size(); ++i) {
        if (!(support[i] > support[i - 1])) {
            throw DomainError("discrete marginal: support must be strictly increasing");
        }
    }
    double total = 0.0;
    for (double p : pmf) {
        if (!(p > 0.0)) throw DomainError("discrete marginal: probabilities must be positive");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("discrete marginal: probabilities sum to " + std::to_string(total));
    }
}

std::vector<double> DiscreteMarginal::cdf_values() const {
    std::vector<double> out(pmf.size());
    std::partial_sum(pmf.begin(), pmf.end(), out.begin());
    return out;
}

std::vector<double> DiscreteMarginal::mid_values() const {
    auto out = cdf_values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= 0.5 * pmf[i];
    return out;
}

std::size_t LpBasis::position_of_mid(double u) const {
    const auto it = std::lower_bound(mid.begin(), mid.end(), u);
    std::size_t best = mid.size();
    double gap = 1e-9;
    for (auto cand : {it, it == mid.begin() ? it : std::prev(it)}) {
        if (cand == mid.end()) continue;
        const double g = std::abs(*cand - u);
        if (g <= gap) {
            gap = g;
            best = static_cast<std::size_t>(cand - mid.begin());
        }
    }
    if (best == mid.size()) {
        throw DomainError("LP basis: value " + std::to_string(u) +
                          " is not a mid-distribution value of the discrete marginal");
    }
    return best;
}

BasisConfig::BasisConfig(std::vector<int> degrees)
    : degrees_(std::move(degrees)), discrete_(degrees_.size()) {
    if (degrees_.empty()) throw DomainError("basis config: dimension must be at least 1");
    for (int m : degrees_) {
        if (m < 1 || m > kMaxDegree) {
            throw DomainError("basis config: degree " + std::to_string(m) + " outside [1, " +
                              std::to_string(kMaxDegree) + "]");
        }
    }
}

void BasisConfig::set_discrete(std::size_t d, const DiscreteMarginal& marginal) {
    if (d >= degrees_.size()) throw DomainError("basis config: coordinate out of range");
    discrete_[d] = lp_discrete_basis(marginal, degrees_[d]);
}

std::size_t BasisConfig::size() const {
    std::size_t full = 1;
    for (int m : degrees_) full *= static_cast<std::size_t>(m + 1);
    return full - 1;
}

bool BasisConfig::has_discrete() const {
    return std::any_of(discrete_.begin(), discrete_.end(),
                       [](const auto& b) { return b.has_value(); });
}

void legendre_values(int m, double u, std::span<double> out) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("legendre: argument " + std::to_string(u) + " outside [0, 1]");
    }
    if (m < 0 || m > kMaxDegree) throw DomainError("legendre: degree outside [0, 32]");
    // Bonnet recurrence on P_j(2u - 1), then sqrt(2j + 1) normalization.
    const double x = 2.0 * u - 1.0;
    double p0 = 1.0;
    double p1 = x;
    out[0] = 1.0;
    if (m >= 1) out[1] = std::sqrt(3.0) * x;
    for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
        out[j] = std::sqrt(2.0 * j + 1.0) * p2;
    }
}

double legendre_eval(int j, double u) {
    double buf[kMaxDegree + 1];
    legendre_values(j, u, std::span<double>(buf, j + 1));
    return buf[j];
}

double tensor_eval(const MultiIndex& k, std::span<const double> u) {
    if (k.dimension() != u.size()) {
        throw DomainError("tensor_eval: index dimension " + std::to_string(k.dimension()) +
                          " does not match point dimension " + std::to_string(u.size()));
    }
    double prod = 1.0;
    for (std::size_t d = 0; d < u.size(); ++d) prod *= legendre_eval(k.j[d], u[d]);
    return prod;
}

LpBasis lp_discrete_basis(const DiscreteMarginal& marginal, int max_degree) {
    marginal.validate();
    const std::size_t n = marginal.support.size();
    if (n < 2) throw DomainError("LP basis: support has a single point");
    if (max_degree < 1 || static_cast<std::size_t>(max_degree) >= n) {
        throw RankError("LP basis: degree " + std::to_string(max_degree) +
                        " needs more than " + std::to_string(n) + " support points");
    }
    const auto& p = marginal.pmf;
    auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i] * a[i] * b[i];
        return s;
    };

    LpBasis out;
    out.marginal = marginal;
    out.mid = marginal.mid_values();
    double cube = 0.0;
    for (double q : p) cube += q * q * q;
    const double sd = std::sqrt((1.0 - cube) / 12.0);

    out.values.assign(1, std::vector<double>(n, 1.0));
    std::vector<double> t1(n);
    for (std::size_t i = 0; i < n; ++i) t1[i] = (out.mid[i] - 0.5) / sd;
    out.values.push_back(t1);

    std::vector<double> power = t1;
    for (int j = 2; j <= max_degree; ++j) {
        for (std::size_t i = 0; i < n; ++i) power[i] *= t1[i];
        std::vector<double> v = power;
        const double start_norm = std::sqrt(inner(v, v));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& prev : out.values) {
                const double c = inner(v, prev);
                for (std::size_t i = 0; i < n; ++i) v[i] -= c * prev[i];
            }
        }
        const double norm = std::sqrt(inner(v, v));
        if (!(norm > 1e-10 * start_norm)) {
            throw RankError("LP basis: powers of T_1 are linearly dependent at degree " +
                            std::to_string(j));
        }
        for (double& x : v) x /= norm;
        out.values.push_back(std::move(v));
    }
    return out;
}

std::vector<MultiIndex> enumerate_K(const BasisConfig& config) {
    const auto& m = config.degrees();
    std::vector<MultiIndex> out;
    out.reserve(config.size());
    MultiIndex cur{std::vector<int>(m.size(), 0)};
    // Odometer with the last coordinate spinning fastest.
    while (true) {
        std::size_t d = m.size();
        while (d > 0) {
            --d;
            if (cur.j[d] < m[d]) {
                ++cur.j[d];
                std::fill(cur.j.begin() + static_cast<std::ptrdiff_t>(d) + 1, cur.j.end(), 0);
                break;
            }
            if (d == 0) return out;
        }
        out.push_back(cur);
    }
}

TensorBasis::TensorBasis(BasisConfig config) : config_(std::move(config)) {
    if (config_.dimension() == 0) throw DomainError("tensor basis: empty configuration");
    full_size_ = config_.size() + 1;
    indices_ = enumerate_K(config_);
}

void TensorBasis::coordinate_values(std::size_t d, double u, std::span<double> out) const {
    const int m = config_.degrees()[d];
    if (const auto& lp = config_.discrete(d)) {
        const std::size_t pos = lp->position_of_mid(u);
        for (int j = 0; j <= m; ++j) out[j] = lp->values[j][pos];
        return;
    }
    legendre_values(m, u, out);
}

void TensorBasis::evaluate(std::span<const double> u, std::span<double> out) const {
    const std::size_t p = config_.dimension();
    if (u.size() != p) {
        throw DomainError("tensor basis: point dimension " + std::to_string(u.size()) +
                          " does not match basis dimension " + std::to_string(p));
    }
    double vals[kMaxDegree + 1];
    std::size_t len = 1;
    out[0] = 1.0;
    for (std::size_t d = 0; d < p; ++d) {
        const std::size_t w = static_cast<std::size_t>(config_.degrees()[d]) + 1;
        coordinate_values(d, u[d], std::span<double>(vals, w));
        // Expand in place from the back so unread entries are never overwritten.
        for (std::size_t i = len; i-- > 0;) {
            const double head = out[i];
            for (std::size_t j = w; j-- > 0;) out[i * w + j] = head * vals[j];
        }
        len *= w;
    }
}

}  // namespace igof
