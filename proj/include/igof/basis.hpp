#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace igof {

/// Highest per-coordinate degree accepted anywhere in the library.
inline constexpr int kMaxDegree = 32;

/// One p-tuple (j_1, ..., j_p) addressing a tensor basis function.
struct MultiIndex {
    std::vector<int> j;

    [[nodiscard]] std::size_t dimension() const { return j.size(); }
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] std::string to_string() const;

    auto operator<=>(const MultiIndex&) const = default;
};

/// Finite pmf over increasing support points.
struct DiscreteMarginal {
    std::vector<double> support;
    std::vector<double> pmf;

    /// Throws DomainError unless support is strictly increasing and pmf is a
    /// positive probability vector summing to 1 within 1e-12.
    void validate() const;

    /// G(x) at each support point.
    [[nodiscard]] std::vector<double> cdf_values() const;

    /// Mid-distribution G(x) - p(x)/2 at each support point.
    [[nodiscard]] std::vector<double> mid_values() const;
};

/// LP score functions of a discrete marginal tabulated on its support.
struct LpBasis {
    DiscreteMarginal marginal;
    std::vector<double> mid;                  // mid-distribution per support point
    std::vector<std::vector<double>> values;  // values[j][i] = T_j(x_i), j = 0..max_degree

    [[nodiscard]] int max_degree() const { return static_cast<int>(values.size()) - 1; }

    /// Support position whose mid-distribution value equals u (tolerance 1e-9).
    [[nodiscard]] std::size_t position_of_mid(double u) const;
};

/// Degrees (m_1, ..., m_p) plus an optional LP table for discrete coordinates.
class BasisConfig {
public:
    BasisConfig() = default;
    explicit BasisConfig(std::vector<int> degrees);

    /// Switch coordinate d to the LP basis of the given marginal.
    void set_discrete(std::size_t d, const DiscreteMarginal& marginal);

    [[nodiscard]] const std::vector<int>& degrees() const { return degrees_; }
    [[nodiscard]] std::size_t dimension() const { return degrees_.size(); }

    /// M = prod(m_d + 1) - 1.
    [[nodiscard]] std::size_t size() const;

    [[nodiscard]] const std::optional<LpBasis>& discrete(std::size_t d) const {
        return discrete_[d];
    }
    [[nodiscard]] bool has_discrete() const;

    bool operator==(const BasisConfig& other) const { return degrees_ == other.degrees_; }

private:
    std::vector<int> degrees_;
    std::vector<std::optional<LpBasis>> discrete_;
};

/// j-th normalized shifted Legendre polynomial on [0, 1].
[[nodiscard]] double legendre_eval(int j, double u);

/// T_0(u), ..., T_m(u) into out (size m + 1) by one recurrence sweep.
void legendre_values(int m, double u, std::span<double> out);

/// Product of per-coordinate Legendre values.
[[nodiscard]] double tensor_eval(const MultiIndex& k, std::span<const double> u);

/// LP score functions T_0..T_max_degree under a discrete measure.
///
/// T_1 is the standardized mid-distribution; higher orders come from
/// Gram-Schmidt on powers of T_1 (two passes). Throws RankError when
/// max_degree >= support size and DomainError on a single-point support.
[[nodiscard]] LpBasis lp_discrete_basis(const DiscreteMarginal& marginal, int max_degree);

/// Index set K in lexicographic order (first coordinate most significant),
/// all-zero tuple excluded. Position i here is position i + 1 of the full
/// tensor product vector produced by TensorBasis::evaluate.
[[nodiscard]] std::vector<MultiIndex> enumerate_K(const BasisConfig& config);

/// Evaluates the whole tensor basis at a point by successive Kronecker products.
class TensorBasis {
public:
    explicit TensorBasis(BasisConfig config);

    [[nodiscard]] const BasisConfig& config() const { return config_; }
    [[nodiscard]] std::size_t dimension() const { return config_.dimension(); }
    /// M, the number of non-constant basis functions.
    [[nodiscard]] std::size_t size() const { return full_size_ - 1; }
    [[nodiscard]] std::size_t full_size() const { return full_size_; }
    [[nodiscard]] const std::vector<MultiIndex>& indices() const { return indices_; }

    /// T_0..T_{m_d}(u) for coordinate d.
    void coordinate_values(std::size_t d, double u, std::span<double> out) const;

    /// out must hold full_size() values; out[0] = 1, out[i] = T_{K[i-1]}(u).
    void evaluate(std::span<const double> u, std::span<double> out) const;

private:
    BasisConfig config_;
    std::size_t full_size_ = 1;
    std::vector<MultiIndex> indices_;
};

}  // namespace igof
