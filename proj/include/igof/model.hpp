#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "igof/basis.hpp"
#include "igof/points.hpp"
#include "igof/rng.hpp"

namespace igof {

enum class Family {
    Uniform,
    Normal,
    TruncatedNormal,
    TruncatedNormalSlice,
    Exponential,
    Laplace,
    StudentT,
    Cauchy,
    Semicircle,
    DiscretePmf,
    NumericGrid,
};

[[nodiscard]] std::string family_name(Family f);
[[nodiscard]] Family family_from_name(const std::string& name);

/// A family parameter: a constant or a declared function of parent coordinates.
struct ParamExpr {
    enum class Kind { Const, Affine, ExpAffine, DiscChord };

    Kind kind = Kind::Const;
    double intercept = 0.0;
    std::vector<std::pair<std::size_t, double>> weights;         // linear terms
    std::vector<std::pair<std::size_t, double>> square_weights;  // quadratic terms
    // DiscChord: center + side * sqrt(radius^2 - (x[parent] - parent_center)^2)
    std::size_t parent = 0;
    double parent_center = 0.0;
    double radius = 0.0;
    int side = 1;

    static ParamExpr constant(double v);
    static ParamExpr affine(double intercept, std::vector<std::pair<std::size_t, double>> weights,
                            std::vector<std::pair<std::size_t, double>> squares = {});
    static ParamExpr exp_affine(double intercept,
                                std::vector<std::pair<std::size_t, double>> weights,
                                std::vector<std::pair<std::size_t, double>> squares = {});
    static ParamExpr disc_chord(double center, double radius, std::size_t parent,
                                double parent_center, int side);

    /// Evaluate against the full coordinate vector (only parent entries are read).
    [[nodiscard]] double evaluate(std::span<const double> x) const;

    /// Coordinates this expression reads.
    [[nodiscard]] std::vector<std::size_t> references() const;
};

struct SliceTable;

/// Conditional law G_d(x_d | x_parents) of one coordinate.
class ConditionalLaw {
public:
    ConditionalLaw(std::string name, Family family, std::map<std::string, ParamExpr> params,
                   std::vector<std::size_t> parents = {});

    /// Tabulated families: support + pmf for DiscretePmf, x + cdf for NumericGrid.
    ConditionalLaw& with_table(std::vector<double> xs, std::vector<double> ys);
    ConditionalLaw& with_declared_support(double lo, double hi);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] Family family() const { return family_; }
    [[nodiscard]] const std::vector<std::size_t>& parents() const { return parents_; }
    [[nodiscard]] const std::map<std::string, ParamExpr>& params() const { return params_; }
    [[nodiscard]] const std::vector<double>& table_x() const { return table_x_; }
    [[nodiscard]] const std::vector<double>& table_y() const { return table_y_; }
    [[nodiscard]] const std::optional<std::pair<double, double>>& declared_support() const {
        return declared_;
    }

    /// Discrete marginal for the LP basis (DiscretePmf only).
    [[nodiscard]] DiscreteMarginal discrete_marginal() const;

    /// Validate parameters and precompute tables; called by ModelSpec::chain.
    void prepare(std::size_t position);

    /// Conditional support [lo, hi] given the parent values in x.
    [[nodiscard]] std::pair<double, double> support(std::span<const double> x) const;
    /// G_d(x_d | parents); DiscretePmf returns the mid-distribution value.
    [[nodiscard]] double cdf(double value, std::span<const double> x) const;
    /// Conditional density (pmf for DiscretePmf); zero outside the support.
    [[nodiscard]] double pdf(double value, std::span<const double> x) const;
    /// Conditional quantile Q_d(u | parents).
    [[nodiscard]] double quantile(double u, std::span<const double> x) const;

private:
    struct Resolved;
    [[nodiscard]] Resolved resolve(std::span<const double> x) const;
    [[nodiscard]] double param(const std::string& key, std::span<const double> x) const;
    [[nodiscard]] double param_or(const std::string& key, double fallback,
                                  std::span<const double> x) const;

    std::string name_;
    Family family_;
    std::map<std::string, ParamExpr> params_;
    std::vector<std::size_t> parents_;
    std::vector<double> table_x_;
    std::vector<double> table_y_;
    std::optional<std::pair<double, double>> declared_;
    std::shared_ptr<const SliceTable> slice_;
};

/// Hypothesized (or true) distribution of X.
///
/// A Chain is an ordered list of conditional laws and supports the Rosenblatt
/// transform. Mixtures and tilted models only provide density and sampling;
/// they serve as truths in simulation studies.
class ModelSpec {
public:
    enum class Kind { Chain, Mixture, Tilted };

    struct TiltTerm {
        MultiIndex index;
        double coefficient = 0.0;
    };

    static ModelSpec chain(std::vector<ConditionalLaw> coordinates);
    static ModelSpec mixture(std::vector<std::pair<double, ModelSpec>> components);
    /// Density g(x) * (1 + sum c_k T_k(G_R(x))) over a chain base.
    static ModelSpec tilted(ModelSpec base, std::vector<TiltTerm> terms);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] std::size_t dimension() const { return dimension_; }
    [[nodiscard]] std::vector<std::string> names() const;
    [[nodiscard]] const std::vector<ConditionalLaw>& coordinates() const;
    [[nodiscard]] const std::vector<std::pair<double, ModelSpec>>& components() const {
        return components_;
    }
    [[nodiscard]] const std::vector<TiltTerm>& tilt_terms() const { return tilt_; }
    [[nodiscard]] const ModelSpec& base() const;

    /// Label identifying where the model came from (catalog name, file hash).
    [[nodiscard]] const std::string& fingerprint() const { return fingerprint_; }
    void set_fingerprint(std::string f) { fingerprint_ = std::move(f); }

    [[nodiscard]] double density(std::span<const double> x) const;

    /// Draw one observation into out.
    void draw(Rng& rng, std::span<double> out) const;

private:
    Kind kind_ = Kind::Chain;
    std::size_t dimension_ = 0;
    std::vector<ConditionalLaw> coords_;
    std::vector<std::pair<double, ModelSpec>> components_;
    std::vector<TiltTerm> tilt_;
    double tilt_bound_ = 1.0;
    std::string fingerprint_;
};

/// u_d = G_d(x_d | x_<d). Throws DomainError naming the coordinate when x
/// leaves the support, UnsupportedError for non-chain models.
void rosenblatt(const ModelSpec& model, std::span<const double> x, std::span<double> u);
[[nodiscard]] std::vector<double> rosenblatt(const ModelSpec& model, std::span<const double> x);
[[nodiscard]] USample rosenblatt(const ModelSpec& model, const PointSet& x);

/// Sequential quantiles x_d = Q_d(u_d | x_<d).
void inverse_rosenblatt(const ModelSpec& model, std::span<const double> u, std::span<double> x);
[[nodiscard]] std::vector<double> inverse_rosenblatt(const ModelSpec& model,
                                                     std::span<const double> u);

/// n i.i.d. draws; stream fixed by seed.
[[nodiscard]] PointSet sample(const ModelSpec& model, std::size_t n, RngSeed seed);

/// True iff every member's parents are members (condition for diagnostics).
[[nodiscard]] bool validate_subset(const ModelSpec& model, const std::vector<std::size_t>& subset);

/// Parents referenced by the subset but not contained in it, sorted.
[[nodiscard]] std::vector<std::size_t> missing_parents(const ModelSpec& model,
                                                       const std::vector<std::size_t>& subset);

/// Basis configuration matching the model: LP tables for discrete coordinates.
[[nodiscard]] BasisConfig basis_for(const ModelSpec& model, std::vector<int> degrees);

}  // namespace igof
