#include "igof/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "igof/errors.hpp"
#include "igof/numeric.hpp"

namespace igof {

namespace nm = numeric;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::pair<Family, std::string>>& family_names() {
    static const std::vector<std::pair<Family, std::string>> names{
        {Family::Uniform, "uniform"},
        {Family::Normal, "normal"},
        {Family::TruncatedNormal, "truncated-normal"},
        {Family::TruncatedNormalSlice, "truncated-normal-slice"},
        {Family::Exponential, "exponential"},
        {Family::Laplace, "laplace"},
        {Family::StudentT, "student-t"},
        {Family::Cauchy, "cauchy"},
        {Family::Semicircle, "semicircle"},
        {Family::DiscretePmf, "discrete-pmf"},
        {Family::NumericGrid, "numeric-grid"},
    };
    return names;
}

// Monotone inversion on a finite bracket: Newton steps, bisection fallback.
template <class Cdf, class Pdf>
double invert_monotone(const Cdf& cdf, const Pdf& pdf, double lo, double hi, double target,
                       double x) {
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double fx = cdf(x) - target;
        if (fx == 0.0) return x;
        if (fx > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        const double slope = pdf(x);
        double next = slope > 0.0 ? x - fx / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x)) ||
            hi - lo <= 1e-15 * std::max(1.0, std::abs(x))) {
            return next;
        }
        x = next;
    }
    return x;
}

// Bracket [lo, hi] around the target for a cdf on the whole real line.
template <class Cdf>
std::pair<double, double> expand_bracket(const Cdf& cdf, double center, double scale,
                                         double target) {
    double lo = center - scale;
    double hi = center + scale;
    double step = scale;
    for (int i = 0; i < 2000 && cdf(lo) > target; ++i) {
        step *= 2.0;
        lo = center - step;
    }
    step = scale;
    for (int i = 0; i < 2000 && cdf(hi) < target; ++i) {
        step *= 2.0;
        hi = center + step;
    }
    return {lo, hi};
}

// Phi(b) - Phi(a) for a <= b without cancellation in either tail.
double normal_mass(double a, double b) {
    if (a > 0.0) return nm::std_normal_sf(a) - nm::std_normal_sf(b);
    return nm::std_normal_cdf(b) - nm::std_normal_cdf(a);
}

double truncnorm_cdf(double z, double a, double b) {
    if (z <= a) return 0.0;
    if (z >= b) return 1.0;
    return normal_mass(a, z) / normal_mass(a, b);
}

double truncnorm_quantile(double u, double a, double b) {
    double z = 0.0;
    if (a > 0.0) {
        const double sa = nm::std_normal_sf(a);
        const double s = sa - u * (sa - nm::std_normal_sf(b));
        z = s > 0.0 ? -nm::std_normal_quantile(std::min(s, 1.0 - 1e-16)) : b;
    } else {
        const double ca = nm::std_normal_cdf(a);
        const double c = ca + u * (nm::std_normal_cdf(b) - ca);
        z = c > 0.0 ? nm::std_normal_quantile(std::min(c, 1.0 - 1e-16)) : a;
    }
    return std::clamp(z, a, b);
}

double student_t_pdf(double t, double df) {
    const double log_c = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                         0.5 * std::log(df * nm::kPi);
    return std::exp(log_c - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

double student_t_cdf_fast(double t, double df) {
    if (df == 1.0) return 0.5 + std::atan(t) / nm::kPi;
    if (df == 2.0) return 0.5 + t / (2.0 * std::sqrt(2.0 + t * t));
    if (df == 3.0) {
        const double s = t / std::sqrt(3.0);
        return 0.5 + (s / (1.0 + s * s) + std::atan(s)) / nm::kPi;
    }
    return nm::student_t_cdf(t, df);
}

}  // namespace

std::string family_name(Family f) {
    for (const auto& [fam, name] : family_names()) {
        if (fam == f) return name;
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    for (const auto& [fam, n] : family_names()) {
        if (n == name) return fam;
    }
    throw LookupError("unknown distribution family '" + name + "'");
}

// ----------------------------------------------------------------------------
// ParamExpr

ParamExpr ParamExpr::constant(double v) {
    ParamExpr e;
    e.intercept = v;
    return e;
}

ParamExpr ParamExpr::affine(double intercept, std::vector<std::pair<std::size_t, double>> weights,
                            std::vector<std::pair<std::size_t, double>> squares) {
    ParamExpr e;
    e.kind = Kind::Affine;
    e.intercept = intercept;
    e.weights = std::move(weights);
    e.square_weights = std::move(squares);
    return e;
}

ParamExpr ParamExpr::exp_affine(double intercept,
                                std::vector<std::pair<std::size_t, double>> weights,
                                std::vector<std::pair<std::size_t, double>> squares) {
    ParamExpr e = affine(intercept, std::move(weights), std::move(squares));
    e.kind = Kind::ExpAffine;
    return e;
}

ParamExpr ParamExpr::disc_chord(double center, double radius, std::size_t parent,
                                double parent_center, int side) {
    ParamExpr e;
    e.kind = Kind::DiscChord;
    e.intercept = center;
    e.radius = radius;
    e.parent = parent;
    e.parent_center = parent_center;
    e.side = side >= 0 ? 1 : -1;
    return e;
}

double ParamExpr::evaluate(std::span<const double> x) const {
    switch (kind) {
        case Kind::Const:
            return intercept;
        case Kind::Affine:
        case Kind::ExpAffine: {
            double eta = intercept;
            for (const auto& [idx, w] : weights) eta += w * x[idx];
            for (const auto& [idx, w] : square_weights) eta += w * x[idx] * x[idx];
            return kind == Kind::Affine ? eta : std::exp(eta);
        }
        case Kind::DiscChord: {
            const double off = x[parent] - parent_center;
            const double h2 = radius * radius - off * off;
            return intercept + side * std::sqrt(std::max(h2, 0.0));
        }
    }
    return intercept;
}

std::vector<std::size_t> ParamExpr::references() const {
    std::vector<std::size_t> refs;
    for (const auto& [idx, w] : weights) refs.push_back(idx);
    for (const auto& [idx, w] : square_weights) refs.push_back(idx);
    if (kind == Kind::DiscChord) refs.push_back(parent);
    return refs;
}

// ----------------------------------------------------------------------------
// Marginal of a rectangle-truncated bivariate normal.
//
// Unnormalized density of the first coordinate:
//   h(x) = phi_sd(x - mean) * [Phi(b'(x)) - Phi(a'(x))]
// with a', b' the standardized partner bounds under the conditional normal.
// Tabulated on equal panels with a 10-point Gauss-Legendre rule per panel.

struct SliceTable {
    double mean, sd, lo, hi, partner_mean, partner_sd, rho, partner_lo, partner_hi;
    std::vector<double> edges;
    std::vector<double> cum;  // cum[k] = integral of h over [lo, edges[k]]
    nm::QuadratureRule rule = nm::gauss_legendre(10);

    double h(double x) const {
        const double cm = partner_mean + rho * partner_sd / sd * (x - mean);
        const double cs = partner_sd * std::sqrt(1.0 - rho * rho);
        return nm::std_normal_pdf((x - mean) / sd) / sd *
               normal_mass((partner_lo - cm) / cs, (partner_hi - cm) / cs);
    }
    double integral(double a, double b) const {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * h(a + (b - a) * rule.nodes[i]);
        return s * (b - a);
    }
    double total() const { return cum.back(); }
    std::size_t panel_of(double x) const {
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - edges.begin() - 1, 0));
        return std::min(k, edges.size() - 2);
    }
    double cdf(double x) const {
        if (x <= lo) return 0.0;
        if (x >= hi) return 1.0;
        const std::size_t k = panel_of(x);
        return std::clamp((cum[k] + integral(edges[k], x)) / total(), 0.0, 1.0);
    }
    double pdf(double x) const { return (x < lo || x > hi) ? 0.0 : h(x) / total(); }
    double quantile(double u) const {
        if (u <= 0.0) return lo;
        if (u >= 1.0) return hi;
        const double target = u * total();
        auto it = std::upper_bound(cum.begin(), cum.end(), target);
        std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cum.begin() - 1, 0));
        k = std::min(k, edges.size() - 2);
        const double a = edges[k];
        const double b = edges[k + 1];
        const double frac = (target - cum[k]) / std::max(cum[k + 1] - cum[k], 1e-300);
        return invert_monotone([&](double x) { return cum[k] + integral(a, x); },
                               [&](double x) { return h(x); }, a, b, target,
                               a + frac * (b - a));
    }
};

// ----------------------------------------------------------------------------
// ConditionalLaw

struct ConditionalLaw::Resolved {
    double a = 0, b = 0, c = 0, d = 0;
};

ConditionalLaw::ConditionalLaw(std::string name, Family family,
                               std::map<std::string, ParamExpr> params,
                               std::vector<std::size_t> parents)
    : name_(std::move(name)),
      family_(family),
      params_(std::move(params)),
      parents_(std::move(parents)) {
    std::sort(parents_.begin(), parents_.end());
    parents_.erase(std::unique(parents_.begin(), parents_.end()), parents_.end());
}

ConditionalLaw& ConditionalLaw::with_table(std::vector<double> xs, std::vector<double> ys) {
    table_x_ = std::move(xs);
    table_y_ = std::move(ys);
    return *this;
}

ConditionalLaw& ConditionalLaw::with_declared_support(double lo, double hi) {
    declared_ = std::make_pair(lo, hi);
    return *this;
}

DiscreteMarginal ConditionalLaw::discrete_marginal() const {
    if (family_ != Family::DiscretePmf) {
        throw StateError("coordinate '" + name_ + "' is not discrete");
    }
    return DiscreteMarginal{table_x_, table_y_};
}

double ConditionalLaw::param(const std::string& key, std::span<const double> x) const {
    const auto it = params_.find(key);
    if (it == params_.end()) {
        throw DomainError("coordinate '" + name_ + "' (" + family_name(family_) +
                          ") is missing parameter '" + key + "'");
    }
    return it->second.evaluate(x);
}

double ConditionalLaw::param_or(const std::string& key, double fallback,
                                std::span<const double> x) const {
    const auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second.evaluate(x);
}

void ConditionalLaw::prepare(std::size_t position) {
    for (std::size_t p : parents_) {
        if (p >= position) {
            throw DomainError("coordinate '" + name_ + "' lists parent " + std::to_string(p + 1) +
                              " that does not precede it");
        }
    }
    for (const auto& [key, expr] : params_) {
        for (std::size_t r : expr.references()) {
            if (!std::binary_search(parents_.begin(), parents_.end(), r)) {
                throw DomainError("coordinate '" + name_ + "' parameter '" + key +
                                  "' reads coordinate " + std::to_string(r + 1) +
                                  " which is not a declared parent");
            }
        }
    }
    auto require_const = [&]() {
        for (const auto& [key, expr] : params_) {
            if (expr.kind != ParamExpr::Kind::Const) {
                throw DomainError("coordinate '" + name_ + "': family " + family_name(family_) +
                                  " accepts constant parameters only");
            }
        }
    };
    switch (family_) {
        case Family::TruncatedNormalSlice: {
            require_const();
            const std::vector<double> none;
            auto s = std::make_shared<SliceTable>();
            s->mean = param("mean", none);
            s->sd = param("sd", none);
            s->lo = param("lower", none);
            s->hi = param("upper", none);
            s->partner_mean = param("partner_mean", none);
            s->partner_sd = param("partner_sd", none);
            s->rho = param("correlation", none);
            s->partner_lo = param("partner_lower", none);
            s->partner_hi = param("partner_upper", none);
            if (!(s->sd > 0 && s->partner_sd > 0 && s->lo < s->hi && s->partner_lo < s->partner_hi &&
                  std::abs(s->rho) < 1.0)) {
                throw DomainError("coordinate '" + name_ + "': invalid truncated-normal-slice parameters");
            }
            constexpr int panels = 200;
            s->edges.resize(panels + 1);
            s->cum.assign(panels + 1, 0.0);
            for (int k = 0; k <= panels; ++k) s->edges[k] = s->lo + (s->hi - s->lo) * k / panels;
            s->edges.back() = s->hi;
            for (int k = 0; k < panels; ++k) {
                s->cum[k + 1] = s->cum[k] + s->integral(s->edges[k], s->edges[k + 1]);
            }
            slice_ = std::move(s);
            break;
        }
        case Family::DiscretePmf:
            require_const();
            discrete_marginal().validate();
            break;
        case Family::NumericGrid: {
            require_const();
            if (table_x_.size() < 2 || table_x_.size() != table_y_.size()) {
                throw DomainError("coordinate '" + name_ + "': numeric grid needs matching x and cdf tables");
            }
            for (std::size_t i = 1; i < table_x_.size(); ++i) {
                if (!(table_x_[i] > table_x_[i - 1]) || !(table_y_[i] > table_y_[i - 1])) {
                    throw DomainError("coordinate '" + name_ + "': numeric grid must be strictly increasing");
                }
            }
            if (std::abs(table_y_.front()) > 1e-12 || std::abs(table_y_.back() - 1.0) > 1e-12) {
                throw DomainError("coordinate '" + name_ + "': numeric grid cdf must run from 0 to 1");
            }
            break;
        }
        case Family::Semicircle:
            require_const();
            break;
        default:
            break;
    }
}

ConditionalLaw::Resolved ConditionalLaw::resolve(std::span<const double> x) const {
    Resolved r;
    auto positive = [&](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError("coordinate '" + name_ + "': parameter " + what + " = " +
                              std::to_string(v) + " must be positive");
        }
        return v;
    };
    switch (family_) {
        case Family::Uniform:
            r.a = param("lower", x);
            r.b = param("upper", x);
            if (!(r.a < r.b)) {
                throw DomainError("coordinate '" + name_ + "': empty uniform support [" +
                                  std::to_string(r.a) + ", " + std::to_string(r.b) + "]");
            }
            break;
        case Family::Normal:
            r.a = param("mean", x);
            r.b = positive(param("sd", x), "sd");
            break;
        case Family::TruncatedNormal:
            r.a = param("mean", x);
            r.b = positive(param("sd", x), "sd");
            r.c = param("lower", x);
            r.d = param("upper", x);
            if (!(r.c < r.d)) throw DomainError("coordinate '" + name_ + "': empty truncation interval");
            break;
        case Family::Exponential:
            if (params_.count("rate")) {
                r.a = positive(param("rate", x), "rate");
            } else {
                r.a = 1.0 / positive(param("scale", x), "scale");
            }
            break;
        case Family::Laplace:
        case Family::Cauchy:
            r.a = param("location", x);
            r.b = positive(param("scale", x), "scale");
            break;
        case Family::StudentT:
            r.a = positive(param("df", x), "df");
            r.b = param_or("location", 0.0, x);
            r.c = positive(param_or("scale", 1.0, x), "scale");
            break;
        case Family::Semicircle:
            r.a = param("center", x);
            r.b = positive(param("radius", x), "radius");
            break;
        default:
            break;
    }
    return r;
}

std::pair<double, double> ConditionalLaw::support(std::span<const double> x) const {
    const Resolved r = resolve(x);
    switch (family_) {
        case Family::Uniform:
            return {r.a, r.b};
        case Family::TruncatedNormal:
            return {r.c, r.d};
        case Family::TruncatedNormalSlice:
            return {slice_->lo, slice_->hi};
        case Family::Exponential:
            return {0.0, kInf};
        case Family::Semicircle:
            return {r.a - r.b, r.a + r.b};
        case Family::DiscretePmf:
        case Family::NumericGrid:
            return {table_x_.front(), table_x_.back()};
        default:
            return {-kInf, kInf};
    }
}

double ConditionalLaw::cdf(double v, std::span<const double> x) const {
    const Resolved r = resolve(x);
    switch (family_) {
        case Family::Uniform:
            return std::clamp((v - r.a) / (r.b - r.a), 0.0, 1.0);
        case Family::Normal:
            return nm::std_normal_cdf((v - r.a) / r.b);
        case Family::TruncatedNormal:
            return truncnorm_cdf((v - r.a) / r.b, (r.c - r.a) / r.b, (r.d - r.a) / r.b);
        case Family::TruncatedNormalSlice:
            return slice_->cdf(v);
        case Family::Exponential:
            return v <= 0.0 ? 0.0 : -std::expm1(-r.a * v);
        case Family::Laplace: {
            const double z = (v - r.a) / r.b;
            return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
        }
        case Family::StudentT:
            return student_t_cdf_fast((v - r.b) / r.c, r.a);
        case Family::Cauchy:
            return 0.5 + std::atan((v - r.a) / r.b) / nm::kPi;
        case Family::Semicircle: {
            const double z = std::clamp((v - r.a) / r.b, -1.0, 1.0);
            return std::clamp(0.5 + (z * std::sqrt(1.0 - z * z) + std::asin(z)) / nm::kPi, 0.0, 1.0);
        }
        case Family::DiscretePmf: {
            const auto it = std::lower_bound(table_x_.begin(), table_x_.end(), v - 1e-9 * std::max(1.0, std::abs(v)));
            if (it == table_x_.end() || std::abs(*it - v) > 1e-9 * std::max(1.0, std::abs(v))) {
                throw DomainError("coordinate '" + name_ + "': value " + std::to_string(v) +
                                  " is not a support point");
            }
            const auto pos = static_cast<std::size_t>(it - table_x_.begin());
            double cum = 0.0;
            for (std::size_t i = 0; i <= pos; ++i) cum += table_y_[i];
            return cum - 0.5 * table_y_[pos];
        }
        case Family::NumericGrid: {
            if (v <= table_x_.front()) return 0.0;
            if (v >= table_x_.back()) return 1.0;
            const auto it = std::upper_bound(table_x_.begin(), table_x_.end(), v);
            const auto k = static_cast<std::size_t>(it - table_x_.begin()) - 1;
            const double t = (v - table_x_[k]) / (table_x_[k + 1] - table_x_[k]);
            return table_y_[k] + t * (table_y_[k + 1] - table_y_[k]);
        }
    }
    return 0.0;
}

double ConditionalLaw::pdf(double v, std::span<const double> x) const {
    const auto [lo, hi] = support(x);
    if (!(v >= lo && v <= hi)) return 0.0;
    const Resolved r = resolve(x);
    switch (family_) {
        case Family::Uniform:
            return 1.0 / (r.b - r.a);
        case Family::Normal:
            return nm::std_normal_pdf((v - r.a) / r.b) / r.b;
        case Family::TruncatedNormal:
            return nm::std_normal_pdf((v - r.a) / r.b) / r.b /
                   normal_mass((r.c - r.a) / r.b, (r.d - r.a) / r.b);
        case Family::TruncatedNormalSlice:
            return slice_->pdf(v);
        case Family::Exponential:
            return r.a * std::exp(-r.a * v);
        case Family::Laplace:
            return 0.5 / r.b * std::exp(-std::abs(v - r.a) / r.b);
        case Family::StudentT:
            return student_t_pdf((v - r.b) / r.c, r.a) / r.c;
        case Family::Cauchy: {
            const double z = (v - r.a) / r.b;
            return 1.0 / (nm::kPi * r.b * (1.0 + z * z));
        }
        case Family::Semicircle: {
            const double z = (v - r.a) / r.b;
            return 2.0 * std::sqrt(std::max(1.0 - z * z, 0.0)) / (nm::kPi * r.b);
        }
        case Family::DiscretePmf: {
            for (std::size_t i = 0; i < table_x_.size(); ++i) {
                if (std::abs(table_x_[i] - v) <= 1e-9 * std::max(1.0, std::abs(v))) return table_y_[i];
            }
            return 0.0;
        }
        case Family::NumericGrid: {
            auto it = std::upper_bound(table_x_.begin(), table_x_.end(), v);
            if (it == table_x_.end()) --it;
            const auto k = static_cast<std::size_t>(it - table_x_.begin()) - 1;
            return (table_y_[k + 1] - table_y_[k]) / (table_x_[k + 1] - table_x_[k]);
        }
    }
    return 0.0;
}

double ConditionalLaw::quantile(double u, std::span<const double> x) const {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("coordinate '" + name_ + "': probability " + std::to_string(u) +
                          " outside [0, 1]");
    }
    const auto [lo, hi] = support(x);
    if ((u == 0.0 && std::isinf(lo)) || (u == 1.0 && std::isinf(hi))) {
        throw DomainError("coordinate '" + name_ + "': boundary probability " +
                          std::to_string(u) + " maps to an infinite quantile");
    }
    const Resolved r = resolve(x);
    switch (family_) {
        case Family::Uniform:
            return r.a + u * (r.b - r.a);
        case Family::Normal:
            return r.a + r.b * nm::std_normal_quantile(u);
        case Family::TruncatedNormal: {
            const double a = (r.c - r.a) / r.b;
            const double b = (r.d - r.a) / r.b;
            return std::clamp(r.a + r.b * truncnorm_quantile(u, a, b), r.c, r.d);
        }
        case Family::TruncatedNormalSlice:
            return slice_->quantile(u);
        case Family::Exponential:
            return u == 0.0 ? 0.0 : -std::log1p(-u) / r.a;
        case Family::Laplace:
            return u < 0.5 ? r.a + r.b * std::log(2.0 * u) : r.a - r.b * std::log(2.0 * (1.0 - u));
        case Family::StudentT: {
            const double df = r.a;
            if (df == 2.0) {
                return r.b + r.c * (2.0 * u - 1.0) / std::sqrt(2.0 * u * (1.0 - u));
            }
            if (df == 1.0) return r.b + r.c * std::tan(nm::kPi * (u - 0.5));
            auto cdf_t = [&](double t) { return student_t_cdf_fast(t, df); };
            auto pdf_t = [&](double t) { return student_t_pdf(t, df); };
            const double guess = nm::std_normal_quantile(u);
            const auto [blo, bhi] = expand_bracket(cdf_t, guess, 2.0, u);
            return r.b + r.c * invert_monotone(cdf_t, pdf_t, blo, bhi, u, guess);
        }
        case Family::Cauchy:
            return r.a + r.b * std::tan(nm::kPi * (u - 0.5));
        case Family::Semicircle: {
            auto cdf_z = [](double z) {
                z = std::clamp(z, -1.0, 1.0);
                return 0.5 + (z * std::sqrt(1.0 - z * z) + std::asin(z)) / nm::kPi;
            };
            auto pdf_z = [](double z) { return 2.0 * std::sqrt(std::max(1.0 - z * z, 0.0)) / nm::kPi; };
            if (u == 0.0) return r.a - r.b;
            if (u == 1.0) return r.a + r.b;
            return r.a + r.b * invert_monotone(cdf_z, pdf_z, -1.0, 1.0, u, 2.0 * u - 1.0);
        }
        case Family::DiscretePmf: {
            double cum = 0.0;
            for (std::size_t i = 0; i < table_x_.size(); ++i) {
                cum += table_y_[i];
                if (cum >= u) return table_x_[i];
            }
            return table_x_.back();
        }
        case Family::NumericGrid: {
            const auto it = std::lower_bound(table_y_.begin(), table_y_.end(), u);
            if (it == table_y_.begin()) return table_x_.front();
            if (it == table_y_.end()) return table_x_.back();
            const auto k = static_cast<std::size_t>(it - table_y_.begin()) - 1;
            const double t = (u - table_y_[k]) / (table_y_[k + 1] - table_y_[k]);
            return table_x_[k] + t * (table_x_[k + 1] - table_x_[k]);
        }
    }
    return 0.0;
}

// ----------------------------------------------------------------------------
// ModelSpec

ModelSpec ModelSpec::chain(std::vector<ConditionalLaw> coordinates) {
    if (coordinates.empty()) throw DomainError("model: at least one coordinate is required");
    for (std::size_t d = 0; d < coordinates.size(); ++d) coordinates[d].prepare(d);
    ModelSpec m;
    m.kind_ = Kind::Chain;
    m.dimension_ = coordinates.size();
    m.coords_ = std::move(coordinates);
    return m;
}

ModelSpec ModelSpec::mixture(std::vector<std::pair<double, ModelSpec>> components) {
    if (components.empty()) throw DomainError("mixture: no components");
    double total = 0.0;
    for (const auto& [w, comp] : components) {
        if (!(w > 0.0)) throw DomainError("mixture: weights must be positive");
        if (comp.dimension() != components.front().second.dimension()) {
            throw DomainError("mixture: components disagree on dimension");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture: weights must sum to 1");
    ModelSpec m;
    m.kind_ = Kind::Mixture;
    m.dimension_ = components.front().second.dimension();
    m.components_ = std::move(components);
    return m;
}

ModelSpec ModelSpec::tilted(ModelSpec base, std::vector<TiltTerm> terms) {
    if (base.kind() != Kind::Chain) throw DomainError("tilted model: base must be a conditional chain");
    double bound = 1.0;
    for (const auto& t : terms) {
        if (t.index.dimension() != base.dimension() || t.index.is_zero()) {
            throw DomainError("tilted model: term index " + t.index.to_string() + " is invalid");
        }
        double peak = std::abs(t.coefficient);
        for (int j : t.index.j) peak *= std::sqrt(2.0 * j + 1.0);  // max |T_j| on [0, 1]
        bound += peak;
    }
    ModelSpec m;
    m.kind_ = Kind::Tilted;
    m.dimension_ = base.dimension();
    m.components_.emplace_back(1.0, std::move(base));
    m.tilt_ = std::move(terms);
    m.tilt_bound_ = bound;
    return m;
}

std::vector<std::string> ModelSpec::names() const {
    switch (kind_) {
        case Kind::Chain: {
            std::vector<std::string> out;
            for (const auto& c : coords_) out.push_back(c.name());
            return out;
        }
        default:
            return components_.front().second.names();
    }
}

const std::vector<ConditionalLaw>& ModelSpec::coordinates() const {
    if (kind_ != Kind::Chain) {
        throw UnsupportedError("model is not a conditional chain; conditional laws are unavailable");
    }
    return coords_;
}

const ModelSpec& ModelSpec::base() const {
    if (kind_ != Kind::Tilted) throw StateError("model has no tilt base");
    return components_.front().second;
}

namespace {

double tilt_factor(const std::vector<ModelSpec::TiltTerm>& terms, std::span<const double> u) {
    double d = 1.0;
    for (const auto& t : terms) d += t.coefficient * tensor_eval(t.index, u);
    return d;
}

}  // namespace

double ModelSpec::density(std::span<const double> x) const {
    if (x.size() != dimension_) throw DomainError("density: point dimension mismatch");
    switch (kind_) {
        case Kind::Chain: {
            double f = 1.0;
            for (const auto& law : coords_) {
                const double v = x[&law - coords_.data()];
                const auto [lo, hi] = law.support(x);
                if (!(v >= lo && v <= hi)) return 0.0;
                f *= law.pdf(v, x);
            }
            return f;
        }
        case Kind::Mixture: {
            double f = 0.0;
            for (const auto& [w, comp] : components_) f += w * comp.density(x);
            return f;
        }
        case Kind::Tilted: {
            const ModelSpec& b = base();
            const double g = b.density(x);
            if (g == 0.0) return 0.0;
            const auto u = rosenblatt(b, x);
            return g * tilt_factor(tilt_, u);
        }
    }
    return 0.0;
}

void ModelSpec::draw(Rng& rng, std::span<double> out) const {
    switch (kind_) {
        case Kind::Chain: {
            double u[64];
            std::vector<double> big;
            std::span<double> us(u, std::min<std::size_t>(dimension_, 64));
            if (dimension_ > 64) {
                big.resize(dimension_);
                us = big;
            }
            for (double& v : us) v = rng.uniform();
            inverse_rosenblatt(*this, us, out);
            return;
        }
        case Kind::Mixture: {
            const double pick = rng.uniform();
            double cum = 0.0;
            for (const auto& [w, comp] : components_) {
                cum += w;
                if (pick <= cum) {
                    comp.draw(rng, out);
                    return;
                }
            }
            components_.back().second.draw(rng, out);
            return;
        }
        case Kind::Tilted: {
            std::vector<double> u(dimension_);
            for (int attempt = 0; attempt < 1000000; ++attempt) {
                for (double& v : u) v = rng.uniform();
                const double d = tilt_factor(tilt_, u);
                if (d < 0.0) throw DomainError("tilted model: tilt factor is negative on the cube");
                if (rng.uniform() * tilt_bound_ <= d) {
                    inverse_rosenblatt(base(), u, out);
                    return;
                }
            }
            throw DomainError("tilted model: rejection sampler failed to accept");
        }
    }
}

// ----------------------------------------------------------------------------
// Transforms

void rosenblatt(const ModelSpec& model, std::span<const double> x, std::span<double> u) {
    const auto& coords = model.coordinates();
    if (x.size() != coords.size() || u.size() != coords.size()) {
        throw DomainError("rosenblatt: point has " + std::to_string(x.size()) +
                          " coordinates, model has " + std::to_string(coords.size()));
    }
    for (std::size_t d = 0; d < coords.size(); ++d) {
        const auto& law = coords[d];
        const double v = x[d];
        const auto [lo, hi] = law.support(x);
        bool inside = std::isfinite(v) && v >= lo && v <= hi;
        if (const auto& dec = law.declared_support()) inside = inside && v >= dec->first && v <= dec->second;
        if (!inside) {
            throw DomainError("coordinate " + std::to_string(d + 1) + " ('" + law.name() +
                              "'): value " + std::to_string(v) + " outside support [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        u[d] = std::clamp(law.cdf(v, x), 0.0, 1.0);
    }
}

std::vector<double> rosenblatt(const ModelSpec& model, std::span<const double> x) {
    std::vector<double> u(x.size());
    rosenblatt(model, x, u);
    return u;
}

USample rosenblatt(const ModelSpec& model, const PointSet& x) {
    USample out{PointSet(x.rows(), x.cols()), model.fingerprint()};
    for (std::size_t i = 0; i < x.rows(); ++i) {
        try {
            rosenblatt(model, x.row(i), out.points.row(i));
        } catch (const DomainError& e) {
            throw DomainError("row " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

void inverse_rosenblatt(const ModelSpec& model, std::span<const double> u, std::span<double> x) {
    const auto& coords = model.coordinates();
    if (x.size() != coords.size() || u.size() != coords.size()) {
        throw DomainError("inverse_rosenblatt: dimension mismatch");
    }
    for (std::size_t d = 0; d < coords.size(); ++d) x[d] = coords[d].quantile(u[d], x);
}

std::vector<double> inverse_rosenblatt(const ModelSpec& model, std::span<const double> u) {
    std::vector<double> x(u.size());
    inverse_rosenblatt(model, u, x);
    return x;
}

PointSet sample(const ModelSpec& model, std::size_t n, RngSeed seed) {
    if (n == 0) throw DomainError("sample: n must be at least 1");
    PointSet out(n, model.dimension());
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) model.draw(rng, out.row(i));
    return out;
}

std::vector<std::size_t> missing_parents(const ModelSpec& model,
                                         const std::vector<std::size_t>& subset) {
    const auto& coords = model.coordinates();
    std::set<std::size_t> members(subset.begin(), subset.end());
    std::set<std::size_t> missing;
    for (std::size_t d : members) {
        if (d >= coords.size()) {
            throw DomainError("subset references coordinate " + std::to_string(d + 1) +
                              " of a " + std::to_string(coords.size()) + "-dimensional model");
        }
        for (std::size_t p : coords[d].parents()) {
            if (!members.count(p)) missing.insert(p);
        }
    }
    return {missing.begin(), missing.end()};
}

bool validate_subset(const ModelSpec& model, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw DomainError("validate_subset: subset must be nonempty");
    return missing_parents(model, subset).empty();
}

BasisConfig basis_for(const ModelSpec& model, std::vector<int> degrees) {
    if (degrees.size() != model.dimension()) {
        throw DomainError("basis degrees have " + std::to_string(degrees.size()) +
                          " entries, model has dimension " + std::to_string(model.dimension()));
    }
    BasisConfig config(std::move(degrees));
    if (model.kind() == ModelSpec::Kind::Chain) {
        const auto& coords = model.coordinates();
        for (std::size_t d = 0; d < coords.size(); ++d) {
            if (coords[d].family() == Family::DiscretePmf) {
                config.set_discrete(d, coords[d].discrete_marginal());
            }
        }
    }
    return config;
}

void USample::validate() const {
    if (points.empty()) throw DomainError("u-sample is empty");
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t j = 0; j < points.cols(); ++j) {
            const double v = points(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DomainError("u-sample row " + std::to_string(i + 1) + ", coordinate " +
                                  std::to_string(j + 1) + ": value " + std::to_string(v) +
                                  " outside [0, 1]");
            }
        }
    }
}

PointSet::PointSet(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DomainError("point set: data size mismatch");
}

}  // namespace igof
