#include "igof/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "igof/errors.hpp"
#include "igof/parallel.hpp"

namespace igof {

std::size_t CoefficientSet::position(const MultiIndex& k) const {
    const auto it = std::lower_bound(indices.begin(), indices.end(), k);
    if (it == indices.end() || *it != k) {
        throw LookupError("index " + k.to_string() + " is not part of the basis");
    }
    return static_cast<std::size_t>(it - indices.begin());
}

namespace {

void check_sample(const PointSet& u, const BasisConfig& config) {
    if (u.rows() == 0) throw DomainError("fit: sample is empty");
    if (u.cols() != config.dimension()) {
        throw DomainError("fit: sample has " + std::to_string(u.cols()) +
                          " columns, basis has dimension " + std::to_string(config.dimension()));
    }
}

}  // namespace

CoefficientSet fit(const PointSet& u, const BasisConfig& config, const FitOptions& options) {
    check_sample(u, config);
    const TensorBasis basis(config);
    const std::size_t M = basis.size();
    const std::size_t full = basis.full_size();
    if (options.with_sigma && M > kMaxSigmaSize) {
        throw DomainError("fit: covariance requested for M = " + std::to_string(M) +
                          " basis functions (limit " + std::to_string(kMaxSigmaSize) + ")");
    }
    const std::size_t n = u.rows();
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, options.threads), n));

    std::vector<std::vector<double>> sums(workers, std::vector<double>(M, 0.0));
    std::vector<std::vector<double>> cross(options.with_sigma ? workers : 0);
    parallel_chunks(n, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
        std::vector<double> t(full);
        auto& s = sums[w];
        std::vector<double>* c = nullptr;
        if (options.with_sigma) {
            cross[w].assign(M * M, 0.0);
            c = &cross[w];
        }
        for (std::size_t i = begin; i < end; ++i) {
            basis.evaluate(u.row(i), t);
            const double* tk = t.data() + 1;
            for (std::size_t k = 0; k < M; ++k) s[k] += tk[k];
            if (c) {
                for (std::size_t a = 0; a < M; ++a) {
                    double* row = c->data() + a * M;
                    for (std::size_t b = 0; b <= a; ++b) row[b] += tk[a] * tk[b];
                }
            }
        }
    });

    CoefficientSet out;
    out.config = config;
    out.indices = basis.indices();
    out.n = n;
    out.theta.assign(M, 0.0);
    for (const auto& s : sums) {
        for (std::size_t k = 0; k < M; ++k) out.theta[k] += s[k];
    }
    for (double& v : out.theta) v /= static_cast<double>(n);

    if (options.with_sigma) {
        std::vector<double> sigma(M * M, 0.0);
        for (const auto& c : cross) {
            for (std::size_t i = 0; i < M * M; ++i) sigma[i] += c[i];
        }
        const double nn = static_cast<double>(n);
        const double denom = n > 1 ? (nn - 1.0) * nn : 1.0;
        for (std::size_t a = 0; a < M; ++a) {
            for (std::size_t b = 0; b <= a; ++b) {
                const double v = n > 1 ? (sigma[a * M + b] - nn * out.theta[a] * out.theta[b]) / denom : 0.0;
                sigma[a * M + b] = v;
                sigma[b * M + a] = v;
            }
        }
        out.sigma = std::move(sigma);
    }
    return out;
}

CoefficientSet fit(const USample& u, const BasisConfig& config, const FitOptions& options) {
    return fit(u.points, config, options);
}

std::vector<double> fit_naive(const PointSet& u, const BasisConfig& config) {
    check_sample(u, config);
    const auto indices = enumerate_K(config);
    std::vector<double> theta(indices.size(), 0.0);
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t k = 0; k < indices.size(); ++k) theta[k] += tensor_eval(indices[k], u.row(i));
    }
    for (double& v : theta) v /= static_cast<double>(u.rows());
    return theta;
}

ComparisonDensity::ComparisonDensity(CoefficientSet coeffs)
    : coeffs_(std::move(coeffs)), basis_(coeffs_.config) {
    active_.resize(coeffs_.size());
    for (std::size_t k = 0; k < active_.size(); ++k) active_[k] = k;
}

ComparisonDensity::ComparisonDensity(CoefficientSet coeffs, std::vector<std::size_t> active)
    : coeffs_(std::move(coeffs)), active_(std::move(active)), basis_(coeffs_.config) {
    for (std::size_t k : active_) {
        if (k >= coeffs_.size()) throw DomainError("comparison density: active position out of range");
    }
}

double eval_d(const ComparisonDensity& cd, std::span<const double> u) {
    std::vector<double> t(cd.basis().full_size());
    cd.basis().evaluate(u, t);
    double d = 1.0;
    const auto& theta = cd.coefficients().theta;
    for (std::size_t k : cd.active()) d += theta[k] * t[k + 1];
    return d;
}

double eval_f(const ComparisonDensity& cd, const ModelSpec& model, std::span<const double> x) {
    const auto u = rosenblatt(model, x);
    return model.density(x) * eval_d(cd, u);
}

double variance_d(const ComparisonDensity& cd, std::span<const double> u, bool under_null) {
    std::vector<double> t(cd.basis().full_size());
    cd.basis().evaluate(u, t);
    const auto& coeffs = cd.coefficients();
    if (under_null) {
        double s = 0.0;
        for (std::size_t k : cd.active()) s += t[k + 1] * t[k + 1];
        return s / static_cast<double>(coeffs.n);
    }
    if (!coeffs.sigma) throw StateError("variance_d: coefficient set carries no covariance matrix");
    const auto& sigma = *coeffs.sigma;
    const std::size_t M = coeffs.size();
    double q = 0.0;
    for (std::size_t a : cd.active()) {
        for (std::size_t b : cd.active()) q += t[a + 1] * sigma[a * M + b] * t[b + 1];
    }
    return std::max(q, 0.0);
}

IsbResult isb_oracle(const std::function<double(std::span<const double>)>& true_density,
                     const ModelSpec& null_model, const BasisConfig& config,
                     const numeric::QuadratureRule& rule) {
    const std::size_t p = config.dimension();
    if (p > 3) throw UnsupportedError("isb_oracle: product quadrature limited to p <= 3");
    if (null_model.dimension() != p) throw DomainError("isb_oracle: model and basis dimensions differ");
    const TensorBasis basis(config);
    const std::size_t q = rule.size();
    std::size_t total = 1;
    for (std::size_t d = 0; d < p; ++d) total *= q;

    IsbResult out;
    out.theta.assign(basis.size(), 0.0);
    std::vector<double> u(p), x(p), t(basis.full_size());
    for (std::size_t cell = 0; cell < total; ++cell) {
        double w = 1.0;
        std::size_t rest = cell;
        for (std::size_t d = p; d-- > 0;) {
            const std::size_t i = rest % q;
            rest /= q;
            u[d] = rule.nodes[i];
            w *= rule.weights[i];
        }
        inverse_rosenblatt(null_model, u, x);
        const double g = null_model.density(x);
        const double f = true_density(x);
        if (g <= 0.0) {
            if (f > 0.0) throw DomainError("isb_oracle: true density is positive where the null density vanishes");
            continue;
        }
        const double ratio = f / g;
        out.divergence += w * (ratio - 1.0) * (ratio - 1.0);
        basis.evaluate(u, t);
        for (std::size_t k = 0; k < out.theta.size(); ++k) out.theta[k] += w * ratio * t[k + 1];
    }
    for (double th : out.theta) {
        out.theta_sq += th * th;
        out.theta_sum += th;
    }
    return out;
}

IsbResult isb_oracle(const ModelSpec& true_model, const ModelSpec& null_model,
                     const BasisConfig& config, const numeric::QuadratureRule& rule) {
    return isb_oracle([&](std::span<const double> x) { return true_model.density(x); }, null_model,
                      config, rule);
}

}  // namespace igof
