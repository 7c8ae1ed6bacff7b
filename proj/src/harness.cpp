#include "igof/harness.hpp"

#include <cmath>
#include <optional>

#include "igof/errors.hpp"
#include "igof/estimate.hpp"
#include "igof/infer.hpp"
#include "igof/parallel.hpp"

namespace igof {

namespace {

using Weights = std::vector<std::pair<std::size_t, double>>;

ParamExpr c(double v) { return ParamExpr::constant(v); }

// Solves A x = b for a small symmetric positive definite A (Gaussian elimination).
std::vector<double> solve_small(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t piv = i;
        for (std::size_t r = i + 1; r < n; ++r) {
            if (std::abs(a[r][i]) > std::abs(a[piv][i])) piv = r;
        }
        std::swap(a[i], a[piv]);
        std::swap(b[i], b[piv]);
        if (std::abs(a[i][i]) < 1e-14) throw RankError("gaussian_chain: covariance is singular");
        for (std::size_t r = i + 1; r < n; ++r) {
            const double f = a[r][i] / a[i][i];
            for (std::size_t k = i; k < n; ++k) a[r][k] -= f * a[i][k];
            b[r] -= f * b[i];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

ModelSpec example2(bool truth) {
    const std::vector<std::string> names{"x1", "x2", "x3", "x4", "x5", "x6", "x7"};
    const auto normal = gaussian_chain({"x1", "x2", "x5"}, {10.0, 15.0, 11.0},
                                       {{4.0, 0.5, 0.0}, {0.5, 3.0, 1.0}, {0.0, 1.0, 5.0}}, {0, 1, 4});
    std::vector<ConditionalLaw> coords;
    coords.push_back(normal[0]);
    coords.push_back(normal[1]);
    coords.emplace_back("x3", Family::Exponential,
                        std::map<std::string, ParamExpr>{{"rate", c(truth ? 1.0 : 0.9)}});
    coords.emplace_back("x4", Family::Exponential,
                        std::map<std::string, ParamExpr>{{"scale", ParamExpr::affine(0.0, {{2, 1.0}})}},
                        std::vector<std::size_t>{2});
    coords.push_back(normal[2]);
    const Weights squares = truth ? Weights{{1, 0.01}} : Weights{};
    coords.emplace_back(
        "x6", Family::Laplace,
        std::map<std::string, ParamExpr>{
            {"location", ParamExpr::exp_affine(0.0, {{0, 0.03}, {1, 0.02}, {4, 0.02}}, squares)},
            {"scale", c(1.0)}},
        std::vector<std::size_t>{0, 1, 4});
    if (truth) {
        coords.emplace_back("x7", Family::StudentT, std::map<std::string, ParamExpr>{{"df", c(3.0)}});
    } else {
        coords.emplace_back("x7", Family::Cauchy,
                            std::map<std::string, ParamExpr>{{"location", c(0.0)}, {"scale", c(1.0)}});
    }
    return ModelSpec::chain(std::move(coords));
}

ModelSpec fermi_disc() {
    std::vector<ConditionalLaw> coords;
    coords.emplace_back("x1", Family::Semicircle,
                        std::map<std::string, ParamExpr>{{"center", c(195.0)}, {"radius", c(30.0)}});
    coords.emplace_back("x2", Family::Uniform,
                        std::map<std::string, ParamExpr>{
                            {"lower", ParamExpr::disc_chord(28.0, 30.0, 0, 195.0, -1)},
                            {"upper", ParamExpr::disc_chord(28.0, 30.0, 0, 195.0, 1)}},
                        std::vector<std::size_t>{0});
    return ModelSpec::chain(std::move(coords));
}

}  // namespace

std::vector<ConditionalLaw> gaussian_chain(const std::vector<std::string>& names,
                                          const std::vector<double>& mean,
                                          const std::vector<std::vector<double>>& cov,
                                          const std::vector<std::size_t>& positions) {
    const std::size_t k = names.size();
    if (mean.size() != k || cov.size() != k || positions.size() != k) {
        throw DomainError("gaussian_chain: inconsistent dimensions");
    }
    std::vector<ConditionalLaw> out;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::vector<double>> a(i, std::vector<double>(i));
        std::vector<double> b(i);
        for (std::size_t r = 0; r < i; ++r) {
            for (std::size_t s = 0; s < i; ++s) a[r][s] = cov[r][s];
            b[r] = cov[r][i];
        }
        const std::vector<double> beta = i ? solve_small(a, b) : std::vector<double>{};
        double var = cov[i][i];
        double intercept = mean[i];
        Weights weights;
        std::vector<std::size_t> parents;
        for (std::size_t r = 0; r < i; ++r) {
            var -= beta[r] * cov[r][i];
            intercept -= beta[r] * mean[r];
            weights.emplace_back(positions[r], beta[r]);
            parents.push_back(positions[r]);
        }
        if (!(var > 0.0)) throw RankError("gaussian_chain: covariance is not positive definite");
        out.emplace_back(names[i], Family::Normal,
                         std::map<std::string, ParamExpr>{
                             {"mean", i ? ParamExpr::affine(intercept, weights) : c(mean[i])},
                             {"sd", c(std::sqrt(var))}},
                         parents);
    }
    return out;
}

ModelSpec truncated_bivariate_normal(double mean1, double mean2, double var1, double var2, double cov,
                                     double lo1, double hi1, double lo2, double hi2) {
    const double sd1 = std::sqrt(var1);
    const double sd2 = std::sqrt(var2);
    const double slope = cov / var1;
    std::vector<ConditionalLaw> coords;
    coords.emplace_back("x1", Family::TruncatedNormalSlice,
                        std::map<std::string, ParamExpr>{{"mean", c(mean1)},
                                                         {"sd", c(sd1)},
                                                         {"lower", c(lo1)},
                                                         {"upper", c(hi1)},
                                                         {"partner_mean", c(mean2)},
                                                         {"partner_sd", c(sd2)},
                                                         {"correlation", c(cov / (sd1 * sd2))},
                                                         {"partner_lower", c(lo2)},
                                                         {"partner_upper", c(hi2)}});
    coords.emplace_back("x2", Family::TruncatedNormal,
                        std::map<std::string, ParamExpr>{
                            {"mean", ParamExpr::affine(mean2 - slope * mean1, {{0, slope}})},
                            {"sd", c(std::sqrt(var2 - cov * slope))},
                            {"lower", c(lo2)},
                            {"upper", c(hi2)}},
                        std::vector<std::size_t>{0});
    return ModelSpec::chain(std::move(coords));
}

std::vector<std::string> catalog_names() {
    return {"example1-null",      "example1-truth",       "example2-null", "example2-truth",
            "fermi-disc-uniform", "fermi-disc-perturbed", "uniform-2d"};
}

ModelSpec catalog(const std::string& name) {
    std::optional<ModelSpec> m;
    if (name == "example1-null") {
        m = truncated_bivariate_normal(12, 8, 8, 12, 2, 5, 20, 0, 17);
    } else if (name == "example1-truth") {
        m = ModelSpec::mixture({{0.85, truncated_bivariate_normal(12, 8, 8, 12, 2, 5, 20, 0, 17)},
                                {0.15, truncated_bivariate_normal(12, 8, 4, 20, 5, 5, 20, 0, 17)}});
    } else if (name == "example2-null") {
        m = example2(false);
    } else if (name == "example2-truth") {
        m = example2(true);
    } else if (name == "fermi-disc-uniform") {
        m = fermi_disc();
    } else if (name == "fermi-disc-perturbed") {
        m = ModelSpec::tilted(fermi_disc(), {{MultiIndex{{1, 0}}, 0.022},
                                             {MultiIndex{{0, 1}}, -0.043},
                                             {MultiIndex{{0, 2}}, 0.041}});
    } else if (name == "uniform-2d") {
        std::vector<ConditionalLaw> coords;
        for (const char* nm : {"x1", "x2"}) {
            coords.emplace_back(nm, Family::Uniform,
                                std::map<std::string, ParamExpr>{{"lower", c(0.0)}, {"upper", c(1.0)}});
        }
        m = ModelSpec::chain(std::move(coords));
    } else {
        throw LookupError("unknown catalog model '" + name + "'");
    }
    m->set_fingerprint("catalog:" + name);
    return *m;
}

double rate_standard_error(double rate, std::size_t B) {
    return std::sqrt(rate * (1.0 - rate) / static_cast<double>(B));
}

namespace {

void check_study(const StudyConfig& config) {
    if (config.B == 0) throw DomainError("study: B must be positive");
    if (config.n < 2) throw DomainError("study: n must be at least 2");
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw DomainError("study: alpha outside (0, 1)");
    if (config.truth.dimension() != config.null.dimension() ||
        config.degrees.dimension() != config.null.dimension()) {
        throw DomainError("study: truth, null and basis dimensions must agree");
    }
}

}  // namespace

void for_each_replicate(const StudyConfig& config, const ReplicateVisitor& visit) {
    check_study(config);
    const unsigned threads = resolve_threads(config.threads);
    parallel_chunks(config.B, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t b = begin; b < end; ++b) {
            const PointSet x = sample(config.truth, config.n, config.seed.substream(b));
            const USample u = rosenblatt(config.null, x);
            const CoefficientSet coeffs = fit(u, config.degrees);
            const SelectionResult sel = select(coeffs, config.criterion);
            visit(b, coeffs, sel);
        }
    });
}

StudyResult type1_power_study(const StudyConfig& config) {
    check_study(config);
    StudyResult out;
    out.n = config.n;
    out.B = config.B;
    out.replicates.resize(config.B);
    const double log10_alpha = std::log10(config.alpha);
    for_each_replicate(config, [&](std::size_t b, const CoefficientSet& coeffs, const SelectionResult& sel) {
        const DevianceReport r = deviance_test(coeffs, &sel);
        out.replicates[b] = {r.statistic, r.log10_p_value, r.k_star, r.log10_p_value < log10_alpha};
    });
    std::size_t rejected = 0;
    for (const auto& r : out.replicates) rejected += r.rejected;
    out.rejection_rate = static_cast<double>(rejected) / static_cast<double>(config.B);
    out.standard_error = rate_standard_error(out.rejection_rate, config.B);
    return out;
}

StudyResult diagnostic_study(const StudyConfig& config,
                             const std::vector<std::vector<std::size_t>>& subsets) {
    check_study(config);
    if (subsets.empty()) throw DomainError("diagnostic study: no subsets given");
    for (const auto& s : subsets) {
        const auto missing = missing_parents(config.null, s);
        if (!missing.empty()) {
            std::string list;
            for (std::size_t d : missing) list += (list.empty() ? "" : ",") + std::to_string(d + 1);
            throw MarginalityError("diagnostic study: subset is missing parents " + list);
        }
    }
    StudyResult out;
    out.n = config.n;
    out.B = config.B;
    std::vector<std::vector<char>> rejected(config.B, std::vector<char>(subsets.size(), 0));
    std::vector<std::size_t> mq(subsets.size());
    const double log10_alpha = std::log10(config.alpha);
    for_each_replicate(config, [&](std::size_t b, const CoefficientSet& coeffs, const SelectionResult& sel) {
        for (std::size_t s = 0; s < subsets.size(); ++s) {
            const DiagnosticRow row = diagnose_unchecked(coeffs, sel, subsets[s]);
            rejected[b][s] = row.log10_p_value < log10_alpha;
            if (b == 0) mq[s] = row.M_q;
        }
    });
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        std::size_t count = 0;
        for (std::size_t b = 0; b < config.B; ++b) count += rejected[b][s];
        SubsetRate r;
        r.subset = subsets[s];
        r.M_q = mq[s];
        r.rejection_rate = static_cast<double>(count) / static_cast<double>(config.B);
        r.standard_error = rate_standard_error(r.rejection_rate, config.B);
        out.subsets.push_back(std::move(r));
    }
    out.rejection_rate = out.subsets.front().rejection_rate;
    out.standard_error = out.subsets.front().standard_error;
    return out;
}

}  // namespace igof
