#include "igof/bands.hpp"

#include <algorithm>
#include <cmath>

#include "igof/errors.hpp"
#include "igof/numeric.hpp"
#include "igof/parallel.hpp"

namespace igof {

namespace nm = numeric;

PointSet cube_grid(std::size_t dimension, std::size_t resolution) {
    if (dimension == 0 || dimension > 3) throw DomainError("grid: dimension must be 1, 2 or 3");
    if (resolution < 2) throw DomainError("grid: resolution must be at least 2");
    std::size_t total = 1;
    for (std::size_t d = 0; d < dimension; ++d) total *= resolution;
    PointSet grid(total, dimension);
    const double step = 1.0 / static_cast<double>(resolution - 1);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (std::size_t d = dimension; d-- > 0;) {
            const std::size_t k = rest % resolution;
            rest /= resolution;
            grid(i, d) = k == resolution - 1 ? 1.0 : static_cast<double>(k) * step;
        }
    }
    return grid;
}

double se0(const TensorBasis& basis, const std::vector<std::size_t>& active,
           std::span<const double> u, std::size_t n) {
    std::vector<double> t(basis.full_size());
    basis.evaluate(u, t);
    double s = 0.0;
    for (std::size_t k : active) s += t[k + 1] * t[k + 1];
    return std::sqrt(s / static_cast<double>(n));
}

FieldGrid band_grid(const ComparisonDensity& cd, double c, std::size_t resolution) {
    const auto& coeffs = cd.coefficients();
    FieldGrid g;
    g.resolution = resolution;
    g.u = cube_grid(coeffs.config.dimension(), resolution);
    g.c = c;
    g.n = coeffs.n;
    const std::size_t count = g.u.rows();
    g.d_hat.resize(count);
    g.se0.resize(count);
    g.classification.resize(count);
    std::vector<double> t(cd.basis().full_size());
    const double n = static_cast<double>(coeffs.n);
    for (std::size_t i = 0; i < count; ++i) {
        cd.basis().evaluate(g.u.row(i), t);
        double d = 1.0, v = 0.0;
        for (std::size_t k : cd.active()) {
            d += coeffs.theta[k] * t[k + 1];
            v += t[k + 1] * t[k + 1];
        }
        const double se = std::sqrt(v / n);
        g.d_hat[i] = d;
        g.se0[i] = se;
        g.classification[i] = d > 1.0 + c * se ? 1 : (d < 1.0 - c * se ? -1 : 0);
    }
    return g;
}

long empirical_ec(std::span<const double> field, std::size_t rows, std::size_t cols, double t) {
    if (rows < 1 || cols < 1 || field.size() != rows * cols) {
        throw DomainError("empirical_ec: field must be a nonempty rows x cols lattice");
    }
    auto in = [&](std::size_t r, std::size_t c) { return field[r * cols + c] >= t; };
    long vertices = 0, edges = 0, faces = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (!in(r, c)) continue;
            ++vertices;
            const bool right = c + 1 < cols && in(r, c + 1);
            const bool down = r + 1 < rows && in(r + 1, c);
            edges += right + down;
            if (right && down && in(r + 1, c + 1)) ++faces;
        }
    }
    return vertices - edges + faces;
}

std::string ec_form_name(EcForm f) { return f == EcForm::Gkf ? "gkf" : "printed"; }

EcForm ec_form_from_name(const std::string& name) {
    if (name == "gkf") return EcForm::Gkf;
    if (name == "printed") return EcForm::Printed;
    throw LookupError("unknown EC form '" + name + "' (expected gkf or printed)");
}

double ec_rho1(double t, EcForm form) {
    const double e = std::exp(-0.5 * t * t);
    return form == EcForm::Gkf ? e / (2.0 * nm::kPi) : e / nm::kPi;
}

double ec_rho2(double t, EcForm form) {
    const double e = std::exp(-0.5 * t * t);
    if (form == EcForm::Gkf) return t * e / std::pow(2.0 * nm::kPi, 1.5);
    return e / (std::sqrt(2.0) * std::pow(nm::kPi, 1.5));
}

double expected_ec(double t, double L1, double L2, EcForm form) {
    return nm::std_normal_sf(t) + L1 * ec_rho1(t, form) + L2 * ec_rho2(t, form);
}

namespace {

// Both printed densities are multiples of e^{-t^2/2}, so only one combination
// of L1 and L2 is identified. Fit it and return the minimum-norm split.
LKCEstimate fit_lkc_collinear(const std::vector<double>& thresholds, const std::vector<double>& mean_ec,
                              const std::vector<double>& ec_se, std::size_t B) {
    const double a = ec_rho1(0.0, EcForm::Printed);
    const double b = ec_rho2(0.0, EcForm::Printed);
    double see = 0, sey = 0;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double e = std::exp(-0.5 * thresholds[i] * thresholds[i]);
        see += e * e;
        sey += e * (mean_ec[i] - nm::std_normal_sf(thresholds[i]));
    }
    const double beta = sey / see;
    double rss = 0.0, var = 0.0;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double e = std::exp(-0.5 * thresholds[i] * thresholds[i]);
        const double r = mean_ec[i] - nm::std_normal_sf(thresholds[i]) - beta * e;
        rss += r * r;
        if (!ec_se.empty()) var += (e / see) * (e / see) * ec_se[i] * ec_se[i];
    }
    const double norm = a * a + b * b;
    LKCEstimate out;
    out.thresholds = thresholds;
    out.mean_ec = mean_ec;
    out.ec_se = ec_se;
    out.B = B;
    out.form = EcForm::Printed;
    out.L1 = beta * a / norm;
    out.L2 = beta * b / norm;
    out.se_L1 = std::sqrt(var) * a / norm;
    out.se_L2 = std::sqrt(var) * b / norm;
    out.residual_norm = std::sqrt(rss);
    return out;
}

}  // namespace

LKCEstimate fit_lkc(const std::vector<double>& thresholds, const std::vector<double>& mean_ec,
                    const std::vector<double>& ec_se, std::size_t B, EcForm form) {
    const std::size_t k = thresholds.size();
    if (mean_ec.size() != k || (!ec_se.empty() && ec_se.size() != k)) {
        throw DomainError("fit_lkc: thresholds and EC values differ in length");
    }
    {
        auto distinct = thresholds;
        std::sort(distinct.begin(), distinct.end());
        if (std::unique(distinct.begin(), distinct.end()) - distinct.begin() < 2) {
            throw RankError("fit_lkc: at least two distinct thresholds are required");
        }
    }
    if (form == EcForm::Printed) return fit_lkc_collinear(thresholds, mean_ec, ec_se, B);
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x1 = ec_rho1(thresholds[i], form);
        const double x2 = ec_rho2(thresholds[i], form);
        const double y = mean_ec[i] - nm::std_normal_sf(thresholds[i]);
        a11 += x1 * x1;
        a12 += x1 * x2;
        a22 += x2 * x2;
        b1 += x1 * y;
        b2 += x2 * y;
    }
    const double det = a11 * a22 - a12 * a12;
    if (k < 2 || !(std::abs(det) > 1e-12 * (a11 * a22 + 1e-300))) {
        throw RankError("fit_lkc: at least two distinct thresholds are required");
    }
    LKCEstimate out;
    out.thresholds = thresholds;
    out.mean_ec = mean_ec;
    out.ec_se = ec_se;
    out.B = B;
    out.form = form;
    out.L1 = (a22 * b1 - a12 * b2) / det;
    out.L2 = (a11 * b2 - a12 * b1) / det;

    double rss = 0.0, v1 = 0.0, v2 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x1 = ec_rho1(thresholds[i], form);
        const double x2 = ec_rho2(thresholds[i], form);
        const double r = mean_ec[i] - expected_ec(thresholds[i], out.L1, out.L2, form);
        rss += r * r;
        if (!ec_se.empty()) {
            // rows of (X'X)^{-1} X' weighted by the per-threshold variance
            const double g1 = (a22 * x1 - a12 * x2) / det;
            const double g2 = (a11 * x2 - a12 * x1) / det;
            v1 += g1 * g1 * ec_se[i] * ec_se[i];
            v2 += g2 * g2 * ec_se[i] * ec_se[i];
        }
    }
    out.residual_norm = std::sqrt(rss);
    out.se_L1 = std::sqrt(v1);
    out.se_L2 = std::sqrt(v2);
    return out;
}

NullField::NullField(const BasisConfig& config, std::size_t resolution,
                     std::vector<std::size_t> active)
    : resolution_(resolution) {
    const TensorBasis basis(config);
    if (active.empty()) {
        active.resize(basis.size());
        for (std::size_t k = 0; k < active.size(); ++k) active[k] = k;
    }
    terms_ = active.size();
    const PointSet grid = cube_grid(config.dimension(), resolution);
    points_ = grid.rows();
    normalized_.assign(points_ * terms_, 0.0);
    std::vector<double> t(basis.full_size());
    for (std::size_t i = 0; i < points_; ++i) {
        basis.evaluate(grid.row(i), t);
        double norm = 0.0;
        for (std::size_t k : active) norm += t[k + 1] * t[k + 1];
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        for (std::size_t a = 0; a < terms_; ++a) normalized_[i * terms_ + a] = t[active[a] + 1] / norm;
    }
}

void NullField::draw(Rng& rng, std::span<double> out) const {
    std::vector<double> xi(terms_);
    for (double& v : xi) v = rng.normal();
    for (std::size_t i = 0; i < points_; ++i) {
        const double* row = normalized_.data() + i * terms_;
        double z = 0.0;
        for (std::size_t a = 0; a < terms_; ++a) z += row[a] * xi[a];
        out[i] = z;
    }
}

LKCEstimate estimate_lkc(const BasisConfig& config, const LkcOptions& options) {
    if (config.dimension() != 2) {
        throw UnsupportedError("estimate_lkc: curvature fit requires a two-dimensional field");
    }
    if (options.B < 2) throw DomainError("estimate_lkc: at least two replicates are required");
    const NullField field(config, options.resolution);
    const std::size_t T = options.thresholds.size();
    const std::size_t B = options.B;
    std::vector<double> ec(B * T);
    parallel_chunks(B, resolve_threads(options.threads), [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<double> z(field.points());
        for (std::size_t b = begin; b < end; ++b) {
            Rng rng(options.seed.substream(b));
            field.draw(rng, z);
            for (std::size_t j = 0; j < T; ++j) {
                ec[b * T + j] = static_cast<double>(
                    empirical_ec(z, options.resolution, options.resolution, options.thresholds[j]));
            }
        }
    });
    std::vector<double> mean(T, 0.0), se(T, 0.0);
    for (std::size_t j = 0; j < T; ++j) {
        double s = 0.0;
        for (std::size_t b = 0; b < B; ++b) s += ec[b * T + j];
        mean[j] = s / static_cast<double>(B);
        double ss = 0.0;
        for (std::size_t b = 0; b < B; ++b) ss += (ec[b * T + j] - mean[j]) * (ec[b * T + j] - mean[j]);
        se[j] = std::sqrt(ss / static_cast<double>(B - 1) / static_cast<double>(B));
    }
    return fit_lkc(options.thresholds, mean, se, B, options.form);
}

double solve_c_alpha(const LKCEstimate& lkc, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("solve_c_alpha: alpha must lie in (0, 0.5)");
    if (!std::isfinite(lkc.L1) || !std::isfinite(lkc.L2)) {
        throw DomainError("solve_c_alpha: curvature estimates are not finite");
    }
    const double target = 0.5 * alpha;
    // relative residual keeps the tolerance meaningful for tiny alpha
    auto f = [&](double c) { return expected_ec(c, lkc.L1, lkc.L2, lkc.form) / target - 1.0; };
    return nm::find_root(f, 1.0, 10.0, 1e-10);
}

double mc_sup_quantile(const BasisConfig& config, const McOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw DomainError("mc_sup_quantile: alpha outside (0, 1)");
    if (options.B < 2) throw DomainError("mc_sup_quantile: at least two replicates are required");
    if (options.resolution < 2) throw DomainError("mc_sup_quantile: degenerate grid");
    const std::size_t B = options.B;
    std::vector<double> sups(B);
    const unsigned threads = resolve_threads(options.threads);

    if (!options.redo_selection) {
        const NullField field(config, options.resolution);
        parallel_chunks(B, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
            std::vector<double> z(field.points());
            for (std::size_t b = begin; b < end; ++b) {
                Rng rng(options.seed.substream(b));
                field.draw(rng, z);
                sups[b] = *std::max_element(z.begin(), z.end());
            }
        });
    } else {
        if (options.n < 2) throw DomainError("mc_sup_quantile: n must be at least 2");
        const TensorBasis basis(config);
        const PointSet grid = cube_grid(config.dimension(), options.resolution);
        const std::size_t P = grid.rows();
        const std::size_t M = basis.size();
        std::vector<double> table(P * M);
        {
            std::vector<double> t(basis.full_size());
            for (std::size_t i = 0; i < P; ++i) {
                basis.evaluate(grid.row(i), t);
                std::copy(t.begin() + 1, t.end(), table.begin() + static_cast<std::ptrdiff_t>(i * M));
            }
        }
        const double root_n = std::sqrt(static_cast<double>(options.n));
        parallel_chunks(B, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
            PointSet u(options.n, config.dimension());
            for (std::size_t b = begin; b < end; ++b) {
                Rng rng(options.seed.substream(b));
                for (std::size_t i = 0; i < options.n; ++i) {
                    for (std::size_t d = 0; d < config.dimension(); ++d) u(i, d) = rng.uniform();
                }
                const CoefficientSet coeffs = fit(u, config);
                const SelectionResult sel = select(coeffs, options.criterion);
                double best = 0.0;
                bool any = false;
                for (std::size_t i = 0; i < P; ++i) {
                    const double* row = table.data() + i * M;
                    double num = 0.0, norm = 0.0;
                    for (std::size_t k : sel.active) {
                        num += coeffs.theta[k] * row[k];
                        norm += row[k] * row[k];
                    }
                    const double z = norm > 0.0 ? root_n * num / std::sqrt(norm) : 0.0;
                    if (!any || z > best) {
                        best = z;
                        any = true;
                    }
                }
                sups[b] = best;
            }
        });
    }
    std::sort(sups.begin(), sups.end());
    const double level = 1.0 - 0.5 * options.alpha;
    const auto idx = static_cast<std::size_t>(std::ceil(level * static_cast<double>(B))) - 1;
    return sups[std::min(idx, B - 1)];
}

}  // namespace igof
