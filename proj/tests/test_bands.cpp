#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "igof/bands.hpp"
#include "igof/errors.hpp"
#include "igof/numeric.hpp"

using namespace igof;

namespace {

std::vector<double> indicator(std::size_t rows, std::size_t cols, const std::vector<std::pair<int, int>>& on) {
    std::vector<double> f(rows * cols, 0.0);
    for (auto [r, c] : on) f[r * cols + c] = 1.0;
    return f;
}

CoefficientSet single_term(double value, std::size_t n) {
    CoefficientSet c;
    c.config = BasisConfig({2, 2});
    c.indices = enumerate_K(c.config);
    c.theta.assign(c.indices.size(), 0.0);
    c.theta[c.position(MultiIndex{{1, 0}})] = value;
    c.n = n;
    return c;
}

}  // namespace

TEST_CASE("lattice layout") {
    const auto g = cube_grid(2, 3);
    REQUIRE(g.rows() == 9);
    CHECK(g(0, 0) == 0.0);
    CHECK(g(0, 1) == 0.0);
    CHECK(g(1, 1) == 0.5);
    CHECK(g(2, 1) == 1.0);
    CHECK(g(3, 0) == 0.5);
    CHECK(g(8, 0) == 1.0);
    CHECK(g(8, 1) == 1.0);
    CHECK(cube_grid(3, 4).rows() == 64);
    CHECK_THROWS_AS((void)cube_grid(2, 1), DomainError);
}

TEST_CASE("null standard error and band classification") {
    const auto c = single_term(0.5, 10000);
    const ComparisonDensity cd(c);
    const std::vector<double> u{0.1, 0.7};
    double s = 0.0;
    for (const auto& k : c.indices) s += tensor_eval(k, u) * tensor_eval(k, u);
    CHECK(std::abs(se0(cd.basis(), cd.active(), u, 10000) - std::sqrt(s / 10000)) < 1e-14);

    const auto grid = band_grid(cd, 3.0, 21);
    REQUIRE(grid.size() == 441);
    int above = 0, below = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = eval_d(cd, grid.u.row(i));
        CHECK(std::abs(grid.d_hat[i] - d) < 1e-13);
        const int expected = d > 1 + 3 * grid.se0[i] ? 1 : (d < 1 - 3 * grid.se0[i] ? -1 : 0);
        CHECK(grid.classification[i] == expected);
        above += expected == 1;
        below += expected == -1;
    }
    // d = 1 + 0.5 sqrt(3) (2 u1 - 1): high on the right, low on the left
    CHECK(above > 0);
    CHECK(below > 0);
    CHECK(grid.classification[10] == -1);
    CHECK(grid.classification[430] == 1);
}

TEST_CASE("euler characteristic of excursion sets") {
    CHECK(empirical_ec(indicator(5, 5, {}), 5, 5, 0.5) == 0);
    CHECK(empirical_ec(indicator(5, 5, {{2, 2}}), 5, 5, 0.5) == 1);
    CHECK(empirical_ec(indicator(5, 5, {{0, 0}, {4, 4}}), 5, 5, 0.5) == 2);
    CHECK(empirical_ec(indicator(5, 5, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}), 5, 5, 0.5) == 1);
    // ring around a hole
    CHECK(empirical_ec(indicator(5, 5, {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}, {3, 3}}),
                       5, 5, 0.5) == 0);
    std::vector<double> full(25, 1.0);
    CHECK(empirical_ec(full, 5, 5, 0.5) == 1);
    // diagonal neighbours are not connected on the 4-lattice
    CHECK(empirical_ec(indicator(3, 3, {{0, 0}, {1, 1}}), 3, 3, 0.5) == 2);
    CHECK_THROWS_AS((void)empirical_ec(full, 4, 5, 0.5), DomainError);
}

TEST_CASE("expected EC densities") {
    const double t = 1.3, e = std::exp(-0.5 * t * t), pi = std::numbers::pi;
    CHECK(std::abs(ec_rho1(t, EcForm::Gkf) - e / (2 * pi)) < 1e-15);
    CHECK(std::abs(ec_rho2(t, EcForm::Gkf) - t * e / std::pow(2 * pi, 1.5)) < 1e-15);
    CHECK(std::abs(ec_rho1(t, EcForm::Printed) - e / pi) < 1e-15);
    CHECK(std::abs(ec_rho2(t, EcForm::Printed) - e / (std::sqrt(2.0) * std::pow(pi, 1.5))) < 1e-15);
    CHECK(std::abs(expected_ec(t, 0, 0, EcForm::Gkf) - numeric::std_normal_sf(t)) < 1e-15);
    CHECK(ec_form_from_name("printed") == EcForm::Printed);
    CHECK(ec_form_name(EcForm::Gkf) == "gkf");
    CHECK_THROWS_AS((void)ec_form_from_name("other"), LookupError);
}

TEST_CASE("curvature fit recovers exact coefficients") {
    const std::vector<double> ts{0.5, 1.0, 1.5, 2.0, 2.5};
    std::vector<double> ec, se(ts.size(), 0.01);
    for (double t : ts) ec.push_back(expected_ec(t, 14.5, 42.7, EcForm::Gkf));
    const auto fitted = fit_lkc(ts, ec, se, 1000, EcForm::Gkf);
    CHECK(std::abs(fitted.L1 - 14.5) < 1e-9);
    CHECK(std::abs(fitted.L2 - 42.7) < 1e-9);
    CHECK(fitted.residual_norm < 1e-9);
    CHECK(fitted.se_L1 > 0);
    CHECK(fitted.se_L2 > 0);
    const double c = solve_c_alpha(fitted, 0.05);
    CHECK(std::abs(expected_ec(c, 14.5, 42.7, EcForm::Gkf) - 0.025) < 1e-10);
    CHECK(c > 3.0);
    CHECK(c < 4.0);

    CHECK_THROWS_AS((void)fit_lkc({1.0}, {0.5}, {0.1}, 10, EcForm::Gkf), RankError);
    CHECK_THROWS_AS((void)fit_lkc({1.0, 1.0}, {0.5, 0.5}, {0.1, 0.1}, 10, EcForm::Gkf), RankError);

    std::vector<double> printed_ec;
    for (double t : ts) printed_ec.push_back(expected_ec(t, 14.5, 42.7, EcForm::Printed));
    const auto pf = fit_lkc(ts, printed_ec, se, 1000, EcForm::Printed);
    CHECK(pf.residual_norm < 1e-12);
    for (double t : {0.3, 1.7, 3.5}) {
        CHECK(std::abs(expected_ec(t, pf.L1, pf.L2, EcForm::Printed) -
                       expected_ec(t, 14.5, 42.7, EcForm::Printed)) < 1e-12);
    }
    CHECK(std::abs(pf.L1 / pf.L2 - ec_rho1(0, EcForm::Printed) / ec_rho2(0, EcForm::Printed)) < 1e-12);

    LKCEstimate huge = fitted;
    huge.L2 = 1e30;
    CHECK_THROWS_AS((void)solve_c_alpha(huge, 0.05), BracketError);
}

TEST_CASE("band constant limits") {
    LKCEstimate flat;
    CHECK(std::abs(solve_c_alpha(flat, 0.05) - 1.959964) < 1e-6);
    LKCEstimate a = flat, b = flat;
    a.L1 = 5;
    b.L1 = 10;
    CHECK(solve_c_alpha(b, 0.05) > solve_c_alpha(a, 0.05));
    a.L2 = 40;
    const double tiny = solve_c_alpha(a, 1e-7);
    CHECK(std::isfinite(tiny));
    CHECK(tiny > 5.0);
}

TEST_CASE("null field has unit variance") {
    const NullField field(BasisConfig({2, 2}), 11);
    CHECK(field.points() == 121);
    CHECK(field.terms() == 8);
    std::vector<double> z(field.points());
    std::vector<double> sum(field.points(), 0.0), sq(field.points(), 0.0);
    Rng rng({3, 0});
    const int B = 4000;
    for (int b = 0; b < B; ++b) {
        field.draw(rng, z);
        for (std::size_t i = 0; i < z.size(); ++i) {
            sum[i] += z[i];
            sq[i] += z[i] * z[i];
        }
    }
    for (std::size_t i = 0; i < z.size(); i += 7) {
        CHECK(std::abs(sum[i] / B) < 0.08);
        CHECK(std::abs(sq[i] / B - 1.0) < 0.1);
    }
}

TEST_CASE("curvature estimate for the default basis") {
    LkcOptions options;
    options.B = 200;
    options.resolution = 41;
    options.seed = {99, 0};
    const auto a = estimate_lkc(BasisConfig({3, 3}), options);
    CHECK(a.L1 > 0);
    CHECK(a.L2 > 0);
    CHECK(a.B == 200);
    CHECK(a.mean_ec.size() == 4);
    const double c = solve_c_alpha(a, 0.05);
    CHECK(c > 2.8);
    CHECK(c < 4.2);

    options.threads = 4;
    const auto b = estimate_lkc(BasisConfig({3, 3}), options);
    CHECK(a.L1 == b.L1);
    CHECK(a.L2 == b.L2);
    CHECK_THROWS_AS((void)estimate_lkc(BasisConfig({2, 2, 2}), options), UnsupportedError);
}

TEST_CASE("supremum quantile with one basis function") {
    // Z = xi sign(T_1), so the lattice supremum is |xi|
    McOptions options;
    options.B = 20000;
    options.resolution = 11;
    options.seed = {5, 0};
    options.threads = 4;
    const double q = mc_sup_quantile(BasisConfig({1}), options);
    CHECK(std::abs(q - 2.2414027276049455) < 0.06);
    CHECK(q == mc_sup_quantile(BasisConfig({1}), options));
}

TEST_CASE("supremum quantile with reselection") {
    McOptions options;
    options.n = 300;
    options.B = 100;
    options.resolution = 21;
    options.redo_selection = true;
    options.seed = {6, 0};
    const double q = mc_sup_quantile(BasisConfig({3, 3}), options);
    CHECK(q > 1.5);
    CHECK(q < 5.0);
    options.threads = 3;
    CHECK(q == mc_sup_quantile(BasisConfig({3, 3}), options));
}
