#include <doctest.h>

#include <cmath>

#include "igof/errors.hpp"
#include "igof/estimate.hpp"
#include "igof/harness.hpp"
#include "igof/numeric.hpp"

using namespace igof;

namespace {

PointSet uniform_points(std::size_t n, std::size_t p, std::uint64_t seed) {
    Rng rng({seed, 0});
    PointSet u(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < p; ++d) u(i, d) = rng.uniform();
    }
    return u;
}

ModelSpec tilted_square(std::vector<ModelSpec::TiltTerm> terms) {
    return ModelSpec::tilted(catalog("uniform-2d"), std::move(terms));
}

}  // namespace

TEST_CASE("streaming fit agrees with the naive reference") {
    const auto u = uniform_points(500, 3, 1);
    const BasisConfig config({3, 2, 4});
    const auto fast = fit(u, config);
    const auto slow = fit_naive(u, config);
    REQUIRE(fast.size() == slow.size());
    REQUIRE(fast.size() == 4 * 3 * 5 - 1);
    for (std::size_t k = 0; k < slow.size(); ++k) CHECK(std::abs(fast.theta[k] - slow[k]) < 1e-12);
    CHECK(fast.indices == enumerate_K(config));
    CHECK(fast.n == 500);
}

TEST_CASE("thread count does not change the estimate") {
    const auto u = uniform_points(2000, 2, 2);
    const BasisConfig config({4, 4});
    const auto one = fit(u, config, {true, 1});
    const auto four = fit(u, config, {true, 4});
    for (std::size_t k = 0; k < one.size(); ++k) CHECK(std::abs(one.theta[k] - four.theta[k]) < 1e-13);
    for (std::size_t i = 0; i < one.sigma->size(); ++i) {
        CHECK(std::abs((*one.sigma)[i] - (*four.sigma)[i]) < 1e-15);
    }
}

TEST_CASE("uniform data: coefficients are centered noise") {
    const std::size_t n = 20000;
    const auto u = uniform_points(n, 2, 3);
    const auto c = fit(u, BasisConfig({3, 3}), {true, 2});
    double stat = 0.0;
    for (double th : c.theta) {
        CHECK(std::abs(th) * std::sqrt(static_cast<double>(n)) < 4.5);
        stat += n * th * th;
    }
    CHECK(numeric::chi2_sf(stat, static_cast<unsigned>(c.size())) > 1e-4);
    // covariance close to I/n
    const std::size_t M = c.size();
    for (std::size_t a = 0; a < M; ++a) {
        CHECK(std::abs((*c.sigma)[a * M + a] * n - 1.0) < 0.1);
        for (std::size_t b = 0; b < a; ++b) {
            CHECK((*c.sigma)[a * M + b] == (*c.sigma)[b * M + a]);
            CHECK(std::abs((*c.sigma)[a * M + b] * n) < 0.1);
        }
    }
}

TEST_CASE("single-term tilt is recovered") {
    const auto truth = tilted_square({{MultiIndex{{1, 0}}, 0.3}});
    const std::size_t n = 40000;
    const auto x = sample(truth, n, {4, 0});
    const auto c = fit(x, BasisConfig({3, 3}));
    const double se = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(c.at(MultiIndex{{1, 0}}) - 0.3) < 5 * 1.2 * se);
    CHECK(std::abs(c.at(MultiIndex{{0, 1}})) < 5 * se);
    CHECK(std::abs(c.at(MultiIndex{{2, 2}})) < 5 * se);
    CHECK_THROWS_AS((void)c.at(MultiIndex{{4, 0}}), LookupError);
}

TEST_CASE("degenerate inputs") {
    const BasisConfig config({2, 2});
    CHECK_THROWS_AS((void)fit(PointSet(0, 2), config), DomainError);
    CHECK_THROWS_AS((void)fit(uniform_points(5, 3, 1), config), DomainError);
    const auto one = fit(uniform_points(1, 2, 1), config, {true, 1});
    CHECK(one.n == 1);
    for (double v : *one.sigma) CHECK(v == 0.0);
    CHECK_THROWS_AS((void)fit(uniform_points(2, 3, 1), BasisConfig({15, 15, 16}), {true, 1}), DomainError);
}

TEST_CASE("comparison density evaluation") {
    CoefficientSet c;
    c.config = BasisConfig({2, 2});
    c.indices = enumerate_K(c.config);
    c.theta.assign(c.indices.size(), 0.0);
    c.n = 100;
    c.theta[c.position(MultiIndex{{1, 0}})] = 0.022;
    c.theta[c.position(MultiIndex{{0, 1}})] = -0.043;
    c.theta[c.position(MultiIndex{{0, 2}})] = 0.041;
    const ComparisonDensity cd(c);
    const std::vector<double> u{1.0, 0.5};
    CHECK(std::abs(eval_d(cd, u) - (1 + 0.022 * std::sqrt(3.0) - 0.041 * std::sqrt(5.0) / 2)) < 1e-14);
    CHECK(std::abs(eval_d(cd, u) - 0.9922657) < 1e-6);

    // integrates to one
    const auto rule = numeric::gauss_legendre(8);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const std::vector<double> v{rule.nodes[i], rule.nodes[j]};
            total += rule.weights[i] * rule.weights[j] * eval_d(cd, v);
        }
    }
    CHECK(std::abs(total - 1.0) < 1e-13);

    // null variance is sum of squared scores over n
    const std::vector<double> w{0.2, 0.9};
    double s = 0.0;
    for (const auto& k : c.indices) s += tensor_eval(k, w) * tensor_eval(k, w);
    CHECK(std::abs(variance_d(cd, w, true) - s / 100) < 1e-14);
    CHECK_THROWS_AS((void)variance_d(cd, w, false), StateError);

    const ComparisonDensity only(c, {c.position(MultiIndex{{1, 0}})});
    CHECK(std::abs(eval_d(only, u) - (1 + 0.022 * std::sqrt(3.0))) < 1e-14);
    CHECK_THROWS_AS(ComparisonDensity(c, {99}), DomainError);
}

TEST_CASE("density on the data scale") {
    CoefficientSet c;
    c.config = BasisConfig({1, 1});
    c.indices = enumerate_K(c.config);
    c.theta = {0.0, 0.1, 0.0};
    c.n = 10;
    const ComparisonDensity cd(c);
    const auto model = catalog("example1-null");
    const std::vector<double> x{12.0, 8.0};
    const auto u = rosenblatt(model, x);
    const double expected = 0.016998216246044626 * (1 + 0.1 * legendre_eval(1, u[0]));
    CHECK(std::abs(eval_f(cd, model, x) - expected) < 1e-10);
    CHECK_THROWS_AS((void)eval_f(cd, model, std::vector<double>{1.0, 8.0}), DomainError);
}

TEST_CASE("squared bias oracle") {
    const auto null = catalog("uniform-2d");
    const auto rule = numeric::gauss_legendre(24);
    const auto truth = tilted_square({{MultiIndex{{1, 0}}, 0.3}, {MultiIndex{{4, 0}}, 0.1}});
    const auto r = isb_oracle(truth, null, BasisConfig({3, 3}), rule);
    CHECK(std::abs(r.divergence - 0.10) < 1e-12);
    CHECK(std::abs(r.theta_sq - 0.09) < 1e-12);
    CHECK(std::abs(r.isb() - 0.01) < 1e-12);
    CHECK(std::abs(r.isb_sum_form() - (0.10 - 0.3)) < 1e-12);

    const auto exact = isb_oracle(truth, null, BasisConfig({4, 1}), rule);
    CHECK(std::abs(exact.isb()) < 1e-12);
    CHECK_THROWS_AS((void)isb_oracle(catalog("example2-null"), catalog("example2-null"),
                                     BasisConfig(std::vector<int>(7, 1)), rule),
                    UnsupportedError);
}

TEST_CASE("bias of the example I expansion shrinks with the degree") {
    const auto rule = numeric::gauss_legendre(48);
    const auto truth = catalog("example1-truth");
    const auto null = catalog("example1-null");
    double previous = 1e9;
    for (int m : {1, 2, 4, 6}) {
        const auto r = isb_oracle(truth, null, BasisConfig({m, m}), rule);
        CAPTURE(m);
        CHECK(r.isb() >= -1e-10);
        CHECK(r.isb() <= previous + 1e-12);
        previous = r.isb();
    }
}
