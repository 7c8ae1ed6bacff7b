#include <doctest.h>

#include <cmath>

#include "igof/basis.hpp"
#include "igof/errors.hpp"
#include "igof/numeric.hpp"

using namespace igof;

TEST_CASE("legendre values") {
    CHECK(legendre_eval(0, 0.37) == 1.0);
    CHECK(std::abs(legendre_eval(1, 0.5)) < 1e-15);
    CHECK(std::abs(legendre_eval(1, 0.2) - std::sqrt(12.0) * (0.2 - 0.5)) < 1e-14);
    CHECK(std::abs(legendre_eval(2, 0.0) - std::sqrt(5.0)) < 1e-10);
    // closed form sqrt(5)(6u^2 - 6u + 1)
    for (double u = 0.0; u <= 1.0; u += 0.125) {
        CHECK(std::abs(legendre_eval(2, u) - std::sqrt(5.0) * (6 * u * u - 6 * u + 1)) < 1e-13);
    }
    // T_j(1) = sqrt(2j + 1)
    for (int j = 0; j <= 32; ++j) CHECK(std::abs(legendre_eval(j, 1.0) - std::sqrt(2.0 * j + 1)) < 1e-12);
    CHECK_THROWS_AS((void)legendre_eval(2, 1.2), DomainError);
    CHECK_THROWS_AS((void)legendre_eval(2, -0.1), DomainError);
    CHECK_THROWS_AS((void)legendre_eval(33, 0.5), DomainError);
}

TEST_CASE("continuous orthonormality") {
    const auto rule = numeric::gauss_legendre(32);
    for (int j = 0; j <= 6; ++j) {
        for (int k = 0; k <= 6; ++k) {
            const double g = rule.integrate([&](double u) { return legendre_eval(j, u) * legendre_eval(k, u); });
            CHECK(std::abs(g - (j == k ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("tensor evaluation") {
    const std::vector<double> a{0.3, 0.9};
    CHECK(tensor_eval(MultiIndex{{0, 0}}, a) == 1.0);
    CHECK(std::abs(tensor_eval(MultiIndex{{1, 1}}, std::vector<double>{0.5, 0.2})) < 1e-15);
    CHECK(std::abs(tensor_eval(MultiIndex{{1, 1}}, std::vector<double>{1.0, 1.0}) - 3.0) < 1e-10);
    CHECK_THROWS_AS((void)tensor_eval(MultiIndex{{1, 1, 0}}, a), DomainError);
}

TEST_CASE("enumeration of K") {
    const auto k11 = enumerate_K(BasisConfig({1, 1}));
    REQUIRE(k11.size() == 3);
    CHECK(k11[0].j == std::vector<int>{0, 1});
    CHECK(k11[1].j == std::vector<int>{1, 0});
    CHECK(k11[2].j == std::vector<int>{1, 1});
    CHECK(enumerate_K(BasisConfig({4, 3})).size() == 19);
    CHECK(BasisConfig({4, 3}).size() == 19);
    const BasisConfig seven(std::vector<int>(7, 3));
    const auto k7 = enumerate_K(seven);
    CHECK(k7.size() == 16383);
    CHECK(std::is_sorted(k7.begin(), k7.end()));
    CHECK_THROWS_AS(BasisConfig({0, 2}), DomainError);
    CHECK_THROWS_AS(BasisConfig({33}), DomainError);
}

TEST_CASE("tensor basis matches per-index evaluation") {
    const TensorBasis basis(BasisConfig({2, 3, 1}));
    std::vector<double> out(basis.full_size());
    const std::vector<double> u{0.17, 0.63, 0.91};
    basis.evaluate(u, out);
    CHECK(out[0] == 1.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        CHECK(std::abs(out[k + 1] - tensor_eval(basis.indices()[k], u)) < 1e-13);
    }
}

TEST_CASE("tensor orthonormality in two dimensions") {
    const TensorBasis basis(BasisConfig({3, 3}));
    const auto rule = numeric::gauss_legendre(12);
    const std::size_t F = basis.full_size();
    std::vector<double> gram(F * F, 0.0), t(F);
    for (std::size_t a = 0; a < rule.size(); ++a) {
        for (std::size_t b = 0; b < rule.size(); ++b) {
            const std::vector<double> u{rule.nodes[a], rule.nodes[b]};
            basis.evaluate(u, t);
            const double w = rule.weights[a] * rule.weights[b];
            for (std::size_t i = 0; i < F; ++i) {
                for (std::size_t j = 0; j < F; ++j) gram[i * F + j] += w * t[i] * t[j];
            }
        }
    }
    for (std::size_t i = 0; i < F; ++i) {
        for (std::size_t j = 0; j < F; ++j) CHECK(std::abs(gram[i * F + j] - (i == j ? 1.0 : 0.0)) < 1e-9);
    }
}

namespace {

double lp_gram_error(const LpBasis& lp) {
    double worst = 0.0;
    const auto& p = lp.marginal.pmf;
    for (std::size_t a = 0; a < lp.values.size(); ++a) {
        for (std::size_t b = 0; b < lp.values.size(); ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * lp.values[a][i] * lp.values[b][i];
            worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

DiscreteMarginal binomial(int n, double q) {
    DiscreteMarginal m;
    for (int k = 0; k <= n; ++k) {
        m.support.push_back(k);
        m.pmf.push_back(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) *
                        std::pow(q, k) * std::pow(1 - q, n - k));
    }
    return m;
}

}  // namespace

TEST_CASE("discrete LP basis") {
    const auto bern = lp_discrete_basis({{0, 1}, {0.5, 0.5}}, 1);
    CHECK(std::abs(bern.values[1][0] + 1.0) < 1e-12);
    CHECK(std::abs(bern.values[1][1] - 1.0) < 1e-12);
    CHECK(std::abs(bern.mid[0] - 0.25) < 1e-15);
    CHECK(std::abs(bern.mid[1] - 0.75) < 1e-15);

    const auto bin = lp_discrete_basis(binomial(5, 0.3), 3);
    CHECK(lp_gram_error(bin) < 1e-10);
    const double t1[] = {-1.504923466898442, -0.5493975528370488, 0.6605216240588709,
                         1.4582705319023341, 1.7488790626167388,  1.8045586802662215};
    for (int i = 0; i < 6; ++i) CHECK(std::abs(bin.values[1][i] - t1[i]) < 1e-12);
    CHECK(lp_gram_error(lp_discrete_basis(binomial(5, 0.3), 5)) < 1e-10);

    const auto irregular = lp_discrete_basis({{-2.0, 0.1, 0.7, 9.0}, {0.05, 0.6, 0.3, 0.05}}, 3);
    CHECK(lp_gram_error(irregular) < 1e-10);

    CHECK_THROWS_AS((void)lp_discrete_basis(binomial(5, 0.3), 6), RankError);
    CHECK_THROWS_AS((void)lp_discrete_basis({{1.0}, {1.0}}, 1), DomainError);
    CHECK_THROWS_AS((void)lp_discrete_basis({{0, 1}, {0.5, 0.6}}, 1), DomainError);
}

TEST_CASE("LP basis reduces to Legendre for a fine uniform grid") {
    const int N = 10000;
    DiscreteMarginal m;
    for (int i = 0; i < N; ++i) {
        m.support.push_back(i);
        m.pmf.push_back(1.0 / N);
    }
    const auto lp = lp_discrete_basis(m, 1);
    const auto cdf = m.cdf_values();
    double worst = 0.0;
    for (int i = 0; i < N; ++i) worst = std::max(worst, std::abs(lp.values[1][i] - std::sqrt(12.0) * (cdf[i] - 0.5)));
    CHECK(worst <= 1e-2);
}

TEST_CASE("tensor basis with a discrete coordinate") {
    BasisConfig config({2, 2});
    config.set_discrete(1, binomial(5, 0.3));
    const TensorBasis basis(config);
    const auto lp = lp_discrete_basis(binomial(5, 0.3), 2);
    std::vector<double> out(basis.full_size());
    basis.evaluate(std::vector<double>{0.4, lp.mid[2]}, out);
    // index (0,1) is position 1 of the full vector
    CHECK(std::abs(out[1] - lp.values[1][2]) < 1e-14);
    CHECK_THROWS_AS(basis.evaluate(std::vector<double>{0.4, 0.5}, out), DomainError);
}
