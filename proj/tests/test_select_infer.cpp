#include <doctest.h>

#include <cmath>
#include <string>

#include "igof/errors.hpp"
#include "igof/harness.hpp"
#include "igof/infer.hpp"
#include "igof/numeric.hpp"
#include "igof/select.hpp"

using namespace igof;

namespace {

CoefficientSet make_set(std::vector<int> degrees, std::vector<double> theta, std::size_t n) {
    CoefficientSet c;
    c.config = BasisConfig(std::move(degrees));
    c.indices = enumerate_K(c.config);
    REQUIRE(theta.size() == c.indices.size());
    c.theta = std::move(theta);
    c.n = n;
    return c;
}

}  // namespace

TEST_CASE("criterion names") {
    CHECK(criterion_from_name("AIC") == Criterion::AIC);
    CHECK(criterion_from_name("bic") == Criterion::BIC);
    CHECK(criterion_from_name("None") == Criterion::None);
    CHECK(criterion_name(Criterion::BIC) == "bic");
    CHECK_THROWS_AS((void)criterion_from_name("hqic"), LookupError);
    CHECK(penalty_per_term(Criterion::AIC, 100) == doctest::Approx(0.02));
    CHECK(penalty_per_term(Criterion::BIC, 100) == doctest::Approx(std::log(100.0) / 100));
    CHECK(penalty_per_term(Criterion::None, 100) == 0.0);
}

TEST_CASE("ordered selection on a worked example") {
    // K for degrees (1, 1): (0,1), (1,0), (1,1)
    const auto c = make_set({1, 1}, {0.1, -0.3, 0.05}, 100);
    const auto aic = select(c, Criterion::AIC);
    CHECK(aic.order == std::vector<std::size_t>{1, 0, 2});
    REQUIRE(aic.path.size() == 4);
    CHECK(aic.path[0] == 0.0);
    CHECK(aic.path[1] == doctest::Approx(0.07));
    CHECK(aic.path[2] == doctest::Approx(0.06));
    CHECK(aic.path[3] == doctest::Approx(0.0425));
    CHECK(aic.k_star == 1);
    CHECK(aic.active == std::vector<std::size_t>{1});

    const auto lenient = select(make_set({1, 1}, {0.2, -0.3, 0.05}, 1000), Criterion::AIC);
    CHECK(lenient.k_star == 3);
    CHECK(lenient.active == std::vector<std::size_t>{1, 0, 2});
    CHECK(lenient.active_sorted() == std::vector<std::size_t>{0, 1, 2});

    const auto bic = select(make_set({1, 1}, {0.2, -0.3, 0.05}, 1000), Criterion::BIC);
    CHECK(bic.k_star == 2);

    const auto none = select(c, Criterion::None);
    CHECK(none.k_star == 3);
}

TEST_CASE("ties and empty selections") {
    const auto tied = select(make_set({1, 1}, {0.2, -0.2, 0.2}, 10), Criterion::AIC);
    CHECK(tied.order == std::vector<std::size_t>{0, 1, 2});
    const auto zero = select(make_set({1, 1}, {0.0, 0.0, 0.0}, 10), Criterion::AIC);
    CHECK(zero.k_star == 0);
    CHECK(zero.active.empty());
    // flat path: the smallest maximizer wins
    const auto flat = select(make_set({1, 1}, {0.5, 0.0, 0.0}, 10), Criterion::None);
    CHECK(flat.k_star == 3);
    const auto flat_aic = select(make_set({1, 1}, {0.5, 0.0, 0.0}, 1000000), Criterion::AIC);
    CHECK(flat_aic.k_star == 1);
    CoefficientSet empty = make_set({1, 1}, {0.0, 0.0, 0.0}, 0);
    CHECK_THROWS_AS((void)select(empty, Criterion::AIC), DomainError);
}

TEST_CASE("deviance statistic") {
    const auto c = make_set({1, 1}, {0.1, -0.3, 0.05}, 100);
    const auto plain = deviance_test(c);
    CHECK(plain.statistic == doctest::Approx(100 * (0.01 + 0.09 + 0.0025)));
    CHECK(plain.df == 3);
    CHECK_FALSE(plain.adjusted);
    CHECK(plain.k_star == 3);
    CHECK(plain.p_value == doctest::Approx(numeric::chi2_sf(10.25, 3)));
    CHECK(plain.log10_p_value == doctest::Approx(std::log10(plain.p_value)));

    const auto sel = select(c, Criterion::AIC);
    const auto adj = deviance_test(c, &sel);
    CHECK(adj.adjusted);
    CHECK(adj.statistic == doctest::Approx(9.0));
    CHECK(adj.df == 3);
    CHECK(adj.active == std::vector<std::size_t>{1});
    CHECK(adj.p_value == doctest::Approx(numeric::chi2_sf(9.0, 3)));

    const auto none = select(c, Criterion::None);
    CHECK_FALSE(deviance_test(c, &none).adjusted);
}

TEST_CASE("tiny p-values keep their magnitude on the log scale") {
    const auto c = make_set({1, 1}, {0.9, 0.0, 0.0}, 100000);
    const auto r = deviance_test(c);
    CHECK(r.p_value == 0.0);
    CHECK(r.log10_p_value < -17000);
    CHECK(std::isfinite(r.log10_p_value));
}

TEST_CASE("subspace membership") {
    CHECK(in_subspace(MultiIndex{{1, 0, 2}}, {0, 2}));
    CHECK_FALSE(in_subspace(MultiIndex{{1, 1, 0}}, {0, 2}));
    CHECK(in_subspace(MultiIndex{{0, 0, 3}}, {2}));
}

TEST_CASE("sub-vector diagnostics") {
    const auto model = catalog("example2-null");
    std::vector<double> theta(enumerate_K(BasisConfig(std::vector<int>(7, 1))).size(), 0.0);
    auto c = make_set(std::vector<int>(7, 1), theta, 400);
    c.theta[c.position(MultiIndex{{1, 0, 0, 0, 0, 0, 0}})] = 0.2;
    c.theta[c.position(MultiIndex{{1, 1, 0, 0, 0, 0, 0}})] = 0.1;
    c.theta[c.position(MultiIndex{{0, 0, 0, 0, 0, 0, 1}})] = 0.3;
    const auto none = select(c, Criterion::None);

    const auto row = diagnose(c, none, model, {4, 1, 0});
    CHECK(row.subset == std::vector<std::size_t>{0, 1, 4});
    CHECK(row.M_q == 7);
    CHECK(row.statistic == doctest::Approx(400 * (0.04 + 0.01)));
    CHECK(row.p_value == doctest::Approx(numeric::chi2_sf(20.0, 7)));
    CHECK(row.label() == "X1,X2,X5");
    CHECK(row.label(model.names()) == model.names()[0] + "," + model.names()[1] + "," + model.names()[4]);

    const auto last = diagnose(c, none, model, {6});
    CHECK(last.M_q == 1);
    CHECK(last.statistic == doctest::Approx(36.0));

    const auto sel = select(c, Criterion::BIC);
    CHECK(sel.k_star == 2);
    const auto picked = diagnose(c, sel, model, {0, 1, 4});
    CHECK(picked.statistic == doctest::Approx(16.0));
    CHECK(picked.M_q == 7);

    try {
        (void)diagnose(c, none, model, {5});
        FAIL("expected a marginality error");
    } catch (const MarginalityError& e) {
        CHECK(std::string(e.what()).find("missing parents 1,2,5") != std::string::npos);
    }
    CHECK_NOTHROW((void)diagnose_unchecked(c, none, {5}));
    CHECK_THROWS_AS((void)diagnose(c, none, model, {}), DomainError);
    CHECK_THROWS_AS((void)diagnose(c, none, model, {7}), DomainError);

    const auto table = diagnostic_table(c, none, model, {{0, 1, 4}, {2, 3}, {6}});
    REQUIRE(table.size() == 3);
    CHECK(table[1].statistic == 0.0);
    CHECK(table[1].p_value == 1.0);
    CHECK(table[2].statistic == doctest::Approx(36.0));
}

TEST_CASE("selected test is conservative under the null") {
    const std::size_t reps = 300, n = 300;
    int rejections = 0;
    for (std::size_t b = 0; b < reps; ++b) {
        Rng rng(RngSeed{77, 0}.substream(b));
        PointSet u(n, 2);
        for (std::size_t i = 0; i < n; ++i) {
            u(i, 0) = rng.uniform();
            u(i, 1) = rng.uniform();
        }
        const auto c = fit(u, BasisConfig({3, 3}));
        const auto sel = select(c, Criterion::AIC);
        if (deviance_test(c, &sel).p_value < 0.05) ++rejections;
    }
    CHECK(rejections <= 0.05 * reps + 2 * std::sqrt(0.05 * 0.95 * reps));
}
