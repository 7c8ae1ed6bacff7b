#include <doctest.h>

#include <cmath>
#include <set>

#include "igof/errors.hpp"
#include "igof/numeric.hpp"
#include "igof/rng.hpp"

using namespace igof;
using namespace igof::numeric;
using doctest::Approx;

TEST_CASE("normal cdf") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK(std_normal_cdf(8.0) > 1.0 - 1e-14);
    CHECK(std_normal_cdf(8.0) <= 1.0);
    CHECK(std::abs(std_normal_cdf(1.959964) - 0.9750000009035577) < 1e-13);
    CHECK(std::abs(std_normal_cdf(-8.0) - 6.220960574271784e-16) < 1e-25);
    for (double x = -9.0; x <= 9.0; x += 0.37) CHECK(std::abs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0) < 1e-12);
}

TEST_CASE("normal cdf agrees with quadrature of the density") {
    const auto rule = gauss_legendre(64);
    const double integral = 0.5 + rule.integrate(std_normal_pdf, 0.0, 1.959964);
    CHECK(std::abs(integral - std_normal_cdf(1.959964)) < 1e-14);
}

TEST_CASE("normal quantile") {
    CHECK(std::abs(std_normal_quantile(0.975) - 1.9599639845400543) < 1e-13);
    CHECK(std::abs(std_normal_quantile(1e-10) + 6.361340902404057) < 1e-12);
    CHECK(std::abs(std_normal_quantile(0.9875) - 2.2414027276049455) < 1e-13);
    CHECK_THROWS_AS((void)std_normal_quantile(0.0), DomainError);
    CHECK_THROWS_AS((void)std_normal_quantile(1.0), DomainError);
}

TEST_CASE("chi-squared survival: reference values") {
    struct Ref {
        double x;
        unsigned df;
        double q;
        double logq;
    };
    // reference values from 30-digit arbitrary precision evaluation
    const Ref refs[] = {
        {3.841459, 1, 0.049999994653195766393, -2.9957323804900813832},
        {19, 19, 0.45683612559196238344, -0.78343053972186304933},
        {700, 3, 2.0991308534204088357e-151, -346.94882566236682238},
        {2000, 19, 0.0, -952.9648858472163378},  // underflows as a probability,
        {20000, 16383, 3.6374507759128875768e-78, -178.31035415352459859},
        {16383, 16383, 0.49853071045681780758, -0.69609008574697103409},
        {0.001, 5, 0.99999999831851228103, -1.6814877203843280192e-9},
        {150, 100, 0.00090393204235400908576, -7.0087563747849915567},
        {620, 3, 4.6509889140083586462e-134, -307.00932259453463031},
    };
    for (const auto& r : refs) {
        CAPTURE(r.x);
        CAPTURE(r.df);
        const double lq = chi2_logsf(r.x, r.df);
        CHECK(std::abs(lq - r.logq) <= 1e-10 * std::max(1.0, std::abs(r.logq)));
        if (r.q > 0.0) CHECK(std::abs(chi2_sf(r.x, r.df) - r.q) <= 1e-10 * r.q);
    }
    CHECK(std::abs(chi2_sf(0.5, 3) - 0.91889141165467585936) < 1e-12);
    CHECK(std::abs(chi2_sf(30.14, 19) - 0.050043527691035982) < 1e-12);
    CHECK(std::abs(chi2_sf(16000, 16383) - 0.98336820034614009408) < 1e-10);
    CHECK(std::abs(chi2_sf(50, 100) - 0.9999930466947523839) < 1e-12);
    CHECK(std::abs(chi2_sf(6, 19) - 0.997928455202865) < 1e-12);
}

TEST_CASE("chi-squared survival: edge cases and monotonicity") {
    CHECK(chi2_sf(0.0, 5) == 1.0);
    CHECK_THROWS_AS((void)chi2_sf(1.0, 0), DomainError);
    CHECK_THROWS_AS((void)chi2_sf(-1.0, 3), DomainError);
    const double v = chi2_sf(19, 19);
    CHECK(v > 0.4);
    CHECK(v < 0.5);
    for (unsigned df : {1u, 3u, 19u, 255u}) {
        double prev = 1.0;
        for (double x = 0.5; x < 400; x *= 1.3) {
            const double q = chi2_sf(x, df);
            CHECK(q <= prev);
            if (prev < 1.0) CHECK(q < prev);
            prev = q;
        }
    }
    for (double x : {0.5, 5.0, 50.0}) CHECK(chi2_sf(x, 4) > chi2_sf(x, 3));
}

TEST_CASE("chi-squared density integrates to the survival function") {
    // P(chi2_19 > 19) by brute-force quadrature of the density on [19, 200]
    const double k = 9.5;
    auto density = [&](double x) { return std::exp((k - 1) * std::log(x) - x / 2 - k * std::log(2.0) - std::lgamma(k)); };
    const auto rule = gauss_legendre(200);
    const double tail = rule.integrate(density, 19.0, 200.0);
    CHECK(std::abs(tail - chi2_sf(19, 19)) < 1e-12);
}

TEST_CASE("gauss-legendre rules") {
    const auto one = gauss_legendre(1);
    CHECK(one.nodes[0] == Approx(0.5));
    CHECK(one.weights[0] == Approx(1.0));
    const auto two = gauss_legendre(2);
    CHECK(std::abs(two.nodes[0] - (0.5 - 0.5 / std::sqrt(3.0))) < 1e-15);
    CHECK(std::abs(two.nodes[1] - (0.5 + 0.5 / std::sqrt(3.0))) < 1e-15);
    CHECK(std::abs(two.weights[0] - 0.5) < 1e-15);
    const auto r16 = gauss_legendre(16);
    CHECK(std::abs(r16.integrate([](double u) { return std::pow(u, 4); }) - 0.2) < 1e-14);
    const auto r32 = gauss_legendre(32);
    double wsum = 0.0;
    for (double w : r32.weights) wsum += w;
    CHECK(std::abs(wsum - 1.0) < 1e-12);
    for (std::size_t i = 1; i < r32.size(); ++i) CHECK(r32.nodes[i] > r32.nodes[i - 1]);
    for (int j = 0; j <= 16; ++j) {
        CHECK(std::abs(r32.integrate([j](double u) { return std::pow(u, j); }) - 1.0 / (j + 1)) < 1e-13);
    }
    CHECK_THROWS_AS((void)gauss_legendre(0), DomainError);
    CHECK_THROWS_AS((void)gauss_legendre(513), DomainError);
    CHECK(gauss_legendre(512).size() == 512);
}

TEST_CASE("root finding") {
    CHECK(std::abs(find_root([](double x) { return x - 2; }, 0, 5, 1e-10) - 2.0) < 1e-10);
    CHECK(std::abs(find_root([](double x) { return x * x - 2; }, 0, 2, 1e-12) - std::sqrt(2.0)) < 1e-8);
    CHECK(std::abs(find_root([](double x) { return std::pow(x, 3) - 3 * x * x + 4 * x - 12; }, 0, 10, 1e-12) - 3.0) <
          1e-9);
    CHECK_THROWS_AS((void)find_root([](double x) { return x * x + 1; }, -1, 1, 1e-8), BracketError);
}

TEST_CASE("incomplete beta and student t") {
    CHECK(std::abs(student_t_cdf(1.3, 5) - 0.8748496829146615) < 1e-12);
    CHECK(std::abs(incomplete_beta(2, 3, 0.4) - 0.5248) < 1e-12);
}

TEST_CASE("rng streams") {
    Rng a({42, 0}), b({42, 0}), c({42, 1});
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        differs |= x != c.uniform();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
    CHECK(differs);
    const RngSeed s{7, 0};
    std::set<std::uint64_t> streams;
    for (std::uint64_t i = 0; i < 1000; ++i) streams.insert(s.substream(i).stream);
    CHECK(streams.size() == 1000);

    // moments of the normal generator
    Rng r({1, 2});
    double m = 0, v = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        m += z;
        v += z * z;
    }
    m /= n;
    v = v / n - m * m;
    CHECK(std::abs(m) < 4.0 / std::sqrt(n));
    CHECK(std::abs(v - 1.0) < 4.0 * std::sqrt(2.0 / n));
}
