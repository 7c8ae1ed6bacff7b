#include <doctest.h>

#include <cmath>
#include <sstream>

#include "igof/errors.hpp"
#include "igof/io.hpp"

using namespace igof;
using io::Json;

TEST_CASE("csv parsing") {
    std::istringstream in("\xEF\xBB\xBFx1, \"x,2\"\r\n1.5,2\r\n\r\n-3e-2,+4\n");
    const auto t = io::read_csv(in, "data.csv");
    CHECK(t.header == std::vector<std::string>{"x1", "x,2"});
    REQUIRE(t.values.rows() == 2);
    CHECK(t.values(0, 0) == 1.5);
    CHECK(t.values(1, 0) == -0.03);
    CHECK(t.values(1, 1) == 4.0);

    const auto picked = io::select_columns(t, {"x,2", "x1"});
    CHECK(picked(0, 0) == 2.0);
    CHECK(picked(0, 1) == 1.5);
    try {
        (void)io::select_columns(t, {"x3"}, "data.csv");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()) == "data.csv:1: header is missing column 'x3'");
    }
}

TEST_CASE("csv errors carry line numbers") {
    auto message = [](const std::string& text) {
        std::istringstream in(text);
        try {
            (void)io::read_csv(in, "f.csv");
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("a,b\n1,2\n3\n") == "f.csv:3: expected 2 fields, found 1");
    CHECK(message("a,b\n1,x\n") == "f.csv:2: column 2: 'x' is not a number");
    CHECK(message("a,\"b\n") == "f.csv:1: unterminated quoted field");
    CHECK(message("") == "f.csv: file is empty (no header row)");
    CHECK_THROWS_AS((void)io::read_csv_file("/nonexistent/file.csv"), ParseError);
}

TEST_CASE("csv output round trips exactly") {
    PointSet v(2, 2, {0.1, 1.0 / 3.0, -2.5e-300, 12345.678});
    std::ostringstream out;
    io::write_csv(out, {"a", "b\"c"}, v);
    CHECK(out.str().substr(0, 9) == "a,\"b\"\"c\"\r");
    std::istringstream in(out.str());
    const auto t = io::read_csv(in);
    CHECK(t.header[1] == "b\"c");
    CHECK(t.values.data() == v.data());
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(INFINITY) == "inf");
}

TEST_CASE("model documents") {
    const auto doc = Json::parse(R"({
      "kind": "chain",
      "coordinates": [
        {"name": "a", "family": "normal", "params": {"mean": 1, "sd": {"const": 2}}},
        {"name": "b", "family": "laplace", "parents": ["a"],
         "params": {"location": {"exp-affine": {"intercept": 0.5, "weights": {"a": 0.1}}}, "scale": 1}},
        {"name": "c", "family": "exponential", "parents": [2], "params": {"scale": {"affine": {"weights": {"b": 1}, "squares": {"b": 0.5}}}}},
        {"name": "d", "family": "discrete-pmf", "table": {"support": [0, 1, 2], "pmf": [0.2, 0.5, 0.3]}}
      ]
    })");
    const auto m = io::model_from_json(doc);
    REQUIRE(m.dimension() == 4);
    CHECK(m.names() == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(m.coordinates()[1].parents() == std::vector<std::size_t>{0});
    const std::vector<double> x{1.0, 2.0, 0.7, 1.0};
    const double loc = std::exp(0.5 + 0.1);
    CHECK(std::abs(m.coordinates()[1].cdf(loc, x) - 0.5) < 1e-14);
    const double scale = 2.0 + 0.5 * 4.0;
    CHECK(std::abs(m.coordinates()[2].cdf(0.7, x) - (1 - std::exp(-0.7 / scale))) < 1e-14);
    CHECK(std::abs(m.coordinates()[3].cdf(1.0, x) - 0.45) < 1e-14);

    const auto again = io::model_from_json(io::model_to_json(m));
    CHECK(io::model_to_json(again) == io::model_to_json(m));
    CHECK(again.density(x) == m.density(x));
}

TEST_CASE("catalog models survive serialization") {
    for (const auto& name : catalog_names()) {
        const auto m = catalog(name);
        const auto back = io::model_from_json(io::model_to_json(m));
        CAPTURE(name);
        CHECK(io::model_to_json(back) == io::model_to_json(m));
        const auto x = sample(m, 20, {1, 0});
        for (std::size_t i = 0; i < x.rows(); ++i) {
            CHECK(back.density(x.row(i)) == doctest::Approx(m.density(x.row(i))).epsilon(1e-12));
        }
    }
}

TEST_CASE("malformed model documents") {
    auto bad = [](const char* text) { return io::model_from_json(Json::parse(text)); };
    CHECK_THROWS_AS((void)bad(R"({"coordinates": []})"), ParseError);
    CHECK_THROWS_AS((void)bad(R"({"kind": "copula"})"), ParseError);
    CHECK_THROWS_AS((void)bad(R"({"coordinates": [{"name": "a"}]})"), ParseError);
    CHECK_THROWS_AS((void)bad(R"({"coordinates": [{"family": "gamma"}]})"), LookupError);
    CHECK_THROWS_AS((void)bad(R"({"coordinates": [{"family": "normal", "parents": ["z"], "params": {"mean": 0, "sd": 1}}]})"),
                    ParseError);
    CHECK_THROWS_AS((void)bad(R"({"coordinates": [{"family": "normal", "params": {"mean": {"cubic": 1}, "sd": 1}}]})"),
                    ParseError);
    CHECK_THROWS_AS((void)bad(R"({"dimension": 2, "coordinates": [{"family": "normal", "params": {"mean": 0, "sd": 1}}]})"),
                    ParseError);
    CHECK_THROWS_AS((void)io::read_model_file("/nonexistent/model.json"), ParseError);
}

TEST_CASE("coefficient documents") {
    PointSet u(3, 2, {0.1, 0.2, 0.5, 0.9, 0.7, 0.3});
    const auto c = fit(u, BasisConfig({2, 1}), {true, 1});
    const auto sel = select(c, Criterion::AIC);
    const auto doc = io::coefficients_to_json(c, &sel);
    CHECK(doc["index_order"] == "lexicographic");
    CHECK(doc["indices"][0] == Json::array({0, 1}));
    CHECK(doc["sigma_lower"].size() == 5 * 6 / 2);
    const auto back = io::coefficients_from_json(Json::parse(doc.dump()));
    CHECK(back.theta == c.theta);
    CHECK(back.n == 3);
    REQUIRE(back.sigma);
    CHECK(*back.sigma == *c.sigma);

    auto broken = doc;
    broken["theta"].erase(0);
    CHECK_THROWS_AS((void)io::coefficients_from_json(broken), ParseError);
    broken = doc;
    broken["indices"][0] = Json::array({1, 0});
    CHECK_THROWS_AS((void)io::coefficients_from_json(broken), ParseError);
}

TEST_CASE("report documents") {
    CoefficientSet c;
    c.config = BasisConfig({1, 1});
    c.indices = enumerate_K(c.config);
    c.theta = {0.1, -0.3, 0.05};
    c.n = 100;
    const auto sel = select(c, Criterion::AIC);
    const auto report = deviance_test(c, &sel);
    const auto doc = io::report_to_json(report, c);
    for (const char* key : {"statistic", "df", "p_value", "log10_p_value", "adjusted", "K_star", "M", "n",
                            "degrees", "active", "active_theta"}) {
        CAPTURE(key);
        CHECK(doc.contains(key));
    }
    CHECK(doc["active"] == Json::array({Json::array({1, 0})}));
    CHECK(doc["active_theta"] == Json::array({-0.3}));
    CHECK(doc["K_star"] == 1);

    const auto model = catalog("uniform-2d");
    const auto rows = diagnostic_table(c, sel, model, {{0}, {0, 1}});
    std::ostringstream csv;
    io::write_diagnostic_csv(csv, rows, model.names());
    CHECK(csv.str().rfind("subset,df,statistic,p_value,log10_p_value\r\n", 0) == 0);
    const auto jd = io::diagnostic_to_json(rows, model.names());
    CHECK(jd.dump().find("\"df\":1") != std::string::npos);
}

TEST_CASE("band picture") {
    CoefficientSet c;
    c.config = BasisConfig({1, 1});
    c.indices = enumerate_K(c.config);
    c.theta = {0.0, 0.4, 0.0};
    c.n = 5000;
    const auto grid = band_grid(ComparisonDensity(c), 3.0, 11);
    std::ostringstream out;
    io::write_band_svg(out, grid, "demo");
    const auto s = out.str();
    CHECK(s.rfind("<svg", 0) == 0);
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(s.find("demo") != std::string::npos);
}

TEST_CASE("hashing") {
    CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
