#include "igof/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "igof/errors.hpp"

namespace igof::io {

namespace {

std::vector<std::string> split_record(const std::string& line, std::size_t lineno,
                                      const std::string& source) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (quoted) {
        throw ParseError(source + ":" + std::to_string(lineno) + ": unterminated quoted field");
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, std::size_t lineno, std::size_t col,
                    const std::string& source) {
    const std::string s = trim(raw);
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last) {
        throw ParseError(source + ":" + std::to_string(lineno) + ": column " + std::to_string(col + 1) +
                         ": '" + s + "' is not a number");
    }
    return v;
}

}  // namespace

Table read_csv(std::istream& in, const std::string& source) {
    Table t;
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> data;
    std::size_t rows = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto fields = split_record(line, lineno, source);
        if (!have_header) {
            for (auto& f : fields) {
                f = trim(f);
                if (f.empty()) throw ParseError(source + ":" + std::to_string(lineno) + ": empty column name in header");
            }
            t.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw ParseError(source + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(t.header.size()) + " fields, found " +
                             std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) data.push_back(parse_number(fields[c], lineno, c, source));
        ++rows;
    }
    if (!have_header) throw ParseError(source + ": file is empty (no header row)");
    t.values = PointSet(rows, t.header.size(), std::move(data));
    return t;
}

Table read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_csv(in, path);
}

PointSet select_columns(const Table& table, const std::vector<std::string>& names,
                        const std::string& source) {
    std::vector<std::size_t> pick;
    for (const auto& name : names) {
        const auto it = std::find(table.header.begin(), table.header.end(), name);
        if (it == table.header.end()) {
            throw ParseError(source + ":1: header is missing column '" + name + "'");
        }
        pick.push_back(static_cast<std::size_t>(it - table.header.begin()));
    }
    PointSet out(table.values.rows(), names.size());
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < pick.size(); ++j) out(i, j) = table.values(i, pick[j]);
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const PointSet& values) {
    for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << csv_field(header[j]);
    out << "\r\n";
    for (std::size_t i = 0; i < values.rows(); ++i) {
        for (std::size_t j = 0; j < values.cols(); ++j) out << (j ? "," : "") << format_double(values(i, j));
        out << "\r\n";
    }
}

// ----------------------------------------------------------------------------
// Model documents

namespace {

double json_number(const Json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    throw ParseError(what + ": expected a number");
}

Json number_json(double v) {
    if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
    return Json(v);
}

std::size_t resolve_coordinate(const Json& ref, const std::vector<std::string>& names,
                               std::size_t limit, const std::string& what) {
    if (ref.is_number_integer()) {
        const auto v = ref.get<long long>();
        if (v < 1 || static_cast<std::size_t>(v) > limit) {
            throw ParseError(what + ": coordinate number " + std::to_string(v) + " out of range");
        }
        return static_cast<std::size_t>(v - 1);
    }
    if (ref.is_string()) {
        const auto name = ref.get<std::string>();
        for (std::size_t d = 0; d < std::min(limit, names.size()); ++d) {
            if (names[d] == name) return d;
        }
        throw ParseError(what + ": '" + name + "' is not an earlier coordinate");
    }
    throw ParseError(what + ": coordinate reference must be a name or a 1-based number");
}

std::vector<std::pair<std::size_t, double>> parse_weights(const Json& obj,
                                                          const std::vector<std::string>& names,
                                                          std::size_t limit, const std::string& what) {
    std::vector<std::pair<std::size_t, double>> out;
    if (obj.is_null()) return out;
    if (!obj.is_object()) throw ParseError(what + ": weights must be an object keyed by parent name");
    for (const auto& [key, value] : obj.items()) {
        out.emplace_back(resolve_coordinate(Json(key), names, limit, what), json_number(value, what));
    }
    return out;
}

ParamExpr parse_param(const Json& v, const std::vector<std::string>& names, std::size_t position,
                      const std::string& what) {
    if (v.is_number() || v.is_string()) return ParamExpr::constant(json_number(v, what));
    if (!v.is_object() || v.size() != 1) {
        throw ParseError(what + ": parameter must be a number or an object with one of const, affine, "
                                "exp-affine, disc-chord");
    }
    const auto& [key, body] = *v.items().begin();
    if (key == "const") return ParamExpr::constant(json_number(body, what));
    if (key == "affine" || key == "exp-affine") {
        if (!body.is_object()) throw ParseError(what + ": " + key + " body must be an object");
        const double intercept = json_number(body.value("intercept", Json(0.0)), what);
        auto weights = parse_weights(body.value("weights", Json()), names, position, what);
        auto squares = parse_weights(body.value("squares", Json()), names, position, what);
        return key == "affine" ? ParamExpr::affine(intercept, std::move(weights), std::move(squares))
                               : ParamExpr::exp_affine(intercept, std::move(weights), std::move(squares));
    }
    if (key == "disc-chord") {
        if (!body.contains("parent")) throw ParseError(what + ": disc-chord needs a parent");
        return ParamExpr::disc_chord(json_number(body.at("center"), what), json_number(body.at("radius"), what),
                                     resolve_coordinate(body.at("parent"), names, position, what),
                                     json_number(body.at("parent_center"), what),
                                     body.value("side", 1));
    }
    throw ParseError(what + ": unknown parameter form '" + key + "'");
}

Json param_to_json(const ParamExpr& e, const std::vector<std::string>& names) {
    auto weights = [&](const std::vector<std::pair<std::size_t, double>>& w) {
        Json o = Json::object();
        for (const auto& [idx, val] : w) o[names[idx]] = val;
        return o;
    };
    switch (e.kind) {
        case ParamExpr::Kind::Const:
            return Json{{"const", number_json(e.intercept)}};
        case ParamExpr::Kind::Affine:
        case ParamExpr::Kind::ExpAffine: {
            Json body{{"intercept", e.intercept}, {"weights", weights(e.weights)}};
            if (!e.square_weights.empty()) body["squares"] = weights(e.square_weights);
            return Json{{e.kind == ParamExpr::Kind::Affine ? "affine" : "exp-affine", body}};
        }
        case ParamExpr::Kind::DiscChord:
            return Json{{"disc-chord",
                         {{"center", e.intercept},
                          {"radius", e.radius},
                          {"parent", names[e.parent]},
                          {"parent_center", e.parent_center},
                          {"side", e.side}}}};
    }
    return Json();
}

std::vector<double> number_list(const Json& v, const std::string& what) {
    if (!v.is_array()) throw ParseError(what + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) out.push_back(json_number(x, what));
    return out;
}

}  // namespace

ModelSpec model_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("model: document must be a JSON object");
    const std::string kind = doc.value("kind", std::string("chain"));
    ModelSpec model;
    if (kind == "mixture") {
        if (!doc.contains("components") || !doc["components"].is_array()) {
            throw ParseError("model: mixture needs a components array");
        }
        std::vector<std::pair<double, ModelSpec>> comps;
        for (const auto& c : doc["components"]) {
            comps.emplace_back(json_number(c.at("weight"), "mixture weight"), model_from_json(c.at("model")));
        }
        model = ModelSpec::mixture(std::move(comps));
    } else if (kind == "tilted") {
        std::vector<ModelSpec::TiltTerm> terms;
        for (const auto& t : doc.at("terms")) {
            terms.push_back({MultiIndex{t.at("index").get<std::vector<int>>()},
                             json_number(t.at("coefficient"), "tilt coefficient")});
        }
        model = ModelSpec::tilted(model_from_json(doc.at("base")), std::move(terms));
    } else if (kind == "chain") {
        if (!doc.contains("coordinates") || !doc["coordinates"].is_array() || doc["coordinates"].empty()) {
            throw ParseError("model: 'coordinates' must be a nonempty array");
        }
        std::vector<std::string> names;
        std::vector<ConditionalLaw> coords;
        std::size_t position = 0;
        for (const auto& c : doc["coordinates"]) {
            const std::string name = c.value("name", "x" + std::to_string(position + 1));
            const std::string what = "model coordinate '" + name + "'";
            if (!c.contains("family") || !c["family"].is_string()) throw ParseError(what + ": missing family");
            const Family family = family_from_name(c["family"].get<std::string>());
            std::vector<std::size_t> parents;
            if (c.contains("parents")) {
                for (const auto& p : c["parents"]) parents.push_back(resolve_coordinate(p, names, position, what));
            }
            std::map<std::string, ParamExpr> params;
            if (c.contains("params")) {
                if (!c["params"].is_object()) throw ParseError(what + ": params must be an object");
                for (const auto& [key, value] : c["params"].items()) {
                    params.emplace(key, parse_param(value, names, position, what + " parameter '" + key + "'"));
                }
            }
            ConditionalLaw law(name, family, std::move(params), std::move(parents));
            if (c.contains("table")) {
                const auto& t = c["table"];
                if (family == Family::DiscretePmf) {
                    law.with_table(number_list(t.at("support"), what), number_list(t.at("pmf"), what));
                } else {
                    law.with_table(number_list(t.at("x"), what), number_list(t.at("cdf"), what));
                }
            }
            if (c.contains("support") && !c["support"].is_null()) {
                const auto s = number_list(c["support"], what + " support");
                if (s.size() != 2) throw ParseError(what + ": support must be [lower, upper]");
                law.with_declared_support(std::isnan(s[0]) ? -std::numeric_limits<double>::infinity() : s[0],
                                          std::isnan(s[1]) ? std::numeric_limits<double>::infinity() : s[1]);
            }
            names.push_back(name);
            coords.push_back(std::move(law));
            ++position;
        }
        model = ModelSpec::chain(std::move(coords));
    } else {
        throw ParseError("model: unknown kind '" + kind + "'");
    }
    if (doc.contains("dimension") && doc["dimension"].get<std::size_t>() != model.dimension()) {
        throw ParseError("model: declared dimension " + doc["dimension"].dump() + " does not match " +
                         std::to_string(model.dimension()) + " coordinates");
    }
    return model;
}

Json model_to_json(const ModelSpec& model) {
    Json doc;
    switch (model.kind()) {
        case ModelSpec::Kind::Chain: {
            doc["kind"] = "chain";
            doc["dimension"] = model.dimension();
            const auto names = model.names();
            Json coords = Json::array();
            for (const auto& law : model.coordinates()) {
                Json c;
                c["name"] = law.name();
                c["family"] = family_name(law.family());
                Json parents = Json::array();
                for (std::size_t p : law.parents()) parents.push_back(names[p]);
                c["parents"] = parents;
                Json params = Json::object();
                for (const auto& [key, expr] : law.params()) params[key] = param_to_json(expr, names);
                c["params"] = params;
                if (law.family() == Family::DiscretePmf) {
                    c["table"] = {{"support", law.table_x()}, {"pmf", law.table_y()}};
                } else if (law.family() == Family::NumericGrid) {
                    c["table"] = {{"x", law.table_x()}, {"cdf", law.table_y()}};
                }
                if (const auto& s = law.declared_support()) {
                    c["support"] = {number_json(s->first), number_json(s->second)};
                }
                coords.push_back(c);
            }
            doc["coordinates"] = coords;
            break;
        }
        case ModelSpec::Kind::Mixture: {
            doc["kind"] = "mixture";
            doc["dimension"] = model.dimension();
            Json comps = Json::array();
            for (const auto& [w, m] : model.components()) comps.push_back({{"weight", w}, {"model", model_to_json(m)}});
            doc["components"] = comps;
            break;
        }
        case ModelSpec::Kind::Tilted: {
            doc["kind"] = "tilted";
            doc["dimension"] = model.dimension();
            doc["base"] = model_to_json(model.base());
            Json terms = Json::array();
            for (const auto& t : model.tilt_terms()) terms.push_back({{"index", t.index.j}, {"coefficient", t.coefficient}});
            doc["terms"] = terms;
            break;
        }
    }
    return doc;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ModelSpec read_model_file(const std::string& path) {
    const std::string text = read_text_file(path);
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": invalid JSON: " + e.what());
    }
    ModelSpec model;
    try {
        model = model_from_json(doc);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    model.set_fingerprint("sha256:" + sha256_hex(text));
    return model;
}

// ----------------------------------------------------------------------------
// Reports

namespace {

Json index_list(const CoefficientSet& coeffs, const std::vector<std::size_t>& positions) {
    Json out = Json::array();
    for (std::size_t k : positions) out.push_back(coeffs.indices[k].j);
    return out;
}

Json p_number(double p) { return p > 0.0 ? Json(p) : Json(0.0); }

}  // namespace

Json coefficients_to_json(const CoefficientSet& coeffs, const SelectionResult* selection) {
    Json doc;
    doc["degrees"] = coeffs.config.degrees();
    doc["n"] = coeffs.n;
    doc["index_order"] = "lexicographic";
    Json idx = Json::array();
    for (const auto& k : coeffs.indices) idx.push_back(k.j);
    doc["indices"] = idx;
    doc["theta"] = coeffs.theta;
    if (coeffs.sigma) {
        const std::size_t M = coeffs.size();
        std::vector<double> lower;
        lower.reserve(M * (M + 1) / 2);
        for (std::size_t a = 0; a < M; ++a) {
            for (std::size_t b = 0; b <= a; ++b) lower.push_back((*coeffs.sigma)[a * M + b]);
        }
        doc["sigma_lower"] = lower;
    }
    if (selection) {
        doc["selection"] = {{"criterion", criterion_name(selection->criterion)},
                            {"k_star", selection->k_star},
                            {"active", index_list(coeffs, selection->active)},
                            {"criterion_path", selection->path}};
    }
    return doc;
}

CoefficientSet coefficients_from_json(const Json& doc) {
    try {
        CoefficientSet c;
        c.config = BasisConfig(doc.at("degrees").get<std::vector<int>>());
        c.indices = enumerate_K(c.config);
        c.n = doc.at("n").get<std::size_t>();
        c.theta = doc.at("theta").get<std::vector<double>>();
        if (c.theta.size() != c.indices.size()) throw ParseError("coefficients: theta length does not match degrees");
        if (doc.contains("indices")) {
            const auto idx = doc["indices"].get<std::vector<std::vector<int>>>();
            for (std::size_t k = 0; k < idx.size() && k < c.indices.size(); ++k) {
                if (idx[k] != c.indices[k].j) throw ParseError("coefficients: index order is not lexicographic");
            }
        }
        if (doc.contains("sigma_lower")) {
            const auto lower = doc["sigma_lower"].get<std::vector<double>>();
            const std::size_t M = c.size();
            if (lower.size() != M * (M + 1) / 2) throw ParseError("coefficients: sigma_lower has the wrong length");
            std::vector<double> s(M * M);
            std::size_t pos = 0;
            for (std::size_t a = 0; a < M; ++a) {
                for (std::size_t b = 0; b <= a; ++b) s[a * M + b] = s[b * M + a] = lower[pos++];
            }
            c.sigma = std::move(s);
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("coefficients: ") + e.what());
    }
}

Json report_to_json(const DevianceReport& report, const CoefficientSet& coeffs) {
    Json doc;
    doc["statistic"] = report.statistic;
    doc["df"] = report.df;
    doc["p_value"] = p_number(report.p_value);
    doc["log10_p_value"] = report.log10_p_value;
    doc["adjusted"] = report.adjusted;
    doc["K_star"] = report.k_star;
    doc["M"] = report.M;
    doc["n"] = coeffs.n;
    doc["degrees"] = coeffs.config.degrees();
    doc["active"] = index_list(coeffs, report.active);
    Json theta = Json::array();
    for (std::size_t k : report.active) theta.push_back(coeffs.theta[k]);
    doc["active_theta"] = theta;
    return doc;
}

Json diagnostic_to_json(const std::vector<DiagnosticRow>& rows, const std::vector<std::string>& names) {
    Json out = Json::array();
    for (const auto& r : rows) {
        Json subset = Json::array();
        for (std::size_t d : r.subset) subset.push_back(d + 1);
        out.push_back({{"subset", subset},
                       {"label", r.label(names)},
                       {"df", r.M_q},
                       {"statistic", r.statistic},
                       {"p_value", p_number(r.p_value)},
                       {"log10_p_value", r.log10_p_value}});
    }
    return out;
}

void write_diagnostic_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows,
                          const std::vector<std::string>& names) {
    out << "subset,df,statistic,p_value,log10_p_value\r\n";
    for (const auto& r : rows) {
        out << csv_field(r.label(names)) << ',' << r.M_q << ',' << format_double(r.statistic) << ','
            << format_double(r.p_value) << ',' << format_double(r.log10_p_value) << "\r\n";
    }
}

Json lkc_to_json(const LKCEstimate& lkc) {
    return {{"L1", lkc.L1},
            {"L2", lkc.L2},
            {"se_L1", lkc.se_L1},
            {"se_L2", lkc.se_L2},
            {"thresholds", lkc.thresholds},
            {"mean_ec", lkc.mean_ec},
            {"ec_se", lkc.ec_se},
            {"residual_norm", lkc.residual_norm},
            {"B", lkc.B},
            {"form", ec_form_name(lkc.form)}};
}

// ----------------------------------------------------------------------------
// SVG

namespace {

std::string color_for(double d, double span) {
    // diverging map: blue below 1, white at 1, red above
    double t = std::clamp((d - 1.0) / span, -1.0, 1.0);
    int r = 255, g = 255, b = 255;
    if (t > 0) {
        g = b = static_cast<int>(std::lround(255 * (1.0 - t)));
    } else {
        r = g = static_cast<int>(std::lround(255 * (1.0 + t)));
    }
    std::ostringstream s;
    s << '#' << std::hex << std::setfill('0') << std::setw(2) << r << std::setw(2) << g << std::setw(2) << b;
    return s.str();
}

}  // namespace

void write_band_svg(std::ostream& out, const FieldGrid& grid, const std::string& title) {
    if (grid.u.cols() != 2) throw UnsupportedError("svg output needs a two-dimensional grid");
    const std::size_t r = grid.resolution;
    const double size = 480.0, margin = 40.0;
    const double cell = size / static_cast<double>(r);
    double span = 0.0;
    for (double d : grid.d_hat) span = std::max(span, std::abs(d - 1.0));
    if (span == 0.0) span = 1.0;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
        << size + 2 * margin << "\" viewBox=\"0 0 " << size + 2 * margin << ' ' << size + 2 * margin << "\">\n";
    out << "<title>" << title << "</title>\n";
    out << "<g shape-rendering=\"crispEdges\">\n";
    auto x_of = [&](std::size_t i1) { return margin + static_cast<double>(i1) * cell; };
    auto y_of = [&](std::size_t i2) { return margin + size - static_cast<double>(i2 + 1) * cell; };
    for (std::size_t i1 = 0; i1 < r; ++i1) {
        for (std::size_t i2 = 0; i2 < r; ++i2) {
            const std::size_t k = i1 * r + i2;
            out << "<rect x=\"" << x_of(i1) << "\" y=\"" << y_of(i2) << "\" width=\"" << cell << "\" height=\""
                << cell << "\" fill=\"" << color_for(grid.d_hat[k], span) << "\"/>\n";
        }
    }
    out << "</g>\n";
    // band boundaries: edges between cells of different classification
    for (int cls : {1, -1}) {
        out << "<path fill=\"none\" stroke=\"" << (cls > 0 ? "#000000" : "#555555") << "\" stroke-width=\"1.5\""
            << (cls < 0 ? " stroke-dasharray=\"4 2\"" : "") << " d=\"";
        for (std::size_t i1 = 0; i1 < r; ++i1) {
            for (std::size_t i2 = 0; i2 < r; ++i2) {
                const bool in = grid.classification[i1 * r + i2] == cls;
                if (!in) continue;
                const double x0 = x_of(i1), y0 = y_of(i2);
                if (i1 == 0 || grid.classification[(i1 - 1) * r + i2] != cls) out << 'M' << x0 << ' ' << y0 << "v" << cell;
                if (i1 + 1 == r || grid.classification[(i1 + 1) * r + i2] != cls)
                    out << 'M' << x0 + cell << ' ' << y0 << "v" << cell;
                if (i2 == 0 || grid.classification[i1 * r + i2 - 1] != cls)
                    out << 'M' << x0 << ' ' << y0 + cell << "h" << cell;
                if (i2 + 1 == r || grid.classification[i1 * r + i2 + 1] != cls) out << 'M' << x0 << ' ' << y0 << "h" << cell;
            }
        }
        out << "\"/>\n";
    }
    out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
        << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    out << "<text x=\"" << margin + size / 2 << "\" y=\"" << size + 1.7 * margin
        << "\" text-anchor=\"middle\" font-size=\"14\">u1</text>\n";
    out << "<text x=\"" << 0.5 * margin << "\" y=\"" << margin + size / 2
        << "\" text-anchor=\"middle\" font-size=\"14\">u2</text>\n";
    out << "<text x=\"" << margin + size / 2 << "\" y=\"" << 0.6 * margin
        << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    out << "</svg>\n";
}

// ----------------------------------------------------------------------------
// Hashing

std::string sha256_hex(const std::string& bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr) throw Error("sha256: cannot allocate digest context");
    const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
                    EVP_DigestFinal_ex(ctx, digest.data(), &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw Error("sha256: digest failed");
    std::ostringstream s;
    s << std::hex << std::setfill('0');
    for (unsigned i = 0; i < len; ++i) s << std::setw(2) << static_cast<int>(digest[i]);
    return s.str();
}

std::string file_sha256(const std::string& path) { return sha256_hex(read_text_file(path)); }

}  // namespace igof::io
