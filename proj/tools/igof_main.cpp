#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "igof/bands.hpp"
#include "igof/errors.hpp"
#include "igof/estimate.hpp"
#include "igof/harness.hpp"
#include "igof/infer.hpp"
#include "igof/io.hpp"
#include "igof/parallel.hpp"
#include "igof/select.hpp"
#include "igof/version.hpp"

namespace fs = std::filesystem;
using igof::io::Json;

namespace {

enum Exit { kOk = 0, kInput = 2, kModel = 3, kNumeric = 4 };

struct Common {
    std::string model;
    std::string data;
    bool pre_transformed = false;
    std::string out;
    std::string manifest;
    std::uint64_t seed = 20240101;
    unsigned threads = 0;
};

struct Context {
    std::string command;
    std::vector<std::string> argv;
    Json config = Json::object();
    Json inputs = Json::array();
    Json outputs = Json::array();
    Json results = Json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

igof::ModelSpec load_model(const std::string& ref, Context& ctx) {
    if (fs::exists(ref)) {
        auto model = igof::io::read_model_file(ref);
        ctx.inputs.push_back({{"role", "model"}, {"path", ref}, {"sha256", igof::io::file_sha256(ref)}});
        return model;
    }
    const auto names = igof::catalog_names();
    if (std::find(names.begin(), names.end(), ref) != names.end()) {
        ctx.inputs.push_back({{"role", "model"}, {"catalog", ref}});
        return igof::catalog(ref);
    }
    throw igof::ParseError("model '" + ref + "' is neither a readable file nor a catalog name");
}

std::vector<int> parse_degrees(const std::string& spec, std::size_t p) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw igof::ParseError("--degrees: '" + item + "' is not an integer");
        }
        if (out.back() < 1 || out.back() > igof::kMaxDegree) {
            throw igof::ParseError("--degrees: " + item + " outside 1.." + std::to_string(igof::kMaxDegree));
        }
    }
    if (out.size() == 1 && p > 1) out.assign(p, out.front());
    if (out.size() != p) {
        throw igof::ParseError("--degrees lists " + std::to_string(out.size()) + " values for " +
                               std::to_string(p) + " coordinates");
    }
    return out;
}

std::vector<std::vector<std::size_t>> parse_subsets(const std::string& spec, std::size_t p) {
    std::vector<std::vector<std::size_t>> out;
    std::stringstream groups(spec);
    std::string group;
    while (std::getline(groups, group, '|')) {
        std::vector<std::size_t> s;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            long v = 0;
            try {
                std::size_t used = 0;
                v = std::stol(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw igof::ParseError("--subsets: '" + item + "' is not a coordinate number");
            }
            if (v < 1 || static_cast<std::size_t>(v) > p) {
                throw igof::ParseError("--subsets: coordinate " + std::to_string(v) + " outside 1.." + std::to_string(p));
            }
            s.push_back(static_cast<std::size_t>(v - 1));
        }
        if (s.empty()) throw igof::ParseError("--subsets: empty group");
        out.push_back(std::move(s));
    }
    if (out.empty()) throw igof::ParseError("--subsets: no groups given");
    return out;
}

struct Loaded {
    std::optional<igof::ModelSpec> model;
    igof::USample u;
    std::vector<std::string> names;
};

Loaded load_sample(const Common& c, Context& ctx) {
    Loaded l;
    if (c.data.empty()) throw igof::ParseError("--data is required");
    const auto table = igof::io::read_csv_file(c.data);
    ctx.inputs.push_back({{"role", "data"}, {"path", c.data}, {"sha256", igof::io::file_sha256(c.data)}});
    if (c.pre_transformed) {
        l.names = table.header;
        l.u = igof::USample{table.values, "pre-transformed"};
        l.u.validate();
        if (!c.model.empty()) l.model = load_model(c.model, ctx);
        if (l.model && l.model->dimension() != table.values.cols()) {
            throw igof::ParseError("u-sample has " + std::to_string(table.values.cols()) +
                                   " columns, model has dimension " + std::to_string(l.model->dimension()));
        }
    } else {
        if (c.model.empty()) throw igof::ParseError("--model is required unless --pre-transformed is given");
        l.model = load_model(c.model, ctx);
        l.names = l.model->names();
        const auto x = igof::io::select_columns(table, l.names, c.data);
        l.u = igof::rosenblatt(*l.model, x);
    }
    if (l.u.points.rows() == 0) throw igof::DomainError("data file has no observations");
    return l;
}

void emit(const std::string& path, const std::string& content, Context& ctx, const std::string& role) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw igof::ParseError("cannot write '" + path + "'");
    out << content;
    ctx.outputs.push_back({{"role", role}, {"path", path}, {"sha256", igof::io::sha256_hex(content)}});
}

void write_manifest(const Common& c, Context& ctx) {
    std::string path = c.manifest;
    if (path.empty() && !c.out.empty() && c.out != "-") path = c.out + ".manifest.json";
    if (path.empty()) return;
    Json m;
    m["command"] = ctx.command;
    m["argv"] = ctx.argv;
    m["config"] = ctx.config;
    m["seed"] = c.seed;
    m["versions"] = {{"igof", igof::kVersion}, {"compiler", __VERSION__}, {"cxx_standard", __cplusplus}};
    m["inputs"] = ctx.inputs;
    m["outputs"] = ctx.outputs;
    m["results"] = ctx.results;
    m["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
    std::ofstream out(path);
    if (!out) throw igof::ParseError("cannot write manifest '" + path + "'");
    out << m.dump(2) << '\n';
}

std::string csv_of(const std::vector<std::string>& header, const igof::PointSet& values) {
    std::ostringstream s;
    igof::io::write_csv(s, header, values);
    return s.str();
}

// ---------------------------------------------------------------------------

void cmd_transform(const Common& c, Context& ctx) {
    if (c.model.empty()) throw igof::ParseError("--model is required");
    const auto model = load_model(c.model, ctx);
    if (model.kind() != igof::ModelSpec::Kind::Chain) {
        throw igof::UnsupportedError("transform needs a conditional-chain model");
    }
    const auto table = igof::io::read_csv_file(c.data);
    ctx.inputs.push_back({{"role", "data"}, {"path", c.data}, {"sha256", igof::io::file_sha256(c.data)}});
    const auto x = igof::io::select_columns(table, model.names(), c.data);
    const auto u = igof::rosenblatt(model, x);
    std::vector<std::string> header;
    for (const auto& n : model.names()) header.push_back("u_" + n);
    emit(c.out, csv_of(header, u.points), ctx, "u-sample");
    ctx.results["rows"] = u.points.rows();
}

struct FitArgs {
    std::string degrees = "3";
    std::string criterion = "aic";
    bool no_selection = false;
    std::string coefficients_out;
};

struct Fitted {
    Loaded data;
    igof::CoefficientSet coeffs;
    igof::SelectionResult selection;
};

Fitted fit_and_select(const Common& c, const FitArgs& f, Context& ctx) {
    Fitted out{load_sample(c, ctx), {}, {}};
    const std::size_t p = out.data.u.points.cols();
    const auto degrees = parse_degrees(f.degrees, p);
    igof::BasisConfig config = out.data.model ? igof::basis_for(*out.data.model, degrees) : igof::BasisConfig(degrees);
    if (out.data.u.points.rows() < 2) throw igof::DomainError("at least two observations are required");
    out.coeffs = igof::fit(out.data.u, config, {false, igof::resolve_threads(c.threads)});
    const auto criterion = f.no_selection ? igof::Criterion::None : igof::criterion_from_name(f.criterion);
    out.selection = igof::select(out.coeffs, criterion);
    ctx.config["degrees"] = degrees;
    ctx.config["criterion"] = igof::criterion_name(criterion);
    ctx.config["n"] = out.coeffs.n;
    if (!f.coefficients_out.empty()) {
        emit(f.coefficients_out, igof::io::coefficients_to_json(out.coeffs, &out.selection).dump(2) + "\n", ctx,
             "coefficients");
    }
    return out;
}

void cmd_test(const Common& c, const FitArgs& f, Context& ctx) {
    const auto fitted = fit_and_select(c, f, ctx);
    const auto report = igof::deviance_test(fitted.coeffs, &fitted.selection);
    Json doc = igof::io::report_to_json(report, fitted.coeffs);
    doc["criterion"] = igof::criterion_name(fitted.selection.criterion);
    emit(c.out, doc.dump(2) + "\n", ctx, "report");
    ctx.results = doc;
}

void cmd_diagnose(const Common& c, const FitArgs& f, const std::string& subsets, const std::string& json_out,
                  Context& ctx) {
    const auto fitted = fit_and_select(c, f, ctx);
    if (!fitted.data.model) throw igof::ParseError("diagnose needs --model to check parent closure");
    const auto groups = parse_subsets(subsets, fitted.coeffs.config.dimension());
    ctx.config["subsets"] = subsets;
    const auto rows = igof::diagnostic_table(fitted.coeffs, fitted.selection, *fitted.data.model, groups);
    std::ostringstream csv;
    igof::io::write_diagnostic_csv(csv, rows, fitted.data.names);
    emit(c.out, csv.str(), ctx, "diagnostic-table");
    const Json doc = {{"criterion", igof::criterion_name(fitted.selection.criterion)},
                      {"n", fitted.coeffs.n},
                      {"degrees", fitted.coeffs.config.degrees()},
                      {"K_star", fitted.selection.k_star},
                      {"rows", igof::io::diagnostic_to_json(rows, fitted.data.names)}};
    if (!json_out.empty()) emit(json_out, doc.dump(2) + "\n", ctx, "diagnostic-json");
    ctx.results = doc;
}

struct BandArgs {
    double alpha = 0.05;
    std::string method = "lkc";
    std::size_t grid = 0;
    std::size_t B = 0;
    std::string svg;
    std::string ec_form = "gkf";
    std::vector<double> thresholds{0.5, 1.0, 1.5, 2.0};
};

void cmd_bands(const Common& c, const FitArgs& f, const BandArgs& b, Context& ctx) {
    auto fitted = fit_and_select(c, f, ctx);
    const std::size_t p = fitted.coeffs.config.dimension();
    if (p > 3) {
        throw igof::UnsupportedError("bands are available for p <= 3 only; use 'igof diagnose' for p = " +
                                     std::to_string(p));
    }
    if ((b.method == "lkc" || !b.svg.empty()) && p != 2) {
        throw igof::UnsupportedError("--method lkc and --svg require p = 2");
    }
    if (!(b.alpha > 0.0 && b.alpha < 0.5)) throw igof::ParseError("--alpha must lie in (0, 0.5)");
    const std::size_t grid = b.grid ? b.grid : (p == 3 ? 51 : 101);
    const igof::RngSeed seed{c.seed, 0};
    double cval = 0.0;
    if (b.method == "lkc") {
        igof::LkcOptions o;
        o.B = b.B ? b.B : 2000;
        o.thresholds = b.thresholds;
        o.resolution = grid;
        o.form = igof::ec_form_from_name(b.ec_form);
        o.seed = seed;
        o.threads = c.threads;
        const auto lkc = igof::estimate_lkc(fitted.coeffs.config, o);
        cval = igof::solve_c_alpha(lkc, b.alpha);
        ctx.results["lkc"] = igof::io::lkc_to_json(lkc);
    } else if (b.method == "mc" || b.method == "mc-reselect") {
        igof::McOptions o;
        o.n = fitted.coeffs.n;
        o.alpha = b.alpha;
        o.B = b.B ? b.B : 10000;
        o.resolution = grid;
        o.redo_selection = b.method == "mc-reselect";
        o.criterion = fitted.selection.criterion == igof::Criterion::None ? igof::Criterion::AIC
                                                                           : fitted.selection.criterion;
        o.seed = seed;
        o.threads = c.threads;
        cval = igof::mc_sup_quantile(fitted.coeffs.config, o);
    } else {
        throw igof::ParseError("--method must be lkc, mc or mc-reselect");
    }
    ctx.config["alpha"] = b.alpha;
    ctx.config["method"] = b.method;
    ctx.config["grid"] = grid;
    ctx.results["c"] = cval;
    ctx.results["K_star"] = fitted.selection.k_star;

    const igof::ComparisonDensity cd(fitted.coeffs, fitted.selection.active);
    const auto fg = igof::band_grid(cd, cval, grid);
    std::vector<std::string> header;
    for (std::size_t d = 0; d < p; ++d) header.push_back("u" + std::to_string(d + 1));
    const bool with_x = fitted.data.model && fitted.data.model->kind() == igof::ModelSpec::Kind::Chain;
    if (with_x) {
        for (const auto& n : fitted.data.names) header.push_back(n);
    }
    header.insert(header.end(), {"d_hat", "se0", "class"});
    igof::PointSet table(fg.size(), header.size());
    std::vector<double> x(p);
    for (std::size_t i = 0; i < fg.size(); ++i) {
        std::size_t col = 0;
        for (std::size_t d = 0; d < p; ++d) table(i, col++) = fg.u(i, d);
        if (with_x) {
            // the cube boundary maps to infinity for unbounded laws
            bool finite = true;
            try {
                igof::inverse_rosenblatt(*fitted.data.model, fg.u.row(i), x);
            } catch (const igof::DomainError&) {
                finite = false;
            }
            for (std::size_t d = 0; d < p; ++d) table(i, col++) = finite ? x[d] : NAN;
        }
        table(i, col++) = fg.d_hat[i];
        table(i, col++) = fg.se0[i];
        table(i, col++) = fg.classification[i];
    }
    emit(c.out, csv_of(header, table), ctx, "band-grid");
    if (!b.svg.empty()) {
        std::ostringstream svg;
        std::ostringstream title;
        title << "d_hat with " << b.method << " band, c = " << std::setprecision(4) << cval;
        igof::io::write_band_svg(svg, fg, title.str());
        emit(b.svg, svg.str(), ctx, "svg");
    }
    std::size_t above = 0, below = 0;
    for (int v : fg.classification) {
        above += v > 0;
        below += v < 0;
    }
    ctx.results["points_above"] = above;
    ctx.results["points_below"] = below;
    std::cerr << "c = " << cval << "  (" << above << " points above, " << below << " below the band)\n";
}

struct SimArgs {
    std::string study;
    std::string truth;
    std::string null_model;
    std::string n = "2000";
    std::size_t B = 500;
    double alpha = 0.05;
    std::string degrees = "3";
    std::string criterion = "aic";
    std::string subsets;
};

void cmd_simulate(const Common& c, const SimArgs& s, Context& ctx) {
    if (s.study != "type1" && s.study != "power" && s.study != "diagnostic") {
        throw igof::ParseError("unknown study '" + s.study + "' (expected type1, power or diagnostic)");
    }
    if (s.null_model.empty()) throw igof::ParseError("--null is required");
    const auto null_model = load_model(s.null_model, ctx);
    igof::ModelSpec truth = null_model;
    if (s.study == "type1") {
        if (!s.truth.empty()) truth = load_model(s.truth, ctx);
    } else {
        if (s.truth.empty()) throw igof::ParseError("--truth is required for the " + s.study + " study");
        truth = load_model(s.truth, ctx);
    }
    std::vector<std::size_t> ns;
    {
        std::stringstream ss(s.n);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                ns.push_back(static_cast<std::size_t>(std::stoul(item)));
            } catch (const std::exception&) {
                throw igof::ParseError("-n: '" + item + "' is not a sample size");
            }
        }
    }
    igof::StudyConfig cfg;
    cfg.truth = truth;
    cfg.null = null_model;
    cfg.B = s.B;
    cfg.alpha = s.alpha;
    const auto degrees = parse_degrees(s.degrees, null_model.dimension());
    cfg.degrees = igof::basis_for(null_model, degrees);
    cfg.criterion = igof::criterion_from_name(s.criterion);
    cfg.seed = {c.seed, 0};
    cfg.threads = c.threads;
    ctx.config = {{"study", s.study},  {"B", s.B},           {"alpha", s.alpha},
                  {"degrees", degrees}, {"criterion", s.criterion}, {"n", ns}};

    std::ostringstream csv;
    Json rows = Json::array();
    if (s.study == "diagnostic") {
        if (s.subsets.empty()) throw igof::ParseError("--subsets is required for the diagnostic study");
        const auto groups = parse_subsets(s.subsets, null_model.dimension());
        csv << "n,subset,df,rate,se\r\n";
        const auto names = null_model.names();
        for (std::size_t n : ns) {
            cfg.n = n;
            const auto r = igof::diagnostic_study(cfg, groups);
            for (const auto& sr : r.subsets) {
                igof::DiagnosticRow label_row;
                label_row.subset = sr.subset;
                std::sort(label_row.subset.begin(), label_row.subset.end());
                const std::string label = label_row.label(names);
                csv << n << ',' << igof::io::csv_field(label) << ',' << sr.M_q << ','
                    << igof::io::format_double(sr.rejection_rate) << ',' << igof::io::format_double(sr.standard_error)
                    << "\r\n";
                rows.push_back({{"n", n}, {"subset", label}, {"df", sr.M_q}, {"rate", sr.rejection_rate},
                                {"se", sr.standard_error}});
            }
        }
    } else {
        csv << "n,rate,se\r\n";
        for (std::size_t n : ns) {
            cfg.n = n;
            const auto r = igof::type1_power_study(cfg);
            csv << n << ',' << igof::io::format_double(r.rejection_rate) << ','
                << igof::io::format_double(r.standard_error) << "\r\n";
            rows.push_back({{"n", n}, {"rate", r.rejection_rate}, {"se", r.standard_error}});
        }
    }
    emit(c.out, csv.str(), ctx, "study-table");
    ctx.results["rows"] = rows;
}

void cmd_fixture(const Common& c, std::size_t n, Context& ctx) {
    if (c.model.empty()) throw igof::ParseError("--model is required");
    const auto model = load_model(c.model, ctx);
    ctx.config["n"] = n;
    const auto x = igof::sample(model, n, {c.seed, 0});
    emit(c.out, csv_of(model.names(), x), ctx, "fixture");
}

void cmd_catalog(const std::string& name, Context& ctx) {
    if (name.empty()) {
        std::ostringstream s;
        for (const auto& n : igof::catalog_names()) s << n << '\n';
        std::cout << s.str();
        return;
    }
    (void)ctx;
    std::cout << igof::io::model_to_json(igof::catalog(name)).dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"igof: informative goodness-of-fit for multivariate models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(igof::kVersion));

    Common common;
    FitArgs fit_args;
    BandArgs band_args;
    SimArgs sim_args;
    std::string subsets, json_out, catalog_name;
    std::size_t fixture_n = 5000;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out,-o", common.out, "Output file (default: stdout)");
        sub->add_option("--manifest", common.manifest, "Run manifest path (default: <out>.manifest.json)");
        sub->add_option("--seed", common.seed, "Random seed");
        sub->add_option("--threads", common.threads, "Worker threads (default: IGOF_THREADS or all cores)");
    };
    auto add_data = [&](CLI::App* sub) {
        sub->add_option("--model,-m", common.model, "Model JSON file or catalog name");
        sub->add_option("--data,-d", common.data, "CSV data file")->required();
        sub->add_flag("--pre-transformed", common.pre_transformed, "Data are u-values in [0,1]^p");
    };
    auto add_fit = [&](CLI::App* sub) {
        sub->add_option("--degrees", fit_args.degrees, "Per-coordinate degrees, e.g. 4,3 (one value applies to all)");
        sub->add_option("--criterion", fit_args.criterion, "Selection criterion: aic or bic");
        sub->add_flag("--no-selection", fit_args.no_selection, "Use all M coefficients (unadjusted test)");
        sub->add_option("--coefficients", fit_args.coefficients_out, "Also write the coefficient set as JSON");
    };

    auto* transform = app.add_subcommand("transform", "Rosenblatt-transform data to the unit cube");
    transform->add_option("--model,-m", common.model, "Model JSON file or catalog name")->required();
    transform->add_option("--data,-d", common.data, "CSV data file")->required();
    add_common(transform);

    auto* test = app.add_subcommand("test", "Deviance goodness-of-fit test");
    add_data(test);
    add_fit(test);
    add_common(test);

    auto* diagnose = app.add_subcommand("diagnose", "Diagnostic table over sub-vectors");
    add_data(diagnose);
    add_fit(diagnose);
    add_common(diagnose);
    diagnose->add_option("--subsets", subsets, "Groups of 1-based coordinates, e.g. \"1,2,5|3,4|7\"")->required();
    diagnose->add_option("--json", json_out, "Also write the table as JSON");

    auto* bands = app.add_subcommand("bands", "Confidence bands for the comparison density on a grid");
    add_data(bands);
    add_fit(bands);
    add_common(bands);
    bands->add_option("--alpha", band_args.alpha, "Significance level");
    bands->add_option("--method", band_args.method, "lkc, mc or mc-reselect");
    bands->add_option("--grid", band_args.grid, "Points per axis (default 101 for p=2, 51 for p=3)");
    bands->add_option("-B,--replicates", band_args.B, "Monte Carlo replicates (default 2000 lkc, 10000 mc)");
    bands->add_option("--svg", band_args.svg, "Write an SVG heatmap (p = 2)");
    bands->add_option("--ec-form", band_args.ec_form, "Expected-EC densities for lkc: gkf or printed");
    bands->add_option("--thresholds", band_args.thresholds, "Thresholds for the curvature fit")->delimiter(',');

    auto* simulate = app.add_subcommand("simulate", "Type-I error, power and diagnostic studies");
    add_common(simulate);
    simulate->add_option("--study", sim_args.study, "type1, power or diagnostic")->required();
    simulate->add_option("--truth", sim_args.truth, "Data-generating model (file or catalog name)");
    simulate->add_option("--null", sim_args.null_model, "Hypothesized model (file or catalog name)")->required();
    simulate->add_option("-n", sim_args.n, "Sample size(s), comma separated");
    simulate->add_option("-B", sim_args.B, "Replicates");
    simulate->add_option("--alpha", sim_args.alpha, "Significance level");
    simulate->add_option("--degrees", sim_args.degrees, "Per-coordinate degrees");
    simulate->add_option("--criterion", sim_args.criterion, "aic, bic or none");
    simulate->add_option("--subsets", sim_args.subsets, "Diagnostic groups, e.g. \"1,2,5|3,4\"");

    auto* fixture = app.add_subcommand("fixture", "Draw a seeded dataset from a model");
    fixture->add_option("--model,-m", common.model, "Model JSON file or catalog name")->required();
    fixture->add_option("-n", fixture_n, "Number of observations");
    add_common(fixture);

    auto* catalog = app.add_subcommand("catalog", "List built-in models or print one as JSON");
    catalog->add_option("name", catalog_name, "Catalog entry to print");

    Context ctx;
    ctx.argv.assign(argv, argv + argc);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInput;
    }

    try {
        if (*transform) {
            ctx.command = "transform";
            cmd_transform(common, ctx);
        } else if (*test) {
            ctx.command = "test";
            cmd_test(common, fit_args, ctx);
        } else if (*diagnose) {
            ctx.command = "diagnose";
            cmd_diagnose(common, fit_args, subsets, json_out, ctx);
        } else if (*bands) {
            ctx.command = "bands";
            cmd_bands(common, fit_args, band_args, ctx);
        } else if (*simulate) {
            ctx.command = "simulate";
            cmd_simulate(common, sim_args, ctx);
        } else if (*fixture) {
            ctx.command = "fixture";
            cmd_fixture(common, fixture_n, ctx);
        } else if (*catalog) {
            ctx.command = "catalog";
            cmd_catalog(catalog_name, ctx);
            return kOk;
        }
        write_manifest(common, ctx);
    } catch (const igof::ParseError& e) {
        std::cerr << "igof: input error: " << e.what() << '\n';
        return kInput;
    } catch (const igof::LookupError& e) {
        std::cerr << "igof: input error: " << e.what() << '\n';
        return kInput;
    } catch (const igof::UnsupportedError& e) {
        std::cerr << "igof: unsupported: " << e.what() << '\n';
        return kInput;
    } catch (const igof::MarginalityError& e) {
        std::cerr << "igof: marginality error: " << e.what() << '\n';
        return kModel;
    } catch (const igof::DomainError& e) {
        std::cerr << "igof: model error: " << e.what() << '\n';
        return kModel;
    } catch (const std::exception& e) {
        std::cerr << "igof: numeric failure: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}
