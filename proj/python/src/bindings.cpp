#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "igof/bands.hpp"
#include "igof/errors.hpp"
#include "igof/estimate.hpp"
#include "igof/harness.hpp"
#include "igof/infer.hpp"
#include "igof/io.hpp"
#include "igof/numeric.hpp"
#include "igof/select.hpp"
#include "igof/version.hpp"

namespace py = pybind11;
using namespace igof;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointSet to_points(const Array& a, std::size_t expected_cols = 0) {
    const auto buf = a.request();
    std::size_t rows = 0, cols = 0;
    if (buf.ndim == 2) {
        rows = static_cast<std::size_t>(buf.shape[0]);
        cols = static_cast<std::size_t>(buf.shape[1]);
    } else if (buf.ndim == 1 && expected_cols > 0) {
        rows = 1;
        cols = static_cast<std::size_t>(buf.shape[0]);
    } else {
        throw DomainError("expected a two-dimensional array of observations");
    }
    if (expected_cols && cols != expected_cols) {
        throw DomainError("array has " + std::to_string(cols) + " columns, expected " +
                          std::to_string(expected_cols));
    }
    const auto* p = static_cast<const double*>(buf.ptr);
    return PointSet(rows, cols, std::vector<double>(p, p + rows * cols));
}

Array to_array(const PointSet& ps) {
    Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(ps.rows()), static_cast<py::ssize_t>(ps.cols())});
    std::copy(ps.data().begin(), ps.data().end(), out.mutable_data());
    return out;
}

Array to_array(const std::vector<double>& v) {
    Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::vector<std::vector<int>> index_tuples(const CoefficientSet& c) {
    std::vector<std::vector<int>> out;
    out.reserve(c.indices.size());
    for (const auto& k : c.indices) out.push_back(k.j);
    return out;
}

py::object json_to_py(const io::Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Smooth goodness-of-fit tests for multivariate models";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "IgofError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<BracketError>(m, "BracketError", base.ptr());
    py::register_exception<RankError>(m, "RankError", base.ptr());
    py::register_exception<StateError>(m, "StateError", base.ptr());
    py::register_exception<MarginalityError>(m, "MarginalityError", base.ptr());
    py::register_exception<LookupError>(m, "LookupError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());

    m.def("chi2_sf", &numeric::chi2_sf, py::arg("x"), py::arg("df"));
    m.def("chi2_logsf", &numeric::chi2_logsf, py::arg("x"), py::arg("df"));
    m.def("legendre", &legendre_eval, py::arg("j"), py::arg("u"));

    py::class_<ModelSpec>(m, "Model")
        .def_property_readonly("dimension", &ModelSpec::dimension)
        .def_property_readonly("names", &ModelSpec::names)
        .def_property_readonly("kind", [](const ModelSpec& s) {
            switch (s.kind()) {
                case ModelSpec::Kind::Mixture: return "mixture";
                case ModelSpec::Kind::Tilted: return "tilted";
                default: return "chain";
            }
        })
        .def("density", [](const ModelSpec& s, const std::vector<double>& x) { return s.density(x); })
        .def("sample",
             [](const ModelSpec& s, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
                 return to_array(sample(s, n, {seed, stream}));
             },
             py::arg("n"), py::arg("seed") = 20240101, py::arg("stream") = 0)
        .def("rosenblatt", [](const ModelSpec& s, const Array& x) {
            return to_array(rosenblatt(s, to_points(x, s.dimension())).points);
        })
        .def("inverse_rosenblatt", [](const ModelSpec& s, const Array& u) {
            const PointSet pts = to_points(u, s.dimension());
            PointSet out(pts.rows(), pts.cols());
            {
                py::gil_scoped_release release;
                for (std::size_t i = 0; i < pts.rows(); ++i) inverse_rosenblatt(s, pts.row(i), out.row(i));
            }
            return to_array(out);
        })
        .def("to_json", [](const ModelSpec& s) { return io::model_to_json(s).dump(); })
        .def("__repr__", [](const ModelSpec& s) {
            return "<igof.Model dimension=" + std::to_string(s.dimension()) + ">";
        });
    m.def("catalog", &catalog, py::arg("name"));
    m.def("catalog_names", &catalog_names);
    m.def("model_from_json", [](const std::string& text) { return io::model_from_json(io::Json::parse(text)); },
          py::arg("text"));
    m.def("read_model", &io::read_model_file, py::arg("path"));

    py::class_<CoefficientSet>(m, "Coefficients")
        .def_property_readonly("theta", [](const CoefficientSet& c) { return to_array(c.theta); })
        .def_property_readonly("indices", &index_tuples)
        .def_property_readonly("degrees", [](const CoefficientSet& c) { return c.config.degrees(); })
        .def_readonly("n", &CoefficientSet::n)
        .def_property_readonly("M", &CoefficientSet::size)
        .def_property_readonly("sigma",
                               [](const CoefficientSet& c) -> py::object {
                                   if (!c.sigma) return py::none();
                                   Array a(std::vector<py::ssize_t>{static_cast<py::ssize_t>(c.size()), static_cast<py::ssize_t>(c.size())});
                                   std::copy(c.sigma->begin(), c.sigma->end(), a.mutable_data());
                                   return std::move(a);
                               })
        .def("at", [](const CoefficientSet& c, const std::vector<int>& k) { return c.at(MultiIndex{k}); })
        .def("to_json", [](const CoefficientSet& c) { return io::coefficients_to_json(c).dump(); })
        .def("__len__", &CoefficientSet::size);

    m.def("fit",
          [](const Array& u, const std::vector<int>& degrees, bool with_sigma, unsigned threads) {
              const PointSet pts = to_points(u);
              const BasisConfig config(degrees);
              py::gil_scoped_release release;
              return fit(pts, config, FitOptions{with_sigma, threads});
          },
          py::arg("u"), py::arg("degrees"), py::arg("with_sigma") = false, py::arg("threads") = 1);

    py::class_<SelectionResult>(m, "Selection")
        .def_property_readonly("criterion", [](const SelectionResult& s) { return criterion_name(s.criterion); })
        .def_readonly("k_star", &SelectionResult::k_star)
        .def_readonly("order", &SelectionResult::order)
        .def_readonly("active", &SelectionResult::active)
        .def_property_readonly("path", [](const SelectionResult& s) { return to_array(s.path); });

    m.def("select",
          [](const CoefficientSet& c, const std::string& criterion) {
              return select(c, criterion_from_name(criterion));
          },
          py::arg("coefficients"), py::arg("criterion") = "aic");

    m.def("deviance_test",
          [](const CoefficientSet& c, const SelectionResult* sel) {
              return json_to_py(io::report_to_json(deviance_test(c, sel), c));
          },
          py::arg("coefficients"), py::arg("selection") = nullptr);

    m.def("diagnose",
          [](const CoefficientSet& c, const SelectionResult& sel, const ModelSpec& model,
             const std::vector<std::vector<std::size_t>>& subsets) {
              std::vector<std::vector<std::size_t>> zero_based;
              for (const auto& s : subsets) {
                  std::vector<std::size_t> z;
                  for (std::size_t d : s) {
                      if (d == 0) throw DomainError("subsets use 1-based coordinate numbers");
                      z.push_back(d - 1);
                  }
                  zero_based.push_back(std::move(z));
              }
              return json_to_py(io::diagnostic_to_json(diagnostic_table(c, sel, model, zero_based), model.names()));
          },
          py::arg("coefficients"), py::arg("selection"), py::arg("model"), py::arg("subsets"));

    m.def("eval_d",
          [](const CoefficientSet& c, const Array& u, std::optional<std::vector<std::size_t>> active) {
              const PointSet pts = to_points(u, c.config.dimension());
              const ComparisonDensity cd = active ? ComparisonDensity(c, *active) : ComparisonDensity(c);
              std::vector<double> out(pts.rows());
              for (std::size_t i = 0; i < pts.rows(); ++i) out[i] = eval_d(cd, pts.row(i));
              return to_array(out);
          },
          py::arg("coefficients"), py::arg("u"), py::arg("active") = py::none());

    m.def("band_grid",
          [](const CoefficientSet& c, double cval, std::size_t resolution,
             std::optional<std::vector<std::size_t>> active) {
              const ComparisonDensity cd = active ? ComparisonDensity(c, *active) : ComparisonDensity(c);
              const FieldGrid g = band_grid(cd, cval, resolution);
              py::dict out;
              out["u"] = to_array(g.u);
              out["d_hat"] = to_array(g.d_hat);
              out["se0"] = to_array(g.se0);
              out["classification"] = g.classification;
              out["c"] = g.c;
              return out;
          },
          py::arg("coefficients"), py::arg("c"), py::arg("resolution") = 101, py::arg("active") = py::none());

    m.def("estimate_lkc",
          [](const std::vector<int>& degrees, std::size_t B, std::vector<double> thresholds,
             std::size_t resolution, const std::string& form, std::uint64_t seed, unsigned threads) {
              LkcOptions opt;
              opt.B = B;
              opt.thresholds = std::move(thresholds);
              opt.resolution = resolution;
              opt.form = ec_form_from_name(form);
              opt.seed = {seed, 0};
              opt.threads = threads;
              LKCEstimate est;
              {
                  py::gil_scoped_release release;
                  est = estimate_lkc(BasisConfig(degrees), opt);
              }
              return json_to_py(io::lkc_to_json(est));
          },
          py::arg("degrees"), py::arg("B") = 2000, py::arg("thresholds") = std::vector<double>{0.5, 1.0, 1.5, 2.0},
          py::arg("resolution") = 101, py::arg("form") = "gkf", py::arg("seed") = 20240101, py::arg("threads") = 0);

    m.def("solve_c_alpha",
          [](double L1, double L2, double alpha, const std::string& form) {
              LKCEstimate est;
              est.L1 = L1;
              est.L2 = L2;
              est.form = ec_form_from_name(form);
              return solve_c_alpha(est, alpha);
          },
          py::arg("L1"), py::arg("L2"), py::arg("alpha") = 0.05, py::arg("form") = "gkf");

    m.def("mc_sup_quantile",
          [](const std::vector<int>& degrees, double alpha, std::size_t B, std::size_t resolution,
             bool redo_selection, std::size_t n, const std::string& criterion, std::uint64_t seed,
             unsigned threads) {
              McOptions opt;
              opt.alpha = alpha;
              opt.B = B;
              opt.resolution = resolution;
              opt.redo_selection = redo_selection;
              opt.n = n;
              opt.criterion = criterion_from_name(criterion);
              opt.seed = {seed, 0};
              opt.threads = threads;
              py::gil_scoped_release release;
              return mc_sup_quantile(BasisConfig(degrees), opt);
          },
          py::arg("degrees"), py::arg("alpha") = 0.05, py::arg("B") = 10000, py::arg("resolution") = 101,
          py::arg("redo_selection") = false, py::arg("n") = 5000, py::arg("criterion") = "aic",
          py::arg("seed") = 20240101, py::arg("threads") = 0);

    m.def("rejection_study",
          [](const ModelSpec& truth, const ModelSpec& null, std::size_t n, std::size_t B,
             const std::vector<int>& degrees, double alpha, const std::string& criterion, std::uint64_t seed,
             unsigned threads) {
              StudyConfig cfg{truth, null, n, B, alpha, BasisConfig(degrees), criterion_from_name(criterion),
                              {seed, 0}, threads};
              StudyResult r;
              {
                  py::gil_scoped_release release;
                  r = type1_power_study(cfg);
              }
              py::dict out;
              out["rate"] = r.rejection_rate;
              out["se"] = r.standard_error;
              std::vector<std::size_t> ks;
              for (const auto& rep : r.replicates) ks.push_back(rep.k_star);
              out["k_star"] = ks;
              return out;
          },
          py::arg("truth"), py::arg("null"), py::arg("n"), py::arg("B"), py::arg("degrees"),
          py::arg("alpha") = 0.05, py::arg("criterion") = "aic", py::arg("seed") = 20240101,
          py::arg("threads") = 0);
}
