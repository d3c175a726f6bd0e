#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ratdyn/catalog.hpp"
#include "ratdyn/cli.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/powermap.hpp"

namespace py = pybind11;
using namespace ratdyn;

namespace {

RationalMap make_map(const std::string& text, const std::string& field, const std::map<std::string, std::string>& let) {
    const FieldPtr ctx = parse_field(field);
    SymbolTable symbols = default_symbols(ctx);
    for (const auto& [name, value] : let) symbols.insert_or_assign(name, parse_scalar(value, ctx, symbols));
    return read_map(text, ctx, symbols);
}

py::object point_to_py(const RiemannPoint& p) {
    if (p.infinite) return py::none();
    return py::cast(p.z);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and numerical tools for rational maps of the projective line";

    auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", precondition.ptr());
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<TrackingError>(m, "TrackingError", numerical.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

    py::class_<RationalMap>(m, "RationalMap")
        .def(py::init(&make_map), py::arg("text"), py::arg("field") = "Q",
             py::arg("let") = std::map<std::string, std::string>{})
        .def_property_readonly("degree", &RationalMap::degree)
        .def_property_readonly("field", [](const RationalMap& f) { return field_name(f.context()); })
        .def("to_json", [](const RationalMap& f) { return to_json(f).dump(); })
        .def("__call__", [](const RationalMap& f, py::object z) {
            if (z.is_none()) return point_to_py(evaluate(f, RiemannPoint::infinity()));
            return point_to_py(evaluate(f, RiemannPoint(z.cast<cplx>())));
        }, py::arg("z"))
        .def("__eq__", [](const RationalMap& f, const RationalMap& g) { return maps_equal(f, g); })
        .def("__str__", [](const RationalMap& f) { return to_string(f); })
        .def("__repr__", [](const RationalMap& f) { return "RationalMap('" + to_string(f) + "', field='" + field_name(f.context()) + "')"; });

    m.def("map_from_json", [](const std::string& text) { return map_from_json(parse_json(text)); });
    m.def("compose", &compose, py::arg("f"), py::arg("g"));
    m.def("iterate", &iterate, py::arg("f"), py::arg("n"), py::arg("degree_budget") = kDefaultDegreeBudget);
    m.def("sigma_f", [](const RationalMap& f) { return sigma_f_quadratic(f).as_map(); }, py::arg("f"));
    m.def("shared_iterate_search", &shared_iterate_search, py::arg("f"), py::arg("g"), py::arg("budget"));

    m.def("_analyze_graph", [](const RationalMap& G, std::uint64_t seed) {
        py::gil_scoped_release release;
        return to_json(analyze_graph(G, seed)).dump();
    }, py::arg("G"), py::arg("seed") = 1);
    m.def("_check_counterexample_triple", [](const RationalMap& R, const RationalMap& S, const RationalMap& T, std::uint64_t seed) {
        return to_json(check_counterexample_triple(R, S, T, seed)).dump();
    }, py::arg("R"), py::arg("S"), py::arg("T"), py::arg("seed") = 1);
    m.def("_check_main1_relations", [](const RationalMap& F, const RationalMap& G) {
        return to_json(check_main1_relations(F, G)).dump();
    }, py::arg("F"), py::arg("G"));
    m.def("_same_measure_test", [](const RationalMap& f, const RationalMap& g, int count, int depth, std::uint64_t seed) {
        py::gil_scoped_release release;
        return to_json(same_measure_test(f, g, count, depth, seed)).dump();
    }, py::arg("f"), py::arg("g"), py::arg("count") = 20000, py::arg("depth") = 40, py::arg("seed") = 1);
    m.def("_invariance_test", [](const RationalMap& f, const RationalMap& h, int count, int depth, std::uint64_t seed) {
        py::gil_scoped_release release;
        return to_json(invariance_test(f, h, count, depth, seed)).dump();
    }, py::arg("f"), py::arg("h"), py::arg("count") = 20000, py::arg("depth") = 40, py::arg("seed") = 1);
    m.def("render", [](const RationalMap& f, int width, int height, std::array<double, 4> window, int count, int depth,
                       std::uint64_t seed) {
        std::string ppm;
        {
            py::gil_scoped_release release;
            ppm = julia_raster(f, width, height, Window{window[0], window[1], window[2], window[3]}, count, depth, seed).to_ppm();
        }
        return py::bytes(ppm);
    }, py::arg("f"), py::arg("width") = 256, py::arg("height") = 256,
       py::arg("window") = std::array<double, 4>{-2.0, 2.0, -2.0, 2.0}, py::arg("count") = 20000, py::arg("depth") = 40,
       py::arg("seed") = 1);

    m.def("same_periodic_points_powermaps", &same_periodic_points_powermaps, py::arg("df"), py::arg("dg"));
    m.def("radical", &radical, py::arg("d"));
    m.def("period", [](std::int64_t a, std::uint64_t b, std::uint64_t d) { return period(root_of_unity(a, b), d); },
          py::arg("a"), py::arg("b"), py::arg("d"));

    m.def("catalog_names", &catalog_names);
    m.def("_catalog_run", [](const std::string& name, const std::map<std::string, std::string>& params, std::uint64_t seed) {
        const CatalogEntry e = catalog_entry(name, CatalogParams(params.begin(), params.end()));
        const CertificateReport rep = run_entry(e, seed);
        Json j{{"entry", to_json(e)}};
        const Json claims = to_json(rep);
        for (auto it = claims.begin(); it != claims.end(); ++it) j[it.key()] = it.value();
        j["unexpected"] = unexpected_verdicts(e, rep);
        return j.dump();
    }, py::arg("name"), py::arg("params") = std::map<std::string, std::string>{}, py::arg("seed") = 1);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> all{"ratdyn"};
        all.insert(all.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : all) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, py::bytes(out.str()), err.str());
    }, py::arg("args"));
}
