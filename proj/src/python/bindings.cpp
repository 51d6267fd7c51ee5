#include <sstream>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "horizonlab/audit.hpp"
#include "horizonlab/cli.hpp"
#include "horizonlab/geometry.hpp"
#include "horizonlab/killing.hpp"
#include "horizonlab/model.hpp"
#include "horizonlab/scenario_file.hpp"

namespace py = pybind11;
using namespace horizonlab;

namespace {

py::array_t<bool> as_array(const GridSpacetime& st, const CellSet& cells) {
    py::array_t<bool> out({st.rows(), st.cols()});
    auto view = out.mutable_unchecked<2>();
    for (int t = 0; t < st.rows(); ++t)
        for (int x = 0; x < st.cols(); ++x) view(t, x) = cells.test(st.index({t, x}));
    return out;
}

py::array_t<double> as_array(const GridSpacetime& st, const std::vector<double>& values) {
    py::array_t<double> out({st.rows(), st.cols()});
    auto view = out.mutable_unchecked<2>();
    for (int t = 0; t < st.rows(); ++t)
        for (int x = 0; x < st.cols(); ++x) view(t, x) = values[st.index({t, x})];
    return out;
}

Cell to_cell(const std::pair<int, int>& c) { return {c.first, c.second}; }

CausalModel build(const std::string& name, int resolution, std::uint64_t seed,
                  const std::map<std::string, std::string>& params, int radius, double margin) {
    ScenarioParams sp;
    sp.resolution = resolution;
    sp.seed = seed;
    sp.values = params;
    return CausalModel::build(share(build_scenario(name, sp)), StencilParams{radius, margin});
}

CellSet mask_of(const CausalModel& m, const std::string& name, const std::string& convention, double lambda) {
    const Convention conv = convention == "literal" ? Convention::LiteralReading : Convention::ProofReading;
    if (name == "L") return shielded_masks(m, conv).lower.members;
    if (name == "U") return shielded_masks(m, conv).upper.members;
    if (name == "E") return event_mask(m).mask.members;
    if (name == "C") return compactness_mask(m).members;
    if (name == "domain") return m.grid().domain();
    const double lam = lambda > 0.0 ? lambda : 10.0 * domain_diameter(m.grid());
    const LengthField f = lorentzian_distance_field(m);
    if (name == "BH") return black_hole_mask(m, f, lam).members;
    const VisibilityMasks v = visibility_masks(m, infinite_tip_flags(m, f, lam));
    if (name == "V+") return v.future.members;
    if (name == "V-") return v.past.members;
    throw ParamError("unknown mask: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Horizons of discretized two-dimensional spacetimes";

    py::register_exception<HorizonError>(mod, "HorizonError");
    py::register_exception<ParamError>(mod, "ParamError", PyExc_ValueError);
    py::register_exception<PrecondError>(mod, "PrecondError", PyExc_ValueError);

    mod.def("scenario_names", &scenario_names);

    py::class_<CausalModel>(mod, "Model")
        .def_property_readonly("name", [](const CausalModel& m) { return m.grid().name(); })
        .def_property_readonly("shape", [](const CausalModel& m) { return py::make_tuple(m.grid().rows(), m.grid().cols()); })
        .def_property_readonly("domain_cells", [](const CausalModel& m) { return m.grid().domain().count(); })
        .def_property_readonly("tip_count", [](const CausalModel& m) { return m.tips.size(); })
        .def_property_readonly("periodic", [](const CausalModel& m) { return m.grid().periodic_x(); })
        .def("mask",
             [](const CausalModel& m, const std::string& name, const std::string& convention, double lambda) {
                 return as_array(m.grid(), mask_of(m, name, convention, lambda));
             },
             py::arg("name"), py::arg("convention") = "proof", py::arg("lambda_") = -1.0)
        .def("lengths", [](const CausalModel& m) { return as_array(m.grid(), lorentzian_distance_field(m).d); })
        .def("lorentzian_distance",
             [](const CausalModel& m, std::pair<int, int> p, std::pair<int, int> q) {
                 return lorentzian_distance(m, to_cell(p), to_cell(q));
             })
        .def("precedes",
             [](const CausalModel& m, std::pair<int, int> p, std::pair<int, int> q) {
                 const GridSpacetime& st = m.grid();
                 return m.reach.precedes(st.index(to_cell(p)), st.index(to_cell(q)));
             })
        .def("escape_curve_exists",
             [](const CausalModel& m, std::pair<int, int> p, std::pair<int, int> q) {
                 return escape_curve_exists(m, to_cell(p), to_cell(q));
             })
        .def("audit",
             [](const CausalModel& m, const std::string& scenario, std::uint64_t seed) {
                 AuditOptions o;
                 o.seed = seed;
                 py::list out;
                 for (const AuditCheck& c : run_audit(m, scenario, o))
                     out.append(py::dict(py::arg("check") = c.name, py::arg("holds") = c.holds,
                                         py::arg("detail") = c.detail));
                 return out;
             },
             py::arg("scenario") = "", py::arg("seed") = 0)
        .def("killing_horizon",
             [](const CausalModel& m, const std::string& field) {
                 const KillingHorizonReport r = killing_horizon_detect(m, named_field(m.grid(), field));
                 return py::dict(py::arg("kind") = to_string(r.kind), py::arg("residual") = r.residual,
                                 py::arg("spatially_compact") = r.spatially_compact);
             },
             py::arg("field") = "dt")
        .def("censorship", [](const CausalModel& m) {
            const CensorshipReport r = censorship_report(m);
            return py::dict(py::arg("cc4") = r.cc4.holds, py::arg("any_naked") = r.any_naked(),
                            py::arg("singular_tips") = r.singular.size());
        });

    mod.def("build", &build, py::arg("name"), py::arg("resolution") = 48, py::arg("seed") = 0,
            py::arg("params") = std::map<std::string, std::string>{}, py::arg("radius") = 4, py::arg("margin") = 0.5);

    mod.def("load", [](const std::string& path) {
        const ScenarioFile sf = load_scenario(path);
        return CausalModel::build(share(sf.build()), sf.stencil);
    });

    mod.def("validate", [](const std::string& name, int resolution, std::uint64_t seed) {
        ScenarioParams sp;
        sp.resolution = resolution;
        sp.seed = seed;
        const ValidationReport r = validate(build_scenario(name, sp));
        py::list out;
        for (const Violation& v : r.violations) out.append(py::make_tuple(v.cell.t, v.cell.x, v.rule));
        return out;
    }, py::arg("name"), py::arg("resolution") = 48, py::arg("seed") = 0);

    mod.def("counterexample_search",
            [](const std::string& inclusion, const std::string& family, int resolution, std::uint64_t seed,
               int budget, const std::string& convention) {
                SearchParams p;
                p.family = family;
                p.resolution = resolution;
                p.seed = seed;
                p.budget = budget;
                p.convention = convention == "literal" ? Convention::LiteralReading : Convention::ProofReading;
                const SearchResult r = counterexample_search(inclusion, p);
                py::list findings;
                for (const Finding& f : r.findings)
                    findings.append(py::make_tuple(f.seed, f.resolution, py::make_tuple(f.witness.t, f.witness.x)));
                return py::dict(py::arg("inclusion") = r.inclusion, py::arg("examined") = r.examined,
                                py::arg("skipped") = r.skipped, py::arg("findings") = findings,
                                py::arg("open_remark") = r.open_remark);
            },
            py::arg("inclusion"), py::arg("family") = "random", py::arg("resolution") = 16, py::arg("seed") = 0,
            py::arg("budget") = 20, py::arg("convention") = "proof");

    mod.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
