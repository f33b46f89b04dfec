#include "courant/bcov.hpp"
#include "courant/modelfile.hpp"
#include "courant/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace courant;

namespace {

Orientation orientation(Scalar c, int shift) {
    Orientation o;
    o.constant = c;
    o.shift = shift;
    return o;
}

int default_shift(const CourantDatum& E) {
    int s = (int)E.base().coords.size();
    if (E.name.rfind("dolbeault", 0) == 0) s /= 2;
    return s;
}

AxiomReport cme_report(const CourantDatum& E, int shift, uint32_t order) {
    ContactModel m = make_contact(E, orientation(Scalar(1),
                                                 shift < 0 ? default_shift(E) : shift),
                                  order);
    CmeReport r = verify_cme(m);
    AxiomReport out;
    for (auto& c : r.checks) out.checks.push_back({c.name, c.pass, c.witness});
    return out;
}

AxiomReport rw_report(const CourantDatum& E, uint32_t order, uint64_t seed,
                      size_t count) {
    AxiomReport out;
    HomologicalReport h = check_homological(rw_construct(E, order));
    out.checks.push_back({"homological", h.pass, h.witness});
    for (auto& c : proof_identities(E, seed, count))
        out.checks.push_back({c.name, c.pass, c.witness});
    return out;
}

} // namespace

PYBIND11_MODULE(pycourant, mod) {
    mod.doc() = "exact symbolic verification of Courant algebroids over dg rings";
    mod.attr("__version__") = kToolVersion;

    py::register_exception<StructuralError>(mod, "StructuralError");
    py::register_exception<ValidationError>(mod, "ValidationError");
    py::register_exception<ModelDiagnostic>(mod, "ModelDiagnostic");

    py::class_<AxiomCheck>(mod, "Check")
        .def_readonly("name", &AxiomCheck::axiom)
        .def_readonly("passed", &AxiomCheck::pass)
        .def_readonly("witness", &AxiomCheck::witness)
        .def("__repr__", [](const AxiomCheck& c) {
            return "<Check " + c.axiom + (c.pass ? " pass" : " fail: " + c.witness) + ">";
        });

    py::class_<AxiomReport>(mod, "Report")
        .def_readonly("checks", &AxiomReport::checks)
        .def("passed", &AxiomReport::pass)
        .def("__bool__", &AxiomReport::pass)
        .def("__repr__", [](const AxiomReport& r) {
            size_t bad = 0;
            for (auto& c : r.checks)
                if (!c.pass) ++bad;
            return "<Report " + std::to_string(r.checks.size()) + " checks, " +
                   std::to_string(bad) + " failing>";
        });

    py::class_<CourantDatum>(mod, "CourantDatum")
        .def_readonly("name", &CourantDatum::name)
        .def_property_readonly("rank", &CourantDatum::rank)
        .def_property_readonly("coords", [](const CourantDatum& E) {
            std::vector<std::string> out;
            for (size_t k : E.base().coords)
                out.push_back(E.base().alg->gen(k).name);
            return out;
        })
        .def_property_readonly("basis", [](const CourantDatum& E) {
            std::vector<std::string> out;
            for (auto& b : E.mod.basis) out.push_back(b.name);
            return out;
        })
        .def("__repr__", [](const CourantDatum& E) {
            return "<CourantDatum " + E.name + " rank " + std::to_string(E.rank()) + ">";
        });

    // builders
    mod.def("standard_courant", &standard_courant, py::arg("d"));
    mod.def("dolbeault_standard", &dolbeault_standard, py::arg("d"));
    mod.def("so3_quadratic", &so3_quadratic);
    mod.def("so3_broken", &so3_broken);
    mod.def("abelian_hyperbolic_r2", &abelian_hyperbolic_r2);
    mod.def("flat_transitive", &flat_transitive, py::arg("d"), py::arg("point_lie"));
    mod.def("complexified_standard", &complexified_standard, py::arg("d"));
    mod.def("holomorphic_standard", &holomorphic_standard, py::arg("d"));

    // verification suites
    mod.def("check_axioms", &check_axioms, py::arg("datum"), py::arg("seed") = 2026,
            py::arg("max_degree") = 2);
    mod.def("rw_check", &rw_report, py::arg("datum"), py::arg("order") = 2,
            py::arg("seed") = 2026, py::arg("count") = 8,
            "homological square-zero check plus the proof identities");
    mod.def("verify_cme", &cme_report, py::arg("datum"), py::arg("shift") = -1,
            py::arg("order") = 4,
            "classical master equation in the point or jet regime");
    mod.def("reduce_dolbeault",
            [](int d, uint32_t cutoff, uint64_t seed) {
                return reduce_dolbeault(d, cutoff, seed).report;
            },
            py::arg("d"), py::arg("cutoff") = 3, py::arg("seed") = 2026);
    mod.def("cy_flat_reduction_check", &cy_flat_reduction_check, py::arg("d"),
            py::arg("cutoff") = 2, py::arg("seed") = 2026,
            py::arg("allow_even") = false);
    mod.def("verify_equivalence", &verify_equivalence, py::arg("n"),
            py::arg("order"), py::arg("degree") = 2, py::arg("points") = 0,
            py::arg("seed") = 2026, py::arg("mutated") = false,
            "order-by-order equivalence of the contact and BCOV theories");

    // model files
    py::class_<ModelFile>(mod, "ModelFile")
        .def_readonly("name", &ModelFile::name)
        .def_readonly("datum", &ModelFile::datum)
        .def_property_readonly("has_lift",
                               [](const ModelFile& m) { return m.lift.has_value(); })
        .def_property_readonly("has_submodule",
                               [](const ModelFile& m) { return m.submodule.has_value(); })
        .def("__repr__", [](const ModelFile& m) { return "<ModelFile " + m.name + ">"; });

    mod.def("parse_model", &parse_model, py::arg("path"));
    mod.def("parse_model_text", &parse_model_text, py::arg("text"),
            py::arg("origin") = "<memory>");
    mod.def("render_model", &render_model, py::arg("model"));
    mod.def("models_equal", &models_equal, py::arg("a"), py::arg("b"));
    mod.def("check_lift",
            [](const ModelFile& m) { return check_lift(m.scalars_map(), m.datum); },
            py::arg("model"), "lift conditions of the model's lift block");
    mod.def("extend_scalars",
            [](const ModelFile& m) { return extend_scalars(m.datum, m.scalars_map()); },
            py::arg("model"));
}
