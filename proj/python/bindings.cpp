#include "posmod/amalgamation.hpp"
#include "posmod/apc.hpp"
#include "posmod/claims.hpp"
#include "posmod/morphisms.hpp"
#include "posmod/report.hpp"
#include "posmod/semantics.hpp"
#include "posmod/syntax.hpp"
#include "posmod/workspace.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace posmod;

namespace {

// pybind11 holders cannot be shared_ptr<const T>. Python gets mutable
// holders but no mutating method.
using StructureHandle = std::shared_ptr<Structure>;
using ClassHandle = std::shared_ptr<ModelClass>;

StructureHandle handle(const StructurePtr &s) { return std::const_pointer_cast<Structure>(s); }
ClassHandle handle(const ModelClassPtr &c) { return std::const_pointer_cast<ModelClass>(c); }

std::vector<StructureHandle> handles(const std::vector<StructurePtr> &list)
{
    std::vector<StructureHandle> out;
    for (const auto &s : list)
        out.push_back(handle(s));
    return out;
}

// Results cross as plain dicts, the same shape as the CLI's --json output.
py::object to_python(const Json &j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object verdict(const Verdict &v) { return to_python(to_json(v)); }

} // namespace

PYBIND11_MODULE(_posmod, m) {
    m.doc() = "Positive model theory over finite classes";

    static py::exception<Error> error(m, "Error");
    static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
    static py::exception<UnknownName> unknown_name(m, "UnknownName", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const ParseError &e) {
            parse_error(e.what());
        }
        catch (const UnknownName &e) {
            unknown_name(e.what());
        }
        catch (const Error &e) {
            error(e.what());
        }
    });

    py::class_<Structure, StructureHandle>(m, "Structure")
        .def_property_readonly("name", &Structure::name)
        .def_property_readonly("size", &Structure::size)
        .def("dsl", [](const Structure &s) { return render_structure(s); })
        .def("to_dict", [](const Structure &s) { return to_python(to_json(s)); })
        .def("__len__", &Structure::size)
        .def("__repr__", [](const Structure &s) { return "<Structure " + s.name() + ">"; });

    py::class_<ModelClass, ClassHandle>(m, "ModelClass")
        .def_property_readonly("name", &ModelClass::name)
        .def("members", [](const ModelClass &c) { return handles(c.members()); })
        .def("stratum", [](const ModelClass &c, int n) { return handles(c.stratum(n)); }, "n"_a)
        .def("__len__", &ModelClass::count)
        .def("__repr__", [](const ModelClass &c) { return "<ModelClass " + c.name() + ">"; });

    py::class_<Formula>(m, "Formula")
        .def("__str__", [](const Formula &f) { return render(f); })
        .def("__eq__", [](const Formula &a, const Formula &b) { return a == b; });

    py::class_<HInductiveSentence>(m, "Sentence").def("__str__", [](const HInductiveSentence &s) {
        return render(s);
    });

    py::class_<DeltaSet>(m, "DeltaSet")
        .def("__len__", [](const DeltaSet &d) { return d.formulas.size(); })
        .def_readonly("description", &DeltaSet::description);

    py::class_<Morphism>(m, "Morphism")
        .def(py::init([](const StructureHandle &a, const StructureHandle &b, std::vector<int> map) {
                 return Morphism(a, b, std::move(map));
             }),
             "source"_a, "target"_a, "map"_a)
        .def_property_readonly("source", [](const Morphism &h) { return handle(h.source); })
        .def_property_readonly("target", [](const Morphism &h) { return handle(h.target); })
        .def_readonly("map", &Morphism::map)
        .def("is_injective", &Morphism::is_injective)
        .def("is_surjective", &Morphism::is_surjective);

    py::class_<Span>(m, "Span")
        .def(py::init<Morphism, Morphism>(), "f"_a, "g"_a)
        .def_readonly("f", &Span::f)
        .def_readonly("g", &Span::g);

    py::class_<Workspace>(m, "Workspace")
        .def_static("parse", &Workspace::parse, "text"_a, "name"_a = "workspace")
        .def_static("load", &Workspace::load_file, "path"_a)
        .def_static(
            "bundled", [](const std::string &name) { return Workspace(*bundled_workspace(name)); }, "name"_a)
        .def("extend", &Workspace::extend, "text"_a)
        .def_property_readonly("name", &Workspace::name)
        .def("structure", [](const Workspace &ws, const std::string &name) { return handle(ws.structure(name)); },
             "name"_a)
        .def("model_class", [](const Workspace &ws, const std::string &expr) { return handle(ws.model_class(expr)); },
             "expr"_a)
        .def("span", &Workspace::span, "name"_a)
        .def("delta", &Workspace::delta, "expr"_a)
        .def("formula", &Workspace::formula, "text"_a)
        .def("sentence", &Workspace::sentence, "text"_a)
        .def("structure_names", &Workspace::structure_names)
        .def("span_names", &Workspace::span_names)
        .def("render", &Workspace::render);

    m.def("bundled_names", [] {
        std::vector<std::string> out;
        for (const auto &ws : bundled_workspaces())
            out.push_back(ws->name());
        return out;
    });

    m.def("classify", [](const Morphism &h) {
        Classification c = classify(h);
        return py::dict("hom"_a = c.hom, "emb"_a = c.emb, "imm"_a = c.imm, "s_imm_absolute"_a = c.s_imm_absolute);
    });
    m.def("homomorphisms", [](const StructureHandle &a, const StructureHandle &b) {
        return enumerate_maps(a, b, MapKind::Hom);
    });
    m.def("is_immersion", [](const Morphism &h) { return verdict(is_immersion(h)); });
    m.def("is_s_immersion_absolute", [](const Morphism &h) { return verdict(is_s_immersion_absolute(h)); });

    m.def("entails", [](const ClassHandle &cls, const HInductiveSentence &s) { return verdict(entails(cls, s)); });
    m.def("is_pc", [](const StructureHandle &a, const ClassHandle &cls) { return verdict(is_pc_in(a, cls)); });
    m.def("pc_members", [](const ClassHandle &cls) { return handles(pc_members(cls)); });
    m.def("is_model_complete", [](const ClassHandle &cls) { return verdict(is_model_complete_in(cls)); });
    m.def(
        "is_apc",
        [](const StructureHandle &a, const ClassHandle &cls, const DeltaSet &delta, bool weak) {
            return verdict(is_apc_in(a, cls, delta, weak ? ApcMode::Wpc : ApcMode::Apc));
        },
        "structure"_a, "cls"_a, "delta"_a, "weak"_a = false);

    m.def(
        "amalgamate",
        [](const Span &span, const ClassHandle &budget, const std::string &kind, bool strong) -> py::object {
            auto sq = amalgamate(span, budget, AmalgamationKind::parse(kind), {strong});
            if (!sq)
                return py::none();
            return to_python(to_json(*sq));
        },
        "span"_a, "budget"_a, "kind"_a = "h", "strong"_a = false);
    m.def("free_amalgam", [](const Span &span) {
        Square sq = free_amalgam(span);
        py::object out = to_python(to_json(sq));
        out["strong"] = strong_condition_holds(sq).holds;
        return out;
    });
    m.def(
        "is_strong_basis",
        [](const StructureHandle &a, const ClassHandle &cls, const ClassHandle &budget, bool hereditary) {
            return verdict(is_strong_basis(a, cls, budget, hereditary ? StrongVariant::Hsa : StrongVariant::Psa));
        },
        "structure"_a, "cls"_a, "budget"_a, "hereditary"_a = false);

    m.def(
        "run_claims",
        [](const std::string &filter) {
            ClaimOptions options;
            options.filter = filter;
            py::list rows;
            for (const auto &row : run_claims(options))
                rows.append(to_python(to_json(row)));
            return rows;
        },
        "filter"_a = "");
}
