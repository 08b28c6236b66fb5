#include "support.hpp"

#include "posmod/apc.hpp"
#include "posmod/morphisms.hpp"
#include "posmod/semantics.hpp"
#include "posmod/syntax.hpp"

#include <doctest.h>

#include <algorithm>

using namespace posmod;
using testing::digraphs;
using testing::unary;

namespace {

bool has_fixpoint(const Structure &s)
{
    for (int e = 0; e < s.size(); ++e)
        if (s.apply(0, std::vector<int>{e}) == e)
            return true;
    return false;
}

/// Some homomorphism from A into a member that has a fixpoint while no
/// image point is fixed there.
bool fixpoint_escapes(const StructurePtr &a, const ModelClassPtr &cls)
{
    for (const auto &b : cls->members()) {
        if (!has_fixpoint(*b))
            continue;
        for (const auto &h : enumerate_maps(a, b, MapKind::Hom))
            if (std::none_of(h.map.begin(), h.map.end(),
                             [&](int e) { return b->apply(0, std::vector<int>{e}) == e; }))
                return true;
    }
    return false;
}

Workspace constant_workspace()
{
    return Workspace::parse("signature K { const c; rel R/2; }\n", "constants");
}

/// Re-checks each entry of a witness: psi holds in A at (a, a') and the
/// class entails the instance sentence.
void reverify(const StructurePtr &a, const ModelClassPtr &cls, const DeltaFormula &phi, const ApcWitness &w)
{
    for (const auto &e : w.entries) {
        Assignment at;
        for (std::size_t i = 0; i < phi.parameters.size(); ++i)
            at[phi.parameters[i]] = e.parameters[i];
        for (std::size_t i = 0; i < phi.existentials.size(); ++i)
            at[phi.existentials[i]] = e.witness[i];
        CHECK(evaluate(*a, e.psi, at));
        Assignment params = at;
        for (const auto &y : phi.existentials)
            params.erase(y);
        if (evaluate(*a, Formula::exists(phi.existentials, phi.formula), params))
            CHECK(evaluate(*a, phi.formula, at));
        CHECK(entails(cls, apc_witness_sentence(phi, e.psi)).holds);
    }
}

} // namespace

TEST_CASE("apc decisions")
{
    auto inj = unary().model_class("models(T_inj,<=3)");
    CHECK(is_apc_in(unary().structure("F1"), inj, unary().delta("qf(atoms<=2)")).holds);

    auto d2 = digraphs().model_class("models(empty,<=2)");
    DeltaSet edge{{split_formula(digraphs().formula("R(x,y)"), {"x"}, {"y"})}, "R(x,y)"};
    Verdict v = is_apc_in(digraphs().structure("P1"), d2, edge);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    REQUIRE_FALSE(v.witness->structures.empty());
    // any escaping continuation needs an out-edge at the image of the point
    auto b = v.witness->structures[0];
    REQUIRE(v.witness->maps.size() == 1);
    int image = v.witness->maps[0].map[0];
    CHECK(evaluate(*b, digraphs().formula("exists y. R(x,y)"), {{"x", image}}));
    CHECK_FALSE(b->holds(0, std::vector<int>{image, image}));

    DeltaSet none;
    for (const auto &a : d2->members()) {
        CHECK(is_apc_in(a, d2, none).holds);
        CHECK(is_apc_in(a, d2, none, ApcMode::Wpc).holds);
    }
}

TEST_CASE("apc models of the injective theory are those with a fixpoint")
{
    auto delta = unary().delta("qf(atoms<=2)");
    SUBCASE("exact at bound 4")
    {
        auto cls = unary().model_class("models(T_inj,<=4)");
        for (const auto &a : cls->members())
            CHECK_MESSAGE(is_apc_in(a, cls, delta).holds == has_fixpoint(*a), render_structure(*a));
    }
    SUBCASE("otherwise only the class bound keeps a fixpoint from escaping")
    {
        for (const char *expr : {"models(T_inj,<=3)", "models(T_inj,<=5)"}) {
            auto cls = unary().model_class(expr);
            for (const auto &a : cls->members()) {
                bool apc = is_apc_in(a, cls, delta).holds;
                if (has_fixpoint(*a))
                    CHECK(apc);
                else
                    CHECK_MESSAGE(apc == !fixpoint_escapes(a, cls), render_structure(*a));
            }
        }
    }
}

TEST_CASE("entailment witnesses")
{
    auto d2 = digraphs().model_class("models(empty,<=2)");
    DeltaFormula edge = split_formula(digraphs().formula("R(x,y)"), {"x"}, {"y"});

    auto l1 = digraphs().structure("L1");
    auto hit = apc_witness(l1, d2, edge);
    REQUIRE(hit);
    REQUIRE(hit->entries.size() == 1);
    CHECK(hit->entries[0].witness == std::vector<int>{0});
    reverify(l1, d2, edge, *hit);

    CHECK_FALSE(apc_witness(digraphs().structure("P1"), d2, edge));

    auto inj = unary().model_class("models(T_inj,<=3)");
    auto f1 = unary().structure("F1");
    DeltaFormula fix = split_formula(unary().formula("f(y) = y"), {}, {"y"});
    auto fixed = apc_witness(f1, inj, fix);
    REQUIRE(fixed);
    REQUIRE(fixed->entries.size() == 1);
    CHECK(fixed->entries[0].witness == std::vector<int>{0});
    CHECK(render(fixed->entries[0].psi) == "f(y) = y");
    reverify(f1, inj, fix, *fixed);
}

TEST_CASE("witness hits imply apc for that formula")
{
    for (const auto *ws : {&digraphs(), &unary()}) {
        const char *cls_expr = ws == &digraphs() ? "models(empty,<=2)" : "models(T_inj,<=3)";
        auto cls = ws->model_class(cls_expr);
        DeltaSet delta = ws->delta("qf(atoms<=2)");
        for (const auto &a : cls->members())
            for (const auto &phi : delta.formulas) {
                auto w = apc_witness(a, cls, phi);
                if (!w)
                    continue;
                reverify(a, cls, phi, *w);
                CHECK(is_apc_in(a, cls, DeltaSet{{phi}, "one"}).holds);
            }
    }
}

TEST_CASE("algebraic formulas")
{
    Workspace k = constant_workspace();
    auto cls = k.model_class("models(empty,<=3)");
    Scope scope = Scope::of(cls);
    auto pool = k.formula_pool("qf(atoms<=1)", {"y"});
    Verdict v = is_algebraic(scope, k.formula("x = c"), pool);
    CHECK(v.holds);
    REQUIRE(v.witness);
    REQUIRE(v.witness->formula);
    CHECK(canonicalize(*v.witness->formula) == canonicalize(k.formula("y = c")));

    auto inj = unary().model_class("models(T_inj,<=3)");
    auto ypool = unary().formula_pool("qf(atoms<=2, vars=y z)");
    CHECK_FALSE(is_algebraic(Scope::of(inj), unary().formula("f(x) = x"), ypool).holds);

    CHECK(is_algebraic(Scope::of(inj), Formula::falsum(), ypool).holds);
}

TEST_CASE("E sets")
{
    Workspace k = constant_workspace();
    auto cls = k.model_class("models(empty,<=3)");
    auto e = e_set(Scope::of(cls), k.formula("x = c"), k.formula_pool("qf(atoms<=1)", {"y"}));
    CHECK(std::any_of(e.begin(), e.end(),
                      [&](const Formula &f) { return canonicalize(f) == canonicalize(k.formula("y = c")); }));

    auto d3 = digraphs().model_class("models(empty,<=3)");
    CHECK(e_set(Scope::of(d3), digraphs().formula("x = x"), digraphs().formula_pool("qf(atoms<=2, vars=y z)")).empty());

    // nothing realizes a fixpoint, so every satisfiable formula qualifies
    auto fpf = unary().model_class("models(T_fpf,<=3)");
    auto pool = unary().formula_pool("qf(atoms<=1)", {"y"});
    auto all = e_set(Scope::of(fpf), unary().formula("f(x) = x"), pool);
    std::size_t satisfiable = 0;
    for (const auto &psi : pool.formulas()) {
        bool realized = false;
        for (const auto &m : fpf->members())
            realized = realized || is_realized(*m, psi);
        satisfiable += realized ? 1 : 0;
    }
    CHECK(all.size() == satisfiable);
}

TEST_CASE("closed formulas")
{
    auto l1 = digraphs().structure("L1");
    CHECK(is_closed_formula(l1, digraphs().model_class("models(empty,<=1)"), digraphs().formula("R(y,y)")).holds);

    auto p1 = digraphs().structure("P1");
    Verdict v = is_closed_formula(p1, digraphs().model_class("{E2}"), digraphs().formula("R(x,y)"), {{"x", 0}});
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);

    CHECK(is_closed_formula(p1, digraphs().model_class("{E2}"), Formula::falsum()).holds);
}
