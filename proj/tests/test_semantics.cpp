#include "support.hpp"

#include "posmod/morphisms.hpp"
#include "posmod/semantics.hpp"
#include "posmod/syntax.hpp"

#include <doctest.h>

#include <algorithm>

using namespace posmod;
using testing::digraphs;
using testing::unary;

namespace {

bool contains(const std::vector<Formula> &list, const Formula &f)
{
    return std::find(list.begin(), list.end(), f) != list.end();
}

/// A false pc verdict must name a homomorphism out of A that is not an
/// immersion.
void check_pc_witness(const StructurePtr &a, const Verdict &v)
{
    REQUIRE(v.witness);
    REQUIRE(v.witness->maps.size() == 1);
    REQUIRE(v.witness->structures.size() == 1);
    Morphism h(a, v.witness->structures[0], v.witness->maps[0].map);
    CHECK(is_homomorphism(*h.source, *h.target, h.map));
    CHECK_FALSE(is_immersion(h).holds);
}

} // namespace

TEST_CASE("entailment over a finite class")
{
    auto inj = unary().model_class("models(T_inj,<=3)");
    CHECK(entails(inj, unary().sentence("forall x. true -> exists y. f(y) = x")).holds);

    auto d2 = digraphs().model_class("models(empty,<=2)");
    Verdict sym = entails(d2, digraphs().sentence("forall x y. R(x,y) -> R(y,x)"));
    CHECK_FALSE(sym.holds);
    REQUIRE(sym.witness);
    REQUIRE_FALSE(sym.witness->structures.empty());
    CHECK(are_isomorphic(*sym.witness->structures[0], *digraphs().structure("E2")));

    CHECK(entails(d2, digraphs().sentence("forall x. false -> R(x,x)")).holds);
}

TEST_CASE("contradiction sets")
{
    auto fpf = unary().model_class("models(T_fpf,<=3)");
    auto pool = unary().formula_pool("qf(atoms<=1)");
    CHECK(contains(ctr(fpf, unary().formula("f(x) = x"), pool), unary().formula("x = x")));

    auto inj = unary().model_class("models(T_inj,<=3)");
    auto only = ctr(inj, unary().formula("x = x"), pool);
    REQUIRE(only.size() == 1);
    CHECK(only[0] == Formula::falsum());

    auto all = ctr(inj, Formula::falsum(), pool);
    CHECK(all == pool.formulas());
}

TEST_CASE("pc decisions")
{
    auto d2 = digraphs().model_class("models(empty,<=2)");
    CHECK(is_pc_in(digraphs().structure("L1"), d2).holds);

    auto p1 = digraphs().structure("P1");
    Verdict v = is_pc_in(p1, d2);
    CHECK_FALSE(v.holds);
    check_pc_witness(p1, v);

    auto posets = digraphs().model_class("models(posets,<=3)");
    for (const auto &m : posets->members()) {
        Verdict pv = is_pc_in(m, posets);
        CHECK(pv.holds == (m->size() == 1));
        if (!pv.holds)
            check_pc_witness(m, pv);
    }
}

TEST_CASE("pc continuations")
{
    auto d2 = digraphs().model_class("models(empty,<=2)");
    auto l1 = digraphs().structure("L1");

    auto from_point = continuations_pc(digraphs().structure("P1"), d2);
    REQUIRE(from_point.size() == 1);
    CHECK(are_isomorphic(*from_point[0].target, *l1));
    CHECK(from_point[0].map == std::vector<int>{0});

    auto from_loop = continuations_pc(l1, d2);
    REQUIRE(from_loop.size() == 1);
    CHECK(from_loop[0].map == std::vector<int>{0});

    auto posets = digraphs().model_class("models(posets,<=3)");
    StructurePtr chain;
    for (const auto &m : posets->stratum(2))
        if (m->holds(0, std::vector<int>{0, 1}) || m->holds(0, std::vector<int>{1, 0}))
            chain = m;
    REQUIRE(chain);
    auto from_chain = continuations_pc(chain, posets);
    REQUIRE(from_chain.size() == 1);
    CHECK(from_chain[0].target->size() == 1);
    CHECK(from_chain[0].map == std::vector<int>{0, 0});
}

TEST_CASE("companionship")
{
    auto inj = unary().model_class("models(T_inj,<=3)");
    auto point = unary().model_class("models(T_point,<=3)");
    auto fpf = unary().model_class("models(T_fpf,<=3)");
    CHECK(companionship(inj, inj).holds);
    CHECK(companionship(inj, point).holds);
    Verdict v = companionship(fpf, point);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
}

TEST_CASE("model completeness")
{
    CHECK(is_model_complete_in(unary().model_class("models(T_point,<=4)")).holds);
    CHECK(unary().model_class("models(T_point,<=4)")->count() == 1);

    Verdict d2 = is_model_complete_in(digraphs().model_class("models(empty,<=2)"));
    CHECK_FALSE(d2.holds);
    REQUIRE(d2.witness);
    REQUIRE_FALSE(d2.witness->structures.empty());
    CHECK(are_isomorphic(*d2.witness->structures[0], *digraphs().structure("P1")));

    CHECK(is_model_complete_in(digraphs().model_class("{E2}")).holds);
}

TEST_CASE("verdict scopes name the class")
{
    auto d2 = digraphs().model_class("models(empty,<=2)");
    CHECK(is_pc_in(digraphs().structure("L1"), d2).scope == "models(empty,<=2)");
    Scope s = Scope::expansion(digraphs().structure("E2"), d2);
    CHECK(s.tag().find("E2") != std::string::npos);
    CHECK(s.parameter_names() == std::vector<std::string>{"a0", "a1"});
}

TEST_CASE("pc members of a union are computed per member")
{
    auto ws = digraphs();
    auto both = ws.model_class("union({P1}, {L1})");
    CHECK(both->count() == 2);
    auto pcs = pc_members(both);
    REQUIRE(pcs.size() == 1);
    CHECK(pcs[0]->name() == "L1");
}
