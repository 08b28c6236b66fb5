#include "support.hpp"

#include "posmod/morphisms.hpp"
#include "posmod/syntax.hpp"

#include <doctest.h>

using namespace posmod;
using testing::digraphs;
using testing::unary;

namespace {

Morphism map_of(const Workspace &ws, const char *a, const char *b, std::vector<int> map)
{
    return Morphism(ws.structure(a), ws.structure(b), std::move(map));
}

FormulaPool guaranteed_pool(const SignaturePtr &sig, int depth)
{
    PoolSpec spec;
    spec.variables = {"x", "y"};
    spec.max_atoms = 1;
    spec.max_existentials = 1;
    spec.max_term_depth = depth;
    spec.guarantee_diagrams = true;
    return FormulaPool(sig, spec);
}

} // namespace

TEST_CASE("map enumeration by kind")
{
    const auto &d = digraphs();
    CHECK(enumerate_maps(unary().structure("F1"), unary().structure("C2"), MapKind::Hom).empty());
    auto homs = enumerate_maps(d.structure("E2"), d.structure("L1"), MapKind::Hom);
    REQUIRE(homs.size() == 1);
    CHECK(homs[0].map == std::vector<int>{0, 0});
    auto embs = enumerate_maps(d.structure("P1"), d.structure("E2"), MapKind::Emb);
    REQUIRE(embs.size() == 2);
    CHECK(embs[0].map == std::vector<int>{0});
    CHECK(embs[1].map == std::vector<int>{1});
}

TEST_CASE("decisions reject maps that are not homomorphisms")
{
    Morphism loop_to_edge = map_of(digraphs(), "L1", "E2", {0});
    CHECK_THROWS_AS(is_immersion(loop_to_edge), NotAHomomorphism);
    CHECK_THROWS_AS(is_s_immersion_absolute(loop_to_edge), NotAHomomorphism);
}

TEST_CASE("immersion decisions")
{
    const auto &d = digraphs();
    SUBCASE("identity")
    {
        auto e2 = d.structure("E2");
        CHECK(is_immersion(Morphism(e2, e2, {0, 1})).holds);
    }
    SUBCASE("a point into the tail of an edge")
    {
        Verdict v = is_immersion(map_of(d, "P1", "E2", {0}));
        CHECK_FALSE(v.holds);
        REQUIRE(v.witness);
        REQUIRE(v.witness->formula);
        CHECK(render(*v.witness->formula) == "exists y1. R(x0,y1)");
        // the witness formula holds at the image and fails at the source
        CHECK(evaluate(*d.structure("E2"), *v.witness->formula, {{"x0", 0}}));
        CHECK_FALSE(evaluate(*d.structure("P1"), *v.witness->formula, {{"x0", 0}}));
    }
    SUBCASE("the fixpoint into a fixpoint plus a swap")
    {
        CHECK(is_immersion(map_of(unary(), "F1", "B3", {0})).holds);
    }
    SUBCASE("a collapsing map is not an immersion")
    {
        Verdict v = is_immersion(map_of(unary(), "M2", "F1", {0, 0}));
        CHECK_FALSE(v.holds);
        REQUIRE(v.witness);
        CHECK(v.witness->tuple == std::vector<int>{0, 1});
    }
}

TEST_CASE("immersion oracle on the same examples")
{
    const auto &d = digraphs();
    auto rpool = guaranteed_pool(d.signature(), 0);
    auto fpool = guaranteed_pool(unary().signature(), 1);
    CHECK_FALSE(is_immersion_oracle(map_of(d, "P1", "E2", {0}), rpool).holds);
    auto e2 = d.structure("E2");
    CHECK(is_immersion_oracle(Morphism(e2, e2, {0, 1}), rpool).holds);
    CHECK(is_immersion_oracle(map_of(unary(), "F1", "B3", {0}), fpool).holds);
}

TEST_CASE("oracle without the diagram formula warns")
{
    PoolSpec spec;
    spec.variables = {"x"};
    FormulaPool small(digraphs().signature(), spec);
    Verdict v = is_immersion_oracle(map_of(digraphs(), "P1", "E2", {0}), small);
    CHECK(v.holds);
    REQUIRE(v.warnings.size() == 1);
    CHECK(v.warnings[0].rfind("PoolTooSmall", 0) == 0);
}

TEST_CASE("strong immersions between finite structures")
{
    auto e2 = digraphs().structure("E2");
    Morphism id(e2, e2, {0, 1});
    CHECK(is_s_immersion_absolute(id).holds);

    Morphism h = map_of(unary(), "F1", "B3", {0});
    Verdict absolute = is_s_immersion_absolute(h);
    CHECK_FALSE(absolute.holds);
    REQUIRE(absolute.witness);
    REQUIRE(absolute.witness->sentence);
    CHECK(render(*absolute.witness->sentence) == "forall x. true -> x = c0");
    CHECK(*absolute.witness->sentence == covering_sentence(1));

    SentencePoolSpec spec;
    spec.universals = {"x"};
    spec.parameters = {"c0"};
    spec.max_atoms = 1;
    SentencePool pool(unary().signature(), spec);
    REQUIRE(pool.contains(covering_sentence(1)));
    CHECK_FALSE(is_s_immersion_bounded(h, pool).holds);
    CHECK(is_s_immersion_bounded(Morphism(h.source, h.source, {0}), pool).holds);

    CHECK_FALSE(is_s_immersion_absolute(map_of(unary(), "M2", "F1", {0, 0})).holds);
}

TEST_CASE("decision procedure agrees with the oracle on small classes")
{
    for (const auto &[ws, depth] : {std::pair{&digraphs(), 0}, std::pair{&unary(), 1}}) {
        auto pool = guaranteed_pool(ws->signature(), depth);
        auto members = ws->model_class("models(empty,<=2)")->members();
        for (const auto &a : members)
            for (const auto &b : members)
                for (const auto &h : enumerate_maps(a, b, MapKind::Hom))
                    CHECK_MESSAGE(is_immersion(h).holds == is_immersion_oracle(h, pool).holds,
                                  a->name() << " -> " << b->name());
    }
}

TEST_CASE("classification is monotone")
{
    auto members = digraphs().model_class("models(empty,<=2)")->members();
    for (const auto &a : members)
        for (const auto &b : members)
            for (const auto &h : enumerate_maps(a, b, MapKind::Hom)) {
                Classification c = classify(h);
                CHECK(c.hom);
                CHECK((!c.emb || c.hom));
                CHECK((!c.imm || c.emb));
                CHECK((!c.s_imm_absolute || c.imm));
                CHECK(c.s_imm_absolute == (c.emb && h.is_surjective()));
            }
}
