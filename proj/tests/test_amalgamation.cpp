#include "support.hpp"

#include "posmod/amalgamation.hpp"
#include "posmod/morphisms.hpp"
#include "posmod/semantics.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace posmod;
using testing::digraphs;
using testing::unary;

namespace {

Span named_span(const Workspace &ws, const char *apex, const char *left, std::vector<int> f, const char *right,
                std::vector<int> g)
{
    return Span(Morphism(ws.structure(apex), ws.structure(left), std::move(f)),
                Morphism(ws.structure(apex), ws.structure(right), std::move(g)));
}

/// Direct reading of the strong condition on one pair.
bool glued_from_apex(const Square &sq, int b, int c)
{
    const Span &s = sq.span;
    for (int a = 0; a < s.apex()->size(); ++a)
        if (s.f(a) == b && s.g(a) == c)
            return true;
    return false;
}

StructurePtr random_digraph(std::mt19937 &rng, int n, const SignaturePtr &sig)
{
    auto s = std::make_shared<Structure>(sig, n);
    std::bernoulli_distribution coin(0.4);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (coin(rng))
                s->set_relation(0, std::vector<int>{x, y});
    return s;
}

/// An apex with an injective leg into `b`: the preimage of a random subset,
/// keeping each edge of the induced substructure with probability 1/2.
std::pair<StructurePtr, std::vector<int>> random_sub(std::mt19937 &rng, const StructurePtr &b, int n)
{
    std::vector<int> pick(static_cast<std::size_t>(b->size()));
    std::iota(pick.begin(), pick.end(), 0);
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(static_cast<std::size_t>(n));
    auto a = std::make_shared<Structure>(b->signature_ptr(), n);
    std::bernoulli_distribution coin(0.5);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (b->holds(0, std::vector<int>{pick[x], pick[y]}) && coin(rng))
                a->set_relation(0, std::vector<int>{x, y});
    return {a, pick};
}

} // namespace

TEST_CASE("amalgamation kinds")
{
    CHECK(AmalgamationKind::parse("h").describe() == "[h,h,h,h]");
    CHECK(AmalgamationKind::parse("h,i").describe() == "[h,i,i,h]");
    CHECK(AmalgamationKind::asymmetric('s', 'i').describe() == "[s,i,s,i] with absolute s");
    CHECK(AmalgamationKind::parse("i,h,s,h").describe() == "[i,h,s,h] with absolute s");
    CHECK_FALSE(AmalgamationKind::parse("h,e").uses_strong());
    CHECK(AmalgamationKind::parse("e,s").uses_strong());
    CHECK_THROWS(AmalgamationKind::parse("h,x"));
    CHECK_THROWS(AmalgamationKind::parse("h,e,i"));
}

TEST_CASE("square search")
{
    const auto &d = digraphs();
    auto d2 = d.model_class("models(empty,<=2)");

    SUBCASE("identity span closes on its apex")
    {
        for (const char *name : {"P1", "L1"}) {
            auto a = d.structure(name);
            Span id(Morphism(a, a, {0}), Morphism(a, a, {0}));
            auto sq = amalgamate(id, d2, AmalgamationKind::parse("h"));
            REQUIRE(sq);
            CHECK(are_isomorphic(*sq->amalgam(), *a));
            CHECK(sq->commutes());
        }
        // the smallest amalgam comes first: an edge collapses onto a loop
        auto e2 = d.structure("E2");
        Span id(Morphism(e2, e2, {0, 1}), Morphism(e2, e2, {0, 1}));
        auto sq = amalgamate(id, d2, AmalgamationKind::parse("h"));
        REQUIRE(sq);
        CHECK(are_isomorphic(*sq->amalgam(), *d.structure("L1")));
        auto embedded = amalgamate(id, d2, AmalgamationKind::parse("e"));
        REQUIRE(embedded);
        CHECK(are_isomorphic(*embedded->amalgam(), *e2));
    }
    SUBCASE("a point glued into a loop and an edge lands on the loop")
    {
        auto sq = amalgamate(d.span("loop_edge"), d2, AmalgamationKind::parse("h"));
        REQUIRE(sq);
        CHECK(are_isomorphic(*sq->amalgam(), *d.structure("L1")));
        CHECK(sq->commutes());
    }
    SUBCASE("two out-edges need three points for a strong square")
    {
        AmalgamateOptions strong{true};
        CHECK_FALSE(amalgamate(d.span("fan"), d2, AmalgamationKind::parse("h"), strong));
        auto sq = amalgamate(d.span("fan"), d.model_class("models(empty,<=3)"), AmalgamationKind::parse("h"), strong);
        REQUIRE(sq);
        CHECK(sq->amalgam()->size() == 3);
        CHECK(strong_condition_holds(*sq).holds);
    }
    SUBCASE("legs must have the requested kinds")
    {
        CHECK_THROWS_AS(amalgamate(d.span("loop_edge"), d2, AmalgamationKind::parse("e")), KindMismatch);
    }
}

TEST_CASE("free amalgams")
{
    SUBCASE("two edges from a point")
    {
        Square sq = free_amalgam(digraphs().span("fan"));
        const Structure &d = *sq.amalgam();
        REQUIRE(d.size() == 3);
        CHECK(sq.f_prime.map == std::vector<int>{0, 1});
        CHECK(sq.g_prime.map == std::vector<int>{0, 2});
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                CHECK(d.holds(0, std::vector<int>{x, y}) == (x == 0 && y > 0));
        CHECK(sq.commutes());
    }
    SUBCASE("two fixpoint pairs over one fixpoint")
    {
        Workspace ws = unary();
        ws.extend("structure I2 : U { universe 2; f = [0,1]; }");
        Square sq = free_amalgam(named_span(ws, "F1", "I2", {0}, "I2", {0}));
        REQUIRE(sq.amalgam()->size() == 3);
        CHECK(sq.amalgam()->function_table(0) == std::vector<int>{0, 1, 2});
    }
    SUBCASE("a collapsing leg leaves the target unchanged")
    {
        Square sq = free_amalgam(unary().span("fixpoints"));
        CHECK(are_isomorphic(*sq.amalgam(), *unary().structure("M2")));
        CHECK(sq.commutes());
    }
}

TEST_CASE("strong condition")
{
    const auto &d = digraphs();
    Square free = free_amalgam(d.span("fan"));
    CHECK(strong_condition_holds(free).holds);

    auto l1 = d.structure("L1");
    Square collapsed{d.span("fan"), Morphism(d.structure("E2"), l1, {0, 0}), Morphism(d.structure("E2"), l1, {0, 0})};
    REQUIRE(collapsed.commutes());
    Verdict v = strong_condition_holds(collapsed);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    REQUIRE(v.witness->tuple.size() == 2);
    int b = v.witness->tuple[0];
    int c = v.witness->tuple[1];
    CHECK(collapsed.f_prime(b) == collapsed.g_prime(c));
    CHECK_FALSE(glued_from_apex(collapsed, b, c));

    auto e2 = d.structure("E2");
    Span id(Morphism(e2, e2, {0, 1}), Morphism(e2, e2, {0, 1}));
    CHECK(strong_condition_holds(Square{id, Morphism(e2, e2, {0, 1}), Morphism(e2, e2, {0, 1})}).holds);
}

TEST_CASE("amalgamation bases")
{
    const auto &d = digraphs();
    auto posets2 = d.model_class("models(posets,<=2)");
    auto point = posets2->stratum(1)[0];
    CHECK(is_amalg_basis(point, posets2, d.model_class("models(posets,<=4)"), AmalgamationKind::parse("h")).holds);

    auto d2 = d.model_class("models(empty,<=2)");
    auto with_loop = d.model_class("union(models(empty,<=2), {L1})");
    CHECK(is_amalg_basis(d.structure("P1"), d2, with_loop, AmalgamationKind::parse("h")).holds);

    CHECK(is_amalg_basis(d.structure("L1"), d2, d.model_class("models(empty,<=4)"), AmalgamationKind::parse("h,i"))
              .holds);
}

TEST_CASE("strong amalgamation bases")
{
    const auto &d = digraphs();
    auto posets3 = d.model_class("models(posets,<=3)");
    auto posets7 = d.model_class("models(posets,<=7)");
    for (const auto &a : posets3->members())
        CHECK(is_strong_basis(a, posets3, posets7, StrongVariant::Psa).holds);

    auto d2 = d.model_class("models(empty,<=2)");
    CHECK(is_strong_basis(d.structure("L1"), d2, d.model_class("models(empty,<=4)"), StrongVariant::Hsa).holds);

    auto edge = d.model_class("{E2}");
    Verdict small = is_strong_basis(d.structure("P1"), edge, d2, StrongVariant::Psa);
    CHECK_FALSE(small.holds);
    REQUIRE(small.witness);
    CHECK(is_strong_basis(d.structure("P1"), edge, d.model_class("models(empty,<=3)"), StrongVariant::Psa).holds);
}

TEST_CASE("free amalgams of random injective spans are strong and universal")
{
    auto rng = testing::rng(23);
    auto sig = digraphs().signature();
    std::uniform_int_distribution<int> size(1, 3);
    for (int round = 0; round < 100; ++round) {
        auto b = random_digraph(rng, size(rng) + 1, sig);
        auto c = random_digraph(rng, size(rng) + 1, sig);
        int n = std::min({b->size(), c->size(), size(rng)});
        auto [a, f] = random_sub(rng, b, n);
        // a second injective leg: an embedding-compatible image in c
        std::vector<int> g(static_cast<std::size_t>(c->size()));
        std::iota(g.begin(), g.end(), 0);
        std::shuffle(g.begin(), g.end(), rng);
        g.resize(static_cast<std::size_t>(n));
        auto apex = std::make_shared<Structure>(*a);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (!c->holds(0, std::vector<int>{g[x], g[y]}))
                    apex->set_relation(0, std::vector<int>{x, y}, false);
        Span span(Morphism(apex, b, f), Morphism(apex, c, g));
        Square free = free_amalgam(span);
        CHECK(free.commutes());
        CHECK(strong_condition_holds(free).holds);
        CHECK(free.amalgam()->size() == b->size() + c->size() - n);

        // the complete digraph on one point receives every cocone
        Workspace ws = digraphs();
        auto l1 = ws.structure("L1");
        Square cocone{span, Morphism(b, l1, std::vector<int>(b->size(), 0)),
                      Morphism(c, l1, std::vector<int>(c->size(), 0))};
        auto u = mediating_map(free, cocone);
        REQUIRE(u);
        CHECK(is_homomorphism(*free.amalgam(), *l1, *u));
    }
}
