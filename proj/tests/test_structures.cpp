#include "support.hpp"

#include "posmod/models.hpp"
#include "posmod/structure.hpp"
#include "posmod/syntax.hpp"

#include <doctest.h>

#include <numeric>

using namespace posmod;
using testing::digraphs;
using testing::unary;

namespace {

bool eval_at(const Workspace &ws, const char *structure, const char *formula, Assignment at = {})
{
    return evaluate(*ws.structure(structure), ws.formula(formula), at);
}

/// Digraphs with loops on n unlabeled vertices, by Burnside over the
/// action of S_n on ordered pairs.
long burnside_digraphs(int n)
{
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    long total = 0;
    long orders = 0;
    do {
        std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
        int cycles = 0;
        for (int start = 0; start < n * n; ++start) {
            if (seen[start])
                continue;
            ++cycles;
            for (int p = start; !seen[p]; p = perm[p / n] * n + perm[p % n])
                seen[p] = true;
        }
        total += 1L << cycles;
        ++orders;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / orders;
}

long partitions(int n)
{
    std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int k = part; k <= n; ++k)
            p[k] += p[k - part];
    return p[n];
}

} // namespace

TEST_CASE("formula evaluation on small structures")
{
    CHECK(eval_at(digraphs(), "E2", "exists y. R(x,y)", {{"x", 0}}));
    CHECK_FALSE(eval_at(digraphs(), "E2", "exists y. R(x,y)", {{"x", 1}}));
    CHECK_FALSE(eval_at(unary(), "C2", "exists x. f(x) = x"));
    CHECK(eval_at(digraphs(), "L1", "R(x,x)", {{"x", 0}}));
    CHECK_THROWS_AS(eval_at(digraphs(), "L1", "R(x,x)"), UnassignedVariable);
}

TEST_CASE("sentence checks with counterexamples")
{
    const auto &ws = unary();
    HInductiveSentence inj = ws.sentence("forall x y. f(x) = f(y) -> x = y");
    CHECK(satisfies_sentence(*ws.structure("C2"), inj).holds);
    SentenceCheck m2 = satisfies_sentence(*ws.structure("M2"), inj);
    CHECK_FALSE(m2.holds);
    CHECK(m2.counter_assignment == std::vector<int>{0, 1});
    CHECK_FALSE(satisfies_sentence(*ws.structure("F1"), ws.sentence("forall x. f(x) = x -> false")).holds);
}

TEST_CASE("positive diagrams")
{
    auto e2 = digraphs().structure("E2");
    auto plus = diag_plus(*e2);
    REQUIRE(plus.size() == 1);
    CHECK(render(plus[0], e2->signature()) == "R(c0,c1)");

    auto f1 = unary().structure("F1");
    auto fplus = diag_plus(*f1);
    REQUIRE(fplus.size() == 1);
    CHECK(render(fplus[0], f1->signature()) == "f(c0) = c0");

    Diagram d = diag(*digraphs().structure("P1"));
    CHECK(d.positive.empty());
    REQUIRE(d.negative.size() == 1);
    CHECK_FALSE(d.negative[0].positive);
    CHECK(d.negative[0].args == std::vector<int>{0, 0});
}

TEST_CASE("diagram formulas at a point")
{
    const auto &ws = digraphs();
    std::vector<int> zero{0};
    CHECK(render(diagram_formula(*ws.structure("L1"), zero)) == "R(x0,x0)");
    CHECK(render(diagram_formula(*ws.structure("E2"), zero)) == "exists y1. R(x0,y1)");

    // In the swap, the diagram at a point says the point has period two.
    auto c2 = unary().structure("C2");
    Formula phi = diagram_formula(*c2, zero);
    Formula period = unary().formula("f(f(x0)) = x0");
    for (const auto &m : unary().model_class("models(empty,<=3)")->members())
        for (int e = 0; e < m->size(); ++e) {
            Assignment at{{"x0", e}};
            CHECK(evaluate(*m, phi, at) == evaluate(*m, period, at));
        }
}

TEST_CASE("model counts up to isomorphism")
{
    SUBCASE("injective unary functions are counted by partitions")
    {
        auto cls = unary().model_class("models(T_inj,<=5)");
        for (int n = 1; n <= 5; ++n)
            CHECK(static_cast<long>(cls->stratum(n).size()) == partitions(n));
        CHECK(unary().model_class("models(T_inj,<=3)")->count() == 6);
    }
    SUBCASE("fixpoint-free injective functions up to size 3 are the 2- and 3-cycle")
    {
        auto cls = unary().model_class("models(T_fpf,<=3)");
        CHECK(cls->count() == 2);
        CHECK(cls->stratum(2).size() == 1);
        CHECK(cls->stratum(3).size() == 1);
    }
    SUBCASE("digraphs match the orbit count")
    {
        auto cls = digraphs().model_class("models(empty,<=3)");
        CHECK(cls->stratum(1).size() == 2);
        for (int n = 1; n <= 3; ++n)
            CHECK(static_cast<long>(cls->stratum(n).size()) == burnside_digraphs(n));
    }
    SUBCASE("posets")
    {
        // unlabeled posets on 1..4 points
        auto cls = digraphs().model_class("models(posets,<=4)");
        const long expected[] = {1, 2, 5, 16};
        for (int n = 1; n <= 4; ++n)
            CHECK(static_cast<long>(cls->stratum(n).size()) == expected[n - 1]);
    }
}

TEST_CASE("canonical forms are invariant under relabeling")
{
    auto rng = testing::rng(11);
    for (const auto &m : digraphs().model_class("models(empty,<=3)")->members()) {
        std::vector<int> perm(static_cast<std::size_t>(m->size()));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Structure p = m->permuted(perm);
        CHECK(canonical_code(p) == canonical_code(*m));
        auto iso = find_isomorphism(*m, p);
        REQUIRE(iso);
        for (int a = 0; a < m->size(); ++a)
            for (int b = 0; b < m->size(); ++b)
                CHECK(m->holds(0, std::vector<int>{a, b}) == p.holds(0, std::vector<int>{(*iso)[a], (*iso)[b]}));
    }
}

TEST_CASE("distinct members are pairwise non-isomorphic")
{
    auto members = unary().model_class("models(empty,<=3)")->members();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            CHECK_FALSE(are_isomorphic(*members[i], *members[j]));
}
