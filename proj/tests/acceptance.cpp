// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "support.hpp"

#include "posmod/amalgamation.hpp"
#include "posmod/apc.hpp"
#include "posmod/claims.hpp"
#include "posmod/morphisms.hpp"
#include "posmod/semantics.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

using namespace posmod;

namespace {

// Time limits in seconds.
constexpr double kSweepLimit = 300;
constexpr double kPosetLimit = 60;
constexpr double kInjectiveLimit = 120;
constexpr double kStrongLimit = 600;
constexpr double kClaimsLimit = 900;

constexpr int kRandomApc = 200;
constexpr int kRandomSpans = 500;

struct Outcome {
    bool passed = true;
    std::string detail;
    void fail(const std::string &why)
    {
        if (passed)
            detail = why;
        passed = false;
    }
};

int failures = 0;

void report(int number, const char *title, const Outcome &o, double seconds, double limit)
{
    Outcome out = o;
    if (limit > 0 && seconds >= limit)
        out.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(limit) + " s");
    std::printf("%s %d %s (%.2f s)%s%s\n", out.passed ? "PASS" : "FAIL", number, title, seconds,
                out.detail.empty() ? "" : ": ", out.detail.c_str());
    std::fflush(stdout);
    failures += out.passed ? 0 : 1;
}

double since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
double timed(F &&fn)
{
    auto start = std::chrono::steady_clock::now();
    fn();
    return since(start);
}

/// Every homomorphism between digraphs of size <= 3, up to isomorphism.
struct Sweep {
    std::vector<StructurePtr> members;
    std::vector<Morphism> homs;
};

const Sweep &sweep()
{
    static Sweep s = [] {
        Sweep out;
        out.members = testing::digraphs().model_class("models(empty,<=3)")->members();
        for (const auto &a : out.members)
            for (const auto &b : out.members)
                for (auto &h : enumerate_maps(a, b, MapKind::Hom))
                    out.homs.push_back(std::move(h));
        return out;
    }();
    return s;
}

std::string arrow(const Morphism &h) { return h.source->name() + " -> " + h.target->name(); }

long partitions(int n)
{
    // counts partitions by enumerating non-increasing part sequences
    std::function<long(int, int)> count = [&](int rest, int largest) -> long {
        if (rest == 0)
            return 1;
        long total = 0;
        for (int part = std::min(rest, largest); part >= 1; --part)
            total += count(rest - part, part);
        return total;
    };
    return count(n, n);
}

void immersion_oracle_agreement()
{
    Outcome o;
    long checked = 0;
    double seconds = timed([&] {
        const Sweep &s = sweep();
        PoolSpec spec;
        spec.variables = {"x", "y"};
        spec.max_existentials = 1;
        spec.guarantee_diagrams = true;
        FormulaPool pool(testing::digraphs().signature(), spec);
        for (const auto &h : s.homs) {
            ++checked;
            if (is_immersion(h).holds != is_immersion_oracle(h, pool).holds)
                o.fail("disagreement on " + arrow(h));
        }
    });
    o.detail = o.detail.empty() ? std::to_string(checked) + " homomorphisms" : o.detail;
    report(1, "immersion decision agrees with the pool oracle", o, seconds, kSweepLimit);
}

void class_inclusions()
{
    Outcome o;
    double seconds = timed([&] {
        for (const auto &h : sweep().homs) {
            Classification c = classify(h);
            bool hom = is_homomorphism(*h.source, *h.target, h.map);
            bool emb = is_embedding(*h.source, *h.target, h.map);
            if (!hom || !c.hom)
                o.fail("not a homomorphism: " + arrow(h));
            if (c.emb != emb)
                o.fail("embedding flag differs from the table check: " + arrow(h));
            if ((c.s_imm_absolute && !c.imm) || (c.imm && !c.emb) || (c.emb && !c.hom))
                o.fail("inclusion violated: " + arrow(h));
        }
    });
    report(2, "strong immersions within immersions within embeddings within homomorphisms", o, seconds, 0);
}

void poset_pc()
{
    Outcome o;
    double seconds = timed([&] {
        auto posets = testing::digraphs().model_class("models(posets,<=4)");
        int pcs = 0;
        for (const auto &m : posets->members()) {
            bool pc = is_pc_in(m, posets).holds;
            pcs += pc ? 1 : 0;
            if (pc != (m->size() == 1))
                o.fail(m->name() + " has pc = " + (pc ? "true" : "false"));
        }
        if (pcs != 1)
            o.fail(std::to_string(pcs) + " pc members");
    });
    report(3, "pc posets of size <= 4 are exactly the singletons", o, seconds, kPosetLimit);
}

void injective_suite()
{
    Outcome o;
    double seconds = timed([&] {
        const auto &u = testing::unary();
        auto inj = u.model_class("models(T_inj,<=3)");
        for (int n = 1; n <= 3; ++n) {
            long got = static_cast<long>(inj->stratum(n).size());
            if (got != partitions(n))
                o.fail("size " + std::to_string(n) + ": " + std::to_string(got) + " models, expected " +
                       std::to_string(partitions(n)));
        }
        if (!is_model_complete_in(u.model_class("{F1}")).holds)
            o.fail("{F1} is not model-complete");
        if (!is_apc_in(u.structure("F1"), inj, u.delta("qf(atoms<=2)")).holds)
            o.fail("F1 is not apc");
    });
    report(4, "injective-function models: counts, model completeness, apc fixpoint", o, seconds, kInjectiveLimit);
}

void witness_soundness()
{
    Outcome o;
    int hits = 0;
    double seconds = timed([&] {
        const auto &d = testing::digraphs();
        const auto &u = testing::unary();
        struct Setting {
            const Workspace *ws;
            ModelClassPtr cls;
            DeltaSet delta;
        };
        std::vector<Setting> settings{
            {&d, d.model_class("models(empty,<=2)"), d.delta("qf(atoms<=2)")},
            {&d, d.model_class("models(posets,<=3)"), d.delta("qf(atoms<=2)")},
            {&d, d.model_class("models(empty,<=3)"), d.delta("qf(atoms<=1)")},
            {&u, u.model_class("models(T_inj,<=3)"), u.delta("qf(atoms<=2)")},
            {&u, u.model_class("models(empty,<=3)"), u.delta("qf(atoms<=1)")},
        };
        auto rng = testing::rng(5);
        for (int i = 0; i < kRandomApc; ++i) {
            const Setting &s = settings[rng() % settings.size()];
            auto members = s.cls->members();
            auto a = members[rng() % members.size()];
            const DeltaFormula &phi = s.delta.formulas[rng() % s.delta.formulas.size()];
            auto w = apc_witness(a, s.cls, phi);
            if (!w)
                continue;
            ++hits;
            if (!is_apc_in(a, s.cls, DeltaSet{{phi}, "one"}).holds)
                o.fail("witness without apc: " + a->name() + " in " + s.cls->name());
        }
    });
    o.detail = o.detail.empty() ? std::to_string(hits) + " witness hits in " + std::to_string(kRandomApc) : o.detail;
    report(5, "apc witnesses are sound", o, seconds, 0);
}

void h_universal_agreement()
{
    Outcome o;
    long immersions = 0;
    double seconds = timed([&] {
        SentencePoolSpec spec;
        spec.universals = {"x", "y"};
        spec.max_atoms = 2;
        spec.max_existentials = 1;
        spec.h_universal_only = true;
        SentencePool pool(testing::digraphs().signature(), spec);
        std::map<const Structure *, std::vector<bool>> truth;
        for (const auto &m : sweep().members) {
            auto &bits = truth[m.get()];
            for (const auto &s : pool.sentences())
                bits.push_back(satisfies_sentence(*m, s).holds);
        }
        for (const auto &h : sweep().homs) {
            if (!is_immersion(h).holds)
                continue;
            ++immersions;
            if (truth[h.source.get()] != truth[h.target.get()])
                o.fail("fragments differ: " + arrow(h));
        }
    });
    o.detail = o.detail.empty() ? std::to_string(immersions) + " immersions" : o.detail;
    report(6, "immersions preserve bounded h-universal fragments", o, seconds, 0);
}

StructurePtr random_digraph(std::mt19937 &rng, int n, const SignaturePtr &sig)
{
    auto s = std::make_shared<Structure>(sig, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (rng() % 5 < 2)
                s->set_relation(0, std::vector<int>{x, y});
    return s;
}

std::vector<int> random_injection(std::mt19937 &rng, int n, int into)
{
    std::vector<int> out(static_cast<std::size_t>(into));
    std::iota(out.begin(), out.end(), 0);
    std::shuffle(out.begin(), out.end(), rng);
    out.resize(static_cast<std::size_t>(n));
    return out;
}

void strong_amalgamation()
{
    Outcome o;
    double seconds = timed([&] {
        auto rng = testing::rng(7);
        auto sig = testing::digraphs().signature();
        for (int i = 0; i < kRandomSpans; ++i) {
            auto b = random_digraph(rng, 1 + static_cast<int>(rng() % 4), sig);
            auto c = random_digraph(rng, 1 + static_cast<int>(rng() % 4), sig);
            int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(b->size(), c->size())));
            auto f = random_injection(rng, n, b->size());
            auto g = random_injection(rng, n, c->size());
            // the apex keeps the edges both legs preserve
            auto a = std::make_shared<Structure>(sig, n);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (b->holds(0, std::vector<int>{f[x], f[y]}) && c->holds(0, std::vector<int>{g[x], g[y]}) &&
                        rng() % 2)
                        a->set_relation(0, std::vector<int>{x, y});
            Square sq = free_amalgam(Span(Morphism(a, b, f), Morphism(a, c, g)));
            if (!sq.commutes() || !strong_condition_holds(sq).holds)
                o.fail("free amalgam not strong on span " + std::to_string(i));
        }

        const auto &d = testing::digraphs();
        auto posets3 = d.model_class("models(posets,<=3)");
        auto posets7 = d.model_class("models(posets,<=7)");
        for (const auto &a : posets3->members())
            if (!is_strong_basis(a, posets3, posets7, StrongVariant::Psa).holds)
                o.fail(a->name() + " is not PSA within posets <= 7");

        ClaimOptions options;
        options.filter = "psa-no-escape";
        for (const auto &row : run_claims(options))
            if (!row.passed || row.findings != 0)
                o.fail("psa-no-escape: " + row.detail);
    });
    report(7, "strong amalgamation: free amalgams, poset PSA bases, no escape from PSA bases", o, seconds,
           kStrongLimit);
}

void strong_immersion_degeneracy()
{
    Outcome o;
    double seconds = timed([&] {
        for (const auto &h : sweep().homs) {
            Verdict v = is_s_immersion_absolute(h);
            bool iso = is_embedding(*h.source, *h.target, h.map) && h.is_surjective();
            if (v.holds != iso)
                o.fail("absolute strong immersion differs from isomorphism: " + arrow(h));
            if (h.is_surjective() || !is_immersion(h).holds)
                continue;
            if (!v.witness || !v.witness->sentence || !(*v.witness->sentence == covering_sentence(h.source->size())))
                o.fail("missing covering sentence for " + arrow(h));
        }
    });
    report(8, "absolute strong immersions are the isomorphisms", o, seconds, 0);
}

void claim_suite()
{
    Outcome o;
    int asserted = 0, searched = 0, skipped = 0;
    double seconds = timed([&] {
        for (const auto &row : run_claims()) {
            switch (row.kind) {
            case ClaimKind::Asserted:
                ++asserted;
                if (!row.passed)
                    o.fail(row.id + " failed: " + row.detail);
                break;
            case ClaimKind::Search:
                ++searched;
                if (!row.passed)
                    o.fail(row.id + " did not complete: " + row.detail);
                else if (row.findings != 0 && row.detail.find("bound") == std::string::npos &&
                         row.detail.find("budget") == std::string::npos)
                    o.fail(row.id + " has findings without a budget explanation");
                break;
            case ClaimKind::SkippedAbsolute:
                ++skipped;
                break;
            }
        }
    });
    if (o.passed)
        o.detail = std::to_string(asserted) + " asserted, " + std::to_string(searched) + " search, " +
                   std::to_string(skipped) + " skipped";
    report(9, "claim suite", o, seconds, kClaimsLimit);
}

} // namespace

int main()
{
    immersion_oracle_agreement();
    class_inclusions();
    poset_pc();
    injective_suite();
    witness_soundness();
    h_universal_agreement();
    strong_amalgamation();
    strong_immersion_degeneracy();
    claim_suite();
    return failures;
}
