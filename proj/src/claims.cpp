#include "posmod/claims.hpp"

#include "posmod/amalgamation.hpp"
#include "posmod/apc.hpp"
#include "posmod/semantics.hpp"
#include "posmod/syntax.hpp"
#include "posmod/workspace.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace posmod {

std::string to_string(ClaimKind kind)
{
    switch (kind) {
    case ClaimKind::Asserted:
        return "ASSERTED";
    case ClaimKind::Search:
        return "SEARCH";
    case ClaimKind::SkippedAbsolute:
        return "SKIPPED-ABSOLUTE";
    }
    return "?";
}

Json to_json(const ClaimRow &row)
{
    Json j;
    j["id"] = row.id;
    j["kind"] = to_string(row.kind);
    j["claim"] = row.claim;
    j["passed"] = row.passed;
    j["findings"] = row.findings;
    j["checked"] = row.checked;
    j["scope"] = row.scope;
    j["detail"] = row.detail;
    j["seconds"] = row.seconds;
    return j;
}

namespace {

/// A finite class with the theory it was generated from, so budgets over
/// the same theory can be built.
struct Family {
    std::shared_ptr<Workspace> ws;
    std::string theory;
    int size;

    ModelClassPtr cls() const { return at(size); }
    ModelClassPtr at(int n) const
    {
        return ws->model_class("models(" + theory + ",<=" + std::to_string(n) + ")");
    }
};

Family digraphs(int n) { return {bundled_workspace("digraphs"), "empty", n}; }
Family posets(int n) { return {bundled_workspace("digraphs"), "posets", n}; }
Family injective(int n) { return {bundled_workspace("unary"), "T_inj", n}; }
Family unary(int n) { return {bundled_workspace("unary"), "empty", n}; }

std::string names_of(const std::vector<Family> &families)
{
    std::string out;
    for (const auto &f : families)
        out += (out.empty() ? "" : ", ") + f.cls()->name();
    return out;
}

template <typename F>
void each_hom(const StructurePtr &a, const StructurePtr &b, F &&fn)
{
    search_homs(*a, *b, {}, [&](const std::vector<int> &h) {
        fn(h);
        return false;
    });
}

int term_depth_for(const Signature &sig)
{
    for (const auto &f : sig.functions())
        if (f.arity > 0)
            return 1;
    return 0;
}

FormulaPool pool_over(const ModelClassPtr &cls, std::vector<std::string> vars, int atoms)
{
    PoolSpec spec;
    spec.variables = std::move(vars);
    spec.max_atoms = atoms;
    spec.max_term_depth = term_depth_for(*cls->signature());
    return FormulaPool(cls->signature(), spec);
}

DeltaSet standard_delta(const ModelClassPtr &cls, int atoms)
{
    DeltaSet d = DeltaSet::from_pool(pool_over(cls, {"x", "y"}, atoms), {"x"}, {"y"});
    d.description = "qf(atoms<=" + std::to_string(atoms) + ")";
    return d;
}

std::vector<std::string> with(std::vector<std::string> names, const std::string &extra)
{
    names.push_back(extra);
    return names;
}

/// A formula over element names a0, a1, ... and one more variable, as a
/// Delta entry whose parameters are those elements.
DeltaFormula named_entry(const Formula &phi, const std::string &variable)
{
    DeltaFormula d;
    d.formula = phi;
    for (const auto &v : free_variables(phi)) {
        if (v == variable) {
            d.existentials.push_back(v);
            continue;
        }
        d.parameters.push_back(v);
        d.fixed.push_back(std::stoi(v.substr(1)));
    }
    return d;
}

/// Formulas phi(a, x) over the elements of A that are realized in T+(A)
/// and have a realized companion psi(a, y) forcing an overlap.
std::vector<DeltaFormula> e_formulas(const StructurePtr &a, const ModelClassPtr &cls, int atoms)
{
    Scope scope = Scope::expansion(a, cls);
    auto names = element_names(a->size());
    FormulaPool phis = pool_over(cls, with(names, "x"), atoms);
    FormulaPool psis = pool_over(cls, with(names, "y"), atoms);
    std::vector<DeltaFormula> out;
    for (const auto &phi : phis.formulas()) {
        if (!is_realized_in(scope, phi).holds)
            continue;
        if (e_membership(scope, phi, psis))
            out.push_back(named_entry(phi, "x"));
    }
    return out;
}

Assignment element_assignment(const std::vector<std::string> &params)
{
    Assignment out;
    for (const auto &p : params)
        out[p] = std::stoi(p.substr(1));
    return out;
}

/// Formulas phi(a, y) with one free variable besides element names that
/// are algebraic in T+(A) but not closed for A. Closedness is checked
/// first; the algebraic test only runs on formulas that escape.
int algebraic_not_closed(const StructurePtr &a, const ModelClassPtr &cls, int atoms, long &checked,
                         std::string &example)
{
    Scope scope = Scope::expansion(a, cls);
    auto names = element_names(a->size());
    FormulaPool phis = pool_over(cls, with(names, "y"), atoms);
    FormulaPool psis = pool_over(cls, with(names, "z"), atoms);
    int bad = 0;
    for (const auto &phi : phis.formulas()) {
        ++checked;
        DeltaFormula entry = named_entry(phi, "y");
        if (is_closed_formula(a, cls, phi, element_assignment(entry.parameters)).holds)
            continue;
        if (is_algebraic(scope, phi, psis).holds) {
            ++bad;
            if (example.empty())
                example = a->name() + ": " + render(phi);
        }
    }
    return bad;
}

class Runner {
public:
    explicit Runner(const ClaimOptions &options) : options_(options) {}

    template <typename Body>
    void row(std::string id, std::string claim, ClaimKind kind, Body &&body)
    {
        if (!options_.filter.empty() && id.find(options_.filter) == std::string::npos)
            return;
        ClaimRow r;
        r.id = std::move(id);
        r.claim = std::move(claim);
        r.kind = kind;
        auto start = std::chrono::steady_clock::now();
        try {
            body(r);
            if (kind == ClaimKind::Asserted)
                r.passed = r.findings == 0;
            else
                r.passed = true;
        }
        catch (const std::exception &e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options_.progress)
            options_.progress(r);
        rows_.push_back(std::move(r));
    }

    void skipped(std::string id, std::string claim, std::string reason)
    {
        row(std::move(id), std::move(claim), ClaimKind::SkippedAbsolute, [&](ClaimRow &r) {
            r.scope = "none";
            r.detail = reason;
        });
    }

    std::vector<ClaimRow> take() { return std::move(rows_); }

private:
    const ClaimOptions &options_;
    std::vector<ClaimRow> rows_;
};

void note(ClaimRow &r, const std::string &example)
{
    if (r.detail.empty())
        r.detail = "first violation: " + example;
}

std::vector<ModelClassPtr> sweep_classes() { return {digraphs(2).cls(), unary(3).cls()}; }

void morphism_rows(Runner &run)
{
    run.row("map-inclusions",
            "strong immersions are immersions, immersions are injective embeddings, and absolute strong "
            "immersions are exactly the isomorphisms",
            ClaimKind::Asserted, [](ClaimRow &r) {
                r.scope = "all maps between members of models(empty,<=2) over {R/2} and models(empty,<=3) over {f/1}";
                for (const auto &cls : sweep_classes()) {
                    auto members = cls->members();
                    for (const auto &a : members)
                        for (const auto &b : members)
                            each_hom(a, b, [&](const std::vector<int> &map) {
                                Morphism h(a, b, map);
                                ++r.checked;
                                bool emb = is_embedding(*a, *b, map);
                                bool imm = is_immersion(h).holds;
                                bool sm = is_s_immersion_absolute(h).holds;
                                bool iso = emb && h.is_surjective();
                                if ((sm && !imm) || (imm && !emb) || (imm && !h.is_injective()) || sm != iso) {
                                    ++r.findings;
                                    note(r, a->name() + " -> " + b->name());
                                }
                            });
                }
            });

    run.row("hu-fragment-agreement",
            "an immersion's source and target satisfy the same h-universal sentences of the bounded pool",
            ClaimKind::Asserted, [](ClaimRow &r) {
                r.scope = "immersions between members of models(empty,<=2) over {R/2} and models(empty,<=3) over "
                          "{f/1}; h-universal sentences over x y with <= 2 atoms and <= 1 existential";
                for (const auto &cls : sweep_classes()) {
                    SentencePoolSpec spec;
                    spec.universals = {"x", "y"};
                    spec.max_atoms = 2;
                    spec.max_existentials = 1;
                    spec.h_universal_only = true;
                    SentencePool pool(cls->signature(), spec);
                    auto members = cls->members();
                    std::map<const Structure *, std::vector<bool>> truth;
                    for (const auto &m : members) {
                        auto &bits = truth[m.get()];
                        for (const auto &s : pool.sentences())
                            bits.push_back(satisfies_sentence(*m, s).holds);
                    }
                    for (const auto &a : members)
                        for (const auto &b : members)
                            each_hom(a, b, [&](const std::vector<int> &map) {
                                if (!is_immersion(Morphism(a, b, map)).holds)
                                    return;
                                ++r.checked;
                                if (truth[a.get()] != truth[b.get()]) {
                                    ++r.findings;
                                    note(r, a->name() + " -> " + b->name());
                                }
                            });
                }
            });
}

void pc_rows(Runner &run)
{
    const std::vector<Family> families{digraphs(3), posets(3), injective(3)};

    run.row("pc-homs-immerse", "every homomorphism between pc members is an immersion", ClaimKind::Asserted,
            [&](ClaimRow &r) {
                r.scope = names_of(families);
                for (const auto &fam : families) {
                    auto pcs = pc_members(fam.cls());
                    for (const auto &a : pcs)
                        for (const auto &b : pcs)
                            each_hom(a, b, [&](const std::vector<int> &map) {
                                ++r.checked;
                                if (!is_immersion(Morphism(a, b, map)).holds) {
                                    ++r.findings;
                                    note(r, a->name() + " -> " + b->name());
                                }
                            });
                }
            });

    run.row("pc-h-amalgamation", "every pc member is an [h]-amalgamation basis of its class", ClaimKind::Asserted,
            [&](ClaimRow &r) {
                r.scope = names_of(families) + "; amalgams inside the same class";
                for (const auto &fam : families)
                    for (const auto &a : pc_members(fam.cls())) {
                        ++r.checked;
                        if (!is_amalg_basis(a, fam.cls(), fam.cls(), AmalgamationKind::parse("h")).holds) {
                            ++r.findings;
                            note(r, a->name() + " in " + fam.cls()->name());
                        }
                    }
            });

    run.row("pc-hi-symmetric", "every pc member is an [h,i,i,h]-amalgamation basis", ClaimKind::Asserted,
            [&](ClaimRow &r) {
                r.scope = names_of(families) + "; amalgams up to twice the class bound";
                for (const auto &fam : families)
                    for (const auto &a : pc_members(fam.cls())) {
                        ++r.checked;
                        auto budget = fam.at(2 * fam.size);
                        if (!is_amalg_basis(a, fam.cls(), budget, AmalgamationKind::parse("h,i")).holds) {
                            ++r.findings;
                            note(r, a->name() + " in " + fam.cls()->name());
                        }
                    }
            });

    run.row("poset-pc-singletons", "the pc posets are exactly the one-element posets", ClaimKind::Asserted,
            [](ClaimRow &r) {
                auto cls = posets(4).cls();
                r.scope = cls->name();
                for (const auto &m : cls->members()) {
                    ++r.checked;
                    bool pc = is_pc_in(m, cls).holds;
                    if (pc != (m->size() == 1)) {
                        ++r.findings;
                        note(r, render_structure(*m));
                    }
                }
            });

    run.row("entails-antitone", "a sentence refuted in a class stays refuted in every larger class",
            ClaimKind::Asserted, [](ClaimRow &r) {
                auto small = digraphs(2).cls();
                auto large = digraphs(3).cls();
                SentencePoolSpec spec;
                spec.universals = {"x", "y"};
                spec.max_atoms = 2;
                SentencePool pool(small->signature(), spec);
                r.scope = small->name() + " inside " + large->name() + "; sentences over x y with <= 2 atoms";
                for (const auto &s : pool.sentences()) {
                    ++r.checked;
                    if (!entails(small, s).holds && entails(large, s).holds) {
                        ++r.findings;
                        note(r, render(s));
                    }
                }
            });
}

void unary_rows(Runner &run)
{
    run.row("inj-counts",
            "models of the injective-function theory of size n are counted by the partitions of n",
            ClaimKind::Asserted, [](ClaimRow &r) {
                auto cls = injective(5).cls();
                r.scope = cls->name();
                // partitions by the standard recurrence over the largest part
                auto partitions = [](int n) {
                    std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
                    p[0] = 1;
                    for (int part = 1; part <= n; ++part)
                        for (int k = part; k <= n; ++k)
                            p[k] += p[k - part];
                    return p[n];
                };
                for (int n = 1; n <= 5; ++n) {
                    ++r.checked;
                    long got = static_cast<long>(cls->stratum(n).size());
                    if (got != partitions(n)) {
                        ++r.findings;
                        note(r, "size " + std::to_string(n) + ": " + std::to_string(got));
                    }
                }
            });

    run.row("inj-companion",
            "the single-point models form a model-complete class that is companion to the injective models",
            ClaimKind::Asserted, [](ClaimRow &r) {
                auto ws = bundled_workspace("unary");
                auto point = ws->model_class("models(T_point,<=4)");
                auto single = ws->model_class("{F1}");
                auto inj = injective(3).cls();
                r.scope = point->name() + ", " + single->name() + ", " + inj->name();
                r.checked = 4;
                if (point->count() != 1 || !are_isomorphic(*point->members()[0], *ws->structure("F1"))) {
                    ++r.findings;
                    note(r, "the point theory has other models");
                }
                if (!is_model_complete_in(point).holds || !is_model_complete_in(single).holds) {
                    ++r.findings;
                    note(r, "not model-complete");
                }
                if (!companionship(inj, point).holds) {
                    ++r.findings;
                    note(r, "not companions");
                }
            });

    run.row("inj-fixpoint-apc", "the fixpoint singleton is apc among injective models for qf formulas with <= 2 atoms",
            ClaimKind::Asserted, [](ClaimRow &r) {
                auto ws = bundled_workspace("unary");
                auto cls = injective(3).cls();
                r.scope = cls->name() + " over qf(atoms<=2)";
                r.checked = 1;
                Verdict v = is_apc_in(ws->structure("F1"), cls, standard_delta(cls, 2));
                if (!v.holds) {
                    ++r.findings;
                    note(r, v.witness ? v.witness->description : "no witness");
                }
            });

    run.row("fpf-members", "fixpoint-free injective models up to size 3 are the 2-cycle and the 3-cycle, and "
                           "f(x) = x contradicts x = x there",
            ClaimKind::Asserted, [](ClaimRow &r) {
                auto ws = bundled_workspace("unary");
                auto cls = ws->model_class("models(T_fpf,<=3)");
                r.scope = cls->name();
                r.checked = 3;
                if (cls->count() != 2 || cls->stratum(2).size() != 1 || cls->stratum(3).size() != 1) {
                    ++r.findings;
                    note(r, "member count " + std::to_string(cls->count()));
                }
                auto contradictions = ctr(cls, ws->formula("f(x) = x"), ws->formula_pool("qf(atoms<=1)"));
                bool found = std::any_of(contradictions.begin(), contradictions.end(),
                                         [&](const Formula &f) { return f == ws->formula("x = x"); });
                if (!found) {
                    ++r.findings;
                    note(r, "x = x missing from the contradiction set");
                }
            });
}

void apc_rows(Runner &run)
{
    const std::vector<Family> families{digraphs(2), posets(3), injective(3)};
    const std::vector<Family> pc_families{digraphs(3), posets(3), injective(3)};

    run.row("apc-of-pc", "every pc member is apc for qf formulas with <= 2 atoms", ClaimKind::Asserted,
            [&](ClaimRow &r) {
                r.scope = names_of(pc_families) + " over qf(atoms<=2)";
                for (const auto &fam : pc_families) {
                    DeltaSet delta = standard_delta(fam.cls(), 2);
                    for (const auto &a : pc_members(fam.cls())) {
                        ++r.checked;
                        if (!is_apc_in(a, fam.cls(), delta).holds) {
                            ++r.findings;
                            note(r, a->name());
                        }
                    }
                }
            });

    run.row("apc-implies-wpc", "apc members are wpc, and a larger Delta set only removes apc members",
            ClaimKind::Asserted, [&](ClaimRow &r) {
                r.scope = names_of(families) + " over qf(atoms<=1) inside qf(atoms<=2)";
                for (const auto &fam : families) {
                    DeltaSet small = standard_delta(fam.cls(), 1);
                    DeltaSet large = standard_delta(fam.cls(), 2);
                    for (const auto &a : fam.cls()->members()) {
                        ++r.checked;
                        bool apc_large = is_apc_in(a, fam.cls(), large).holds;
                        bool wpc_large = is_apc_in(a, fam.cls(), large, ApcMode::Wpc).holds;
                        bool apc_small = is_apc_in(a, fam.cls(), small).holds;
                        if ((apc_large && !wpc_large) || (apc_large && !apc_small)) {
                            ++r.findings;
                            note(r, a->name());
                        }
                    }
                }
            });

    run.row("apc-emb-imm", "every embedding out of an apc member is an immersion", ClaimKind::Asserted,
            [&](ClaimRow &r) {
                r.scope = names_of(families) + " over qf formulas in parameters x x2 and one existential y, "
                                               "<= 2 atoms";
                for (const auto &fam : families) {
                    // One parameter is not enough: an antichain of two is apc for phi(x, y) yet embeds
                    // below a common upper bound.
                    DeltaSet delta = DeltaSet::from_pool(pool_over(fam.cls(), {"x", "x2", "y"}, 2), {"x", "x2"}, {"y"});
                    auto members = fam.cls()->members();
                    for (const auto &a : members) {
                        if (!is_apc_in(a, fam.cls(), delta).holds)
                            continue;
                        for (const auto &b : members)
                            for (const auto &e : enumerate_maps(a, b, MapKind::Emb)) {
                                ++r.checked;
                                if (!is_immersion(e).holds) {
                                    ++r.findings;
                                    note(r, a->name() + " -> " + b->name());
                                }
                            }
                    }
                }
            });

    run.row("closed-set-wpc", "a structure is wpc for the set of its closed qf formulas", ClaimKind::Asserted,
            [&](ClaimRow &r) {
                r.scope = names_of(families) + "; closed formulas from qf(atoms<=2)";
                for (const auto &fam : families) {
                    FormulaPool pool = pool_over(fam.cls(), {"x", "y"}, 2);
                    for (const auto &a : fam.cls()->members()) {
                        DeltaSet closed;
                        closed.description = "closed formulas of " + a->name();
                        for (const auto &phi : pool.formulas()) {
                            DeltaFormula d = split_formula(phi, {"x"}, {"y"});
                            bool all = true;
                            for (int v = 0; v < a->size() && all; ++v) {
                                Assignment params;
                                if (!d.parameters.empty())
                                    params["x"] = v;
                                all = is_closed_formula(a, fam.cls(), phi, params).holds;
                            }
                            if (all)
                                closed.formulas.push_back(d);
                        }
                        ++r.checked;
                        if (!is_apc_in(a, fam.cls(), closed, ApcMode::Wpc).holds) {
                            ++r.findings;
                            note(r, a->name());
                        }
                    }
                }
            });

    run.row("witness-sound", "an entailment witness for a formula makes the structure apc for that formula",
            ClaimKind::Asserted, [&](ClaimRow &r) {
                r.scope = names_of(families) + " over qf(atoms<=2), witnesses of width 4";
                for (const auto &fam : families) {
                    DeltaSet delta = standard_delta(fam.cls(), 2);
                    for (const auto &a : fam.cls()->members())
                        for (const auto &phi : delta.formulas) {
                            if (!apc_witness(a, fam.cls(), phi))
                                continue;
                            ++r.checked;
                            DeltaSet one{{phi}, "one formula"};
                            if (!is_apc_in(a, fam.cls(), one).holds) {
                                ++r.findings;
                                note(r, a->name() + ", " + render(phi.formula));
                            }
                        }
                }
            });

    run.row("witness-transfer", "entailment witnesses pass from a structure to every structure immersed in it",
            ClaimKind::Asserted, [&](ClaimRow &r) {
                r.scope = names_of(families) + " over qf(atoms<=2), witnesses of width 4";
                for (const auto &fam : families) {
                    DeltaSet delta = standard_delta(fam.cls(), 2);
                    auto members = fam.cls()->members();
                    std::map<std::pair<const Structure *, std::size_t>, bool> has;
                    auto witnessed = [&](const StructurePtr &s, std::size_t i) {
                        auto key = std::make_pair(s.get(), i);
                        auto it = has.find(key);
                        if (it == has.end())
                            it = has.emplace(key, apc_witness(s, fam.cls(), delta.formulas[i]).has_value()).first;
                        return it->second;
                    };
                    for (const auto &a : members)
                        for (const auto &b : members) {
                            bool immersed = false;
                            search_homs(*a, *b, {true, true, {}}, [&](const std::vector<int> &map) {
                                immersed = is_immersion(Morphism(a, b, map)).holds;
                                return immersed;
                            });
                            if (!immersed)
                                continue;
                            for (std::size_t i = 0; i < delta.formulas.size(); ++i) {
                                if (!witnessed(b, i))
                                    continue;
                                ++r.checked;
                                if (!witnessed(a, i)) {
                                    ++r.findings;
                                    note(r, a->name() + " in " + b->name() + ", " + render(delta.formulas[i].formula));
                                }
                            }
                        }
                }
            });
}

void amalgamation_rows(Runner &run)
{
    run.row("ih-asymmetric-free",
            "for the empty theory every span of an immersion and a homomorphism completes through its free "
            "amalgam with an immersion and a homomorphism",
            ClaimKind::Asserted, [](ClaimRow &r) {
                auto cls = digraphs(2).cls();
                r.scope = cls->name() + "; free amalgams";
                auto members = cls->members();
                for (const auto &a : members)
                    for (const auto &b : members)
                        for (const auto &c : members)
                            each_hom(a, b, [&](const std::vector<int> &fm) {
                                Morphism f(a, b, fm);
                                if (!is_immersion(f).holds)
                                    return;
                                each_hom(a, c, [&](const std::vector<int> &gm) {
                                    ++r.checked;
                                    Square sq = free_amalgam(Span(f, Morphism(a, c, gm)));
                                    if (!sq.commutes() || !is_immersion(sq.g_prime).holds) {
                                        ++r.findings;
                                        note(r, a->name() + " -> " + b->name() + ", " + c->name());
                                    }
                                });
                            });
            });

    run.row("free-amalgam-universal",
            "free amalgams of injective spans meet the strong condition, and every commuting cocone factors "
            "through the free amalgam",
            ClaimKind::Asserted, [](ClaimRow &r) {
                auto cls = digraphs(2).cls();
                r.scope = cls->name() + "; cocones into the same class";
                auto members = cls->members();
                for (const auto &a : members)
                    for (const auto &b : members)
                        for (const auto &c : members)
                            each_hom(a, b, [&](const std::vector<int> &fm) {
                                each_hom(a, c, [&](const std::vector<int> &gm) {
                                    Span span(Morphism(a, b, fm), Morphism(a, c, gm));
                                    Square free = free_amalgam(span);
                                    if (span.f.is_injective() && span.g.is_injective()) {
                                        ++r.checked;
                                        if (!strong_condition_holds(free).holds) {
                                            ++r.findings;
                                            note(r, "not strong: " + b->name() + " <- " + a->name() + " -> " + c->name());
                                        }
                                    }
                                    for (const auto &d : members)
                                        each_hom(c, d, [&](const std::vector<int> &gp) {
                                            HomSearch pinned;
                                            pinned.fixed.assign(static_cast<std::size_t>(b->size()), -1);
                                            for (int x = 0; x < a->size(); ++x) {
                                                int &slot = pinned.fixed[fm[x]];
                                                if (slot != -1 && slot != gp[gm[x]])
                                                    return;
                                                slot = gp[gm[x]];
                                            }
                                            search_homs(*b, *d, pinned, [&](const std::vector<int> &fp) {
                                                ++r.checked;
                                                Square cocone{span, Morphism(b, d, fp), Morphism(c, d, gp)};
                                                if (!mediating_map(free, cocone)) {
                                                    ++r.findings;
                                                    note(r, "no factoring map into " + d->name());
                                                }
                                                return false;
                                            });
                                        });
                                });
                            });
            });

    run.row("poset-psa", "every poset is a PSA basis", ClaimKind::Asserted, [](ClaimRow &r) {
        auto cls = posets(3).cls();
        auto budget = posets(7).cls();
        r.scope = cls->name() + ", amalgams in " + budget->name();
        for (const auto &a : cls->members()) {
            ++r.checked;
            if (!is_strong_basis(a, cls, budget, StrongVariant::Psa).holds) {
                ++r.findings;
                note(r, render_structure(*a));
            }
        }
    });

    const std::vector<Family> strong_families{digraphs(2), digraphs(3), posets(3)};

    run.row("psa-no-escape",
            "for a PSA basis A, no realization of a formula of E(T+(A)) in a pc continuation leaves the image of A",
            ClaimKind::Asserted, [&](ClaimRow &r) {
                r.scope = names_of(strong_families) + "; amalgams in the same class; formulas over the elements and "
                                                      "x with <= 2 atoms";
                for (const auto &fam : strong_families) {
                    auto cls = fam.cls();
                    auto pcs = pc_members(cls);
                    for (const auto &a : cls->members()) {
                        if (!is_strong_basis(a, cls, cls, StrongVariant::Psa).holds)
                            continue;
                        Scope scope = Scope::expansion(a, cls);
                        auto names = element_names(a->size());
                        FormulaPool phis = pool_over(cls, with(names, "x"), 2);
                        std::optional<FormulaPool> psis;
                        for (const auto &b : pcs)
                            each_hom(a, b, [&](const std::vector<int> &f) {
                                std::vector<bool> image(static_cast<std::size_t>(b->size()), false);
                                for (int v : f)
                                    image[v] = true;
                                for (const auto &phi : phis.formulas()) {
                                    ++r.checked;
                                    Assignment at;
                                    for (int i = 0; i < a->size(); ++i)
                                        at[names[i]] = f[i];
                                    bool escapes = false;
                                    for (int e = 0; e < b->size() && !escapes; ++e) {
                                        if (image[e])
                                            continue;
                                        at["x"] = e;
                                        escapes = evaluate(*b, phi, at);
                                    }
                                    if (!escapes)
                                        continue;
                                    if (!psis)
                                        psis.emplace(pool_over(cls, with(names, "y"), 2));
                                    if (is_realized_in(scope, phi).holds && e_membership(scope, phi, *psis)) {
                                        ++r.findings;
                                        note(r, a->name() + ", " + render(phi));
                                    }
                                }
                            });
                    }
                }
            });

    run.row("psa-algebraic-closed", "for a PSA basis A, every formula algebraic in T+(A) is closed for A",
            ClaimKind::Asserted, [&](ClaimRow &r) {
                r.scope = names_of(strong_families) + "; amalgams in the same class; formulas over the elements and "
                                                      "y with <= 2 atoms";
                for (const auto &fam : strong_families) {
                    auto cls = fam.cls();
                    for (const auto &a : cls->members()) {
                        if (!is_strong_basis(a, cls, cls, StrongVariant::Psa).holds)
                            continue;
                        std::string example;
                        r.findings += algebraic_not_closed(a, cls, 2, r.checked, example);
                        if (!example.empty())
                            note(r, example);
                    }
                }
            });
}

/// Smallest budget in [from, to] at which `test` holds, if any.
template <typename Test>
std::optional<int> escalate(int from, int to, Test &&test)
{
    for (int n = from; n <= to; ++n)
        if (test(n))
            return n;
    return std::nullopt;
}

void search_rows(Runner &run)
{
    struct Budgeted {
        Family fam;
        int max_budget;
    };
    const std::vector<Budgeted> cases{{digraphs(2), 4}, {posets(3), 5}, {injective(3), 5}};
    auto scope_of = [&] {
        std::string out;
        for (const auto &c : cases)
            out += (out.empty() ? "" : ", ") + c.fam.cls()->name() + " (amalgams up to size " +
                   std::to_string(c.max_budget) + ")";
        return out;
    };

    // Members that are h-amalgamation bases and wpc for their E formulas.
    struct Premise {
        StructurePtr a;
        const Budgeted *where;
    };
    std::vector<Premise> premises;
    long premise_checked = 0;
    bool premises_ready = false;
    auto compute_premises = [&] {
        if (premises_ready)
            return;
        premises_ready = true;
        for (const auto &c : cases) {
            auto cls = c.fam.cls();
            for (const auto &a : cls->members()) {
                ++premise_checked;
                auto h = escalate(c.fam.size, c.max_budget, [&](int n) {
                    return is_amalg_basis(a, cls, c.fam.at(n), AmalgamationKind::parse("h")).holds;
                });
                if (!h)
                    continue;
                DeltaSet e{e_formulas(a, cls, 1), "E formulas with <= 1 atom"};
                if (is_apc_in(a, cls, e, ApcMode::Wpc).holds)
                    premises.push_back({a, &c});
            }
        }
    };

    run.row("ewpc-hamalg-to-psa",
            "an h-amalgamation basis that is wpc for its E formulas is a PSA basis", ClaimKind::Search,
            [&](ClaimRow &r) {
                r.scope = scope_of() + "; E formulas with <= 1 atom";
                compute_premises();
                r.checked = premise_checked;
                std::vector<std::string> misses;
                for (const auto &p : premises) {
                    const auto &c = *p.where;
                    auto psa = escalate(c.fam.size, c.max_budget, [&](int n) {
                        return is_strong_basis(p.a, c.fam.cls(), c.fam.at(n), StrongVariant::Psa).holds;
                    });
                    if (!psa) {
                        ++r.findings;
                        misses.push_back(p.a->name());
                    }
                }
                r.detail = std::to_string(premises.size()) + " members meet the premise";
                if (!misses.empty())
                    r.detail += "; no strong amalgam within budget for " + misses.front() +
                                (misses.size() > 1 ? " and " + std::to_string(misses.size() - 1) + " more" : "");
            });

    run.row("ewpc-hamalg-closed",
            "for an h-amalgamation basis that is wpc for its E formulas, algebraic formulas are closed",
            ClaimKind::Search, [&](ClaimRow &r) {
                r.scope = scope_of() + "; E and algebraic formulas with <= 1 atom";
                compute_premises();
                std::string example;
                for (const auto &p : premises)
                    r.findings += algebraic_not_closed(p.a, p.where->fam.cls(), 1, r.checked, example);
                r.detail = std::to_string(premises.size()) + " members meet the premise";
                if (!example.empty())
                    r.detail += "; algebraic but not closed: " + example;
            });

    run.row("hsa-transfer", "a structure immersed in an h-SA basis is a PSA basis", ClaimKind::Search,
            [&](ClaimRow &r) {
                r.scope = scope_of();
                std::string example;
                for (const auto &c : cases) {
                    auto cls = c.fam.cls();
                    auto members = cls->members();
                    std::map<const Structure *, bool> hsa;
                    for (const auto &b : members)
                        hsa[b.get()] = is_strong_basis(b, cls, c.fam.at(c.max_budget), StrongVariant::Hsa).holds;
                    for (const auto &a : members)
                        for (const auto &b : members) {
                            if (!hsa[b.get()])
                                continue;
                            bool immersed = false;
                            search_homs(*a, *b, {true, true, {}}, [&](const std::vector<int> &map) {
                                return immersed = is_immersion(Morphism(a, b, map)).holds;
                            });
                            if (!immersed)
                                continue;
                            ++r.checked;
                            auto psa = escalate(c.fam.size, c.max_budget, [&](int n) {
                                return is_strong_basis(a, cls, c.fam.at(n), StrongVariant::Psa).holds;
                            });
                            if (!psa) {
                                ++r.findings;
                                if (example.empty())
                                    example = a->name() + " in " + b->name();
                            }
                        }
                }
                if (!example.empty())
                    r.detail = "no strong amalgam within budget for " + example;
            });

    run.row("hi-symmetric-to-pc", "an [h,i,i,h]-amalgamation basis is pc", ClaimKind::Search, [&](ClaimRow &r) {
        r.scope = scope_of();
        std::vector<std::string> found;
        for (const auto &c : cases) {
            auto cls = c.fam.cls();
            for (const auto &a : cls->members()) {
                ++r.checked;
                if (is_pc_in(a, cls).holds)
                    continue;
                if (is_amalg_basis(a, cls, c.fam.at(c.max_budget), AmalgamationKind::parse("h,i")).holds) {
                    ++r.findings;
                    found.push_back(a->name());
                }
            }
        }
        if (!found.empty())
            r.detail = "bases that are not pc: " + found.front() +
                       (found.size() > 1 ? " and " + std::to_string(found.size() - 1) + " more" : "");
    });

    run.row("fpf-apc-cycles",
            "a fixpoint-free injective model is apc when it has a p-cycle for every prime p", ClaimKind::Search,
            [](ClaimRow &r) {
                auto ws = bundled_workspace("unary");
                const int bound = 5;
                auto cls = ws->model_class("models(T_fpf,<=" + std::to_string(bound) + ")");
                r.scope = cls->name() + " over the period formulas f^k(y) = y, k <= " + std::to_string(bound);
                DeltaSet periods;
                periods.description = "period formulas";
                std::string lhs = "y";
                for (int k = 1; k <= bound; ++k) {
                    lhs = "f(" + lhs + ")";
                    periods.formulas.push_back(split_formula(ws->formula(lhs + " = y"), {}, {"y"}));
                }
                int explained = 0;
                for (const auto &a : cls->members()) {
                    ++r.checked;
                    std::set<int> cycles;
                    for (int s = 0; s < a->size(); ++s) {
                        int len = 1;
                        for (int v = a->apply(0, std::vector<int>{s}); v != s; v = a->apply(0, std::vector<int>{v}))
                            ++len;
                        cycles.insert(len);
                    }
                    bool axiom = true;
                    std::vector<int> missing;
                    for (int p : {2, 3, 5})
                        if (!cycles.count(p)) {
                            axiom = false;
                            missing.push_back(p);
                        }
                    bool apc = is_apc_in(a, cls, periods).holds;
                    if (apc == axiom)
                        continue;
                    ++r.findings;
                    // A continuation adding a p-cycle needs |A| + p elements.
                    bool budget = apc && std::all_of(missing.begin(), missing.end(),
                                                     [&](int p) { return a->size() + p > bound; });
                    explained += budget ? 1 : 0;
                }
                r.detail = std::to_string(explained) + " of " + std::to_string(r.findings) +
                           " disagreements need a continuation larger than the bound";
            });

    run.row("strong-kinds",
            "every structure is an [i,h,s,h], [s,i,s,i] and [e,s,e,s] amalgamation basis for the empty theory",
            ClaimKind::Search, [](ClaimRow &r) {
                auto ws = bundled_workspace("digraphs");
                auto cls = digraphs(2).cls();
                auto budget = digraphs(3).cls();
                auto pool = ws->sentence_pool("sent(atoms<=1, params=c0)");
                r.scope = cls->name() + ", amalgams in " + budget->name() + ", s over " + pool->describe();
                std::vector<std::string> failing;
                for (const char *text : {"i,h,s,h", "s,i,s,i", "e,s,e,s"}) {
                    AmalgamationKind kind = AmalgamationKind::parse(text, pool);
                    for (const auto &a : cls->members()) {
                        ++r.checked;
                        Verdict v = is_amalg_basis(a, cls, budget, kind);
                        if (!v.holds) {
                            ++r.findings;
                            failing.push_back(std::string(text) + " at " + a->name());
                        }
                    }
                }
                if (!failing.empty())
                    r.detail = "no amalgam within budget: " + failing.front() +
                               (failing.size() > 1 ? " and " + std::to_string(failing.size() - 1) + " more" : "");
            });
}

} // namespace

std::vector<ClaimRow> run_claims(const ClaimOptions &options)
{
    Runner run(options);
    morphism_rows(run);
    pc_rows(run);
    unary_rows(run);
    apc_rows(run);
    amalgamation_rows(run);
    search_rows(run);
    run.skipped("hull-theory", "the largest h-inductive theory with the same pc models, as a computed theory",
                "the theory is an infinite sentence set; only its finite consequences are checked above");
    run.skipped("pc-continuation", "every model continues into a pc model",
                "existence uses compactness; inside a finite class it is a property of the class, not a theorem");
    run.skipped("fields", "apc, pc and existentially closed fields coincide",
                "pc fields are infinite and have no finite stand-in");
    return run.take();
}

} // namespace posmod
