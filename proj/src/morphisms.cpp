#include "posmod/morphisms.hpp"

#include "posmod/syntax.hpp"

#include <algorithm>
#include <array>

namespace posmod {

namespace {

std::string label_of(const Structure &s, const char *fallback) { return s.name().empty() ? fallback : s.name(); }

/// Constraints of a hom search, bucketed by the largest source element they
/// mention so each is checked as soon as it is fully assigned.
struct Plan {
    struct FunctionFact {
        int symbol;
        std::vector<int> args;
        int value;
    };
    struct RelationFact {
        int symbol;
        std::vector<int> args;
        bool positive;
    };
    std::vector<std::vector<FunctionFact>> functions;
    std::vector<std::vector<RelationFact>> relations;
    std::vector<std::optional<FunctionFact>> forced;

    Plan(const Structure &a, bool reflect)
    {
        const auto &sig = a.signature();
        const auto n = static_cast<std::size_t>(a.size());
        functions.resize(n);
        relations.resize(n);
        forced.resize(n);
        for (std::size_t f = 0; f < sig.functions().size(); ++f) {
            int arity = sig.functions()[f].arity;
            const auto &table = a.function_table(static_cast<int>(f));
            for (std::size_t idx = 0; idx < table.size(); ++idx) {
                if (table[idx] == Structure::undefined)
                    continue;
                auto args = a.tuple_at(idx, arity);
                int top = table[idx];
                int top_arg = -1;
                for (int x : args)
                    top_arg = std::max(top_arg, x);
                top = std::max(top, top_arg);
                FunctionFact fact{static_cast<int>(f), args, table[idx]};
                if (top_arg < table[idx] && !forced[table[idx]])
                    forced[table[idx]] = fact;
                functions[top].push_back(std::move(fact));
            }
        }
        for (std::size_t r = 0; r < sig.relations().size(); ++r) {
            int arity = sig.relations()[r].arity;
            const auto &table = a.relation_table(static_cast<int>(r));
            for (std::size_t idx = 0; idx < table.size(); ++idx) {
                bool positive = table[idx] == 1;
                if (!positive && !reflect)
                    continue;
                auto args = a.tuple_at(idx, arity);
                int top = *std::max_element(args.begin(), args.end());
                relations[top].push_back({static_cast<int>(r), std::move(args), positive});
            }
        }
    }
};

int image_value(const Structure &b, int symbol, const std::vector<int> &args, const std::vector<int> &h)
{
    std::array<int, 8> buf{};
    for (std::size_t i = 0; i < args.size(); ++i)
        buf[i] = h[args[i]];
    return b.apply(symbol, std::span<const int>(buf.data(), args.size()));
}

bool image_holds(const Structure &b, int symbol, const std::vector<int> &args, const std::vector<int> &h)
{
    std::array<int, 8> buf{};
    for (std::size_t i = 0; i < args.size(); ++i)
        buf[i] = h[args[i]];
    return b.holds(symbol, std::span<const int>(buf.data(), args.size()));
}

template <typename F>
bool for_each_tuple(int n, std::size_t k, F &&fn)
{
    std::vector<int> t(k, 0);
    while (true) {
        if (fn(std::as_const(t)))
            return true;
        std::size_t i = k;
        while (i > 0 && ++t[i - 1] == n)
            t[--i] = 0;
        if (i == 0)
            return false;
    }
}

} // namespace

Morphism::Morphism(StructurePtr source_, StructurePtr target_, std::vector<int> map_)
    : source(std::move(source_)), target(std::move(target_)), map(std::move(map_))
{
    if (!source || !target)
        throw Error("morphism needs a source and a target");
    if (!source->signature().compatible(target->signature()))
        throw Error("morphism between structures of different signatures");
    if (map.size() != static_cast<std::size_t>(source->size()))
        throw Error("map must assign every source element");
    for (int v : map)
        if (v < 0 || v >= target->size())
            throw Error("map value outside the target universe");
}

bool Morphism::is_injective() const
{
    std::vector<bool> seen(static_cast<std::size_t>(target->size()), false);
    for (int v : map) {
        if (seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

bool Morphism::is_surjective() const
{
    std::vector<bool> seen(static_cast<std::size_t>(target->size()), false);
    for (int v : map)
        seen[v] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

NamedMap Morphism::named(std::string label) const
{
    return {std::move(label), label_of(*source, "A"), label_of(*target, "B"), map};
}

bool search_homs(const Structure &a, const Structure &b, const HomSearch &options,
                 const std::function<bool(const std::vector<int> &)> &visit)
{
    if (!a.signature().compatible(b.signature()))
        throw Error("hom search between structures of different signatures");
    const int n = a.size();
    const int m = b.size();
    Plan plan(a, options.reflect);
    std::vector<int> h(static_cast<std::size_t>(n), -1);
    std::vector<int> used(static_cast<std::size_t>(m), 0);

    auto consistent = [&](int e) {
        for (const auto &fact : plan.functions[e])
            if (image_value(b, fact.symbol, fact.args, h) != h[fact.value])
                return false;
        for (const auto &fact : plan.relations[e])
            if (image_holds(b, fact.symbol, fact.args, h) != fact.positive)
                return false;
        return true;
    };

    auto rec = [&](auto &self, int e) -> bool {
        if (e == n)
            return visit(h);
        int lo = 0, hi = m - 1;
        if (e < static_cast<int>(options.fixed.size()) && options.fixed[e] >= 0)
            lo = hi = options.fixed[e];
        if (hi >= m)
            return false;
        if (plan.forced[e]) {
            const auto &fact = *plan.forced[e];
            int v = image_value(b, fact.symbol, fact.args, h);
            if (v == Structure::undefined || v < lo || v > hi)
                return false;
            lo = hi = v;
        }
        for (int v = lo; v <= hi; ++v) {
            if (options.injective && used[v])
                continue;
            h[e] = v;
            if (consistent(e)) {
                ++used[v];
                bool stop = self(self, e + 1);
                --used[v];
                if (stop)
                    return true;
            }
        }
        h[e] = -1;
        return false;
    };
    return rec(rec, 0);
}

std::optional<std::vector<int>> first_hom(const Structure &a, const Structure &b, const HomSearch &options)
{
    std::optional<std::vector<int>> out;
    search_homs(a, b, options, [&](const std::vector<int> &h) {
        out = h;
        return true;
    });
    return out;
}

bool is_homomorphism(const Structure &a, const Structure &b, const std::vector<int> &map)
{
    HomSearch options;
    options.fixed = map;
    return map.size() == static_cast<std::size_t>(a.size()) && first_hom(a, b, options).has_value();
}

bool is_embedding(const Structure &a, const Structure &b, const std::vector<int> &map)
{
    HomSearch options{true, true, map};
    return map.size() == static_cast<std::size_t>(a.size()) && first_hom(a, b, options).has_value();
}

std::vector<Morphism> enumerate_maps(const StructurePtr &a, const StructurePtr &b, MapKind kind)
{
    std::vector<Morphism> out;
    HomSearch options;
    options.injective = options.reflect = kind == MapKind::Emb;
    search_homs(*a, *b, options, [&](const std::vector<int> &h) {
        out.emplace_back(a, b, h);
        return false;
    });
    return out;
}

namespace {

void require_hom(const Morphism &h)
{
    if (!is_homomorphism(*h.source, *h.target, h.map))
        throw NotAHomomorphism("map " + label_of(*h.source, "A") + " -> " + label_of(*h.target, "B") +
                               " is not a homomorphism");
}

std::vector<int> identity_tuple(int n)
{
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        t[i] = i;
    return t;
}

std::optional<Witness> injectivity_failure(const Morphism &h)
{
    for (int a = 0; a < h.source->size(); ++a)
        for (int b = a + 1; b < h.source->size(); ++b)
            if (h(a) == h(b)) {
                Witness w;
                w.description = "elements " + std::to_string(a) + " and " + std::to_string(b) +
                                " are identified; x0 = x1 holds at the image but not in the source";
                w.maps.push_back(h.named("h"));
                w.formula = Formula::equation(Term::variable("x0"), Term::variable("x1"));
                w.tuple = {a, b};
                return w;
            }
    return std::nullopt;
}

std::string scope_of(const Morphism &h)
{
    return label_of(*h.source, "A") + " -> " + label_of(*h.target, "B");
}

} // namespace

Verdict is_immersion(const Morphism &h)
{
    require_hom(h);
    if (auto w = injectivity_failure(h))
        return Verdict::no(scope_of(h), std::move(*w));
    HomSearch options;
    options.fixed.assign(static_cast<std::size_t>(h.target->size()), -1);
    for (int a = 0; a < h.source->size(); ++a)
        options.fixed[h(a)] = a;
    if (auto g = first_hom(*h.target, *h.source, options)) {
        Witness w;
        w.description = "retraction onto the image";
        w.maps.push_back(Morphism(h.target, h.source, *g).named("g"));
        return Verdict::yes(scope_of(h), std::move(w));
    }
    std::vector<int> image(h.map);
    Witness w;
    w.description = "no retraction; the diagram formula of the target at the image fails in the source";
    w.maps.push_back(h.named("h"));
    w.formula = diagram_formula(*h.target, image);
    w.tuple = identity_tuple(h.source->size());
    return Verdict::no(scope_of(h), std::move(w));
}

Verdict is_immersion_oracle(const Morphism &h, const FormulaPool &pool)
{
    require_hom(h);
    const Structure &a = *h.source;
    const Structure &b = *h.target;
    Formula diagram = diagram_formula(b, h.map);
    std::vector<Formula> formulas = pool.formulas();
    std::vector<std::string> warnings;
    if (pool.spec().guarantee_diagrams)
        formulas.push_back(diagram);
    else if (!pool.contains(diagram))
        warnings.push_back("PoolTooSmall: pool " + pool.describe() + " lacks the target diagram formula " +
                           render(diagram));

    for (const auto &phi : formulas) {
        VariableSet fv = free_variables(phi);
        std::vector<std::string> vars(fv.begin(), fv.end());
        CompiledFormula c(phi, a.signature(), vars);
        std::vector<int> image(vars.size());
        std::vector<int> found;
        bool violated = for_each_tuple(a.size(), vars.size(), [&](const std::vector<int> &t) {
            for (std::size_t i = 0; i < t.size(); ++i)
                image[i] = h(t[i]);
            if (c.evaluate(b, image) && !c.evaluate(a, t)) {
                found = t;
                return true;
            }
            return false;
        });
        if (violated) {
            Witness w;
            w.description = "formula holds at the image but not at the source tuple";
            w.maps.push_back(h.named("h"));
            w.formula = phi;
            w.tuple = found;
            Verdict v = Verdict::no(scope_of(h) + " over " + pool.describe(), std::move(w));
            v.warnings = std::move(warnings);
            return v;
        }
    }
    Verdict v = Verdict::yes(scope_of(h) + " over " + pool.describe());
    v.warnings = std::move(warnings);
    return v;
}

HInductiveSentence covering_sentence(int n)
{
    std::vector<Formula> options;
    for (int i = 0; i < n; ++i)
        options.push_back(Formula::equation(Term::variable("x"), Term::variable("c" + std::to_string(i))));
    return HInductiveSentence{{"x"}, Formula::truth(), Formula::disjunction(std::move(options))};
}

Verdict is_s_immersion_absolute(const Morphism &h)
{
    Verdict imm = is_immersion(h);
    if (!imm.holds)
        return imm;
    if (h.is_surjective())
        return Verdict::yes(scope_of(h), Witness{"bijective immersion, hence an isomorphism", {}, {h.named("h")}, {}, {}, {}});
    Witness w;
    w.description = "the covering sentence holds in the source but not in the target";
    w.maps.push_back(h.named("h"));
    w.sentence = covering_sentence(h.source->size());
    w.tuple = identity_tuple(h.source->size());
    return Verdict::no(scope_of(h), std::move(w));
}

Verdict is_s_immersion_bounded(const Morphism &h, const SentencePool &pool)
{
    Verdict imm = is_immersion(h);
    std::string scope = scope_of(h) + " over " + pool.describe();
    if (!imm.holds) {
        imm.scope = scope;
        return imm;
    }
    for (const auto &sigma : pool.sentences()) {
        VariableSet params = sigma.parameters();
        std::vector<std::string> names(params.begin(), params.end());
        std::vector<int> found;
        bool violated = for_each_tuple(h.source->size(), names.size(), [&](const std::vector<int> &t) {
            Assignment in_a, in_b;
            for (std::size_t i = 0; i < names.size(); ++i) {
                in_a[names[i]] = t[i];
                in_b[names[i]] = h(t[i]);
            }
            if (satisfies_sentence(*h.source, sigma, in_a).holds && !satisfies_sentence(*h.target, sigma, in_b).holds) {
                found = t;
                return true;
            }
            return false;
        });
        if (violated) {
            Witness w;
            w.description = "sentence holds in the source but fails in the target at the image parameters";
            w.maps.push_back(h.named("h"));
            w.sentence = sigma;
            w.tuple = found;
            return Verdict::no(scope, std::move(w));
        }
    }
    return Verdict::yes(scope);
}

Classification classify(const Morphism &h)
{
    Classification c;
    c.hom = is_homomorphism(*h.source, *h.target, h.map);
    if (!c.hom)
        return c;
    c.emb = is_embedding(*h.source, *h.target, h.map);
    c.immersion = is_immersion(h);
    c.imm = c.immersion->holds;
    c.strong = is_s_immersion_absolute(h);
    c.s_imm_absolute = c.strong->holds;
    return c;
}

} // namespace posmod
