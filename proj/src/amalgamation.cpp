#include "posmod/amalgamation.hpp"

#include "posmod/semantics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace posmod {

namespace {

bool valid_letter(char c) { return c == 'h' || c == 'e' || c == 'i' || c == 's'; }

std::string name_of(const Structure &s, const char *fallback)
{
    return s.name().empty() ? fallback : s.name();
}

HomSearch search_for(char kind)
{
    HomSearch options;
    options.injective = kind != 'h';
    options.reflect = kind != 'h';
    return options;
}

bool needs_post_check(char kind) { return kind == 'i' || kind == 's'; }

/// Maps a -> b of the given kind, lexicographic. `visit` returns true to stop.
template <typename Visit>
bool for_each_map(const StructurePtr &a, const StructurePtr &b, char kind, const SentencePool *pool,
                  HomSearch options, Visit &&visit)
{
    HomSearch base = search_for(kind);
    options.injective = base.injective;
    options.reflect = base.reflect;
    return search_homs(*a, *b, options, [&](const std::vector<int> &map) {
        Morphism m(a, b, map);
        if (needs_post_check(kind) && !has_kind(m, kind, pool).holds)
            return false;
        return visit(std::move(m));
    });
}

std::string budget_tag(const ModelClassPtr &cls, const ModelClassPtr &budget)
{
    return cls->name() + ", amalgams in " + budget->name();
}

Witness span_witness(const Span &span, std::string description)
{
    Witness w;
    w.description = std::move(description);
    w.structures = {span.apex(), span.left(), span.right()};
    w.maps = {span.f.named("f"), span.g.named("g")};
    return w;
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }

    bool unite(int x, int y)
    {
        x = find(x);
        y = find(y);
        if (x == y)
            return false;
        parent[std::max(x, y)] = std::min(x, y);
        return true;
    }
};

} // namespace

AmalgamationKind AmalgamationKind::parse(std::string_view text, std::shared_ptr<const SentencePool> pool)
{
    std::string letters;
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '[' || c == ']')
            continue;
        if (!valid_letter(c))
            throw Error("amalgamation kind letters are h, e, i, s; got '" + std::string(1, c) + "'");
        letters.push_back(c);
    }
    AmalgamationKind k;
    switch (letters.size()) {
    case 1:
        k.letters = {letters[0], letters[0], letters[0], letters[0]};
        break;
    case 2:
        k = symmetric(letters[0], letters[1]);
        break;
    case 4:
        k.letters = {letters[0], letters[1], letters[2], letters[3]};
        break;
    default:
        throw Error("an amalgamation kind has 1, 2 or 4 letters: '" + std::string(text) + "'");
    }
    k.pool = std::move(pool);
    return k;
}

AmalgamationKind AmalgamationKind::symmetric(char a, char b)
{
    AmalgamationKind k;
    k.letters = {a, b, b, a};
    return k;
}

AmalgamationKind AmalgamationKind::asymmetric(char a, char b)
{
    AmalgamationKind k;
    k.letters = {a, b, a, b};
    return k;
}

bool AmalgamationKind::uses_strong() const
{
    return std::find(letters.begin(), letters.end(), 's') != letters.end();
}

std::string AmalgamationKind::describe() const
{
    std::string out = "[";
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i)
            out += ',';
        out += letters[i];
    }
    out += ']';
    if (uses_strong())
        out += pool ? " with s over " + pool->describe() : " with absolute s";
    return out;
}

Verdict has_kind(const Morphism &h, char kind, const SentencePool *pool)
{
    switch (kind) {
    case 'h':
        return Verdict::yes("hom");
    case 'e': {
        if (is_embedding(*h.source, *h.target, h.map))
            return Verdict::yes("emb");
        Witness w;
        w.description = "not an embedding";
        w.maps.push_back(h.named("h"));
        return Verdict::no("emb", std::move(w));
    }
    case 'i':
        return is_immersion(h);
    case 's':
        return pool ? is_s_immersion_bounded(h, *pool) : is_s_immersion_absolute(h);
    default:
        throw Error("unknown map kind '" + std::string(1, kind) + "'");
    }
}

Span::Span(Morphism f_, Morphism g_) : f(std::move(f_)), g(std::move(g_))
{
    if (f.source != g.source && !f.source->same_tables(*g.source))
        throw Error("span legs start at different apexes");
}

bool Square::commutes() const
{
    for (int a = 0; a < apex()->size(); ++a)
        if (f_prime(span.f(a)) != g_prime(span.g(a)))
            return false;
    return true;
}

std::optional<Square> amalgamate(const Span &span, const ModelClassPtr &budget, const AmalgamationKind &kind,
                                 const AmalgamateOptions &options)
{
    const SentencePool *pool = kind.pool.get();
    if (!has_kind(span.f, kind.letters[0], pool).holds)
        throw KindMismatch("left leg is not of kind '" + std::string(1, kind.letters[0]) + "'");
    if (!has_kind(span.g, kind.letters[1], pool).holds)
        throw KindMismatch("right leg is not of kind '" + std::string(1, kind.letters[1]) + "'");

    const int na = span.apex()->size();
    const int nb = span.left()->size();
    std::optional<Square> found;
    for (int n : budget->sizes()) {
        for (const auto &d : budget->stratum(n)) {
            for_each_map(span.right(), d, kind.letters[2], pool, {}, [&](Morphism g_prime) {
                HomSearch fixed;
                fixed.fixed.assign(static_cast<std::size_t>(nb), -1);
                for (int a = 0; a < na; ++a) {
                    int &slot = fixed.fixed[span.f(a)];
                    int want = g_prime(span.g(a));
                    if (slot != -1 && slot != want)
                        return false;
                    slot = want;
                }
                return for_each_map(span.left(), d, kind.letters[3], pool, fixed, [&](Morphism f_prime) {
                    Square sq{span, std::move(f_prime), g_prime};
                    if (options.strong && !strong_condition_holds(sq).holds)
                        return false;
                    found = std::move(sq);
                    return true;
                });
            });
            if (found)
                return found;
        }
    }
    return std::nullopt;
}

Square free_amalgam(const Span &span)
{
    const Structure &b = *span.left();
    const Structure &c = *span.right();
    if (!b.is_total() || !c.is_total())
        throw Error("free amalgams need total structures");
    if (!b.signature().compatible(c.signature()))
        throw Error("free amalgam of structures over different signatures");
    const Signature &sig = b.signature();
    const int nb = b.size();
    const int total = nb + c.size();

    UnionFind uf(total);
    for (int a = 0; a < span.apex()->size(); ++a)
        uf.unite(span.f(a), nb + span.g(a));

    // Congruence closure: tuples with equal argument classes get equal values.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t fi = 0; fi < sig.functions().size(); ++fi) {
            const int arity = sig.functions()[fi].arity;
            std::map<std::vector<int>, int> seen;
            for (int side = 0; side < 2; ++side) {
                const Structure &s = side == 0 ? b : c;
                const int offset = side == 0 ? 0 : nb;
                for (std::size_t t = 0; t < s.tuple_count(arity); ++t) {
                    std::vector<int> key = s.tuple_at(t, arity);
                    for (int &x : key)
                        x = uf.find(x + offset);
                    int value = uf.find(s.function_table(static_cast<int>(fi))[t] + offset);
                    auto [it, fresh] = seen.emplace(std::move(key), value);
                    if (!fresh && uf.unite(it->second, value))
                        changed = true;
                }
            }
        }
    }

    std::vector<int> class_of(static_cast<std::size_t>(total), -1);
    std::vector<int> root_index(static_cast<std::size_t>(total), -1);
    int classes = 0;
    for (int x = 0; x < total; ++x) {
        int r = uf.find(x);
        if (root_index[r] == -1)
            root_index[r] = classes++;
        class_of[x] = root_index[r];
    }

    auto d = std::make_shared<Structure>(b.signature_ptr(), classes, true);
    d->set_name("free_" + name_of(b, "B") + "_" + name_of(c, "C"));
    for (int side = 0; side < 2; ++side) {
        const Structure &s = side == 0 ? b : c;
        const int offset = side == 0 ? 0 : nb;
        for (std::size_t fi = 0; fi < sig.functions().size(); ++fi) {
            const int arity = sig.functions()[fi].arity;
            for (std::size_t t = 0; t < s.tuple_count(arity); ++t) {
                std::vector<int> args = s.tuple_at(t, arity);
                for (int &x : args)
                    x = class_of[x + offset];
                d->set_function(static_cast<int>(fi), args,
                                class_of[s.function_table(static_cast<int>(fi))[t] + offset]);
            }
        }
        for (std::size_t ri = 0; ri < sig.relations().size(); ++ri) {
            const int arity = sig.relations()[ri].arity;
            for (std::size_t t = 0; t < s.tuple_count(arity); ++t) {
                if (!s.relation_table(static_cast<int>(ri))[t])
                    continue;
                std::vector<int> args = s.tuple_at(t, arity);
                for (int &x : args)
                    x = class_of[x + offset];
                d->set_relation(static_cast<int>(ri), args);
            }
        }
    }
    if (!d->is_total())
        throw Error("free amalgam needs a value at a tuple mixing both sides; only unary functions "
                    "and constants glue without new elements");

    auto total_d = std::make_shared<Structure>(b.signature_ptr(), classes);
    total_d->set_name(d->name());
    for (std::size_t fi = 0; fi < sig.functions().size(); ++fi)
        total_d->function_table(static_cast<int>(fi)) = d->function_table(static_cast<int>(fi));
    for (std::size_t ri = 0; ri < sig.relations().size(); ++ri)
        total_d->relation_table(static_cast<int>(ri)) = d->relation_table(static_cast<int>(ri));

    std::vector<int> fp(class_of.begin(), class_of.begin() + nb);
    std::vector<int> gp(class_of.begin() + nb, class_of.end());
    StructurePtr dp = total_d;
    return Square{span, Morphism(span.left(), dp, std::move(fp)), Morphism(span.right(), dp, std::move(gp))};
}

Verdict strong_condition_holds(const Square &square)
{
    const auto &span = square.span;
    for (int b = 0; b < span.left()->size(); ++b) {
        for (int c = 0; c < span.right()->size(); ++c) {
            if (square.f_prime(b) != square.g_prime(c))
                continue;
            bool from_apex = false;
            for (int a = 0; a < span.apex()->size() && !from_apex; ++a)
                from_apex = span.f(a) == b && span.g(a) == c;
            if (!from_apex) {
                Witness w;
                w.description = "f'(b) = g'(c) for a pair (b, c) not coming from the apex";
                w.structures = {span.apex(), span.left(), span.right(), square.amalgam()};
                w.maps = {span.f.named("f"), span.g.named("g"), square.f_prime.named("f'"),
                          square.g_prime.named("g'")};
                w.tuple = {b, c};
                return Verdict::no("square", std::move(w));
            }
        }
    }
    return Verdict::yes("square");
}

std::optional<std::vector<int>> mediating_map(const Square &free, const Square &cocone)
{
    HomSearch options;
    options.fixed.assign(static_cast<std::size_t>(free.amalgam()->size()), -1);
    auto pin = [&](const Morphism &from_free, const Morphism &other) {
        for (std::size_t x = 0; x < from_free.map.size(); ++x) {
            int &slot = options.fixed[from_free.map[x]];
            if (slot != -1 && slot != other.map[x])
                return false;
            slot = other.map[x];
        }
        return true;
    };
    if (!pin(free.f_prime, cocone.f_prime) || !pin(free.g_prime, cocone.g_prime))
        return std::nullopt;
    return first_hom(*free.amalgam(), *cocone.amalgam(), options);
}

Verdict is_amalg_basis(const StructurePtr &a, const ModelClassPtr &cls, const ModelClassPtr &budget,
                       const AmalgamationKind &kind)
{
    const SentencePool *pool = kind.pool.get();
    const std::string scope = kind.describe() + " in " + budget_tag(cls, budget);
    const auto members = cls->members();
    std::optional<Witness> failure;
    for (const auto &b : members) {
        for (const auto &c : members) {
            bool stop = for_each_map(a, b, kind.letters[0], pool, {}, [&](Morphism f) {
                return for_each_map(a, c, kind.letters[1], pool, {}, [&](Morphism g) {
                    Span span(f, std::move(g));
                    if (amalgamate(span, budget, kind))
                        return false;
                    failure = span_witness(span, "span has no " + kind.describe() + " amalgam in " + budget->name());
                    return true;
                });
            });
            if (stop)
                return Verdict::no(scope, std::move(*failure));
        }
    }
    return Verdict::yes(scope);
}

Verdict is_strong_basis(const StructurePtr &a, const ModelClassPtr &cls, const ModelClassPtr &budget,
                        StrongVariant variant)
{
    const bool psa = variant == StrongVariant::Psa;
    const std::string scope = std::string(psa ? "PSA" : "h-SA") + " in " + budget_tag(cls, budget);
    const auto members = psa ? pc_members(cls) : cls->members();
    const AmalgamationKind kind;
    std::optional<Witness> failure;
    for (const auto &b : members) {
        for (const auto &c : members) {
            bool stop = search_homs(*a, *b, {}, [&](const std::vector<int> &fm) {
                return search_homs(*a, *c, {}, [&](const std::vector<int> &gm) {
                    Span span(Morphism(a, b, fm), Morphism(a, c, gm));
                    if (amalgamate(span, budget, kind, {.strong = true}))
                        return false;
                    failure = span_witness(span, "span has no strong amalgam in " + budget->name());
                    return true;
                });
            });
            if (stop)
                return Verdict::no(scope, std::move(*failure));
        }
    }
    return Verdict::yes(scope);
}

} // namespace posmod
