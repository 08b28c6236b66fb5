#include "posmod/logic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace posmod {

Signature::Signature(std::string name, int max_arity) : name_(std::move(name)), max_arity_(max_arity) {}

void Signature::check_new(const std::string &name, int arity, int min_arity) const
{
    if (name.empty())
        throw Error("empty symbol name");
    if (declares(name))
        throw Error("symbol '" + name + "' declared twice in signature " + name_);
    if (arity < min_arity || arity > max_arity_)
        throw ArityError("symbol '" + name + "' has arity " + std::to_string(arity) + ", allowed range is " +
                         std::to_string(min_arity) + ".." + std::to_string(max_arity_));
}

void Signature::add_function(std::string name, int arity)
{
    check_new(name, arity, 0);
    functions_.push_back({std::move(name), arity});
}

void Signature::add_relation(std::string name, int arity)
{
    check_new(name, arity, 1);
    relations_.push_back({std::move(name), arity});
}

namespace {
std::optional<int> find_symbol(const std::vector<Symbol> &symbols, std::string_view name)
{
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i].name == name)
            return static_cast<int>(i);
    return std::nullopt;
}
} // namespace

std::optional<int> Signature::function_index(std::string_view name) const { return find_symbol(functions_, name); }
std::optional<int> Signature::relation_index(std::string_view name) const { return find_symbol(relations_, name); }

bool Signature::declares(std::string_view name) const
{
    return function_index(name).has_value() || relation_index(name).has_value();
}

bool Signature::compatible(const Signature &other) const
{
    return functions_ == other.functions_ && relations_ == other.relations_;
}

std::string Signature::describe() const
{
    std::string out = "{";
    bool first = true;
    auto emit = [&](const std::string &s) {
        if (!first)
            out += "; ";
        first = false;
        out += s;
    };
    for (const auto &f : functions_)
        emit(f.arity == 0 ? "const " + f.name : "fun " + f.name + "/" + std::to_string(f.arity));
    for (const auto &r : relations_)
        emit("rel " + r.name + "/" + std::to_string(r.arity));
    return out + "}";
}

std::strong_ordering compare_variable_names(std::string_view a, std::string_view b)
{
    auto split = [](std::string_view s) {
        std::size_t cut = s.size();
        while (cut > 0 && std::isdigit(static_cast<unsigned char>(s[cut - 1])))
            --cut;
        return std::pair{s.substr(0, cut), s.substr(cut)};
    };
    auto [pa, sa] = split(a);
    auto [pb, sb] = split(b);
    if (auto c = pa.compare(pb); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    // no suffix sorts first; otherwise numeric comparison (leading zeros by length)
    if (sa.empty() != sb.empty())
        return sa.empty() ? std::strong_ordering::less : std::strong_ordering::greater;
    auto strip = [](std::string_view s) {
        while (s.size() > 1 && s.front() == '0')
            s.remove_prefix(1);
        return s;
    };
    auto na = strip(sa), nb = strip(sb);
    if (na.size() != nb.size())
        return na.size() <=> nb.size();
    if (auto c = na.compare(nb); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    auto c = a.compare(b);
    return c == 0 ? std::strong_ordering::equal : (c < 0 ? std::strong_ordering::less : std::strong_ordering::greater);
}

Term Term::variable(std::string name) { return Term{Kind::Variable, std::move(name), {}}; }

Term Term::apply(std::string symbol, std::vector<Term> args) { return Term{Kind::Apply, std::move(symbol), std::move(args)}; }

int Term::depth() const
{
    if (kind == Kind::Variable || args.empty())
        return 0;
    int d = 0;
    for (const auto &a : args)
        d = std::max(d, a.depth());
    return d + 1;
}

namespace {
template <typename T, typename Cmp>
std::strong_ordering compare_sequences(const std::vector<T> &a, const std::vector<T> &b, Cmp cmp)
{
    if (a.size() != b.size())
        return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (auto c = cmp(a[i], b[i]); c != 0)
            return c;
    return std::strong_ordering::equal;
}

std::strong_ordering compare_strings(const std::string &a, const std::string &b)
{
    auto c = a.compare(b);
    return c == 0 ? std::strong_ordering::equal : (c < 0 ? std::strong_ordering::less : std::strong_ordering::greater);
}
} // namespace

std::strong_ordering compare(const Term &a, const Term &b)
{
    if (a.kind != b.kind)
        return a.kind <=> b.kind;
    if (a.kind == Term::Kind::Variable)
        return compare_variable_names(a.name, b.name);
    if (auto c = compare_strings(a.name, b.name); c != 0)
        return c;
    return compare_sequences(a.args, b.args, [](const Term &x, const Term &y) { return compare(x, y); });
}

std::strong_ordering compare(const Formula &a, const Formula &b)
{
    if (a.kind != b.kind)
        return a.kind <=> b.kind;
    switch (a.kind) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsum:
        return std::strong_ordering::equal;
    case Formula::Kind::Equation:
    case Formula::Kind::Relation:
        if (auto c = compare_strings(a.symbol, b.symbol); c != 0)
            return c;
        return compare_sequences(a.terms, b.terms, [](const Term &x, const Term &y) { return compare(x, y); });
    case Formula::Kind::And:
    case Formula::Kind::Or:
        return compare_sequences(a.children, b.children, [](const Formula &x, const Formula &y) { return compare(x, y); });
    case Formula::Kind::Exists:
        if (auto c = compare(a.children.front(), b.children.front()); c != 0)
            return c;
        return compare_variable_names(a.symbol, b.symbol);
    }
    return std::strong_ordering::equal;
}

std::strong_ordering compare(const HInductiveSentence &a, const HInductiveSentence &b)
{
    if (auto c = compare(a.premise, b.premise); c != 0)
        return c;
    if (auto c = compare(a.conclusion, b.conclusion); c != 0)
        return c;
    return compare_sequences(a.variables, b.variables,
                             [](const std::string &x, const std::string &y) { return compare_variable_names(x, y); });
}

Formula Formula::truth() { return Formula{Kind::Truth, {}, {}, {}}; }
Formula Formula::falsum() { return Formula{Kind::Falsum, {}, {}, {}}; }

Formula Formula::equation(Term lhs, Term rhs)
{
    return Formula{Kind::Equation, {}, {std::move(lhs), std::move(rhs)}, {}};
}

Formula Formula::relation(std::string symbol, std::vector<Term> args)
{
    return Formula{Kind::Relation, std::move(symbol), std::move(args), {}};
}

Formula Formula::conjunction(std::vector<Formula> operands)
{
    if (operands.empty())
        return truth();
    if (operands.size() == 1)
        return std::move(operands.front());
    return Formula{Kind::And, {}, {}, std::move(operands)};
}

Formula Formula::disjunction(std::vector<Formula> operands)
{
    if (operands.empty())
        return falsum();
    if (operands.size() == 1)
        return std::move(operands.front());
    return Formula{Kind::Or, {}, {}, std::move(operands)};
}

Formula Formula::exists(std::string variable, Formula body)
{
    return Formula{Kind::Exists, std::move(variable), {}, {std::move(body)}};
}

Formula Formula::exists(const std::vector<std::string> &variables, Formula body)
{
    for (auto it = variables.rbegin(); it != variables.rend(); ++it)
        body = exists(*it, std::move(body));
    return body;
}

bool Formula::is_quantifier_free() const
{
    if (kind == Kind::Exists)
        return false;
    return std::all_of(children.begin(), children.end(), [](const Formula &c) { return c.is_quantifier_free(); });
}

bool Formula::is_conjunctive() const
{
    if (kind == Kind::Truth || is_atom())
        return true;
    if (kind != Kind::And)
        return false;
    return std::all_of(children.begin(), children.end(), [](const Formula &c) { return c.is_conjunctive(); });
}

VariableSet HInductiveSentence::parameters() const
{
    VariableSet params = free_variables(premise);
    for (const auto &v : free_variables(conclusion))
        params.insert(v);
    for (const auto &v : variables)
        params.erase(v);
    return params;
}

namespace {
void collect_free(const Term &t, VariableSet &out)
{
    if (t.is_variable())
        out.insert(t.name);
    for (const auto &a : t.args)
        collect_free(a, out);
}

void collect_free(const Formula &f, VariableSet &out)
{
    for (const auto &t : f.terms)
        collect_free(t, out);
    if (f.kind == Formula::Kind::Exists) {
        VariableSet inner;
        collect_free(f.children.front(), inner);
        inner.erase(f.symbol);
        out.insert(inner.begin(), inner.end());
        return;
    }
    for (const auto &c : f.children)
        collect_free(c, out);
}

void collect_all(const Formula &f, VariableSet &out)
{
    for (const auto &t : f.terms)
        collect_free(t, out);
    if (f.kind == Formula::Kind::Exists)
        out.insert(f.symbol);
    for (const auto &c : f.children)
        collect_all(c, out);
}
} // namespace

VariableSet free_variables(const Term &t)
{
    VariableSet out;
    collect_free(t, out);
    return out;
}

VariableSet free_variables(const Formula &f)
{
    VariableSet out;
    collect_free(f, out);
    return out;
}

VariableSet all_variables(const Formula &f)
{
    VariableSet out;
    collect_all(f, out);
    return out;
}

int atom_count(const Formula &f)
{
    if (f.is_atom())
        return 1;
    int n = 0;
    for (const auto &c : f.children)
        n += atom_count(c);
    return n;
}

namespace {
void check_term(const Term &t, const Signature &sig)
{
    if (t.is_variable()) {
        if (auto idx = sig.function_index(t.name); idx && sig.functions()[*idx].arity > 0)
            throw ArityError("function symbol '" + t.name + "' used without arguments");
        if (sig.relation_index(t.name))
            throw ArityError("relation symbol '" + t.name + "' used as a term");
        return;
    }
    auto idx = sig.function_index(t.name);
    if (!idx)
        throw UnknownSymbol("unknown function symbol '" + t.name + "'");
    int arity = sig.functions()[*idx].arity;
    if (static_cast<int>(t.args.size()) != arity)
        throw ArityError("function symbol '" + t.name + "' expects " + std::to_string(arity) + " arguments, got " +
                         std::to_string(t.args.size()));
    for (const auto &a : t.args)
        check_term(a, sig);
}
} // namespace

void check_well_formed(const Formula &f, const Signature &sig)
{
    switch (f.kind) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsum:
        return;
    case Formula::Kind::Equation:
        if (f.terms.size() != 2)
            throw Error("equation must have two sides");
        check_term(f.terms[0], sig);
        check_term(f.terms[1], sig);
        return;
    case Formula::Kind::Relation: {
        auto idx = sig.relation_index(f.symbol);
        if (!idx)
            throw UnknownSymbol("unknown relation symbol '" + f.symbol + "'");
        int arity = sig.relations()[*idx].arity;
        if (static_cast<int>(f.terms.size()) != arity)
            throw ArityError("relation symbol '" + f.symbol + "' expects " + std::to_string(arity) +
                             " arguments, got " + std::to_string(f.terms.size()));
        for (const auto &t : f.terms)
            check_term(t, sig);
        return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
        for (const auto &c : f.children)
            check_well_formed(c, sig);
        return;
    case Formula::Kind::Exists:
        if (f.children.size() != 1)
            throw Error("exists must have exactly one body");
        if (sig.declares(f.symbol))
            throw Error("bound variable '" + f.symbol + "' clashes with a signature symbol");
        check_well_formed(f.children.front(), sig);
        return;
    }
}

void check_well_formed(const HInductiveSentence &s, const Signature &sig)
{
    check_well_formed(s.premise, sig);
    check_well_formed(s.conclusion, sig);
    for (const auto &v : s.variables)
        if (sig.declares(v))
            throw Error("universal variable '" + v + "' clashes with a signature symbol");
}

Term substitute(const Term &t, const std::vector<std::pair<std::string, Term>> &subst)
{
    if (t.is_variable()) {
        for (const auto &[name, replacement] : subst)
            if (name == t.name)
                return replacement;
        return t;
    }
    Term out = t;
    for (auto &a : out.args)
        a = substitute(a, subst);
    return out;
}

std::string fresh_variable(std::string_view base, VariableSet &used)
{
    std::string stem(base);
    while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back())))
        stem.pop_back();
    if (stem.empty())
        stem = "v";
    for (int i = 1;; ++i) {
        std::string candidate = stem + std::to_string(i);
        if (!used.contains(candidate)) {
            used.insert(candidate);
            return candidate;
        }
    }
}

Formula substitute(const Formula &f, const std::vector<std::pair<std::string, Term>> &subst)
{
    if (subst.empty())
        return f;
    Formula out = f;
    for (auto &t : out.terms)
        t = substitute(t, subst);
    if (f.kind != Formula::Kind::Exists) {
        for (auto &c : out.children)
            c = substitute(c, subst);
        return out;
    }
    // drop the bound variable from the substitution; rename it if it would
    // capture a variable of a replacement term
    std::vector<std::pair<std::string, Term>> inner;
    VariableSet incoming;
    for (const auto &[name, replacement] : subst) {
        if (name == f.symbol)
            continue;
        inner.emplace_back(name, replacement);
        for (const auto &v : free_variables(replacement))
            incoming.insert(v);
    }
    Formula body = f.children.front();
    std::string bound = f.symbol;
    if (incoming.contains(bound)) {
        VariableSet used = all_variables(body);
        used.insert(incoming.begin(), incoming.end());
        for (const auto &[name, _] : inner)
            used.insert(name);
        std::string renamed = fresh_variable(bound, used);
        body = substitute(body, {{bound, Term::variable(renamed)}});
        bound = renamed;
    }
    return Formula::exists(bound, substitute(body, inner));
}

Formula rename_free(const Formula &f, const std::vector<std::pair<std::string, std::string>> &renaming)
{
    std::vector<std::pair<std::string, Term>> subst;
    for (const auto &[from, to] : renaming)
        subst.emplace_back(from, Term::variable(to));
    return substitute(f, subst);
}

namespace {
// Pull quantifiers out of `f`, appending bound variables (already renamed)
// to `prefix`. `names` maps each bound occurrence in traversal order to its
// final name.
Formula pull_quantifiers(const Formula &f, std::vector<std::string> &prefix, std::vector<std::string>::const_iterator &next)
{
    switch (f.kind) {
    case Formula::Kind::Exists: {
        const std::string &target = *next++;
        prefix.push_back(target);
        Formula body = f.children.front();
        if (target != f.symbol)
            body = substitute(body, {{f.symbol, Term::variable(target)}});
        return pull_quantifiers(body, prefix, next);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Formula> parts;
        for (const auto &c : f.children)
            parts.push_back(pull_quantifiers(c, prefix, next));
        Formula out = f;
        out.children = std::move(parts);
        return out;
    }
    default:
        return f;
    }
}

void bound_in_order(const Formula &f, std::vector<std::string> &out)
{
    if (f.kind == Formula::Kind::Exists)
        out.push_back(f.symbol);
    for (const auto &c : f.children)
        bound_in_order(c, out);
}
} // namespace

PrenexForm prenex(const Formula &f)
{
    std::vector<std::string> bound;
    bound_in_order(f, bound);
    VariableSet free = free_variables(f);
    std::map<std::string, int> uses;
    for (const auto &b : bound)
        ++uses[b];

    VariableSet used = all_variables(f);
    std::vector<std::string> targets;
    for (const auto &b : bound) {
        if (uses[b] == 1 && !free.contains(b))
            targets.push_back(b);
        else
            targets.push_back(fresh_variable(b, used));
    }
    PrenexForm out;
    auto next = targets.cbegin();
    out.matrix = pull_quantifiers(f, out.variables, next);
    return out;
}

namespace {
Formula canonical_rec(const Formula &f, VariableSet &reserved, int &counter);

Formula sort_operands(Formula::Kind kind, std::vector<Formula> parts)
{
    std::vector<Formula> flat;
    for (auto &p : parts) {
        if (p.kind == kind)
            for (auto &c : p.children)
                flat.push_back(std::move(c));
        else
            flat.push_back(std::move(p));
    }
    std::sort(flat.begin(), flat.end(), FormulaLess{});
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    return kind == Formula::Kind::And ? Formula::conjunction(std::move(flat)) : Formula::disjunction(std::move(flat));
}

Formula canonical_rec(const Formula &f, VariableSet &reserved, int &counter)
{
    switch (f.kind) {
    case Formula::Kind::Equation: {
        Term a = f.terms[0], b = f.terms[1];
        if (compare(b, a) < 0)
            std::swap(a, b);
        return Formula::equation(std::move(a), std::move(b));
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Formula> parts;
        for (const auto &c : f.children)
            parts.push_back(canonical_rec(c, reserved, counter));
        return sort_operands(f.kind, std::move(parts));
    }
    case Formula::Kind::Exists: {
        // maximal chain of existentials
        std::vector<std::string> chain;
        const Formula *body = &f;
        while (body->kind == Formula::Kind::Exists) {
            chain.push_back(body->symbol);
            body = &body->children.front();
        }
        std::vector<std::string> names;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            std::string name;
            do {
                name = "z" + std::to_string(++counter);
            } while (reserved.contains(name));
            names.push_back(name);
        }
        std::vector<std::size_t> perm(chain.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::optional<Formula> best;
        int best_counter = counter;
        do {
            std::vector<std::pair<std::string, Term>> subst;
            for (std::size_t i = 0; i < chain.size(); ++i)
                subst.emplace_back(chain[perm[i]], Term::variable(names[i]));
            // drop duplicate chain names (shadowing): innermost binding wins
            Formula renamed = substitute(*body, subst);
            int local = counter;
            Formula inner = canonical_rec(renamed, reserved, local);
            Formula candidate = Formula::exists(names, std::move(inner));
            if (!best || compare(candidate, *best) < 0) {
                best = std::move(candidate);
                best_counter = local;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        counter = best_counter;
        return *best;
    }
    default:
        return f;
    }
}
} // namespace

Formula canonicalize(const Formula &f)
{
    VariableSet reserved = free_variables(f);
    int counter = 0;
    return canonical_rec(f, reserved, counter);
}

} // namespace posmod
