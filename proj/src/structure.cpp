#include "posmod/structure.hpp"

#include "posmod/syntax.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace posmod {

Structure::Structure(SignaturePtr sig, int size, bool partial) : sig_(std::move(sig)), size_(size), partial_(partial)
{
    if (!sig_)
        throw Error("structure needs a signature");
    if (size_ < 1)
        throw Error("universe must be nonempty");
    for (const auto &f : sig_->functions())
        functions_.emplace_back(tuple_count(f.arity), partial ? undefined : 0);
    for (const auto &r : sig_->relations())
        relations_.emplace_back(tuple_count(r.arity), 0);
}

bool Structure::is_total() const
{
    for (const auto &table : functions_)
        if (std::find(table.begin(), table.end(), undefined) != table.end())
            return false;
    return true;
}

std::size_t Structure::tuple_count(int arity) const
{
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i)
        n *= static_cast<std::size_t>(size_);
    return n;
}

std::size_t Structure::tuple_index(std::span<const int> args) const
{
    std::size_t idx = 0;
    for (int a : args)
        idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a);
    return idx;
}

std::vector<int> Structure::tuple_at(std::size_t index, int arity) const
{
    std::vector<int> out(arity);
    for (int i = arity - 1; i >= 0; --i) {
        out[i] = static_cast<int>(index % size_);
        index /= size_;
    }
    return out;
}

int Structure::apply(int function, std::span<const int> args) const
{
    return functions_[function][tuple_index(args)];
}

void Structure::set_function(int function, std::span<const int> args, int value)
{
    if (value < (partial_ ? undefined : 0) || value >= size_)
        throw Error("function value out of range");
    for (int a : args)
        if (a < 0 || a >= size_)
            throw Error("function argument out of range");
    functions_[function][tuple_index(args)] = value;
}

bool Structure::holds(int relation, std::span<const int> args) const
{
    return relations_[relation][tuple_index(args)] == 1;
}

void Structure::set_relation(int relation, std::span<const int> args, bool value)
{
    for (int a : args)
        if (a < 0 || a >= size_)
            throw Error("relation argument out of range");
    relations_[relation][tuple_index(args)] = value ? 1 : 0;
}

Structure Structure::permuted(std::span<const int> perm) const
{
    Structure out(sig_, size_, partial_);
    out.name_ = name_;
    for (std::size_t f = 0; f < functions_.size(); ++f) {
        int arity = sig_->functions()[f].arity;
        for (std::size_t idx = 0; idx < functions_[f].size(); ++idx) {
            auto args = tuple_at(idx, arity);
            for (int &a : args)
                a = perm[a];
            int v = functions_[f][idx];
            out.functions_[f][out.tuple_index(args)] = v == undefined ? undefined : perm[v];
        }
    }
    for (std::size_t r = 0; r < relations_.size(); ++r) {
        int arity = sig_->relations()[r].arity;
        for (std::size_t idx = 0; idx < relations_[r].size(); ++idx) {
            auto args = tuple_at(idx, arity);
            for (int &a : args)
                a = perm[a];
            out.relations_[r][out.tuple_index(args)] = relations_[r][idx];
        }
    }
    return out;
}

bool Structure::same_tables(const Structure &other) const
{
    return size_ == other.size_ && sig_->compatible(*other.sig_) && functions_ == other.functions_ &&
           relations_ == other.relations_;
}

CompiledFormula::CompiledFormula(const Formula &f, const Signature &sig, std::span<const std::string> free_vars)
{
    std::map<std::string, int> scope;
    for (const auto &v : free_vars)
        if (!scope.contains(v))
            scope[v] = slot_count_++;
    free_count_ = static_cast<int>(free_vars.size());
    slot_count_ = std::max(slot_count_, free_count_);
    root_ = compile(f, sig, scope);
}

int CompiledFormula::compile_term(const Term &t, const Signature &sig, std::map<std::string, int> &scope)
{
    TermNode node;
    if (t.is_variable()) {
        auto it = scope.find(t.name);
        if (it == scope.end())
            throw UnassignedVariable("variable '" + t.name + "' has no value");
        node.slot = it->second;
    }
    else {
        auto idx = sig.function_index(t.name);
        if (!idx)
            throw UnknownSymbol("unknown function symbol '" + t.name + "'");
        node.symbol = *idx;
        for (const auto &a : t.args)
            node.args.push_back(compile_term(a, sig, scope));
    }
    terms_.push_back(std::move(node));
    return static_cast<int>(terms_.size()) - 1;
}

int CompiledFormula::compile(const Formula &f, const Signature &sig, std::map<std::string, int> &scope)
{
    Node node;
    node.kind = f.kind;
    switch (f.kind) {
    case Formula::Kind::Truth:
    case Formula::Kind::Falsum:
        break;
    case Formula::Kind::Equation:
        node.terms = {compile_term(f.terms[0], sig, scope), compile_term(f.terms[1], sig, scope)};
        break;
    case Formula::Kind::Relation: {
        auto idx = sig.relation_index(f.symbol);
        if (!idx)
            throw UnknownSymbol("unknown relation symbol '" + f.symbol + "'");
        node.symbol = *idx;
        for (const auto &t : f.terms)
            node.terms.push_back(compile_term(t, sig, scope));
        break;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
        for (const auto &c : f.children)
            node.children.push_back(compile(c, sig, scope));
        break;
    case Formula::Kind::Exists: {
        auto previous = scope.find(f.symbol) == scope.end() ? std::optional<int>{} : std::optional<int>{scope[f.symbol]};
        node.slot = slot_count_++;
        scope[f.symbol] = node.slot;
        node.children.push_back(compile(f.children.front(), sig, scope));
        if (previous)
            scope[f.symbol] = *previous;
        else
            scope.erase(f.symbol);
        break;
    }
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
}

int CompiledFormula::eval_term(int t, const Structure &s, std::vector<int> &env) const
{
    const TermNode &node = terms_[t];
    if (node.symbol < 0)
        return env[node.slot];
    std::array<int, 8> args{};
    std::size_t n = node.args.size();
    for (std::size_t i = 0; i < n; ++i) {
        args[i] = eval_term(node.args[i], s, env);
        if (args[i] == Structure::undefined)
            return Structure::undefined;
    }
    return s.apply(node.symbol, std::span<const int>(args.data(), n));
}

bool CompiledFormula::eval(int n, const Structure &s, std::vector<int> &env) const
{
    const Node &node = nodes_[n];
    switch (node.kind) {
    case Formula::Kind::Truth:
        return true;
    case Formula::Kind::Falsum:
        return false;
    case Formula::Kind::Equation: {
        int a = eval_term(node.terms[0], s, env);
        int b = eval_term(node.terms[1], s, env);
        return a != Structure::undefined && a == b;
    }
    case Formula::Kind::Relation: {
        std::array<int, 8> args{};
        std::size_t k = node.terms.size();
        for (std::size_t i = 0; i < k; ++i) {
            args[i] = eval_term(node.terms[i], s, env);
            if (args[i] == Structure::undefined)
                return false;
        }
        return s.holds(node.symbol, std::span<const int>(args.data(), k));
    }
    case Formula::Kind::And:
        for (int c : node.children)
            if (!eval(c, s, env))
                return false;
        return true;
    case Formula::Kind::Or:
        for (int c : node.children)
            if (eval(c, s, env))
                return true;
        return false;
    case Formula::Kind::Exists:
        for (int v = 0; v < s.size(); ++v) {
            env[node.slot] = v;
            if (eval(node.children.front(), s, env))
                return true;
        }
        return false;
    }
    return false;
}

CompiledFormula::Truth3 CompiledFormula::eval3(int n, const Structure &s, std::vector<int> &env) const
{
    const Node &node = nodes_[n];
    switch (node.kind) {
    case Formula::Kind::Truth:
        return Truth3::True;
    case Formula::Kind::Falsum:
        return Truth3::False;
    case Formula::Kind::Equation: {
        int a = eval_term(node.terms[0], s, env);
        int b = eval_term(node.terms[1], s, env);
        if (a == Structure::undefined || b == Structure::undefined)
            return Truth3::Unknown;
        return a == b ? Truth3::True : Truth3::False;
    }
    case Formula::Kind::Relation: {
        std::array<int, 8> args{};
        std::size_t k = node.terms.size();
        for (std::size_t i = 0; i < k; ++i) {
            args[i] = eval_term(node.terms[i], s, env);
            if (args[i] == Structure::undefined)
                return Truth3::Unknown;
        }
        auto cell = s.relation_table(node.symbol)[s.tuple_index(std::span<const int>(args.data(), k))];
        return cell == 2 ? Truth3::Unknown : (cell ? Truth3::True : Truth3::False);
    }
    case Formula::Kind::And: {
        Truth3 acc = Truth3::True;
        for (int c : node.children) {
            auto v = eval3(c, s, env);
            if (v == Truth3::False)
                return Truth3::False;
            if (v == Truth3::Unknown)
                acc = Truth3::Unknown;
        }
        return acc;
    }
    case Formula::Kind::Or:
    case Formula::Kind::Exists: {
        Truth3 acc = Truth3::False;
        auto consider = [&](Truth3 v) {
            if (v == Truth3::Unknown)
                acc = Truth3::Unknown;
            return v == Truth3::True;
        };
        if (node.kind == Formula::Kind::Or) {
            for (int c : node.children)
                if (consider(eval3(c, s, env)))
                    return Truth3::True;
        }
        else {
            for (int v = 0; v < s.size(); ++v) {
                env[node.slot] = v;
                if (consider(eval3(node.children.front(), s, env)))
                    return Truth3::True;
            }
        }
        return acc;
    }
    }
    return Truth3::Unknown;
}

bool CompiledFormula::evaluate(const Structure &s, std::span<const int> free_values) const
{
    std::vector<int> env(static_cast<std::size_t>(slot_count_), 0);
    std::copy(free_values.begin(), free_values.end(), env.begin());
    return eval(root_, s, env);
}

CompiledFormula::Truth3 CompiledFormula::evaluate3(const Structure &s, std::span<const int> free_values) const
{
    std::vector<int> env(static_cast<std::size_t>(slot_count_), 0);
    std::copy(free_values.begin(), free_values.end(), env.begin());
    return eval3(root_, s, env);
}

bool evaluate(const Structure &s, const Formula &f, const Assignment &assignment)
{
    std::vector<std::string> vars;
    std::vector<int> values;
    for (const auto &v : free_variables(f)) {
        auto it = assignment.find(v);
        if (it == assignment.end())
            throw UnassignedVariable("variable '" + v + "' has no value");
        if (it->second < 0 || it->second >= s.size())
            throw Error("value of '" + v + "' is outside the universe");
        vars.push_back(v);
        values.push_back(it->second);
    }
    return CompiledFormula(f, s.signature(), vars).evaluate(s, values);
}

namespace {
/// Calls `fn(tuple)` for every tuple in {0..n-1}^k in lexicographic order
/// until it returns true. Returns whether it stopped early.
template <typename F>
bool for_each_tuple(int n, std::size_t k, F &&fn)
{
    std::vector<int> tuple(k, 0);
    while (true) {
        if (fn(std::as_const(tuple)))
            return true;
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++tuple[i] < n)
                break;
            tuple[i] = 0;
            if (i == 0)
                return false;
        }
        if (k == 0)
            return false;
    }
}
} // namespace

std::vector<std::vector<int>> realizations(const Structure &s, const Formula &f, std::span<const std::string> vars)
{
    CompiledFormula c(f, s.signature(), vars);
    std::vector<std::vector<int>> out;
    for_each_tuple(s.size(), vars.size(), [&](const std::vector<int> &t) {
        if (c.evaluate(s, t))
            out.push_back(t);
        return false;
    });
    return out;
}

bool is_realized(const Structure &s, const Formula &f)
{
    VariableSet fv = free_variables(f);
    std::vector<std::string> vars(fv.begin(), fv.end());
    CompiledFormula c(f, s.signature(), vars);
    return for_each_tuple(s.size(), vars.size(), [&](const std::vector<int> &t) { return c.evaluate(s, t); });
}

SentenceCheck satisfies_sentence(const Structure &s, const HInductiveSentence &sigma, const Assignment &parameters)
{
    std::vector<std::string> vars = sigma.variables;
    std::vector<int> values(vars.size(), 0);
    for (const auto &p : sigma.parameters()) {
        auto it = parameters.find(p);
        if (it == parameters.end())
            throw UnassignedVariable("parameter '" + p + "' has no value");
        vars.push_back(p);
        values.push_back(it->second);
    }
    CompiledFormula premise(sigma.premise, s.signature(), vars);
    CompiledFormula conclusion(sigma.conclusion, s.signature(), vars);
    const std::size_t k = sigma.variables.size();
    SentenceCheck result;
    for_each_tuple(s.size(), k, [&](const std::vector<int> &t) {
        std::copy(t.begin(), t.end(), values.begin());
        if (premise.evaluate(s, values) && !conclusion.evaluate(s, values)) {
            result.holds = false;
            result.counter_assignment = t;
            return true;
        }
        return false;
    });
    return result;
}

std::string render(const Fact &fact, const Signature &sig)
{
    auto name = [](int e) { return "c" + std::to_string(e); };
    auto args = [&](const std::vector<int> &xs) {
        std::string out;
        for (std::size_t i = 0; i < xs.size(); ++i)
            out += (i ? "," : "") + name(xs[i]);
        return out;
    };
    std::string atom;
    if (fact.is_equality) {
        atom = name(fact.args[0]) + " = " + name(fact.args[1]);
    }
    else if (fact.is_function) {
        const auto &sym = sig.functions()[fact.symbol];
        atom = (sym.arity == 0 ? sym.name : sym.name + "(" + args(fact.args) + ")") + " = " + name(fact.value);
    }
    else {
        atom = sig.relations()[fact.symbol].name + "(" + args(fact.args) + ")";
    }
    if (fact.positive)
        return atom;
    return (!fact.is_function && !fact.is_equality) ? "~" + atom : "~(" + atom + ")";
}

std::vector<Fact> diag_plus(const Structure &a)
{
    std::vector<Fact> out;
    const auto &sig = a.signature();
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
        int arity = sig.functions()[f].arity;
        const auto &table = a.function_table(static_cast<int>(f));
        for (std::size_t idx = 0; idx < table.size(); ++idx)
            if (table[idx] != Structure::undefined)
                out.push_back(Fact{true, true, false, static_cast<int>(f), a.tuple_at(idx, arity), table[idx]});
    }
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        int arity = sig.relations()[r].arity;
        const auto &table = a.relation_table(static_cast<int>(r));
        for (std::size_t idx = 0; idx < table.size(); ++idx)
            if (table[idx] == 1)
                out.push_back(Fact{true, false, false, static_cast<int>(r), a.tuple_at(idx, arity), -1});
    }
    return out;
}

Diagram diag(const Structure &a)
{
    Diagram d;
    d.positive = diag_plus(a);
    const auto &sig = a.signature();
    for (int i = 0; i < a.size(); ++i)
        for (int j = i + 1; j < a.size(); ++j)
            d.negative.push_back(Fact{false, false, true, -1, {i, j}, -1});
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
        int arity = sig.functions()[f].arity;
        const auto &table = a.function_table(static_cast<int>(f));
        for (std::size_t idx = 0; idx < table.size(); ++idx)
            for (int v = 0; v < a.size(); ++v)
                if (table[idx] != v)
                    d.negative.push_back(Fact{false, true, false, static_cast<int>(f), a.tuple_at(idx, arity), v});
    }
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        int arity = sig.relations()[r].arity;
        const auto &table = a.relation_table(static_cast<int>(r));
        for (std::size_t idx = 0; idx < table.size(); ++idx)
            if (table[idx] != 1)
                d.negative.push_back(Fact{false, false, false, static_cast<int>(r), a.tuple_at(idx, arity), -1});
    }
    return d;
}

std::vector<std::string> point_variables(std::size_t k)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back("x" + std::to_string(i));
    return out;
}

Formula diagram_formula(const Structure &host, std::span<const int> point)
{
    const auto &sig = host.signature();
    std::vector<std::string> names(static_cast<std::size_t>(host.size()));
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < point.size(); ++i) {
        std::string var = "x" + std::to_string(i);
        auto &slot = names.at(static_cast<std::size_t>(point[i]));
        if (slot.empty())
            slot = var;
        else
            parts.push_back(Formula::equation(Term::variable(slot), Term::variable(var)));
    }
    int next = 1;
    std::vector<std::string> bound;
    for (auto &slot : names)
        if (slot.empty())
            slot = "y" + std::to_string(next++);

    VariableSet used;
    auto term = [&](int e) {
        used.insert(names[e]);
        return Term::variable(names[e]);
    };
    for (const auto &fact : diag_plus(host)) {
        std::vector<Term> args;
        for (int e : fact.args)
            args.push_back(term(e));
        if (fact.is_function)
            parts.push_back(Formula::equation(Term::apply(sig.functions()[fact.symbol].name, std::move(args)), term(fact.value)));
        else
            parts.push_back(Formula::relation(sig.relations()[fact.symbol].name, std::move(args)));
    }
    for (int e = 0; e < host.size(); ++e)
        if (names[e].front() == 'y' && used.contains(names[e]))
            bound.push_back(names[e]);
    return Formula::exists(bound, Formula::conjunction(std::move(parts)));
}

PointedDatabase canonical_database(const Formula &conjunction, const SignaturePtr &sig,
                                   std::span<const std::string> distinguished)
{
    if (!conjunction.is_conjunctive())
        throw Error("canonical database needs a conjunction of atoms");
    check_well_formed(conjunction, *sig);

    std::vector<Term> terms;
    auto intern = [&](const Term &t) {
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i] == t)
                return static_cast<int>(i);
        terms.push_back(t);
        return static_cast<int>(terms.size()) - 1;
    };
    auto intern_rec = [&](auto &self, const Term &t) -> int {
        for (const auto &a : t.args)
            self(self, a);
        return intern(t);
    };
    for (const auto &v : distinguished)
        intern(Term::variable(v));

    std::vector<const Formula *> atoms;
    auto collect = [&](auto &self, const Formula &f) -> void {
        if (f.is_atom())
            atoms.push_back(&f);
        for (const auto &c : f.children)
            self(self, c);
    };
    collect(collect, conjunction);
    for (const Formula *atom : atoms)
        for (const auto &t : atom->terms)
            intern_rec(intern_rec, t);
    if (terms.empty())
        throw Error("canonical database of a closed formula without terms is empty");

    std::vector<int> parent(terms.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        // smaller index stays representative so class order follows first appearance
        if (b < a)
            std::swap(a, b);
        parent[b] = a;
        return true;
    };
    auto id_of = [&](const Term &t) { return intern(t); };
    for (const Formula *atom : atoms)
        if (atom->kind == Formula::Kind::Equation)
            unite(id_of(atom->terms[0]), id_of(atom->terms[1]));

    // congruence closure
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            for (std::size_t j = i + 1; j < terms.size(); ++j) {
                const Term &a = terms[i], &b = terms[j];
                if (a.is_variable() || b.is_variable() || a.name != b.name || find(static_cast<int>(i)) == find(static_cast<int>(j)))
                    continue;
                bool same = true;
                for (std::size_t k = 0; k < a.args.size() && same; ++k)
                    same = find(id_of(a.args[k])) == find(id_of(b.args[k]));
                if (same)
                    changed |= unite(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }

    std::vector<int> class_of(terms.size(), -1);
    int classes = 0;
    std::vector<int> rep_class(terms.size(), -1);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (rep_class[r] < 0)
            rep_class[r] = classes++;
        class_of[i] = rep_class[r];
    }

    Structure db(sig, classes, true);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Term &t = terms[i];
        if (t.is_variable())
            continue;
        std::vector<int> args;
        for (const auto &a : t.args)
            args.push_back(class_of[id_of(a)]);
        db.set_function(*sig->function_index(t.name), args, class_of[i]);
    }
    for (const Formula *atom : atoms) {
        if (atom->kind != Formula::Kind::Relation)
            continue;
        std::vector<int> args;
        for (const auto &t : atom->terms)
            args.push_back(class_of[id_of(t)]);
        db.set_relation(*sig->relation_index(atom->symbol), args);
    }
    PointedDatabase out{std::move(db), {}};
    for (const auto &v : distinguished)
        out.point.push_back(class_of[id_of(Term::variable(v))]);
    return out;
}

} // namespace posmod
