#include "posmod/apc.hpp"

#include "posmod/syntax.hpp"

#include <algorithm>
#include <map>

namespace posmod {

namespace {

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

template <typename F>
bool for_each_combination(std::size_t n, std::size_t k, F &&fn)
{
    if (k > n)
        return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        if (fn(std::as_const(idx)))
            return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

std::string name_of(const Structure &s) { return s.name().empty() ? "A" : s.name(); }

int max_term_depth(const Formula &f)
{
    int d = 0;
    for (const auto &t : f.terms)
        d = std::max(d, t.depth());
    for (const auto &c : f.children)
        d = std::max(d, max_term_depth(c));
    return d;
}

std::vector<std::string> non_parameters(const Formula &f, const std::vector<std::string> &parameters)
{
    std::vector<std::string> out;
    for (const auto &v : free_variables(f))
        if (std::find(parameters.begin(), parameters.end(), v) == parameters.end())
            out.push_back(v);
    return out;
}

} // namespace

Verdict is_apc_in(const StructurePtr &a, const ModelClassPtr &cls, const DeltaSet &delta, ApcMode mode)
{
    std::string scope = cls->name() + (mode == ApcMode::Wpc ? " (pc members)" : "") +
                        (delta.description.empty() ? "" : " over " + delta.description);
    const auto &sig = *cls->signature();
    struct Compiled {
        const DeltaFormula *source;
        CompiledFormula formula;
    };
    std::vector<Compiled> compiled;
    for (const auto &d : delta.formulas) {
        std::vector<std::string> slots = d.parameters;
        slots.insert(slots.end(), d.existentials.begin(), d.existentials.end());
        compiled.push_back({&d, CompiledFormula(d.formula, sig, slots)});
    }

    std::optional<Witness> failure;
    auto check_target = [&](const StructurePtr &b) {
        return search_homs(*a, *b, {}, [&](const std::vector<int> &f) {
            for (const auto &c : compiled) {
                const std::size_t k = c.source->parameters.size();
                const std::size_t m = c.source->existentials.size();
                std::vector<int> values(k + m);
                const auto &fixed = c.source->fixed;
                bool stop = for_each_tuple(a->size(), k, [&](const std::vector<int> &params) {
                    if (!fixed.empty() && params != fixed)
                        return false;
                    for (std::size_t i = 0; i < k; ++i)
                        values[i] = f[params[i]];
                    bool inside = for_each_tuple(a->size(), m, [&](const std::vector<int> &w) {
                        for (std::size_t j = 0; j < m; ++j)
                            values[k + j] = f[w[j]];
                        return c.formula.evaluate(*b, values);
                    });
                    if (inside)
                        return false;
                    bool outside = for_each_tuple(b->size(), m, [&](const std::vector<int> &w) {
                        std::copy(w.begin(), w.end(), values.begin() + static_cast<std::ptrdiff_t>(k));
                        return c.formula.evaluate(*b, values);
                    });
                    if (!outside)
                        return false;
                    Witness w;
                    w.description = "the continuation realizes the formula at the image parameters, "
                                    "but no witness from the image does";
                    w.structures.push_back(b);
                    w.maps.push_back({"f", name_of(*a), name_of(*b), f});
                    w.formula = c.source->formula;
                    w.tuple = params;
                    failure = std::move(w);
                    return true;
                });
                if (stop)
                    return true;
            }
            return false;
        });
    };

    if (mode == ApcMode::Wpc) {
        for (const auto &b : pc_members(cls))
            if (check_target(b))
                break;
    }
    else {
        for (int n : cls->sizes()) {
            bool stop = false;
            for (const auto &b : cls->stratum(n))
                if ((stop = check_target(b)))
                    break;
            if (stop)
                break;
        }
    }
    if (failure)
        return Verdict::no(scope, std::move(*failure));
    return Verdict::yes(scope);
}

HInductiveSentence apc_witness_sentence(const DeltaFormula &phi, const Formula &psi)
{
    VariableSet used = all_variables(phi.formula);
    for (const auto &v : all_variables(psi))
        used.insert(v);
    std::vector<std::pair<std::string, std::string>> renaming;
    std::vector<std::string> fresh;
    for (const auto &y : phi.existentials) {
        fresh.push_back(fresh_variable("z", used));
        renaming.emplace_back(y, fresh.back());
    }
    HInductiveSentence s;
    s.variables = phi.parameters;
    s.variables.insert(s.variables.end(), phi.existentials.begin(), phi.existentials.end());
    s.premise = Formula::conjunction({psi, Formula::exists(fresh, rename_free(phi.formula, renaming))});
    s.conclusion = phi.formula;
    return s;
}

std::optional<ApcWitness> apc_witness(const StructurePtr &a, const ModelClassPtr &cls, const DeltaFormula &phi, int width)
{
    const auto &sig = *cls->signature();
    std::vector<std::string> vars = phi.parameters;
    vars.insert(vars.end(), phi.existentials.begin(), phi.existentials.end());
    std::vector<Formula> atoms;
    for (auto &atom : atoms_over(sig, vars, max_term_depth(phi.formula))) {
        bool reflexive = atom.kind == Formula::Kind::Equation && atom.terms[0] == atom.terms[1];
        if (!reflexive)
            atoms.push_back(std::move(atom));
    }
    std::vector<CompiledFormula> compiled_atoms;
    for (const auto &atom : atoms)
        compiled_atoms.emplace_back(atom, sig, vars);

    Scope scope = Scope::of(cls);
    std::map<Formula, bool, FormulaLess> entailed;
    auto works = [&](const Formula &psi) {
        auto it = entailed.find(psi);
        if (it != entailed.end())
            return it->second;
        bool ok = entails(scope, apc_witness_sentence(phi, psi)).holds;
        entailed.emplace(psi, ok);
        return ok;
    };

    const std::size_t k = phi.parameters.size();
    const std::size_t m = phi.existentials.size();
    ApcWitness result;
    result.scope = cls->name();
    bool complete = !for_each_tuple(a->size(), k, [&](const std::vector<int> &params) {
        if (!phi.fixed.empty() && params != phi.fixed)
            return false;
        // true atoms per candidate a'
        std::vector<std::pair<std::vector<int>, std::vector<std::size_t>>> candidates;
        for_each_tuple(a->size(), m, [&](const std::vector<int> &w) {
            std::vector<int> values = params;
            values.insert(values.end(), w.begin(), w.end());
            std::vector<std::size_t> true_atoms;
            for (std::size_t i = 0; i < atoms.size(); ++i)
                if (compiled_atoms[i].evaluate(*a, values))
                    true_atoms.push_back(i);
            std::vector<Formula> all;
            for (auto i : true_atoms)
                all.push_back(atoms[i]);
            if (works(Formula::conjunction(std::move(all))))
                candidates.emplace_back(w, std::move(true_atoms));
            return false;
        });
        for (int size = 0; size <= width; ++size) {
            for (const auto &[w, true_atoms] : candidates) {
                bool hit = for_each_combination(true_atoms.size(), static_cast<std::size_t>(size),
                                                [&](const std::vector<std::size_t> &idx) {
                                                    std::vector<Formula> parts;
                                                    for (auto i : idx)
                                                        parts.push_back(atoms[true_atoms[i]]);
                                                    Formula psi = Formula::conjunction(std::move(parts));
                                                    if (!works(psi))
                                                        return false;
                                                    result.entries.push_back({params, w, std::move(psi)});
                                                    return true;
                                                });
                if (hit)
                    return false;
            }
        }
        return true; // no witness for this parameter tuple
    });
    if (!complete)
        return std::nullopt;
    return result;
}

Formula rename_apart(const Formula &psi, const Formula &phi, const std::vector<std::string> &reserved)
{
    VariableSet used = all_variables(phi);
    for (const auto &v : all_variables(psi))
        used.insert(v);
    used.insert(reserved.begin(), reserved.end());
    VariableSet phi_free = free_variables(phi);
    std::vector<std::pair<std::string, std::string>> renaming;
    for (const auto &v : free_variables(psi)) {
        if (std::find(reserved.begin(), reserved.end(), v) != reserved.end())
            continue;
        if (!phi_free.contains(v))
            continue;
        renaming.emplace_back(v, fresh_variable("y", used));
    }
    return renaming.empty() ? psi : rename_free(psi, renaming);
}

HInductiveSentence overlap_sentence(const Formula &phi, const Formula &psi, const std::vector<std::string> &parameters)
{
    auto xs = non_parameters(phi, parameters);
    auto ys = non_parameters(psi, parameters);
    std::vector<Formula> overlaps;
    for (const auto &x : xs)
        for (const auto &y : ys)
            overlaps.push_back(Formula::equation(Term::variable(x), Term::variable(y)));
    HInductiveSentence s;
    s.variables = xs;
    s.variables.insert(s.variables.end(), ys.begin(), ys.end());
    s.premise = Formula::conjunction({phi, psi});
    s.conclusion = Formula::disjunction(std::move(overlaps));
    return s;
}

Verdict is_algebraic(const Scope &scope, const Formula &phi, const FormulaPool &pool)
{
    const auto &params = scope.parameter_names();
    if (non_parameters(phi, params).size() > 1)
        throw Error("an algebraic formula has at most one free variable: " + render(phi));
    for (const auto &candidate : pool.formulas()) {
        Formula psi = rename_apart(candidate, phi, params);
        if (!is_realized_in(scope, psi).holds)
            continue;
        HInductiveSentence s = overlap_sentence(phi, psi, params);
        if (entails(scope, s).holds) {
            Witness w;
            w.description = "companion formula pinning the realizations";
            w.formula = psi;
            w.sentence = s;
            return Verdict::yes(scope.tag() + " over " + pool.describe(), std::move(w));
        }
    }
    Witness w;
    w.description = "no realized pool formula pins the realizations of the formula";
    w.formula = phi;
    return Verdict::no(scope.tag() + " over " + pool.describe(), std::move(w));
}

std::vector<Formula> e_set(const Scope &scope, const Formula &phi, const FormulaPool &pool)
{
    const auto &params = scope.parameter_names();
    std::vector<Formula> out;
    for (const auto &candidate : pool.formulas()) {
        Formula psi = rename_apart(candidate, phi, params);
        if (is_realized_in(scope, psi).holds && entails(scope, overlap_sentence(phi, psi, params)).holds)
            out.push_back(psi);
    }
    return out;
}

bool e_membership(const Scope &scope, const Formula &phi, const FormulaPool &pool)
{
    const auto &params = scope.parameter_names();
    for (const auto &candidate : pool.formulas()) {
        Formula psi = rename_apart(candidate, phi, params);
        if (is_realized_in(scope, psi).holds && entails(scope, overlap_sentence(phi, psi, params)).holds)
            return true;
    }
    return false;
}

Verdict is_closed_formula(const StructurePtr &a, const ModelClassPtr &cls, const Formula &phi, const Assignment &parameters)
{
    std::vector<std::string> names;
    std::vector<int> values;
    for (const auto &[name, value] : parameters) {
        if (value < 0 || value >= a->size())
            throw Error("parameter '" + name + "' is outside the universe of " + name_of(*a));
        names.push_back(name);
        values.push_back(value);
    }
    auto vars = non_parameters(phi, names);
    std::vector<std::string> slots = vars;
    slots.insert(slots.end(), names.begin(), names.end());
    CompiledFormula c(phi, *cls->signature(), slots);
    std::string scope = cls->name() + " (pc continuations of " + name_of(*a) + ")";

    for (const auto &f : continuations_pc(a, cls)) {
        const Structure &b = *f.target;
        std::vector<bool> in_image(static_cast<std::size_t>(b.size()), false);
        for (int v : f.map)
            in_image[v] = true;
        std::vector<int> buffer(slots.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            buffer[vars.size() + i] = f(values[i]);
        std::vector<int> escaping;
        bool escaped = for_each_tuple(b.size(), vars.size(), [&](const std::vector<int> &t) {
            std::copy(t.begin(), t.end(), buffer.begin());
            if (!c.evaluate(b, buffer))
                return false;
            for (int e : t)
                if (!in_image[e]) {
                    escaping = t;
                    return true;
                }
            return false;
        });
        if (escaped) {
            Witness w;
            w.description = "a realization in a pc continuation leaves the image";
            w.structures.push_back(f.target);
            w.maps.push_back(f.named("f"));
            w.formula = phi;
            w.tuple = escaping;
            return Verdict::no(scope, std::move(w));
        }
    }
    return Verdict::yes(scope);
}

} // namespace posmod
