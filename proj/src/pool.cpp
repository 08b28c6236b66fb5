#include "posmod/pool.hpp"

#include "posmod/syntax.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace posmod {

namespace {

struct TermLess {
    bool operator()(const Term &a, const Term &b) const { return compare(a, b) < 0; }
};

/// Calls fn(indices) for each strictly increasing index sequence of length k
/// drawn from [0, n).
void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t> &)> &fn)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

class Collector {
public:
    explicit Collector(std::size_t cap) : cap_(cap) {}

    void add(const Formula &f)
    {
        out_.insert(canonicalize(f));
        if (out_.size() > cap_)
            throw PoolBudgetExceeded("pool exceeds the cap of " + std::to_string(cap_) + " formulas");
    }
    std::vector<Formula> take() { return {out_.begin(), out_.end()}; }

private:
    std::size_t cap_;
    std::set<Formula, FormulaLess> out_;
};

/// Quantifier-free formulas over the given atoms: conjunctions of at most
/// k atoms and (optionally) disjunctions of at least two such conjunctions
/// using at most k atoms in total.
void quantifier_free(const std::vector<Formula> &atoms, int k, bool allow_or,
                     const std::function<void(const Formula &)> &emit)
{
    std::vector<std::vector<std::pair<Formula, int>>> by_size(static_cast<std::size_t>(std::max(k, 0)) + 1);
    for (int size = 1; size <= k; ++size) {
        for_each_combination(atoms.size(), static_cast<std::size_t>(size), [&](const std::vector<std::size_t> &idx) {
            std::vector<Formula> parts;
            for (auto i : idx)
                parts.push_back(atoms[i]);
            Formula c = Formula::conjunction(std::move(parts));
            emit(c);
            by_size[size].emplace_back(std::move(c), size);
        });
    }
    if (!allow_or || k < 2)
        return;
    std::vector<std::pair<Formula, int>> conj;
    for (const auto &bucket : by_size)
        conj.insert(conj.end(), bucket.begin(), bucket.end());
    // choose sets of >= 2 distinct conjunctions with total size <= k
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int budget) {
        if (chosen.size() >= 2) {
            std::vector<Formula> parts;
            for (auto i : chosen)
                parts.push_back(conj[i].first);
            emit(Formula::disjunction(std::move(parts)));
        }
        for (std::size_t i = start; i < conj.size(); ++i) {
            if (conj[i].second > budget)
                continue;
            chosen.push_back(i);
            rec(i + 1, budget - conj[i].second);
            chosen.pop_back();
        }
    };
    rec(0, k);
}

bool mentions(const Formula &f, const std::string &v) { return free_variables(f).contains(v); }

} // namespace

std::vector<Term> terms_over(const Signature &sig, const std::vector<std::string> &variables, int max_depth)
{
    std::set<Term, TermLess> terms;
    for (const auto &v : variables)
        terms.insert(Term::variable(v));
    for (const auto &f : sig.functions())
        if (f.arity == 0)
            terms.insert(Term::apply(f.name));
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<Term> level(terms.begin(), terms.end());
        for (const auto &f : sig.functions()) {
            if (f.arity == 0)
                continue;
            std::vector<std::size_t> pick(static_cast<std::size_t>(f.arity), 0);
            while (true) {
                std::vector<Term> args;
                for (auto i : pick)
                    args.push_back(level[i]);
                terms.insert(Term::apply(f.name, std::move(args)));
                std::size_t i = pick.size();
                while (i > 0 && ++pick[i - 1] == level.size())
                    pick[--i] = 0;
                if (i == 0)
                    break;
            }
        }
    }
    return {terms.begin(), terms.end()};
}

std::vector<Formula> atoms_over(const Signature &sig, const std::vector<std::string> &variables, int max_depth)
{
    auto terms = terms_over(sig, variables, max_depth);
    std::set<Formula, FormulaLess> atoms;
    for (const auto &v : variables)
        atoms.insert(Formula::equation(Term::variable(v), Term::variable(v)));
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j)
            atoms.insert(canonicalize(Formula::equation(terms[i], terms[j])));
    for (const auto &r : sig.relations()) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(r.arity), 0);
        if (terms.empty())
            break;
        while (true) {
            std::vector<Term> args;
            for (auto i : pick)
                args.push_back(terms[i]);
            atoms.insert(Formula::relation(r.name, std::move(args)));
            std::size_t i = pick.size();
            while (i > 0 && ++pick[i - 1] == terms.size())
                pick[--i] = 0;
            if (i == 0)
                break;
        }
    }
    return {atoms.begin(), atoms.end()};
}

FormulaPool::FormulaPool(SignaturePtr sig, PoolSpec spec) : sig_(std::move(sig)), spec_(std::move(spec))
{
    if (spec_.max_atoms < 0 || spec_.max_existentials < 0 || spec_.max_term_depth < 0)
        throw Error("pool bounds must be nonnegative");
    Collector out(spec_.cap);
    out.add(Formula::truth());
    out.add(Formula::falsum());

    auto free_atoms = atoms_over(*sig_, spec_.variables, spec_.max_term_depth);
    quantifier_free(free_atoms, spec_.max_atoms, spec_.allow_disjunction, [&](const Formula &f) { out.add(f); });

    VariableSet used(spec_.variables.begin(), spec_.variables.end());
    std::vector<std::string> bound;
    for (int d = 1; d <= spec_.max_existentials; ++d) {
        bound.push_back(fresh_variable("z", used));
        std::vector<std::string> vars = spec_.variables;
        vars.insert(vars.end(), bound.begin(), bound.end());
        auto atoms = atoms_over(*sig_, vars, spec_.max_term_depth);
        quantifier_free(atoms, spec_.max_atoms, spec_.allow_disjunction, [&](const Formula &m) {
            for (const auto &b : bound)
                if (!mentions(m, b))
                    return;
            out.add(Formula::exists(bound, m));
        });
    }
    formulas_ = out.take();
}

bool FormulaPool::contains(const Formula &f) const
{
    Formula c = canonicalize(f);
    return std::binary_search(formulas_.begin(), formulas_.end(), c, FormulaLess{});
}

std::string FormulaPool::listing() const
{
    std::string out;
    for (const auto &f : formulas_)
        out += render(f) + "\n";
    return out;
}

std::string FormulaPool::describe() const
{
    std::ostringstream os;
    os << (spec_.max_existentials ? "pos" : "qf") << "(atoms<=" << spec_.max_atoms;
    os << ", vars=";
    for (std::size_t i = 0; i < spec_.variables.size(); ++i)
        os << (i ? " " : "") << spec_.variables[i];
    if (spec_.max_existentials)
        os << ", exists<=" << spec_.max_existentials;
    if (spec_.max_term_depth)
        os << ", depth<=" << spec_.max_term_depth;
    if (!spec_.allow_disjunction)
        os << ", no-or";
    os << ")";
    return os.str();
}

SentencePool::SentencePool(SignaturePtr sig, SentencePoolSpec spec) : sig_(std::move(sig)), spec_(std::move(spec))
{
    std::vector<std::string> vars = spec_.universals;
    vars.insert(vars.end(), spec_.parameters.begin(), spec_.parameters.end());
    PoolSpec premises{vars, spec_.max_atoms, 0, spec_.max_term_depth, spec_.allow_disjunction, false, spec_.cap};
    FormulaPool premise_pool(sig_, premises);
    PoolSpec conclusions = premises;
    conclusions.max_existentials = spec_.max_existentials;
    std::vector<Formula> conclusion_list;
    if (spec_.h_universal_only)
        conclusion_list.push_back(Formula::falsum());
    else
        conclusion_list = FormulaPool(sig_, conclusions).formulas();

    VariableSet params(spec_.parameters.begin(), spec_.parameters.end());
    for (const auto &phi : premise_pool.formulas()) {
        if (phi.kind == Formula::Kind::Falsum)
            continue;
        for (const auto &psi : conclusion_list) {
            if (psi.kind == Formula::Kind::Truth || psi == phi)
                continue;
            VariableSet fv = free_variables(phi);
            for (const auto &v : free_variables(psi))
                fv.insert(v);
            HInductiveSentence s;
            for (const auto &v : fv)
                if (!params.contains(v))
                    s.variables.push_back(v);
            s.premise = phi;
            s.conclusion = psi;
            sentences_.push_back(std::move(s));
            if (sentences_.size() > spec_.cap)
                throw PoolBudgetExceeded("sentence pool exceeds the cap of " + std::to_string(spec_.cap));
        }
    }
}

bool SentencePool::contains(const HInductiveSentence &s) const
{
    HInductiveSentence c{s.variables, canonicalize(s.premise), canonicalize(s.conclusion)};
    VariableSet vars(c.variables.begin(), c.variables.end());
    c.variables.assign(vars.begin(), vars.end());
    return std::find(sentences_.begin(), sentences_.end(), c) != sentences_.end();
}

std::string SentencePool::describe() const
{
    std::ostringstream os;
    os << (spec_.h_universal_only ? "hu" : "sent") << "(atoms<=" << spec_.max_atoms << ", vars=";
    for (std::size_t i = 0; i < spec_.universals.size(); ++i)
        os << (i ? " " : "") << spec_.universals[i];
    if (!spec_.parameters.empty()) {
        os << ", params=";
        for (std::size_t i = 0; i < spec_.parameters.size(); ++i)
            os << (i ? " " : "") << spec_.parameters[i];
    }
    if (spec_.max_existentials)
        os << ", exists<=" << spec_.max_existentials;
    os << ")";
    return os.str();
}

DeltaFormula split_formula(const Formula &f, const std::vector<std::string> &parameters,
                           const std::vector<std::string> &existentials)
{
    if (!f.is_quantifier_free())
        throw Error("delta formulas must be quantifier-free: " + render(f));
    DeltaFormula out{f, {}, {}, {}};
    VariableSet fv = free_variables(f);
    for (const auto &p : parameters)
        if (fv.erase(p))
            out.parameters.push_back(p);
    for (const auto &e : existentials)
        if (fv.erase(e))
            out.existentials.push_back(e);
    if (!fv.empty())
        throw Error("variable '" + *fv.begin() + "' is neither a parameter nor existential in " + render(f));
    return out;
}

DeltaSet DeltaSet::from_pool(const FormulaPool &pool, const std::vector<std::string> &parameters,
                             const std::vector<std::string> &existentials)
{
    DeltaSet out;
    out.description = pool.describe();
    for (const auto &f : pool.formulas())
        out.formulas.push_back(split_formula(f, parameters, existentials));
    return out;
}

} // namespace posmod
