#include "posmod/models.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace posmod {

namespace {

std::vector<std::vector<int>> element_invariants(const Structure &s)
{
    const auto &sig = s.signature();
    const int n = s.size();
    std::vector<std::vector<int>> inv(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        int arity = sig.relations()[r].arity;
        std::vector<std::vector<int>> counts(static_cast<std::size_t>(n), std::vector<int>(arity + 1, 0));
        const auto &table = s.relation_table(static_cast<int>(r));
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            if (table[idx] != 1)
                continue;
            auto t = s.tuple_at(idx, arity);
            for (int p = 0; p < arity; ++p)
                ++counts[t[p]][p];
            if (std::all_of(t.begin(), t.end(), [&](int e) { return e == t[0]; }))
                ++counts[t[0]][arity];
        }
        for (int e = 0; e < n; ++e)
            inv[e].insert(inv[e].end(), counts[e].begin(), counts[e].end());
    }
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
        int arity = sig.functions()[f].arity;
        std::vector<int> preimages(static_cast<std::size_t>(n), 0), fixed(static_cast<std::size_t>(n), 0);
        const auto &table = s.function_table(static_cast<int>(f));
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            int v = table[idx];
            if (v == Structure::undefined)
                continue;
            ++preimages[v];
            auto t = s.tuple_at(idx, arity);
            if (std::all_of(t.begin(), t.end(), [&](int e) { return e == v; }))
                fixed[v] = 1;
        }
        for (int e = 0; e < n; ++e) {
            inv[e].push_back(preimages[e]);
            inv[e].push_back(fixed[e]);
        }
    }
    return inv;
}

void code_under(const Structure &s, const std::vector<int> &perm, const std::vector<int> &inverse, std::vector<int> &out)
{
    const auto &sig = s.signature();
    out.clear();
    out.push_back(s.size());
    std::vector<int> old;
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
        int arity = sig.functions()[f].arity;
        const auto &table = s.function_table(static_cast<int>(f));
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            old = s.tuple_at(idx, arity);
            for (int &e : old)
                e = inverse[e];
            int v = table[s.tuple_index(old)];
            out.push_back(v == Structure::undefined ? -1 : perm[v]);
        }
    }
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        int arity = sig.relations()[r].arity;
        const auto &table = s.relation_table(static_cast<int>(r));
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            old = s.tuple_at(idx, arity);
            for (int &e : old)
                e = inverse[e];
            out.push_back(table[s.tuple_index(old)]);
        }
    }
}

std::pair<std::vector<int>, std::vector<int>> canonical(const Structure &s)
{
    const int n = s.size();
    auto inv = element_invariants(s);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inv[a] < inv[b]; });
    std::vector<std::pair<int, int>> blocks; // [start, end) in `order`
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && inv[order[j]] == inv[order[i]])
            ++j;
        blocks.emplace_back(i, j);
        i = j;
    }

    std::vector<int> best_code, best_perm, code;
    std::vector<int> perm(static_cast<std::size_t>(n)), inverse(static_cast<std::size_t>(n));
    std::vector<int> arrangement = order;
    std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (b == blocks.size()) {
            for (int pos = 0; pos < n; ++pos) {
                perm[arrangement[pos]] = pos;
                inverse[pos] = arrangement[pos];
            }
            code_under(s, perm, inverse, code);
            if (best_code.empty() || code < best_code) {
                best_code = code;
                best_perm = perm;
            }
            return;
        }
        auto [lo, hi] = blocks[b];
        std::sort(arrangement.begin() + lo, arrangement.begin() + hi);
        do {
            rec(b + 1);
        } while (std::next_permutation(arrangement.begin() + lo, arrangement.begin() + hi));
    };
    rec(0);
    return {best_code, best_perm};
}

} // namespace

std::vector<int> canonical_code(const Structure &s) { return canonical(s).first; }

std::vector<int> canonical_labeling(const Structure &s) { return canonical(s).second; }

Structure canonical_form(const Structure &s) { return s.permuted(canonical_labeling(s)); }

bool are_isomorphic(const Structure &a, const Structure &b)
{
    if (a.size() != b.size() || !a.signature().compatible(b.signature()))
        return false;
    return canonical_code(a) == canonical_code(b);
}

std::optional<std::vector<int>> find_isomorphism(const Structure &a, const Structure &b)
{
    if (a.size() != b.size() || !a.signature().compatible(b.signature()))
        return std::nullopt;
    auto [code_a, perm_a] = canonical(a);
    auto [code_b, perm_b] = canonical(b);
    if (code_a != code_b)
        return std::nullopt;
    std::vector<int> inverse_b(perm_b.size());
    for (std::size_t i = 0; i < perm_b.size(); ++i)
        inverse_b[perm_b[i]] = static_cast<int>(i);
    std::vector<int> iso(perm_a.size());
    for (std::size_t i = 0; i < perm_a.size(); ++i)
        iso[i] = inverse_b[perm_a[i]];
    return iso;
}

std::vector<Structure> enumerate_models(const Theory &theory, int n, const EnumerationOptions &options)
{
    if (!theory.signature)
        throw Error("theory '" + theory.name + "' has no signature");
    const auto &sig = *theory.signature;
    struct Check {
        CompiledFormula premise, conclusion;
        std::size_t arity;
    };
    std::vector<Check> checks;
    for (const auto &sigma : theory.sentences) {
        if (!sigma.parameters().empty())
            throw Error("theory sentences cannot have parameters");
        checks.push_back({CompiledFormula(sigma.premise, sig, sigma.variables),
                          CompiledFormula(sigma.conclusion, sig, sigma.variables), sigma.variables.size()});
    }

    Structure draft(theory.signature, n, true);
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        auto &table = draft.relation_table(static_cast<int>(r));
        std::fill(table.begin(), table.end(), 2);
    }
    struct Cell {
        bool function;
        int symbol;
        std::size_t index;
    };
    std::vector<Cell> cells;
    for (std::size_t f = 0; f < sig.functions().size(); ++f)
        for (std::size_t i = 0; i < draft.tuple_count(sig.functions()[f].arity); ++i)
            cells.push_back({true, static_cast<int>(f), i});
    for (std::size_t r = 0; r < sig.relations().size(); ++r)
        for (std::size_t i = 0; i < draft.tuple_count(sig.relations()[r].arity); ++i)
            cells.push_back({false, static_cast<int>(r), i});

    std::vector<int> values;
    auto violated = [&]() {
        for (const auto &c : checks) {
            values.assign(c.arity, 0);
            while (true) {
                if (c.premise.evaluate3(draft, values) == CompiledFormula::Truth3::True &&
                    c.conclusion.evaluate3(draft, values) == CompiledFormula::Truth3::False)
                    return true;
                std::size_t i = c.arity;
                while (i > 0 && ++values[i - 1] == n)
                    values[--i] = 0;
                if (i == 0)
                    break;
            }
        }
        return false;
    };

    std::map<std::vector<int>, Structure> unique;
    std::vector<Structure> all;
    std::size_t nodes = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (++nodes > options.node_cap)
            throw SizeBudgetExceeded("model enumeration for size " + std::to_string(n) + " exceeded " +
                                     std::to_string(options.node_cap) + " search nodes");
        if (k == cells.size()) {
            Structure total(theory.signature, n);
            for (std::size_t f = 0; f < sig.functions().size(); ++f)
                total.function_table(static_cast<int>(f)) = draft.function_table(static_cast<int>(f));
            for (std::size_t r = 0; r < sig.relations().size(); ++r)
                total.relation_table(static_cast<int>(r)) = draft.relation_table(static_cast<int>(r));
            if (options.dedup) {
                auto [code, perm] = canonical(total);
                if (!unique.contains(code))
                    unique.emplace(std::move(code), total.permuted(perm));
            }
            else {
                all.push_back(std::move(total));
            }
            return;
        }
        const Cell &cell = cells[k];
        int options_count = cell.function ? n : 2;
        for (int v = 0; v < options_count; ++v) {
            if (cell.function)
                draft.function_table(cell.symbol)[cell.index] = v;
            else
                draft.relation_table(cell.symbol)[cell.index] = static_cast<std::uint8_t>(v);
            if (!violated())
                rec(k + 1);
        }
        if (cell.function)
            draft.function_table(cell.symbol)[cell.index] = Structure::undefined;
        else
            draft.relation_table(cell.symbol)[cell.index] = 2;
    };
    if (!violated())
        rec(0);

    if (!options.dedup)
        return all;
    std::vector<Structure> out;
    for (auto &[code, s] : unique)
        out.push_back(std::move(s));
    return out;
}

ModelClassPtr ModelClass::explicit_class(std::string name, SignaturePtr sig, std::vector<StructurePtr> members)
{
    std::shared_ptr<ModelClass> c(new ModelClass());
    c->name_ = std::move(name);
    c->sig_ = std::move(sig);
    for (auto &m : members) {
        if (!m->signature().compatible(*c->sig_))
            throw Error("member '" + m->name() + "' has a different signature than class '" + c->name_ + "'");
        c->max_size_ = std::max(c->max_size_, m->size());
        c->strata_[m->size()].push_back(std::move(m));
    }
    return c;
}

ModelClassPtr ModelClass::generated(std::string name, Theory theory, int max_size, EnumerationOptions options)
{
    if (max_size < 1)
        throw Error("a generated class needs a maximum size of at least 1");
    std::shared_ptr<ModelClass> c(new ModelClass());
    c->name_ = std::move(name);
    c->sig_ = theory.signature;
    c->max_size_ = max_size;
    c->theory_ = std::move(theory);
    c->options_ = options;
    return c;
}

ModelClassPtr ModelClass::union_of(std::string name, ModelClassPtr a, ModelClassPtr b)
{
    if (!a->signature()->compatible(*b->signature()))
        throw Error("cannot unite classes over different signatures");
    std::shared_ptr<ModelClass> c(new ModelClass());
    c->name_ = std::move(name);
    c->sig_ = a->signature();
    c->max_size_ = std::max(a->max_size(), b->max_size());
    c->left_ = std::move(a);
    c->right_ = std::move(b);
    return c;
}

std::vector<int> ModelClass::sizes() const
{
    std::vector<int> out;
    if (theory_) {
        for (int n = 1; n <= max_size_; ++n)
            out.push_back(n);
        return out;
    }
    if (left_) {
        auto l = left_->sizes(), r = right_->sizes();
        std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(out));
        return out;
    }
    std::lock_guard lock(mutex_);
    for (const auto &[n, members] : strata_)
        out.push_back(n);
    return out;
}

const std::vector<StructurePtr> &ModelClass::stratum(int n) const
{
    std::lock_guard lock(mutex_);
    auto it = strata_.find(n);
    if (it != strata_.end())
        return it->second;
    std::vector<StructurePtr> members;
    if (theory_ && n >= 1 && n <= max_size_) {
        auto models = enumerate_models(*theory_, n, options_);
        for (std::size_t i = 0; i < models.size(); ++i) {
            models[i].set_name(theory_->name + "_" + std::to_string(n) + "_" + std::to_string(i + 1));
            members.push_back(std::make_shared<const Structure>(std::move(models[i])));
        }
    }
    else if (left_) {
        members = left_->stratum(n);
        for (const auto &m : right_->stratum(n)) {
            bool seen = std::any_of(members.begin(), members.end(),
                                    [&](const StructurePtr &x) { return are_isomorphic(*x, *m); });
            if (!seen)
                members.push_back(m);
        }
    }
    return strata_.emplace(n, std::move(members)).first->second;
}

std::vector<StructurePtr> ModelClass::members() const
{
    std::vector<StructurePtr> out;
    for (int n : sizes()) {
        const auto &s = stratum(n);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

std::size_t ModelClass::count() const { return members().size(); }

StructurePtr ModelClass::find_isomorphic(const Structure &s) const
{
    if (s.size() > max_size_)
        return nullptr;
    for (const auto &m : stratum(s.size()))
        if (are_isomorphic(*m, s))
            return m;
    return nullptr;
}

std::optional<bool> ModelClass::cached_pc(const Structure *member) const
{
    std::lock_guard lock(mutex_);
    auto it = pc_cache_.find(member);
    if (it == pc_cache_.end())
        return std::nullopt;
    return it->second;
}

void ModelClass::cache_pc(const Structure *member, bool pc) const
{
    std::lock_guard lock(mutex_);
    pc_cache_[member] = pc;
}

} // namespace posmod
