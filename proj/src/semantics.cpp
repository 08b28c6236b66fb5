#include "posmod/semantics.hpp"

#include "posmod/syntax.hpp"

#include <algorithm>

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

std::string name_of(const Structure &s) { return s.name().empty() ? "A" : s.name(); }

Witness member_witness(const PointedMember &m, const Scope &scope, std::string description)
{
    Witness w;
    w.description = std::move(description);
    w.structures.push_back(m.structure);
    if (scope.base())
        w.maps.push_back({"f", name_of(*scope.base()), name_of(*m.structure), m.via});
    return w;
}

} // namespace

std::vector<std::string> element_names(int n)
{
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i)
        out.push_back("a" + std::to_string(i));
    return out;
}

Scope Scope::of(ModelClassPtr cls)
{
    Scope s;
    s.tag_ = cls->name();
    s.cls_ = std::move(cls);
    return s;
}

Scope Scope::expansion(StructurePtr a, ModelClassPtr cls, std::vector<std::string> names)
{
    if (names.empty())
        names = element_names(a->size());
    if (names.size() != static_cast<std::size_t>(a->size()))
        throw Error("an expansion needs one parameter name per element");
    Scope s;
    s.tag_ = "T+(" + name_of(*a) + ") over " + cls->name();
    s.cls_ = std::move(cls);
    s.base_ = std::move(a);
    s.names_ = std::move(names);
    return s;
}

bool Scope::visit(const std::function<bool(const PointedMember &)> &fn) const
{
    for (int n : cls_->sizes()) {
        for (const auto &b : cls_->stratum(n)) {
            if (!base_) {
                if (fn(PointedMember{b, {}, {}}))
                    return true;
                continue;
            }
            bool stop = search_homs(*base_, *b, {}, [&](const std::vector<int> &h) {
                return fn(PointedMember{b, h, h});
            });
            if (stop)
                return true;
        }
    }
    return false;
}

ScopedFormula::ScopedFormula(const Formula &f, const Scope &scope)
{
    const auto &names = scope.parameter_names();
    for (const auto &v : free_variables(f))
        if (std::find(names.begin(), names.end(), v) == names.end())
            variables_.push_back(v);
    std::vector<std::string> slots = variables_;
    slots.insert(slots.end(), names.begin(), names.end());
    compiled_.emplace(f, *scope.signature(), slots);
}

bool ScopedFormula::holds(const PointedMember &m, const std::vector<int> &values) const
{
    buffer_ = values;
    buffer_.insert(buffer_.end(), m.parameters.begin(), m.parameters.end());
    return compiled_->evaluate(*m.structure, buffer_);
}

std::optional<std::vector<int>> ScopedFormula::realization(const PointedMember &m) const
{
    std::optional<std::vector<int>> out;
    for_each_tuple(m.structure->size(), variables_.size(), [&](const std::vector<int> &t) {
        if (holds(m, t)) {
            out = t;
            return true;
        }
        return false;
    });
    return out;
}

std::vector<std::vector<int>> ScopedFormula::realizations(const PointedMember &m) const
{
    std::vector<std::vector<int>> out;
    for_each_tuple(m.structure->size(), variables_.size(), [&](const std::vector<int> &t) {
        if (holds(m, t))
            out.push_back(t);
        return false;
    });
    return out;
}

Verdict entails(const Scope &scope, const HInductiveSentence &sigma)
{
    const auto &names = scope.parameter_names();
    for (const auto &p : sigma.parameters())
        if (std::find(names.begin(), names.end(), p) == names.end())
            throw UnassignedVariable("sentence parameter '" + p + "' is not a name of the scope " + scope.tag());
    std::vector<std::string> slots = sigma.variables;
    slots.insert(slots.end(), names.begin(), names.end());
    CompiledFormula premise(sigma.premise, *scope.signature(), slots);
    CompiledFormula conclusion(sigma.conclusion, *scope.signature(), slots);
    const std::size_t k = sigma.variables.size();

    std::optional<Witness> failure;
    scope.visit([&](const PointedMember &m) {
        std::vector<int> values(k + m.parameters.size());
        std::copy(m.parameters.begin(), m.parameters.end(), values.begin() + static_cast<std::ptrdiff_t>(k));
        return for_each_tuple(m.structure->size(), k, [&](const std::vector<int> &t) {
            std::copy(t.begin(), t.end(), values.begin());
            if (premise.evaluate(*m.structure, values) && !conclusion.evaluate(*m.structure, values)) {
                failure = member_witness(m, scope, "counter-model");
                failure->sentence = sigma;
                failure->tuple = t;
                return true;
            }
            return false;
        });
    });
    if (failure)
        return Verdict::no(scope.tag(), std::move(*failure));
    return Verdict::yes(scope.tag());
}

Verdict entails(const ModelClassPtr &cls, const HInductiveSentence &sigma) { return entails(Scope::of(cls), sigma); }

Verdict is_realized_in(const Scope &scope, const Formula &f)
{
    ScopedFormula sf(f, scope);
    std::optional<Witness> found;
    scope.visit([&](const PointedMember &m) {
        if (auto t = sf.realization(m)) {
            found = member_witness(m, scope, "realization");
            found->formula = f;
            found->tuple = *t;
            return true;
        }
        return false;
    });
    if (found)
        return Verdict::yes(scope.tag(), std::move(found));
    Witness w;
    w.description = "no member realizes the formula";
    w.formula = f;
    return Verdict::no(scope.tag(), std::move(w));
}

std::vector<Formula> ctr(const Scope &scope, const Formula &phi, const FormulaPool &pool)
{
    std::vector<Formula> out;
    for (const auto &psi : pool.formulas())
        if (!is_realized_in(scope, Formula::conjunction({phi, psi})).holds)
            out.push_back(psi);
    return out;
}

std::vector<Formula> ctr(const ModelClassPtr &cls, const Formula &phi, const FormulaPool &pool)
{
    return ctr(Scope::of(cls), phi, pool);
}

Verdict is_pc_in(const StructurePtr &a, const ModelClassPtr &cls)
{
    std::optional<Verdict> failure;
    for (int n : cls->sizes()) {
        for (const auto &b : cls->stratum(n)) {
            search_homs(*a, *b, {}, [&](const std::vector<int> &h) {
                Morphism m(a, b, h);
                Verdict imm = is_immersion(m);
                if (imm.holds)
                    return false;
                Witness w = std::move(*imm.witness);
                w.description = "homomorphism into " + name_of(*b) + " is not an immersion: " + w.description;
                w.structures.insert(w.structures.begin(), b);
                failure = Verdict::no(cls->name(), std::move(w));
                return true;
            });
            if (failure)
                break;
        }
        if (failure)
            break;
    }
    if (a->size() <= cls->max_size()) {
        const auto &peers = cls->stratum(a->size());
        if (std::find(peers.begin(), peers.end(), a) != peers.end())
            cls->cache_pc(a.get(), !failure);
    }
    if (failure)
        return std::move(*failure);
    return Verdict::yes(cls->name());
}

std::vector<StructurePtr> pc_members(const ModelClassPtr &cls)
{
    std::vector<StructurePtr> out;
    for (const auto &m : cls->members()) {
        auto cached = cls->cached_pc(m.get());
        bool pc = cached ? *cached : is_pc_in(m, cls).holds;
        if (pc)
            out.push_back(m);
    }
    return out;
}

std::vector<Morphism> continuations_pc(const StructurePtr &a, const ModelClassPtr &cls)
{
    std::vector<Morphism> out;
    for (const auto &b : pc_members(cls))
        for (auto &h : enumerate_maps(a, b, MapKind::Hom))
            out.push_back(std::move(h));
    return out;
}

namespace {

std::optional<Witness> uncontinued_member(const ModelClassPtr &from, const ModelClassPtr &to)
{
    for (const auto &a : from->members()) {
        bool found = false;
        for (int n : to->sizes()) {
            for (const auto &b : to->stratum(n))
                if (first_hom(*a, *b)) {
                    found = true;
                    break;
                }
            if (found)
                break;
        }
        if (!found) {
            Witness w;
            w.description = name_of(*a) + " in " + from->name() + " has no homomorphism into a member of " + to->name();
            w.structures.push_back(a);
            return w;
        }
    }
    return std::nullopt;
}

} // namespace

Verdict companionship(const ModelClassPtr &first, const ModelClassPtr &second)
{
    std::string scope = first->name() + " ~ " + second->name();
    if (auto w = uncontinued_member(first, second))
        return Verdict::no(scope, std::move(*w));
    if (auto w = uncontinued_member(second, first))
        return Verdict::no(scope, std::move(*w));
    return Verdict::yes(scope);
}

Verdict is_model_complete_in(const ModelClassPtr &cls)
{
    for (const auto &m : cls->members()) {
        Verdict pc = is_pc_in(m, cls);
        if (!pc.holds) {
            Witness w = std::move(*pc.witness);
            w.description = name_of(*m) + " is not pc: " + w.description;
            w.structures.insert(w.structures.begin(), m);
            return Verdict::no(cls->name(), std::move(w));
        }
    }
    return Verdict::yes(cls->name());
}

} // namespace posmod
