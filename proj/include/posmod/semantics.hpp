#pragma once

// Class-relative semantics. "T proves sigma" is read as "sigma holds in every
// member of the class", and "psi is consistent with T" as "psi is realized
// in some member".

#include "posmod/models.hpp"
#include "posmod/morphisms.hpp"
#include "posmod/pool.hpp"
#include "posmod/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace posmod {

/// A member of a scope: a structure with values for the scope's parameter
/// names and, in an expansion, the homomorphism it came from.
struct PointedMember {
    StructurePtr structure;
    std::vector<int> parameters;
    std::vector<int> via;
};

/// The finite stand-in for a theory. Either a class as is, or the expansion
/// T+(A): all pairs (B, f) with B in the class and f a homomorphism A -> B,
/// where the parameter names denote the elements of A through f.
class Scope {
public:
    static Scope of(ModelClassPtr cls);
    static Scope expansion(StructurePtr a, ModelClassPtr cls, std::vector<std::string> names = {});

    const std::string &tag() const { return tag_; }
    const std::vector<std::string> &parameter_names() const { return names_; }
    const SignaturePtr &signature() const { return cls_->signature(); }
    const ModelClassPtr &model_class() const { return cls_; }
    const StructurePtr &base() const { return base_; }

    /// Visits members in canonical order until `fn` returns true. Returns
    /// whether it was stopped.
    bool visit(const std::function<bool(const PointedMember &)> &fn) const;

private:
    ModelClassPtr cls_;
    StructurePtr base_;
    std::vector<std::string> names_;
    std::string tag_;
};

/// Default parameter names a0, a1, ... for the elements of a structure.
std::vector<std::string> element_names(int n);

/// Truth of a sentence or realization of a formula in one pointed member.
/// Free variables named like scope parameters take the member's values.
class ScopedFormula {
public:
    ScopedFormula(const Formula &f, const Scope &scope);

    /// Variables other than scope parameters, in canonical order.
    const std::vector<std::string> &variables() const { return variables_; }
    bool holds(const PointedMember &m, const std::vector<int> &values) const;
    /// First tuple for variables() realizing the formula, if any.
    std::optional<std::vector<int>> realization(const PointedMember &m) const;
    /// Every realizing tuple.
    std::vector<std::vector<int>> realizations(const PointedMember &m) const;

private:
    std::vector<std::string> variables_;
    std::vector<int> parameter_index_;
    std::optional<CompiledFormula> compiled_;
    mutable std::vector<int> buffer_;
};

Verdict entails(const Scope &scope, const HInductiveSentence &sigma);
Verdict entails(const ModelClassPtr &cls, const HInductiveSentence &sigma);

/// Some member realizes f. On success the witness names the member and tuple.
Verdict is_realized_in(const Scope &scope, const Formula &f);

/// Pool formulas psi such that no member realizes phi & psi, in pool order.
std::vector<Formula> ctr(const Scope &scope, const Formula &phi, const FormulaPool &pool);
std::vector<Formula> ctr(const ModelClassPtr &cls, const Formula &phi, const FormulaPool &pool);

/// Every homomorphism from a into a member is an immersion.
Verdict is_pc_in(const StructurePtr &a, const ModelClassPtr &cls);

std::vector<StructurePtr> pc_members(const ModelClassPtr &cls);

/// All (B, h) with B a pc member of the class and h: a -> B.
std::vector<Morphism> continuations_pc(const StructurePtr &a, const ModelClassPtr &cls);

/// Each member of either class has a homomorphism into some member of the other.
Verdict companionship(const ModelClassPtr &first, const ModelClassPtr &second);

Verdict is_model_complete_in(const ModelClassPtr &cls);

} // namespace posmod
