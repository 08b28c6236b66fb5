#pragma once

// Deterministic bounded enumerations of positive formulas and h-inductive
// sentences. Pools are the finite stand-ins for infinite formula sets
// (contradiction sets, algebraic formulas, bounded sentence fragments).

#include "posmod/logic.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace posmod {

class PoolBudgetExceeded : public Error {
public:
    using Error::Error;
};

struct PoolSpec {
    /// Names of the free variables formulas may use (none need occur).
    std::vector<std::string> variables{"x"};
    int max_atoms = 1;
    /// Maximum number of existentially bound variables (prenex, z1, z2, ...).
    int max_existentials = 0;
    int max_term_depth = 0;
    bool allow_disjunction = true;
    /// The immersion oracle adds the target's diagram formula at the image
    /// tuple when this is set, which makes it agree with the retraction test.
    bool guarantee_diagrams = false;
    std::size_t cap = 1'000'000;
};

/// Every atom over `variables` with terms of depth at most `max_depth`,
/// canonically ordered. Reflexive equations appear only between variables.
std::vector<Formula> atoms_over(const Signature &sig, const std::vector<std::string> &variables, int max_depth);

/// Every term over `variables` of depth at most `max_depth`, canonically ordered.
std::vector<Term> terms_over(const Signature &sig, const std::vector<std::string> &variables, int max_depth);

class FormulaPool {
public:
    FormulaPool(SignaturePtr sig, PoolSpec spec);

    const std::vector<Formula> &formulas() const { return formulas_; }
    std::size_t size() const { return formulas_.size(); }
    const PoolSpec &spec() const { return spec_; }
    const Signature &signature() const { return *sig_; }
    const SignaturePtr &signature_ptr() const { return sig_; }

    /// Membership up to canonical renaming of bound variables and AC order.
    bool contains(const Formula &f) const;

    /// One line per formula, in pool order.
    std::string listing() const;
    std::string describe() const;

private:
    SignaturePtr sig_;
    PoolSpec spec_;
    std::vector<Formula> formulas_;
};

struct SentencePoolSpec {
    std::vector<std::string> universals{"x"};
    /// Free variables standing for elements (c0, c1, ...). A sentence is
    /// checked under every assignment of them.
    std::vector<std::string> parameters;
    int max_atoms = 1;
    int max_existentials = 0;
    int max_term_depth = 0;
    bool allow_disjunction = true;
    bool h_universal_only = false;
    std::size_t cap = 1'000'000;
};

/// Sentences forall xs. phi -> psi with phi, psi drawn from formula pools over
/// universals and parameters. Premise Falsum, conclusion Truth and
/// premise == conclusion are skipped as trivially true.
class SentencePool {
public:
    SentencePool(SignaturePtr sig, SentencePoolSpec spec);

    const std::vector<HInductiveSentence> &sentences() const { return sentences_; }
    std::size_t size() const { return sentences_.size(); }
    const SentencePoolSpec &spec() const { return spec_; }
    const Signature &signature() const { return *sig_; }

    bool contains(const HInductiveSentence &s) const;
    std::string describe() const;

private:
    SignaturePtr sig_;
    SentencePoolSpec spec_;
    std::vector<HInductiveSentence> sentences_;
};

/// A quantifier-free formula with its split into parameters (instantiated by
/// elements) and existential variables (witnessed inside continuations).
struct DeltaFormula {
    Formula formula;
    std::vector<std::string> parameters;
    std::vector<std::string> existentials;
    /// When set, the parameters name these elements (a formula with
    /// constants from the structure) instead of ranging over all tuples.
    std::vector<int> fixed = {};
};

/// Builds the split from variable-name lists: each formula's parameters are
/// the occurring names from `parameters`, its existentials the occurring
/// names from `existentials`; any other free variable is an error.
DeltaFormula split_formula(const Formula &f, const std::vector<std::string> &parameters,
                           const std::vector<std::string> &existentials);

struct DeltaSet {
    std::vector<DeltaFormula> formulas;
    std::string description;

    static DeltaSet from_pool(const FormulaPool &pool, const std::vector<std::string> &parameters,
                              const std::vector<std::string> &existentials);
};

} // namespace posmod
