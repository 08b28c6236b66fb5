#pragma once

// Almost positively closed structures: the apc/wpc decision over a Delta
// set, bounded search for the entailment witnesses that characterize them,
// and the algebraic / E-set / closed-formula notions built on top.

#include "posmod/pool.hpp"
#include "posmod/semantics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace posmod {

enum class ApcMode {
    Apc, ///< continuations range over the whole class
    Wpc  ///< continuations range over the pc members only
};

/// For every continuation f: A -> B, every Delta formula phi(x; y) and every
/// parameter tuple a: if B realizes phi(f(a), y) then some a' from A has
/// B |= phi(f(a), f(a')). Witness on failure: (B, f, phi, a).
Verdict is_apc_in(const StructurePtr &a, const ModelClassPtr &cls, const DeltaSet &delta, ApcMode mode = ApcMode::Apc);

struct ApcWitnessEntry {
    std::vector<int> parameters; // a
    std::vector<int> witness;    // a'
    Formula psi;                 // conjunction of atoms over x, y true in A at (a, a')
};

/// One entry per parameter tuple a (only the fixed one, if the formula
/// has fixed parameters). Each entry's psi makes the class entail
/// forall x y. (psi(x, y) & exists z. phi(x, z)) -> phi(x, y).
struct ApcWitness {
    std::vector<ApcWitnessEntry> entries;
    std::string scope;
};

/// Searches psi among conjunctions of at most `width` atoms true in A at
/// (a, a'), smallest first, then a' in lexicographic order. Returns nothing
/// when some parameter tuple has no witness within the bound; that is a
/// bounded miss, not a refutation.
std::optional<ApcWitness> apc_witness(const StructurePtr &a, const ModelClassPtr &cls, const DeltaFormula &phi,
                                      int width = 4);

/// The entailment instance an apc witness entry asserts.
HInductiveSentence apc_witness_sentence(const DeltaFormula &phi, const Formula &psi);

/// Some pool psi(y), realized in the scope, makes the scope entail
/// forall x y. (phi(x) & psi(y)) -> x = y1 | ... | x = yn. The psi variables
/// are renamed apart from phi and from the scope's parameter names.
Verdict is_algebraic(const Scope &scope, const Formula &phi, const FormulaPool &pool);

/// Pool formulas psi(y), realized in the scope, with
/// forall x y. (phi(x) & psi(y)) -> \/ x_i = y_j entailed. Pool order.
std::vector<Formula> e_set(const Scope &scope, const Formula &phi, const FormulaPool &pool);
bool e_membership(const Scope &scope, const Formula &phi, const FormulaPool &pool);

/// The sentence forall x y. (phi & psi) -> \/ x_i = y_j used by is_algebraic
/// and e_set, with psi already renamed apart.
HInductiveSentence overlap_sentence(const Formula &phi, const Formula &psi, const std::vector<std::string> &parameters);

/// psi with the free variables it shares with phi (other than `reserved`)
/// renamed to fresh names y1, y2, ...
Formula rename_apart(const Formula &psi, const Formula &phi, const std::vector<std::string> &reserved);

/// For every pc continuation f: A -> B and every realization
/// B |= phi(f(a), b) of the remaining variables, each b lies in f(A).
Verdict is_closed_formula(const StructurePtr &a, const ModelClassPtr &cls, const Formula &phi,
                          const Assignment &parameters = {});

} // namespace posmod
