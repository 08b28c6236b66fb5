#pragma once

// Amalgamation of spans B <- A -> C over finite classes: the [a,b,c,d] kinds
// built from h (homomorphism), e (embedding), i (immersion) and s (strong
// immersion), free amalgams, and strong-amalgamation bases.
//
// Letter positions follow the square
//
//          f
//      A -----> B
//      |        |
//    g |        | f'
//      v        v
//      C -----> D
//          g'
//
// with [alpha, beta, gamma, delta] = [f, g, g', f'].

#include "posmod/models.hpp"
#include "posmod/morphisms.hpp"
#include "posmod/pool.hpp"
#include "posmod/verdict.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace posmod {

class KindMismatch : public Error {
public:
    using Error::Error;
};

struct AmalgamationKind {
    std::array<char, 4> letters{'h', 'h', 'h', 'h'};
    /// Bound for the 's' entries. Without one, 's' is the absolute notion,
    /// which on finite structures means isomorphism.
    std::shared_ptr<const SentencePool> pool;

    /// "h" (all four), "h,i" (symmetric: [h,i,i,h]), "h,e,i,s" or "heis".
    static AmalgamationKind parse(std::string_view text, std::shared_ptr<const SentencePool> pool = nullptr);
    /// [a, b, b, a]
    static AmalgamationKind symmetric(char a, char b);
    /// [a, b, a, b]
    static AmalgamationKind asymmetric(char a, char b);

    bool uses_strong() const;
    /// e.g. "[h,i,i,h]", with the pool appended when an 's' entry uses one.
    std::string describe() const;
};

/// Whether h is a map of the given kind letter.
Verdict has_kind(const Morphism &h, char kind, const SentencePool *pool = nullptr);

struct Span {
    Morphism f; // A -> B
    Morphism g; // A -> C

    Span(Morphism f, Morphism g);

    const StructurePtr &apex() const { return f.source; }
    const StructurePtr &left() const { return f.target; }
    const StructurePtr &right() const { return g.target; }
};

struct Square {
    Span span;
    Morphism f_prime; // B -> D
    Morphism g_prime; // C -> D

    const StructurePtr &apex() const { return span.apex(); }
    const StructurePtr &amalgam() const { return f_prime.target; }
    bool commutes() const;
};

struct AmalgamateOptions {
    /// Also require the strong condition on the square.
    bool strong = false;
};

/// First commuting square over D in budget, in order of D (by size, then
/// class order), then g', then f', each lexicographic. Throws KindMismatch
/// when a leg is not of its declared kind.
std::optional<Square> amalgamate(const Span &span, const ModelClassPtr &budget, const AmalgamationKind &kind,
                                 const AmalgamateOptions &options = {});

/// The pushout: B and C side by side (C offset by |B|) glued by f(a) ~ g(a)
/// and closed under the function congruence. Relations are the union of the
/// images. Throws Error when a function of arity >= 2 would need a value at
/// a tuple mixing elements that only one side each provides.
Square free_amalgam(const Span &span);

/// Every pair with f'(b) = g'(c) comes from one apex element:
/// b = f(a) and c = g(a). Witness on failure: the pair (b, c).
Verdict strong_condition_holds(const Square &square);

/// The hom u: D_free -> D with u o f'_free = f' and u o g'_free = g', if any.
std::optional<std::vector<int>> mediating_map(const Square &free, const Square &cocone);

/// Every span out of A into members of `cls` with legs of kinds alpha and
/// beta amalgamates within `budget`. Witness: the least failing span.
Verdict is_amalg_basis(const StructurePtr &a, const ModelClassPtr &cls, const ModelClassPtr &budget,
                       const AmalgamationKind &kind);

enum class StrongVariant {
    Psa, ///< legs into pc members only
    Hsa  ///< legs into all members
};

/// Every hom span out of A (into pc members for Psa, all members for Hsa)
/// has a commuting hom square in `budget` meeting the strong condition.
Verdict is_strong_basis(const StructurePtr &a, const ModelClassPtr &cls, const ModelClassPtr &budget,
                        StrongVariant variant);

} // namespace posmod
