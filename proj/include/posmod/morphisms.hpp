#pragma once

// Homomorphism search and the classification of maps between finite
// structures: homomorphisms, embeddings, immersions and strong immersions.

#include "posmod/pool.hpp"
#include "posmod/structure.hpp"
#include "posmod/verdict.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace posmod {

class NotAHomomorphism : public Error {
public:
    using Error::Error;
};

struct Morphism {
    StructurePtr source;
    StructurePtr target;
    std::vector<int> map;

    Morphism(StructurePtr source, StructurePtr target, std::vector<int> map);

    int operator()(int a) const { return map[a]; }
    bool is_injective() const;
    bool is_surjective() const;
    NamedMap named(std::string label) const;
};

bool is_homomorphism(const Structure &a, const Structure &b, const std::vector<int> &map);
bool is_embedding(const Structure &a, const Structure &b, const std::vector<int> &map);

struct HomSearch {
    bool injective = false;
    /// Also reflect relation facts (with injective: embeddings).
    bool reflect = false;
    /// Preassigned images; -1 leaves an element free.
    std::vector<int> fixed;
};

/// Backtracking homomorphism search in lexicographic order of maps. The
/// source may be partial (undefined function entries impose nothing); the
/// target must be total. `visit` returns true to stop; the result tells
/// whether the search was stopped.
bool search_homs(const Structure &a, const Structure &b, const HomSearch &options,
                 const std::function<bool(const std::vector<int> &)> &visit);

std::optional<std::vector<int>> first_hom(const Structure &a, const Structure &b, const HomSearch &options = {});

enum class MapKind { Hom, Emb };

std::vector<Morphism> enumerate_maps(const StructurePtr &a, const StructurePtr &b, MapKind kind);

/// Injectivity plus a retraction g: B -> A with g o h = id. On failure the
/// witness is either the collapsed pair with x0 = x1, or the diagram formula
/// of the target at the image of the source's elements.
Verdict is_immersion(const Morphism &h);

/// The immersion definition checked over every pool formula and every
/// source tuple. With PoolSpec::guarantee_diagrams the target's diagram
/// formula at the image is checked as well; otherwise a PoolTooSmall warning
/// is attached when the pool lacks it.
Verdict is_immersion_oracle(const Morphism &h, const FormulaPool &pool);

/// forall x. true -> x = c0 | ... | x = c{n-1}
HInductiveSentence covering_sentence(int n);

/// Between finite structures a strong immersion is an isomorphism; a
/// non-surjective immersion is refuted by the covering sentence.
Verdict is_s_immersion_absolute(const Morphism &h);

/// Immersion plus: every pool sentence true in the source under a parameter
/// assignment holds in the target under its image.
Verdict is_s_immersion_bounded(const Morphism &h, const SentencePool &pool);

struct Classification {
    bool hom = false;
    bool emb = false;
    bool imm = false;
    bool s_imm_absolute = false;
    std::optional<Verdict> immersion;
    std::optional<Verdict> strong;
};

Classification classify(const Morphism &h);

} // namespace posmod
