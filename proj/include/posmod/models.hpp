#pragma once

// Bounded model enumeration, isomorphism and finite model classes.

#include "posmod/structure.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace posmod {

class SizeBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Lexicographically least flattened table code over all relabelings that
/// respect an element-invariant ordering. Equal codes iff isomorphic.
std::vector<int> canonical_code(const Structure &s);

/// The relabeling achieving canonical_code: element i becomes perm[i].
std::vector<int> canonical_labeling(const Structure &s);

Structure canonical_form(const Structure &s);

bool are_isomorphic(const Structure &a, const Structure &b);

/// A bijection a -> b preserving and reflecting all facts, if one exists.
std::optional<std::vector<int>> find_isomorphism(const Structure &a, const Structure &b);

struct EnumerationOptions {
    bool dedup = true;
    /// Cap on search nodes visited for one size before giving up.
    std::size_t node_cap = 20'000'000;
};

/// All models of `theory` with exactly n elements. With dedup, one canonical
/// representative per isomorphism type, ordered by canonical code.
std::vector<Structure> enumerate_models(const Theory &theory, int n, const EnumerationOptions &options = {});

class ModelClass;
using ModelClassPtr = std::shared_ptr<const ModelClass>;

/// A finite list of structures standing in for "the models of T". Generated
/// classes materialize one size at a time on demand, so searches that stop
/// early never pay for large strata.
class ModelClass {
public:
    static ModelClassPtr explicit_class(std::string name, SignaturePtr sig, std::vector<StructurePtr> members);
    static ModelClassPtr generated(std::string name, Theory theory, int max_size, EnumerationOptions options = {});
    /// Members of a, then members of b not isomorphic to one of a, per size.
    static ModelClassPtr union_of(std::string name, ModelClassPtr a, ModelClassPtr b);

    const std::string &name() const { return name_; }
    const SignaturePtr &signature() const { return sig_; }
    int max_size() const { return max_size_; }

    /// Sizes that may have members, ascending.
    std::vector<int> sizes() const;
    const std::vector<StructurePtr> &stratum(int n) const;
    /// Every member, by size then class order. Materializes all strata.
    std::vector<StructurePtr> members() const;
    std::size_t count() const;
    bool is_generated() const { return theory_.has_value(); }
    const std::optional<Theory> &theory() const { return theory_; }

    /// A member isomorphic to s, or null.
    StructurePtr find_isomorphic(const Structure &s) const;

    std::optional<bool> cached_pc(const Structure *member) const;
    void cache_pc(const Structure *member, bool pc) const;

private:
    ModelClass() = default;

    std::string name_;
    SignaturePtr sig_;
    int max_size_ = 0;
    std::optional<Theory> theory_;
    EnumerationOptions options_;
    ModelClassPtr left_, right_;

    mutable std::mutex mutex_;
    mutable std::map<int, std::vector<StructurePtr>> strata_;
    mutable std::map<const Structure *, bool> pc_cache_;
};

} // namespace posmod
