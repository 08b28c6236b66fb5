#pragma once

#include "posmod/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace posmod {

/// An element map named for reports, e.g. f: A -> B.
struct NamedMap {
    std::string label;
    std::string from;
    std::string to;
    std::vector<int> map;
};

struct Witness {
    std::string description;
    std::vector<StructurePtr> structures;
    std::vector<NamedMap> maps;
    std::optional<Formula> formula;
    std::optional<HInductiveSentence> sentence;
    /// Elements the formula or sentence is evaluated at, when relevant.
    std::vector<int> tuple;
};

/// Outcome of a decision. `scope` names the finite class (or classes) the
/// verdict is relative to; false verdicts carry a witness.
struct Verdict {
    bool holds = false;
    std::string scope;
    std::optional<Witness> witness;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;

    explicit operator bool() const { return holds; }

    static Verdict yes(std::string scope, std::optional<Witness> witness = std::nullopt)
    {
        return Verdict{true, std::move(scope), std::move(witness), {}, {}};
    }
    static Verdict no(std::string scope, Witness witness)
    {
        return Verdict{false, std::move(scope), std::move(witness), {}, {}};
    }
};

} // namespace posmod
