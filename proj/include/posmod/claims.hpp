#pragma once

// The bundled claim suite: statements about pc, apc and amalgamation checked
// on the bundled finite classes. Asserted rows hold exactly at finite scale
// and must pass; search rows hunt for counterexamples to statements whose
// proofs need unbounded models, and report what they find with the budget
// used; skipped rows name statements with no finite reading.

#include "posmod/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace posmod {

enum class ClaimKind { Asserted, Search, SkippedAbsolute };

std::string to_string(ClaimKind kind);

struct ClaimRow {
    std::string id;
    std::string claim;
    ClaimKind kind = ClaimKind::Asserted;
    /// Asserted: no violation. Search: the search ran to completion.
    bool passed = false;
    /// Violations (asserted) or counterexample candidates (search).
    int findings = 0;
    /// Instances examined.
    long checked = 0;
    /// Classes and budgets the row is relative to.
    std::string scope;
    std::string detail;
    double seconds = 0;
};

struct ClaimOptions {
    /// Called after each row, for progress output.
    std::function<void(const ClaimRow &)> progress;
    /// Only rows whose id contains this text.
    std::string filter;
};

std::vector<ClaimRow> run_claims(const ClaimOptions &options = {});

Json to_json(const ClaimRow &row);

} // namespace posmod
