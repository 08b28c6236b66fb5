#pragma once

// JSON export and the reports printed by the command-line tool. Field order
// is fixed; formulas, sentences and structures appear in workspace syntax so
// they can be read back.

#include "posmod/amalgamation.hpp"
#include "posmod/models.hpp"
#include "posmod/verdict.hpp"

#include <json.hpp>

#include <chrono>
#include <string>
#include <vector>

namespace posmod {

using Json = nlohmann::ordered_json;

Json to_json(const Structure &s);
Json to_json(const ModelClass &cls, bool with_members = false);
Json to_json(const NamedMap &m);
Json to_json(const Witness &w);
Json to_json(const Verdict &v);
Json to_json(const Span &span);
Json to_json(const Square &square);

/// Rebuilds a structure from its JSON export over the given signature.
Structure structure_from_json(const Json &j, const SignaturePtr &sig);

class Report {
public:
    explicit Report(std::vector<std::string> command);

    /// A named result field, kept in insertion order.
    void set(const std::string &key, Json value);
    /// Adds a verdict under "verdicts" and to the text table.
    void add_verdict(const std::string &label, const Verdict &v);
    void add_line(std::string line) { lines_.push_back(std::move(line)); }

    Json json() const;
    std::string text() const;

private:
    std::vector<std::string> command_;
    Json fields_ = Json::object();
    Json verdicts_ = Json::array();
    std::vector<std::string> lines_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace posmod
