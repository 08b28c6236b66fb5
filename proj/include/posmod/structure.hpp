#pragma once

#include "posmod/logic.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace posmod {

class UnassignedVariable : public Error {
public:
    using Error::Error;
};

/// A finite structure with universe {0, ..., n-1}. Function tables are total
/// unless the structure is partial (canonical databases); undefined entries
/// hold `undefined`.
class Structure {
public:
    static constexpr int undefined = -1;

    Structure(SignaturePtr sig, int size, bool partial = false);

    int size() const { return size_; }
    const Signature &signature() const { return *sig_; }
    const SignaturePtr &signature_ptr() const { return sig_; }
    bool is_partial() const { return partial_; }
    /// True when every function entry is defined.
    bool is_total() const;

    const std::string &name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    int apply(int function, std::span<const int> args) const;
    void set_function(int function, std::span<const int> args, int value);
    bool holds(int relation, std::span<const int> args) const;
    void set_relation(int relation, std::span<const int> args, bool value = true);

    /// Flattened row-major tables, indexed by tuple_index.
    const std::vector<int> &function_table(int function) const { return functions_[function]; }
    const std::vector<std::uint8_t> &relation_table(int relation) const { return relations_[relation]; }
    std::vector<int> &function_table(int function) { return functions_[function]; }
    std::vector<std::uint8_t> &relation_table(int relation) { return relations_[relation]; }

    std::size_t tuple_index(std::span<const int> args) const;
    std::vector<int> tuple_at(std::size_t index, int arity) const;
    /// n^arity
    std::size_t tuple_count(int arity) const;

    /// Relabels: element i of this structure becomes element perm[i].
    Structure permuted(std::span<const int> perm) const;

    /// Structural equality of tables (names ignored).
    bool same_tables(const Structure &other) const;

private:
    SignaturePtr sig_;
    int size_;
    bool partial_;
    std::string name_;
    std::vector<std::vector<int>> functions_;
    std::vector<std::vector<std::uint8_t>> relations_;
};

using StructurePtr = std::shared_ptr<const Structure>;

using Assignment = std::map<std::string, int, VariableOrder>;

/// A formula compiled against a signature with its free variables bound to
/// slots 0..k-1, in the order given at construction. Evaluation backtracks
/// over the universe for existentials.
class CompiledFormula {
public:
    CompiledFormula(const Formula &f, const Signature &sig, std::span<const std::string> free_vars);

    bool evaluate(const Structure &s, std::span<const int> free_values) const;
    int arity() const { return free_count_; }

    /// Three-valued evaluation over a draft structure whose unknown relation
    /// cells hold 2 and unknown function cells hold Structure::undefined.
    enum class Truth3 : std::uint8_t { False, True, Unknown };
    Truth3 evaluate3(const Structure &s, std::span<const int> free_values) const;

private:
    struct TermNode {
        int symbol = -1; // -1: variable
        int slot = -1;
        std::vector<int> args;
    };
    struct Node {
        Formula::Kind kind;
        int symbol = -1;
        int slot = -1;
        std::vector<int> terms;
        std::vector<int> children;
    };

    int compile_term(const Term &t, const Signature &sig, std::map<std::string, int> &scope);
    int compile(const Formula &f, const Signature &sig, std::map<std::string, int> &scope);
    int eval_term(int t, const Structure &s, std::vector<int> &env) const;
    bool eval(int n, const Structure &s, std::vector<int> &env) const;
    Truth3 eval3(int n, const Structure &s, std::vector<int> &env) const;

    std::vector<TermNode> terms_;
    std::vector<Node> nodes_;
    int root_ = 0;
    int free_count_ = 0;
    int slot_count_ = 0;
};

/// Free variables of `f` are looked up in `assignment`.
bool evaluate(const Structure &s, const Formula &f, const Assignment &assignment);

/// Every tuple over the structure for the given free variables (in order)
/// at which `f` holds.
std::vector<std::vector<int>> realizations(const Structure &s, const Formula &f, std::span<const std::string> vars);
bool is_realized(const Structure &s, const Formula &f);

struct SentenceCheck {
    bool holds = true;
    /// On failure: values for the universal variables, in order.
    std::vector<int> counter_assignment;
};

/// Parameters (free variables that are not universally bound) are taken
/// from `parameters`.
SentenceCheck satisfies_sentence(const Structure &s, const HInductiveSentence &sigma, const Assignment &parameters = {});

/// A flat fact of a structure, with elements named c<index>.
struct Fact {
    bool positive = true;
    bool is_function = false; // function fact f(args) = value; otherwise relation or equality
    bool is_equality = false; // c_i = c_j (only appears negated)
    int symbol = -1;
    std::vector<int> args;
    int value = -1;
};

std::string render(const Fact &fact, const Signature &sig);

/// All relation facts R(a) and function facts f(a) = b, no reflexive equalities.
std::vector<Fact> diag_plus(const Structure &a);

struct Diagram {
    std::vector<Fact> positive;
    std::vector<Fact> negative;
};

/// diag_plus together with every failing flat atom, negated: relation tuples
/// not in a relation, wrong function values and distinct element pairs.
Diagram diag(const Structure &a);

/// The existential-positive formula exists ys. /\ facts describing the
/// pointed structure (host, point): point positions become x0, x1, ... (with
/// equalities for repeated elements), the other elements y1, y2, ...
Formula diagram_formula(const Structure &host, std::span<const int> point);

/// Variable names x0..x{k-1} used by diagram_formula for a point of length k.
std::vector<std::string> point_variables(std::size_t k);

struct PointedDatabase {
    Structure database;
    std::vector<int> point;
};

/// Canonical database of a conjunction of atoms: elements are the subterm
/// classes under congruence closure of the equations, relation facts are the
/// atoms, function tables are partial. The point lists the class of each
/// distinguished variable.
PointedDatabase canonical_database(const Formula &conjunction, const SignaturePtr &sig,
                                   std::span<const std::string> distinguished);

} // namespace posmod
