#pragma once

// Syntax of positive logic: signatures, terms, positive formulas and
// h-inductive sentences. There is deliberately no negation, implication or
// universal quantifier constructor inside formulas; implication only appears
// at the top of an HInductiveSentence.

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace posmod {

/// Base class of every error the library reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class UnknownSymbol : public Error {
public:
    using Error::Error;
};

struct Symbol {
    std::string name;
    int arity = 0;

    bool operator==(const Symbol &) const = default;
};

/// A first-order signature. Equality and falsum are built in and never
/// declared. Function symbols of arity 0 are constants.
class Signature {
public:
    static constexpr int default_max_arity = 4;

    explicit Signature(std::string name = "S", int max_arity = default_max_arity);

    void add_function(std::string name, int arity);
    void add_relation(std::string name, int arity);

    const std::string &name() const { return name_; }
    const std::vector<Symbol> &functions() const { return functions_; }
    const std::vector<Symbol> &relations() const { return relations_; }

    std::optional<int> function_index(std::string_view name) const;
    std::optional<int> relation_index(std::string_view name) const;
    bool declares(std::string_view name) const;

    /// Same symbols with the same arities (the name is ignored).
    bool compatible(const Signature &other) const;

    /// e.g. "{fun f/1; rel R/2}"
    std::string describe() const;

private:
    void check_new(const std::string &name, int arity, int min_arity) const;

    std::string name_;
    int max_arity_;
    std::vector<Symbol> functions_;
    std::vector<Symbol> relations_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// Total order on variable names: alphabetic prefix, then numeric suffix,
/// then the full spelling. So x < x0 < x1 < x2 < x10 < y.
std::strong_ordering compare_variable_names(std::string_view a, std::string_view b);

struct VariableOrder {
    bool operator()(const std::string &a, const std::string &b) const
    {
        return compare_variable_names(a, b) < 0;
    }
};

using VariableSet = std::set<std::string, VariableOrder>;

struct Term {
    enum class Kind { Apply, Variable };

    Kind kind = Kind::Variable;
    std::string name;
    std::vector<Term> args;

    static Term variable(std::string name);
    static Term apply(std::string symbol, std::vector<Term> args = {});

    bool is_variable() const { return kind == Kind::Variable; }
    int depth() const;

    bool operator==(const Term &) const = default;
};

/// Applications sort before variables; applications by symbol then arguments.
std::strong_ordering compare(const Term &a, const Term &b);

struct Formula {
    // Declaration order is the canonical constructor ranking.
    enum class Kind { Truth, Falsum, Equation, Relation, And, Or, Exists };

    Kind kind = Kind::Truth;
    std::string symbol;           // relation symbol, or bound variable of Exists
    std::vector<Term> terms;      // Equation: two sides; Relation: arguments
    std::vector<Formula> children; // And / Or operands; Exists: exactly one body

    static Formula truth();
    static Formula falsum();
    static Formula equation(Term lhs, Term rhs);
    static Formula relation(std::string symbol, std::vector<Term> args);
    static Formula conjunction(std::vector<Formula> operands);
    static Formula disjunction(std::vector<Formula> operands);
    static Formula exists(std::string variable, Formula body);
    static Formula exists(const std::vector<std::string> &variables, Formula body);

    bool is_atom() const { return kind == Kind::Equation || kind == Kind::Relation; }
    bool is_quantifier_free() const;
    /// A conjunction of atoms (or a single atom, or Truth).
    bool is_conjunctive() const;

    bool operator==(const Formula &) const = default;
};

std::strong_ordering compare(const Formula &a, const Formula &b);

struct FormulaLess {
    bool operator()(const Formula &a, const Formula &b) const { return compare(a, b) < 0; }
};

/// forall vars. premise -> conclusion. Free variables of premise and
/// conclusion outside `variables` are parameters (names for elements of a
/// structure, supplied by an assignment when the sentence is checked).
struct HInductiveSentence {
    std::vector<std::string> variables;
    Formula premise;
    Formula conclusion;

    bool is_h_universal() const { return conclusion.kind == Formula::Kind::Falsum; }
    VariableSet parameters() const;

    bool operator==(const HInductiveSentence &) const = default;
};

std::strong_ordering compare(const HInductiveSentence &a, const HInductiveSentence &b);

struct Theory {
    std::string name;
    SignaturePtr signature;
    std::vector<HInductiveSentence> sentences;
};

VariableSet free_variables(const Term &t);
VariableSet free_variables(const Formula &f);
/// All variable names, bound or free.
VariableSet all_variables(const Formula &f);
int atom_count(const Formula &f);

/// Checks arities and symbol kinds against the signature.
void check_well_formed(const Formula &f, const Signature &sig);
void check_well_formed(const HInductiveSentence &s, const Signature &sig);

/// Capture-avoiding substitution of free variables by terms.
Term substitute(const Term &t, const std::vector<std::pair<std::string, Term>> &subst);
Formula substitute(const Formula &f, const std::vector<std::pair<std::string, Term>> &subst);
Formula rename_free(const Formula &f, const std::vector<std::pair<std::string, std::string>> &renaming);

/// Returns a name based on `base` that is not in `used`, and records it.
std::string fresh_variable(std::string_view base, VariableSet &used);

struct PrenexForm {
    std::vector<std::string> variables;
    Formula matrix;
};

/// Pulls every existential to the front. Bound variables that are used
/// more than once, or clash with a free variable, are renamed apart with
/// numeric suffixes (y -> y1, y2, ...).
PrenexForm prenex(const Formula &f);

/// Flattens nested And/Or, sorts their operands, drops duplicate operands,
/// orients equations and renames bound variables canonically (z1, z2, ...
/// up to permutation). Two formulas equal up to these rewrites have equal
/// canonical forms.
Formula canonicalize(const Formula &f);

} // namespace posmod
