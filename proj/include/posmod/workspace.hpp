#pragma once

// Workspaces: one signature plus named structures, theories, classes, pools
// and spans, read from a small block language.
//
//   signature U { fun f/1; rel R/2; const c; }
//   structure A : U { universe 3; f = [1,2,0]; R = {(0,1),(1,2)}; c = 0; }
//   theory T : U { forall x y. f(x) = f(y) -> x = y; include T0; }
//   class G = models(T, <=3);
//   pool P = qf(atoms<=2);
//   span X { apex A; left B = [0]; right C = [1]; }
//
// Function tables list values in row-major order of argument tuples.
// Unary relations may list bare elements: P = {0, 2}.
//
// Class expressions:
//   NAME                        a declared class
//   models(T, R/2, ..., <=n)    models of T up to size n; symbol items are
//                               checked against the signature
//   {A, B, ...}                 an explicit class
//   union(G, H)                 members of G, then new members of H
//   pc(G)                       the pc members of G
//
// Pool expressions:
//   qf(atoms<=k, ...)           quantifier-free positive formulas
//   pos(atoms<=k, exists<=d, ...)
//   sent(atoms<=k, ...)         h-inductive sentences
//   hu(atoms<=k, ...)           h-universal sentences
//   k<n>                        sentences over x with parameters c0..c{n-1}
//                               and at most n atoms
// Options: vars=x y, params=a b, depth<=d, exists<=d, conj (no disjunction).
// The term depth defaults to 1 when the signature has non-constant
// functions and to 0 otherwise.

#include "posmod/amalgamation.hpp"
#include "posmod/models.hpp"
#include "posmod/pool.hpp"
#include "posmod/syntax.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace posmod {

class UnknownName : public Error {
public:
    using Error::Error;
};

struct PoolExpr {
    std::string head; // qf, pos, sent, hu or k
    int atoms = 1;
    int exists = 0;
    std::optional<int> depth;
    std::optional<std::vector<std::string>> vars;
    std::optional<std::vector<std::string>> params;
    bool disjunction = true;
    std::string text;

    bool is_sentence_pool() const { return head == "sent" || head == "hu" || head == "k"; }
};

PoolExpr parse_pool_expr(std::string_view text);

class Workspace {
public:
    explicit Workspace(std::string name = "workspace");

    static Workspace parse(std::string_view text, std::string name = "workspace");
    static Workspace load_file(const std::string &path);

    /// Reads further blocks into this workspace.
    void extend(std::string_view text);

    const std::string &name() const { return name_; }
    bool has_signature() const { return sig_ != nullptr; }
    const SignaturePtr &signature() const;

    StructurePtr structure(const std::string &name) const;
    const Theory &theory(const std::string &name) const;
    const Span &span(const std::string &name) const;
    bool has_structure(const std::string &name) const { return structures_.count(name) > 0; }
    bool has_theory(const std::string &name) const;

    /// A declared class name or an inline class expression. Generated classes
    /// are shared between equal expressions.
    ModelClassPtr model_class(std::string_view expr) const;

    /// Formula pool from a declared pool name or a pool expression. Variables
    /// default to `default_vars` when the expression names none.
    FormulaPool formula_pool(std::string_view expr, const std::vector<std::string> &default_vars = {"x"}) const;
    std::shared_ptr<const SentencePool> sentence_pool(std::string_view expr) const;
    /// Delta set from a quantifier-free pool: parameters default to x,
    /// existential variables (vars=) to y.
    DeltaSet delta(std::string_view expr) const;

    Formula formula(std::string_view text) const;
    HInductiveSentence sentence(std::string_view text) const;

    void add_structure(StructurePtr s);
    void add_theory(Theory t);

    std::vector<std::string> structure_names() const;
    std::vector<std::string> theory_names() const;
    std::vector<std::string> class_names() const;
    std::vector<std::string> span_names() const;

    /// The whole workspace in block syntax; parses back to an equal workspace.
    std::string render() const;

private:
    void parse_blocks(detail::TokenStream &in);
    void parse_signature(detail::TokenStream &in);
    void parse_structure(detail::TokenStream &in);
    void parse_theory(detail::TokenStream &in);
    void parse_class(detail::TokenStream &in);
    void parse_pool(detail::TokenStream &in);
    void parse_span(detail::TokenStream &in);
    void expect_signature_name(detail::TokenStream &in);
    ModelClassPtr class_expr(detail::TokenStream &in) const;
    const PoolExpr &pool_expr(std::string_view expr, PoolExpr &scratch) const;
    int default_depth() const;

    std::string name_;
    SignaturePtr sig_;
    std::map<std::string, StructurePtr> structures_;
    std::vector<std::string> structure_order_;
    std::map<std::string, Theory> theories_;
    std::vector<std::string> theory_order_;
    std::map<std::string, std::string> class_text_;
    std::vector<std::string> class_order_;
    std::map<std::string, PoolExpr> pools_;
    std::vector<std::string> pool_order_;
    std::map<std::string, Span> spans_;
    std::vector<std::string> span_order_;
    mutable std::map<std::string, ModelClassPtr> class_cache_;
};

/// A structure as a `structure` block.
std::string render_structure(const Structure &s);

/// The workspaces shipped with the tool: "digraphs" over {R/2} and "unary"
/// over {f/1}.
const std::vector<std::shared_ptr<Workspace>> &bundled_workspaces();
std::shared_ptr<Workspace> bundled_workspace(const std::string &name);

/// Source text of a bundled workspace.
std::string_view bundled_source(const std::string &name);

} // namespace posmod
