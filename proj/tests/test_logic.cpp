#include "support.hpp"

#include "posmod/pool.hpp"
#include "posmod/structure.hpp"
#include "posmod/syntax.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace posmod;

namespace {

SignaturePtr sig_r()
{
    auto sig = std::make_shared<Signature>("G");
    sig->add_relation("R", 2);
    return sig;
}

SignaturePtr sig_f()
{
    auto sig = std::make_shared<Signature>("U");
    sig->add_function("f", 1);
    return sig;
}

Term var(const char *name) { return Term::variable(name); }
Term f_of(Term t) { return Term::apply("f", {std::move(t)}); }

std::string read_golden(const std::string &name)
{
    std::ifstream in(std::string(POSMOD_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace

TEST_CASE("existential formula parses to its tree")
{
    Formula f = parse_formula("exists y. R(x,y)", *sig_r());
    CHECK(f == Formula::exists("y", Formula::relation("R", {var("x"), var("y")})));
    CHECK(render(f) == "exists y. R(x,y)");
}

TEST_CASE("injectivity axiom parses as an h-inductive sentence")
{
    HInductiveSentence s = parse_sentence("forall x y. f(x) = f(y) -> x = y", *sig_f());
    CHECK(s.variables == std::vector<std::string>{"x", "y"});
    CHECK(s.premise == Formula::equation(f_of(var("x")), f_of(var("y"))));
    CHECK(s.conclusion == Formula::equation(var("x"), var("y")));
    CHECK(render(s) == "forall x y. f(x) = f(y) -> x = y");
    CHECK_FALSE(s.is_h_universal());
}

TEST_CASE("negation and inner implication are rejected")
{
    CHECK_THROWS_AS(parse_formula("~R(x,y)", *sig_r()), NegationRejected);
    CHECK_THROWS_AS(parse_formula("!R(x,y)", *sig_r()), NegationRejected);
    CHECK_THROWS_AS(parse_formula("x != y", *sig_r()), NegationRejected);
    CHECK_THROWS_AS(parse_formula("R(x,y) -> R(y,x)", *sig_r()), NegationRejected);
    CHECK_THROWS_AS(parse_formula("forall x. R(x,x)", *sig_r()), ParseError);
}

TEST_CASE("parse errors carry a position")
{
    try {
        parse_formula("R(x,y) &\n  R(x,", *sig_r());
        FAIL("expected a parse error");
    }
    catch (const ParseError &e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 3);
    }
    CHECK_THROWS_AS(parse_formula("R(x)", *sig_r()), ArityError);
    CHECK_THROWS_AS(parse_formula("g(x) = x", *sig_f()), UnknownSymbol);
}

TEST_CASE("rendering of constants and connectives")
{
    CHECK(render(Formula::falsum()) == "false");
    CHECK(render(Formula::truth()) == "true");
    Formula f = parse_formula("R(x,y) & (R(y,x) | x = y)", *sig_r());
    CHECK(parse_formula(render(f), *sig_r()) == f);
}

TEST_CASE("variable names order by prefix then numeric suffix")
{
    std::vector<std::string> names{"y", "x10", "x2", "x", "x1", "x0"};
    std::sort(names.begin(), names.end(), VariableOrder{});
    CHECK(names == std::vector<std::string>{"x", "x0", "x1", "x2", "x10", "y"});
}

TEST_CASE("prenex form")
{
    auto sig = sig_r();
    SUBCASE("single existential")
    {
        PrenexForm p = prenex(parse_formula("exists y. R(x,y)", *sig));
        CHECK(p.variables == std::vector<std::string>{"y"});
        CHECK(p.matrix == parse_formula("R(x,y)", *sig));
    }
    SUBCASE("clashing bound variables are renamed apart")
    {
        PrenexForm p = prenex(parse_formula("(exists y. R(x,y)) & (exists y. R(y,x))", *sig));
        CHECK(p.variables == std::vector<std::string>{"y1", "y2"});
        CHECK(p.matrix == parse_formula("R(x,y1) & R(y2,x)", *sig));
    }
    SUBCASE("quantifier-free formulas are unchanged")
    {
        Formula f = parse_formula("R(x,y) | x = y", *sig);
        PrenexForm p = prenex(f);
        CHECK(p.variables.empty());
        CHECK(p.matrix == f);
    }
}

TEST_CASE("smallest relational pool matches the golden listing")
{
    PoolSpec spec;
    spec.variables = {"x"};
    spec.max_atoms = 1;
    FormulaPool pool(sig_r(), spec);
    CHECK(pool.size() == 4);
    CHECK(pool.listing() == read_golden("pool_R_x_atoms1.txt"));

    // hand list: the two constants and the two atoms over x
    auto sig = sig_r();
    for (const char *text : {"true", "false", "x = x", "R(x,x)"})
        CHECK(pool.contains(parse_formula(text, *sig)));
}

TEST_CASE("pool without variables or atoms holds only the constants")
{
    PoolSpec spec;
    spec.variables = {};
    spec.max_atoms = 0;
    FormulaPool pool(sig_r(), spec);
    REQUIRE(pool.size() == 2);
    CHECK(pool.formulas()[0] == Formula::truth());
    CHECK(pool.formulas()[1] == Formula::falsum());
}

TEST_CASE("pools are deterministic")
{
    PoolSpec spec;
    spec.variables = {"x", "y"};
    spec.max_atoms = 2;
    spec.max_existentials = 1;
    FormulaPool a(sig_r(), spec);
    FormulaPool b(sig_r(), spec);
    CHECK(a.formulas() == b.formulas());
}

TEST_CASE("every pool formula survives render and parse")
{
    for (const auto &[sig, depth] : {std::pair{sig_r(), 0}, std::pair{sig_f(), 1}}) {
        PoolSpec spec;
        spec.variables = {"x", "y"};
        spec.max_atoms = 2;
        spec.max_existentials = 1;
        spec.max_term_depth = depth;
        FormulaPool pool(sig, spec);
        for (const auto &f : pool.formulas())
            CHECK_MESSAGE(parse_formula(render(f), *sig) == f, render(f));
    }
}

TEST_CASE("canonical databases of conjunctions")
{
    auto sig = sig_r();
    SUBCASE("an equated edge is a loop")
    {
        std::vector<std::string> x{"x"};
        PointedDatabase db = canonical_database(parse_formula("R(x,y) & x = y", *sig), sig, x);
        CHECK(db.database.size() == 1);
        CHECK(db.database.holds(0, std::vector<int>{0, 0}));
    }
    SUBCASE("truth is one bare element")
    {
        std::vector<std::string> x{"x"};
        PointedDatabase db = canonical_database(Formula::truth(), sig, x);
        CHECK(db.database.size() == 1);
        CHECK_FALSE(db.database.holds(0, std::vector<int>{0, 0}));
    }
    SUBCASE("a 2-periodic point closes its subterms into a cycle")
    {
        auto fsig = sig_f();
        std::vector<std::string> y{"y"};
        PointedDatabase db = canonical_database(parse_formula("f(f(y)) = y", *fsig), fsig, y);
        REQUIRE(db.database.size() == 2);
        int p = db.point[0];
        int q = db.database.apply(0, std::vector<int>{p});
        CHECK(q != p);
        CHECK(db.database.apply(0, std::vector<int>{q}) == p);
    }
}

TEST_CASE("theory text splits on semicolons")
{
    auto sentences = parse_theory("forall x. true -> R(x,x); forall x y. R(x,y) -> R(y,x);", *sig_r());
    REQUIRE(sentences.size() == 2);
    CHECK(render(sentences[1]) == "forall x y. R(x,y) -> R(y,x)");
}
