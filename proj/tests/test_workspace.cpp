#include "support.hpp"

#include "posmod/claims.hpp"
#include "posmod/morphisms.hpp"
#include "posmod/report.hpp"
#include "posmod/semantics.hpp"
#include "posmod/syntax.hpp"

#include <doctest.h>


using namespace posmod;
using testing::digraphs;
using testing::unary;

namespace {

/// Reads a structure exported in a report back through the DSL.
StructurePtr reparse(const Workspace &base, const Json &structure, const std::string &as)
{
    Workspace ws = base;
    std::string dsl = structure.at("dsl").get<std::string>();
    auto name_start = dsl.find(' ') + 1;
    auto name_end = dsl.find(" :");
    ws.extend(dsl.substr(0, name_start) + as + dsl.substr(name_end));
    return ws.structure(as);
}

} // namespace

TEST_CASE("bundled workspaces render and parse back")
{
    for (const auto &ws : bundled_workspaces()) {
        std::string text = ws->render();
        Workspace again = Workspace::parse(text, ws->name());
        CHECK(again.render() == text);
        CHECK(again.structure_names() == ws->structure_names());
        CHECK(again.span_names() == ws->span_names());
    }
}

TEST_CASE("workspace errors name the problem and its position")
{
    CHECK_THROWS_AS(digraphs().structure("Q9"), UnknownName);
    CHECK_THROWS_AS(digraphs().model_class("models(nope,<=2)"), UnknownName);
    CHECK_THROWS_AS(digraphs().model_class("models(empty, Q/2, <=2)"), UnknownName);
    try {
        Workspace::parse("signature G { rel R/2; }\nstructure A : G { universe 2;\n  R = {(0,5)}; }\n");
        FAIL("expected an error");
    }
    catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS(Workspace::parse("signature G { rel R/2; }\nstructure A : G { universe 1; }\nstructure A : G "
                                  "{ universe 1; }\n"));
    CHECK_THROWS(Workspace::parse("signature U { fun f/1; }\nstructure A : U { universe 2; }\n"));
}

TEST_CASE("theories include other theories")
{
    const Theory &fpf = unary().theory("T_fpf");
    CHECK(fpf.sentences.size() == 2);
    CHECK(render(fpf.sentences[0]) == "forall x y. f(x) = f(y) -> x = y");
    CHECK(unary().has_theory("empty"));
    CHECK(digraphs().model_class("models(T_empty,R/2,<=2)")->count() == 12);
}

TEST_CASE("class expressions")
{
    const auto &u = unary();
    CHECK(u.model_class("inj3") == u.model_class("models(T_inj, <=3)"));
    CHECK(u.model_class("models(T_inj, f/1, <=3)") == u.model_class("inj3"));
    CHECK(digraphs().model_class("models(empty,R/2,<=2)")->count() == 12);
    CHECK(digraphs().model_class("pc(digraphs3)")->count() == 1);
    auto explicit_class = digraphs().model_class("{E2, L1}");
    CHECK(explicit_class->count() == 2);
    CHECK(digraphs().model_class("union({E2}, digraphs2)")->count() == 12);
}

TEST_CASE("pool expressions")
{
    CHECK(digraphs().formula_pool("qf2").size() == 6);
    CHECK(digraphs().formula_pool("qf(atoms<=2)").formulas() == digraphs().formula_pool("qf2").formulas());
    auto sent = digraphs().sentence_pool("sent(atoms<=1, params=c0)");
    CHECK(sent->describe() == "sent(atoms<=1, vars=x, params=c0)");
    CHECK(unary().delta("qf(atoms<=2)").formulas.size() == 66);
    CHECK_THROWS(digraphs().delta("pos(atoms<=1, exists<=1)"));
}

TEST_CASE("structures survive JSON export")
{
    for (const auto *ws : {&digraphs(), &unary()})
        for (const auto &m : ws->model_class("models(empty,<=2)")->members()) {
            Structure back = structure_from_json(to_json(*m), ws->signature());
            CHECK(back.same_tables(*m));
            CHECK(reparse(*ws, to_json(*m), "Back")->same_tables(*m));
        }
}

TEST_CASE("report witnesses re-verify after export")
{
    SUBCASE("a pc refutation names a non-immersive homomorphism")
    {
        const auto &d = digraphs();
        auto p1 = d.structure("P1");
        Report report({"check", "pc"});
        report.add_verdict("pc", is_pc_in(p1, d.model_class("digraphs2")));
        Json j = report.json();
        const Json &w = j["verdicts"][0]["verdict"]["witness"];
        auto target = reparse(d, w["structures"][0], "Target");
        Morphism h(p1, target, w["maps"][0]["map"].get<std::vector<int>>());
        CHECK(is_homomorphism(*p1, *target, h.map));
        CHECK_FALSE(is_immersion(h).holds);
        Formula phi = d.formula(w["formula"].get<std::string>());
        Assignment at;
        auto tuple = w["tuple"].get<std::vector<int>>();
        for (std::size_t i = 0; i < tuple.size(); ++i)
            at["x" + std::to_string(i)] = h(tuple[i]);
        CHECK(evaluate(*target, phi, at));
    }
    SUBCASE("an entailment refutation names a counter-model")
    {
        const auto &d = digraphs();
        std::string text = "forall x y. R(x,y) -> R(y,x)";
        Report report({"entails"});
        report.add_verdict("entails", entails(d.model_class("digraphs2"), d.sentence(text)));
        Json w = report.json()["verdicts"][0]["verdict"]["witness"];
        auto counter = reparse(d, w["structures"][0], "Counter");
        CHECK_FALSE(satisfies_sentence(*counter, d.sentence(text)).holds);
    }
}

TEST_CASE("report schema")
{
    Report report({"enumerate"});
    report.set("count", 3);
    Json j = report.json();
    std::vector<std::string> keys;
    for (const auto &[key, value] : j.items())
        keys.push_back(key);
    CHECK(keys == std::vector<std::string>{"command", "result", "verdicts", "seconds"});
    CHECK(report.text() == "count: 3\n");
}

TEST_CASE("claim rows respect the filter")
{
    ClaimOptions options;
    options.filter = "poset-";
    auto rows = run_claims(options);
    REQUIRE(rows.size() == 2);
    for (const auto &r : rows) {
        CHECK(r.passed);
        CHECK(r.kind == ClaimKind::Asserted);
        CHECK(to_json(r)["kind"] == "ASSERTED");
    }

    options.filter = "fields";
    auto skipped = run_claims(options);
    REQUIRE(skipped.size() == 1);
    CHECK(skipped[0].kind == ClaimKind::SkippedAbsolute);
}
