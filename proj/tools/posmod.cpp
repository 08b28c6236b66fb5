// Command-line front end. Every command builds a Report and prints it as
// text or JSON; exit status is 0 for a true verdict, 1 for a false one and
// 2 for usage or input errors.

#include "posmod/amalgamation.hpp"
#include "posmod/apc.hpp"
#include "posmod/claims.hpp"
#include "posmod/morphisms.hpp"
#include "posmod/report.hpp"
#include "posmod/semantics.hpp"
#include "posmod/syntax.hpp"
#include "posmod/workspace.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace posmod;

namespace {

const char *expression_help = R"(Expressions:
  class    NAME | models(THEORY, SYM/n, ..., <=n) | {A, B, ...} | union(C, D) | pc(C)
           SYM/n items are checked against the signature and otherwise ignored.
  pool     NAME | qf(...) | pos(...) | sent(...) | hu(...) | k<n>
           options: atoms<=n  exists<=n  depth<=n  vars=x y  params=c0 c1  conj
  kind     one letter (all four legs), two letters a,b (symmetric [a,b,b,a]),
           or four letters; letters h, e, i, s.
  map      "0:1,1:0" or "1,0"

Without --workspace, names are looked up in the bundled workspaces
(digraphs, unary) in that order.)";

struct Options {
    std::string workspace;
    bool json = false;
    std::string budget;
    std::string pool;
    std::string delta = "qf(atoms<=2)";
    bool weak = false;
    unsigned seed = 0;
    std::string structure;
    std::string cls;
    std::string phi;
    std::string kind = "h";
    std::string span;
    std::string from;
    std::string to;
    std::string map;
    std::string at;
    std::string params = "x";
    std::string vars = "y";
    int width = 4;
    bool members = false;
    bool strong = false;
    bool free = false;
    std::string filter;
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::vector<std::string> split_words(const std::string &text)
{
    std::vector<std::string> out;
    std::string word;
    for (char c : text) {
        if (c == ' ' || c == ',') {
            if (!word.empty())
                out.push_back(std::move(word));
            word.clear();
        }
        else {
            word += c;
        }
    }
    if (!word.empty())
        out.push_back(std::move(word));
    return out;
}

int to_int(const std::string &text, const std::string &what)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used == text.size())
            return v;
    }
    catch (const std::exception &) {
    }
    throw UsageError("bad " + what + " '" + text + "'");
}

std::vector<int> parse_map(const std::string &text, int source_size)
{
    auto items = split_words(text);
    std::vector<int> map(static_cast<std::size_t>(source_size), -1);
    bool pairs = text.find(':') != std::string::npos;
    if (!pairs && static_cast<int>(items.size()) != source_size)
        throw UsageError("map lists " + std::to_string(items.size()) + " images for " + std::to_string(source_size) +
                         " elements");
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!pairs) {
            map[i] = to_int(items[i], "map image");
            continue;
        }
        auto colon = items[i].find(':');
        if (colon == std::string::npos)
            throw UsageError("bad map entry '" + items[i] + "'");
        int x = to_int(items[i].substr(0, colon), "map element");
        if (x < 0 || x >= source_size)
            throw UsageError("map element " + std::to_string(x) + " outside the source");
        map[x] = to_int(items[i].substr(colon + 1), "map image");
    }
    for (int x = 0; x < source_size; ++x)
        if (map[x] < 0)
            throw UsageError("map leaves element " + std::to_string(x) + " unassigned");
    return map;
}

/// "a0=1 y=2" style assignments.
Assignment parse_assignment(const std::string &text)
{
    Assignment out;
    for (const auto &item : split_words(text)) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("bad assignment '" + item + "'");
        out[item.substr(0, eq)] = to_int(item.substr(eq + 1), "assignment value");
    }
    return out;
}

void require(const std::string &value, const char *flag)
{
    if (value.empty())
        throw UsageError(std::string("missing ") + flag);
}

int verdict_exit(const Verdict &v) { return v.holds ? 0 : 1; }

using Command = std::function<int(Workspace &, Report &)>;

int cmd_classify(const Options &o, Workspace &ws, Report &report)
{
    require(o.from, "--from");
    require(o.to, "--to");
    require(o.map, "--map");
    auto a = ws.structure(o.from);
    auto b = ws.structure(o.to);
    auto map = parse_map(o.map, a->size());
    for (int v : map)
        if (v < 0 || v >= b->size())
            throw UsageError("map image " + std::to_string(v) + " outside the target");
    if (!is_homomorphism(*a, *b, map)) {
        report.set("hom", false);
        report.set("emb", false);
        report.set("imm", false);
        report.set("s_imm_absolute", false);
        return 1;
    }
    Morphism h(a, b, map);
    Classification c = classify(h);
    report.set("hom", c.hom);
    report.set("emb", c.emb);
    report.set("imm", c.imm);
    report.set("s_imm_absolute", c.s_imm_absolute);
    if (c.immersion)
        report.add_verdict("immersion", *c.immersion);
    if (c.strong)
        report.add_verdict("strong immersion (absolute)", *c.strong);
    if (!o.pool.empty()) {
        auto pool = ws.sentence_pool(o.pool);
        Verdict v = is_s_immersion_bounded(h, *pool);
        report.set("s_imm_bounded", v.holds);
        report.add_verdict("strong immersion over " + pool->describe(), v);
    }
    return 0;
}

int cmd_enumerate(const Options &o, Workspace &ws, Report &report)
{
    require(o.cls, "--class");
    auto cls = ws.model_class(o.cls);
    report.set("class", to_json(*cls, o.members));
    report.set("count", cls->count());
    if (o.members && !o.json)
        for (const auto &m : cls->members())
            report.add_line(render_structure(*m));
    return 0;
}

int cmd_check(const std::string &what, const Options &o, Workspace &ws, Report &report)
{
    require(o.structure, "--structure");
    require(o.cls, "--class");
    auto a = ws.structure(o.structure);
    auto cls = ws.model_class(o.cls);
    auto budget = [&] { return o.budget.empty() ? cls : ws.model_class(o.budget); };
    Verdict v;
    if (what == "pc") {
        v = is_pc_in(a, cls);
    }
    else if (what == "apc") {
        DeltaSet delta = ws.delta(o.delta);
        v = is_apc_in(a, cls, delta, o.weak ? ApcMode::Wpc : ApcMode::Apc);
    }
    else if (what == "psa" || what == "hsa") {
        v = is_strong_basis(a, cls, budget(), what == "psa" ? StrongVariant::Psa : StrongVariant::Hsa);
    }
    else if (what == "amalg") {
        std::shared_ptr<const SentencePool> pool = o.pool.empty() ? nullptr : ws.sentence_pool(o.pool);
        v = is_amalg_basis(a, cls, budget(), AmalgamationKind::parse(o.kind, pool));
    }
    else if (what == "closed") {
        require(o.phi, "--phi");
        v = is_closed_formula(a, cls, ws.formula(o.phi), parse_assignment(o.at));
    }
    else if (what == "algebraic") {
        require(o.phi, "--phi");
        Scope scope = Scope::expansion(a, cls);
        Formula phi = ws.formula(o.phi);
        std::vector<std::string> vars = element_names(a->size());
        vars.push_back("z");
        v = is_algebraic(scope, phi, ws.formula_pool(o.pool.empty() ? "qf(atoms<=2)" : o.pool, vars));
    }
    report.set("structure", to_json(*a));
    report.add_verdict(what, v);
    return verdict_exit(v);
}

int cmd_ctr(const Options &o, Workspace &ws, Report &report)
{
    require(o.phi, "--phi");
    require(o.cls, "--class");
    Formula phi = ws.formula(o.phi);
    auto cls = ws.model_class(o.cls);
    auto found = ctr(cls, phi, ws.formula_pool(o.pool.empty() ? "qf(atoms<=1)" : o.pool));
    Json list = Json::array();
    for (const auto &f : found) {
        list.push_back(render(f));
        report.add_line(render(f));
    }
    report.set("phi", render(phi));
    report.set("scope", cls->name());
    report.set("contradictions", list);
    return 0;
}

/// A span given by name, or by a file declaring it. A file with its own
/// signature is a whole workspace; otherwise it extends the current one.
/// The file's last span is used.
Workspace span_workspace(const Options &o, const Workspace &ws, std::string &span_name)
{
    if (!std::filesystem::is_regular_file(o.span)) {
        span_name = o.span;
        return ws;
    }
    std::ifstream in(o.span);
    std::stringstream text;
    text << in.rdbuf();
    Workspace out = ws;
    if (text.str().find("signature") != std::string::npos)
        out = Workspace::parse(text.str(), o.span);
    else
        out.extend(text.str());
    auto names = out.span_names();
    if (names.empty())
        throw UsageError("span file '" + o.span + "' declares no span");
    span_name = names.back();
    return out;
}

int cmd_amalgamate(const Options &o, Workspace &base, Report &report)
{
    require(o.span, "--span");
    std::string name;
    Workspace ws = span_workspace(o, base, name);
    const Span &span = ws.span(name);
    report.set("span", to_json(span));
    if (o.free) {
        Square sq = free_amalgam(span);
        report.set("square", to_json(sq));
        Verdict strong = strong_condition_holds(sq);
        report.add_verdict("free amalgam is strong", strong);
        report.add_line(render_structure(*sq.amalgam()));
        return 0;
    }
    require(o.budget, "--budget");
    std::shared_ptr<const SentencePool> pool = o.pool.empty() ? nullptr : ws.sentence_pool(o.pool);
    AmalgamationKind kind = AmalgamationKind::parse(o.kind, pool);
    auto budget = ws.model_class(o.budget);
    auto sq = amalgamate(span, budget, kind, AmalgamateOptions{o.strong});
    report.set("kind", kind.describe());
    report.set("budget", budget->name());
    report.set("found", sq.has_value());
    if (!sq)
        return 1;
    report.set("square", to_json(*sq));
    report.add_line("amalgam: " + render_structure(*sq->amalgam()));
    report.add_line("f': " + Json(sq->f_prime.map).dump() + "  g': " + Json(sq->g_prime.map).dump());
    return 0;
}

int cmd_apc_witness(const Options &o, Workspace &ws, Report &report)
{
    require(o.structure, "--structure");
    require(o.cls, "--class");
    require(o.phi, "--phi");
    auto a = ws.structure(o.structure);
    auto cls = ws.model_class(o.cls);
    DeltaFormula phi = split_formula(ws.formula(o.phi), split_words(o.params), split_words(o.vars));
    auto found = apc_witness(a, cls, phi, o.width);
    report.set("phi", render(phi.formula));
    report.set("found", found.has_value());
    if (!found)
        return 1;
    Json entries = Json::array();
    for (const auto &e : found->entries) {
        Json j;
        j["parameters"] = e.parameters;
        j["witness"] = e.witness;
        j["psi"] = render(e.psi);
        j["sentence"] = render(apc_witness_sentence(phi, e.psi));
        entries.push_back(j);
        report.add_line(Json(e.parameters).dump() + " -> " + Json(e.witness).dump() + "  psi: " + render(e.psi));
    }
    report.set("scope", found->scope);
    report.set("entries", entries);
    return 0;
}

int cmd_verify(const Options &o, Report &report, bool progress)
{
    ClaimOptions options;
    options.filter = o.filter;
    if (progress)
        options.progress = [](const ClaimRow &r) {
            std::cerr << (r.passed ? "  " : "! ") << to_string(r.kind) << " " << r.id << "\n";
        };
    auto rows = run_claims(options);
    Json list = Json::array();
    bool ok = true;
    for (const auto &r : rows) {
        list.push_back(to_json(r));
        ok = ok && r.passed;
        std::ostringstream line;
        line << (r.passed ? "PASS " : "FAIL ") << to_string(r.kind) << " " << r.id << "  findings=" << r.findings
             << " checked=" << r.checked << "  [" << r.scope << "]";
        report.add_line(line.str());
        if (!r.detail.empty())
            report.add_line("  " + r.detail);
    }
    report.set("rows", list);
    report.set("passed", ok);
    return ok ? 0 : 1;
}

/// Runs `command` in the given workspace, or in the first bundled one in
/// which every name resolves.
int in_workspace(const Options &o, Report &report, const Command &command)
{
    if (!o.workspace.empty()) {
        Workspace ws = Workspace::load_file(o.workspace);
        report.set("workspace", ws.name());
        return command(ws, report);
    }
    std::exception_ptr first;
    for (const auto &candidate : bundled_workspaces()) {
        Workspace ws = *candidate;
        Report attempt = report;
        attempt.set("workspace", ws.name());
        try {
            int code = command(ws, attempt);
            report = std::move(attempt);
            return code;
        }
        catch (const UsageError &) {
            throw;
        }
        catch (const Error &) {
            if (!first)
                first = std::current_exception();
        }
    }
    std::rethrow_exception(first);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Finite positive model theory workbench"};
    app.footer(expression_help);
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--workspace", o.workspace, "Workspace file");
    app.add_flag("--json", o.json, "Print the report as JSON");
    app.add_option("--seed", o.seed, "Seed for randomized runs")->default_val(0);

    auto add_class = [&](CLI::App *c) { c->add_option("--class", o.cls, "Class expression"); };
    auto add_budget = [&](CLI::App *c) { c->add_option("--budget", o.budget, "Class expression for amalgams"); };
    auto add_pool = [&](CLI::App *c, const char *what) { c->add_option("--pool", o.pool, what); };

    auto *classify = app.add_subcommand("classify", "Classify a map between two structures");
    classify->add_option("--from", o.from, "Source structure");
    classify->add_option("--to", o.to, "Target structure");
    classify->add_option("--map", o.map, "Element map");
    add_pool(classify, "Sentence pool for a bounded strong-immersion check");

    auto *enumerate = app.add_subcommand("enumerate", "List a class up to isomorphism");
    add_class(enumerate);
    enumerate->add_flag("--members", o.members, "Include every member");

    auto *check = app.add_subcommand("check", "Decide a property of a structure in a class");
    check->require_subcommand(1);
    std::map<std::string, CLI::App *> checks;
    for (const char *name : {"pc", "apc", "psa", "hsa", "amalg", "closed", "algebraic"}) {
        auto *c = check->add_subcommand(name);
        c->add_option("--structure", o.structure, "Structure name");
        add_class(c);
        checks[name] = c;
    }
    checks["pc"]->description("Positively closed in the class");
    checks["apc"]->description("Almost positively closed for a Delta set");
    checks["apc"]->add_option("--delta", o.delta, "Quantifier-free pool")->default_val("qf(atoms<=2)");
    checks["apc"]->add_flag("--weak", o.weak, "Check wpc (pc continuations only)");
    checks["psa"]->description("Strong amalgamation basis over pc continuations");
    checks["hsa"]->description("Strong amalgamation basis over all continuations");
    add_budget(checks["psa"]);
    add_budget(checks["hsa"]);
    checks["amalg"]->description("Amalgamation basis of a kind");
    add_budget(checks["amalg"]);
    checks["amalg"]->add_option("--kind", o.kind, "Map kinds of the square")->default_val("h");
    add_pool(checks["amalg"], "Sentence pool for s legs");
    checks["closed"]->description("Realizations of a formula in pc continuations stay in the image");
    checks["closed"]->add_option("--phi", o.phi, "Formula");
    checks["closed"]->add_option("--at", o.at, "Parameter values, e.g. \"x=0\"");
    checks["algebraic"]->description("A formula over element names a0, a1, ... is algebraic");
    checks["algebraic"]->add_option("--phi", o.phi, "Formula");
    add_pool(checks["algebraic"], "Companion formula pool");

    auto *ctr_cmd = app.add_subcommand("ctr", "Formulas contradicting a formula in a class");
    ctr_cmd->add_option("--phi", o.phi, "Formula");
    add_class(ctr_cmd);
    add_pool(ctr_cmd, "Candidate formula pool");

    auto *amalg_cmd = app.add_subcommand("amalgamate", "Complete a span to a square");
    amalg_cmd->add_option("--span", o.span, "Span name or workspace file declaring one");
    amalg_cmd->add_option("--kind", o.kind, "Map kinds of the square")->default_val("h");
    add_pool(amalg_cmd, "Sentence pool for s legs");
    add_budget(amalg_cmd);
    amalg_cmd->add_flag("--strong", o.strong, "Require the strong condition");
    amalg_cmd->add_flag("--free", o.free, "Build the free amalgam instead of searching");

    auto *witness = app.add_subcommand("apc-witness", "Search entailment witnesses for one Delta formula");
    witness->add_option("--structure", o.structure, "Structure name");
    add_class(witness);
    witness->add_option("--phi", o.phi, "Quantifier-free formula");
    witness->add_option("--params", o.params, "Parameter variables")->default_val("x");
    witness->add_option("--vars", o.vars, "Existential variables")->default_val("y");
    witness->add_option("--width", o.width, "Atoms per witness formula")->default_val(4);

    auto *verify = app.add_subcommand("verify-paper", "Run the bundled claim suite");
    verify->add_option("--filter", o.filter, "Only rows whose id contains this text");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::vector<std::string> command(argv + 1, argv + argc);
    Report report(command);
    int code = 2;
    try {
        if (classify->parsed())
            code = in_workspace(o, report, [&](Workspace &ws, Report &r) { return cmd_classify(o, ws, r); });
        else if (enumerate->parsed())
            code = in_workspace(o, report, [&](Workspace &ws, Report &r) { return cmd_enumerate(o, ws, r); });
        else if (ctr_cmd->parsed())
            code = in_workspace(o, report, [&](Workspace &ws, Report &r) { return cmd_ctr(o, ws, r); });
        else if (amalg_cmd->parsed())
            code = in_workspace(o, report, [&](Workspace &ws, Report &r) { return cmd_amalgamate(o, ws, r); });
        else if (witness->parsed())
            code = in_workspace(o, report, [&](Workspace &ws, Report &r) { return cmd_apc_witness(o, ws, r); });
        else if (verify->parsed())
            code = cmd_verify(o, report, !o.json);
        else
            for (const auto &[name, sub] : checks)
                if (sub->parsed())
                    code = in_workspace(o, report, [&, name = name](Workspace &ws, Report &r) {
                        return cmd_check(name, o, ws, r);
                    });
    }
    catch (const std::exception &e) {
        report.set("error", e.what());
        code = 2;
    }
    report.set("exit", code);
    if (o.json)
        std::cout << report.json().dump(2) << "\n";
    else
        std::cout << report.text();
    if (code == 2 && !o.json)
        std::cerr << "run with --help for usage\n";
    return code;
}
