#include "posmod/workspace.hpp"

#include "posmod/semantics.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

namespace posmod {

using detail::Token;
using detail::TokenStream;

namespace {

bool is_punct(const Token &t, std::string_view s) { return t.kind == Token::Kind::Punct && t.text == s; }

std::string join(const std::vector<std::string> &items, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += sep;
        out += items[i];
    }
    return out;
}

std::vector<std::string> identifier_list(TokenStream &in)
{
    std::vector<std::string> out;
    while (in.peek().kind == Token::Kind::Identifier)
        out.push_back(in.next().text);
    if (out.empty())
        in.fail("expected a variable name");
    return out;
}

bool sentence_head(const std::string &head, int &n)
{
    if (head.size() < 2 || head[0] != 'k')
        return false;
    for (std::size_t i = 1; i < head.size(); ++i)
        if (head[i] < '0' || head[i] > '9')
            return false;
    n = std::stoi(head.substr(1));
    return true;
}

std::string describe_pool(const PoolExpr &e)
{
    if (e.head == "k")
        return "k" + std::to_string(e.atoms);
    std::vector<std::string> args{"atoms<=" + std::to_string(e.atoms)};
    if (e.exists > 0)
        args.push_back("exists<=" + std::to_string(e.exists));
    if (e.depth)
        args.push_back("depth<=" + std::to_string(*e.depth));
    if (e.vars)
        args.push_back("vars=" + join(*e.vars, " "));
    if (e.params)
        args.push_back("params=" + join(*e.params, " "));
    if (!e.disjunction)
        args.push_back("conj");
    return e.head + "(" + join(args, ", ") + ")";
}

PoolExpr parse_pool(TokenStream &in)
{
    PoolExpr e;
    const Token &head = in.peek();
    e.head = in.expect_identifier("a pool expression");
    int n = 0;
    if (sentence_head(e.head, n)) {
        e.head = "k";
        e.atoms = n;
        e.vars = std::vector<std::string>{"x"};
        std::vector<std::string> params;
        for (int i = 0; i < n; ++i)
            params.push_back("c" + std::to_string(i));
        e.params = params;
        e.text = describe_pool(e);
        return e;
    }
    if (e.head != "qf" && e.head != "pos" && e.head != "sent" && e.head != "hu")
        in.fail_at(head, "expected qf, pos, sent, hu or k<n>");
    in.expect("(");
    if (!in.accept(")")) {
        do {
            const Token &key_token = in.peek();
            std::string key = in.expect_identifier("a pool option");
            if (key == "atoms" || key == "exists" || key == "depth") {
                in.expect("<=");
                int value = in.expect_number("a bound");
                if (key == "atoms")
                    e.atoms = value;
                else if (key == "exists")
                    e.exists = value;
                else
                    e.depth = value;
            }
            else if (key == "vars" || key == "params") {
                in.expect("=");
                (key == "vars" ? e.vars : e.params) = identifier_list(in);
            }
            else if (key == "conj") {
                e.disjunction = false;
            }
            else {
                in.fail_at(key_token, "unknown pool option '" + key + "'");
            }
        } while (in.accept(","));
        in.expect(")");
    }
    if (e.head == "qf" && e.exists > 0)
        in.fail_at(head, "qf pools have no existential quantifiers; use pos");
    e.text = describe_pool(e);
    return e;
}

void expect_end(TokenStream &in, std::string_view what)
{
    if (!in.at_end())
        in.fail("unexpected input after " + std::string(what));
}

std::string render_tuple(const std::vector<int> &t)
{
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(t[i]);
    }
    return out + ")";
}

std::string render_list(const std::vector<int> &values)
{
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(values[i]);
    }
    return out + "]";
}

} // namespace

PoolExpr parse_pool_expr(std::string_view text)
{
    TokenStream in(detail::tokenize(text));
    PoolExpr e = parse_pool(in);
    expect_end(in, "the pool expression");
    return e;
}

Workspace::Workspace(std::string name) : name_(std::move(name)) {}

Workspace Workspace::parse(std::string_view text, std::string name)
{
    Workspace ws(std::move(name));
    ws.extend(text);
    return ws;
}

Workspace Workspace::load_file(const std::string &path)
{
    std::ifstream file(path);
    if (!file)
        throw Error("cannot read workspace file '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0)
        name = name.substr(0, dot);
    return parse(buffer.str(), name);
}

void Workspace::extend(std::string_view text)
{
    TokenStream in(detail::tokenize(text));
    parse_blocks(in);
}

const SignaturePtr &Workspace::signature() const
{
    if (!sig_)
        throw Error("workspace " + name_ + " declares no signature");
    return sig_;
}

void Workspace::parse_blocks(TokenStream &in)
{
    while (!in.at_end()) {
        const Token &t = in.peek();
        if (t.kind != Token::Kind::Identifier)
            in.fail("expected a block keyword");
        if (t.text == "signature")
            parse_signature(in);
        else if (t.text == "structure")
            parse_structure(in);
        else if (t.text == "theory")
            parse_theory(in);
        else if (t.text == "class")
            parse_class(in);
        else if (t.text == "pool")
            parse_pool(in);
        else if (t.text == "span")
            parse_span(in);
        else
            in.fail("expected signature, structure, theory, class, pool or span");
    }
}

void Workspace::parse_signature(TokenStream &in)
{
    const Token &kw = in.next();
    if (sig_)
        in.fail_at(kw, "a workspace has a single signature");
    auto sig = std::make_shared<Signature>(in.expect_identifier("a signature name"));
    in.expect("{");
    while (!in.accept("}")) {
        const Token &t = in.peek();
        std::string kind = in.expect_identifier("fun, rel or const");
        std::string symbol = in.expect_identifier("a symbol name");
        int arity = 0;
        if (kind == "fun" || kind == "rel") {
            in.expect("/");
            arity = in.expect_number("an arity");
        }
        try {
            if (kind == "fun" || kind == "const")
                sig->add_function(symbol, arity);
            else if (kind == "rel")
                sig->add_relation(symbol, arity);
            else
                in.fail_at(t, "expected fun, rel or const");
        }
        catch (const ParseError &) {
            throw;
        }
        catch (const Error &e) {
            throw ParseError(e.what(), t.line, t.column);
        }
        in.expect(";");
    }
    sig_ = std::move(sig);
    // Every workspace knows the empty theory; a declared one replaces it.
    theories_.emplace("empty", Theory{"empty", sig_, {}});
    theories_.emplace("T_empty", Theory{"T_empty", sig_, {}});
}

void Workspace::expect_signature_name(TokenStream &in)
{
    if (!in.accept(":"))
        return;
    const Token &t = in.peek();
    std::string name = in.expect_identifier("a signature name");
    if (!sig_ || sig_->name() != name)
        in.fail_at(t, "unknown signature '" + name + "'");
}

void Workspace::parse_structure(TokenStream &in)
{
    in.next();
    const Token &name_token = in.peek();
    std::string name = in.expect_identifier("a structure name");
    if (!sig_)
        in.fail_at(name_token, "declare the signature before structures");
    if (structures_.count(name))
        in.fail_at(name_token, "structure '" + name + "' declared twice");
    expect_signature_name(in);
    in.expect("{");
    in.expect("universe");
    int n = in.expect_number("the universe size");
    if (n < 1)
        in.fail("a universe has at least one element");
    in.expect(";");
    auto s = std::make_shared<Structure>(sig_, n);
    s->set_name(name);
    std::vector<bool> set(sig_->functions().size(), false);

    auto element = [&]() {
        const Token &t = in.peek();
        int v = in.expect_number("an element");
        if (v >= n)
            in.fail_at(t, "element " + std::to_string(v) + " is outside the universe of size " + std::to_string(n));
        return v;
    };

    while (!in.accept("}")) {
        const Token &t = in.peek();
        std::string symbol = in.expect_identifier("a symbol");
        in.expect("=");
        if (auto fi = sig_->function_index(symbol)) {
            const int arity = sig_->functions()[*fi].arity;
            std::vector<int> values;
            if (arity == 0) {
                values.push_back(element());
            }
            else {
                in.expect("[");
                if (!is_punct(in.peek(), "]")) {
                    do
                        values.push_back(element());
                    while (in.accept(","));
                }
                in.expect("]");
            }
            if (values.size() != s->tuple_count(arity))
                in.fail_at(t, "table of '" + symbol + "' needs " + std::to_string(s->tuple_count(arity)) +
                                  " values, got " + std::to_string(values.size()));
            s->function_table(*fi) = values;
            set[*fi] = true;
        }
        else if (auto ri = sig_->relation_index(symbol)) {
            const int arity = sig_->relations()[*ri].arity;
            in.expect("{");
            if (!is_punct(in.peek(), "}")) {
                do {
                    std::vector<int> tuple;
                    if (in.accept("(")) {
                        do
                            tuple.push_back(element());
                        while (in.accept(","));
                        in.expect(")");
                    }
                    else {
                        tuple.push_back(element());
                    }
                    if (static_cast<int>(tuple.size()) != arity)
                        in.fail_at(t, "'" + symbol + "' has arity " + std::to_string(arity));
                    s->set_relation(*ri, tuple);
                } while (in.accept(","));
            }
            in.expect("}");
        }
        else {
            in.fail_at(t, "unknown symbol '" + symbol + "'");
        }
        in.expect(";");
    }
    for (std::size_t fi = 0; fi < set.size(); ++fi)
        if (!set[fi])
            in.fail_at(name_token, "structure '" + name + "' gives no table for '" + sig_->functions()[fi].name + "'");
    add_structure(std::move(s));
}

void Workspace::parse_theory(TokenStream &in)
{
    in.next();
    const Token &name_token = in.peek();
    std::string name = in.expect_identifier("a theory name");
    if (!sig_)
        in.fail_at(name_token, "declare the signature before theories");
    if (std::find(theory_order_.begin(), theory_order_.end(), name) != theory_order_.end())
        in.fail_at(name_token, "theory '" + name + "' declared twice");
    expect_signature_name(in);
    Theory theory{name, sig_, {}};
    in.expect("{");
    while (!in.accept("}")) {
        if (in.accept("include")) {
            const Token &t = in.peek();
            std::string other = in.expect_identifier("a theory name");
            if (!has_theory(other))
                in.fail_at(t, "unknown theory '" + other + "'");
            const Theory &base = this->theory(other);
            theory.sentences.insert(theory.sentences.end(), base.sentences.begin(), base.sentences.end());
        }
        else {
            theory.sentences.push_back(detail::parse_sentence(in, *sig_));
        }
        if (!is_punct(in.peek(), "}"))
            in.expect(";");
    }
    add_theory(std::move(theory));
}

void Workspace::parse_class(TokenStream &in)
{
    in.next();
    const Token &name_token = in.peek();
    std::string name = in.expect_identifier("a class name");
    if (class_text_.count(name))
        in.fail_at(name_token, "class '" + name + "' declared twice");
    in.expect("=");
    ModelClassPtr cls = class_expr(in);
    in.expect(";");
    class_text_[name] = cls->name();
    class_order_.push_back(name);
}

void Workspace::parse_pool(TokenStream &in)
{
    in.next();
    const Token &name_token = in.peek();
    std::string name = in.expect_identifier("a pool name");
    if (pools_.count(name))
        in.fail_at(name_token, "pool '" + name + "' declared twice");
    in.expect("=");
    pools_[name] = posmod::parse_pool(in);
    pool_order_.push_back(name);
    in.expect(";");
}

void Workspace::parse_span(TokenStream &in)
{
    in.next();
    const Token &name_token = in.peek();
    std::string name = in.expect_identifier("a span name");
    if (spans_.count(name))
        in.fail_at(name_token, "span '" + name + "' declared twice");
    in.expect("{");
    in.expect("apex");
    const Token &apex_token = in.peek();
    std::string apex_name = in.expect_identifier("a structure name");
    if (!has_structure(apex_name))
        in.fail_at(apex_token, "unknown structure '" + apex_name + "'");
    StructurePtr apex = structure(apex_name);
    in.expect(";");
    auto leg = [&](std::string_view side) {
        in.expect(side);
        const Token &t = in.peek();
        std::string target = in.expect_identifier("a structure name");
        if (!has_structure(target))
            in.fail_at(t, "unknown structure '" + target + "'");
        in.expect("=");
        in.expect("[");
        std::vector<int> map;
        if (!is_punct(in.peek(), "]")) {
            do
                map.push_back(in.expect_number("an element"));
            while (in.accept(","));
        }
        in.expect("]");
        in.expect(";");
        try {
            return Morphism(apex, structure(target), map);
        }
        catch (const Error &e) {
            throw ParseError(e.what(), t.line, t.column);
        }
    };
    Morphism f = leg("left");
    Morphism g = leg("right");
    in.expect("}");
    spans_.emplace(name, Span(std::move(f), std::move(g)));
    span_order_.push_back(name);
}

ModelClassPtr Workspace::class_expr(TokenStream &in) const
{
    const Token &start = in.peek();
    if (in.accept("{")) {
        std::vector<StructurePtr> members;
        std::vector<std::string> names;
        if (!is_punct(in.peek(), "}")) {
            do {
                const Token &t = in.peek();
                std::string member = in.expect_identifier("a structure name");
                if (!has_structure(member))
                    throw UnknownName(std::to_string(t.line) + ":" + std::to_string(t.column) + ": unknown structure '" +
                                      member + "'");
                members.push_back(structure(member));
                names.push_back(member);
            } while (in.accept(","));
        }
        in.expect("}");
        std::string key = "{" + join(names, ",") + "}";
        auto &slot = class_cache_[key];
        if (!slot)
            slot = ModelClass::explicit_class(key, signature(), members);
        return slot;
    }
    std::string head = in.expect_identifier("a class expression");
    if (head == "models" && is_punct(in.peek(), "(")) {
        in.next();
        const Token &t = in.peek();
        std::string theory_name = in.expect_identifier("a theory name");
        if (!has_theory(theory_name))
            throw UnknownName(std::to_string(t.line) + ":" + std::to_string(t.column) + ": unknown theory '" +
                              theory_name + "'");
        in.expect(",");
        // Symbol items name the signature the class is meant over.
        while (in.peek().kind == Token::Kind::Identifier) {
            const Token &item = in.peek();
            std::string symbol = in.next().text;
            in.expect("/");
            int arity = in.expect_number("an arity");
            auto fi = signature()->function_index(symbol);
            auto ri = signature()->relation_index(symbol);
            int declared = fi ? signature()->functions()[*fi].arity : ri ? signature()->relations()[*ri].arity : -1;
            if (declared != arity)
                throw UnknownName(std::to_string(item.line) + ":" + std::to_string(item.column) + ": '" + symbol +
                                  "/" + std::to_string(arity) + "' is not in signature " + signature()->describe());
            in.expect(",");
        }
        in.expect("<=");
        int bound = in.expect_number("a size bound");
        in.expect(")");
        std::string key = "models(" + theory_name + ",<=" + std::to_string(bound) + ")";
        auto &slot = class_cache_[key];
        if (!slot)
            slot = ModelClass::generated(key, theory(theory_name), bound);
        return slot;
    }
    if ((head == "union" || head == "pc") && is_punct(in.peek(), "(")) {
        in.next();
        ModelClassPtr first = class_expr(in);
        if (head == "pc") {
            in.expect(")");
            std::string key = "pc(" + first->name() + ")";
            auto &slot = class_cache_[key];
            if (!slot)
                slot = ModelClass::explicit_class(key, signature(), pc_members(first));
            return slot;
        }
        in.expect(",");
        ModelClassPtr second = class_expr(in);
        in.expect(")");
        std::string key = "union(" + first->name() + "," + second->name() + ")";
        auto &slot = class_cache_[key];
        if (!slot)
            slot = ModelClass::union_of(key, first, second);
        return slot;
    }
    auto it = class_text_.find(head);
    if (it == class_text_.end())
        throw UnknownName(std::to_string(start.line) + ":" + std::to_string(start.column) + ": unknown class '" + head +
                          "'");
    return model_class(it->second);
}

ModelClassPtr Workspace::model_class(std::string_view expr) const
{
    if (auto it = class_cache_.find(std::string(expr)); it != class_cache_.end())
        return it->second;
    TokenStream in(detail::tokenize(expr));
    ModelClassPtr cls = class_expr(in);
    expect_end(in, "the class expression");
    return cls;
}

const PoolExpr &Workspace::pool_expr(std::string_view expr, PoolExpr &scratch) const
{
    if (auto it = pools_.find(std::string(expr)); it != pools_.end())
        return it->second;
    scratch = parse_pool_expr(expr);
    return scratch;
}

int Workspace::default_depth() const
{
    for (const auto &f : signature()->functions())
        if (f.arity > 0)
            return 1;
    return 0;
}

FormulaPool Workspace::formula_pool(std::string_view expr, const std::vector<std::string> &default_vars) const
{
    PoolExpr scratch;
    const PoolExpr &e = pool_expr(expr, scratch);
    if (e.is_sentence_pool())
        throw Error("'" + e.text + "' is a sentence pool, a formula pool is needed here");
    PoolSpec spec;
    spec.variables = e.params.value_or(std::vector<std::string>{});
    for (const auto &v : e.vars.value_or(default_vars))
        spec.variables.push_back(v);
    spec.max_atoms = e.atoms;
    spec.max_existentials = e.exists;
    spec.max_term_depth = e.depth.value_or(default_depth());
    spec.allow_disjunction = e.disjunction;
    return FormulaPool(signature(), spec);
}

std::shared_ptr<const SentencePool> Workspace::sentence_pool(std::string_view expr) const
{
    PoolExpr scratch;
    const PoolExpr &e = pool_expr(expr, scratch);
    if (!e.is_sentence_pool())
        throw Error("'" + e.text + "' is a formula pool, a sentence pool is needed here");
    SentencePoolSpec spec;
    spec.universals = e.vars.value_or(std::vector<std::string>{"x"});
    spec.parameters = e.params.value_or(std::vector<std::string>{});
    spec.max_atoms = e.atoms;
    spec.max_existentials = e.exists;
    spec.max_term_depth = e.depth.value_or(e.head == "k" ? 0 : default_depth());
    spec.allow_disjunction = e.disjunction;
    spec.h_universal_only = e.head == "hu";
    return std::make_shared<const SentencePool>(signature(), spec);
}

DeltaSet Workspace::delta(std::string_view expr) const
{
    PoolExpr scratch;
    const PoolExpr &e = pool_expr(expr, scratch);
    if (e.head != "qf")
        throw Error("a Delta set comes from a qf pool, got '" + e.text + "'");
    std::vector<std::string> params = e.params.value_or(std::vector<std::string>{"x"});
    std::vector<std::string> existentials = e.vars.value_or(std::vector<std::string>{"y"});
    PoolSpec spec;
    spec.variables = params;
    spec.variables.insert(spec.variables.end(), existentials.begin(), existentials.end());
    spec.max_atoms = e.atoms;
    spec.max_term_depth = e.depth.value_or(default_depth());
    spec.allow_disjunction = e.disjunction;
    DeltaSet d = DeltaSet::from_pool(FormulaPool(signature(), spec), params, existentials);
    d.description = e.text;
    return d;
}

Formula Workspace::formula(std::string_view text) const { return parse_formula(text, *signature()); }

HInductiveSentence Workspace::sentence(std::string_view text) const { return parse_sentence(text, *signature()); }

StructurePtr Workspace::structure(const std::string &name) const
{
    auto it = structures_.find(name);
    if (it == structures_.end())
        throw UnknownName("unknown structure '" + name + "' in workspace " + name_);
    return it->second;
}

bool Workspace::has_theory(const std::string &name) const { return theories_.count(name) > 0; }

const Theory &Workspace::theory(const std::string &name) const
{
    auto it = theories_.find(name);
    if (it == theories_.end())
        throw UnknownName("unknown theory '" + name + "' in workspace " + name_);
    return it->second;
}

const Span &Workspace::span(const std::string &name) const
{
    auto it = spans_.find(name);
    if (it == spans_.end())
        throw UnknownName("unknown span '" + name + "' in workspace " + name_);
    return it->second;
}

void Workspace::add_structure(StructurePtr s)
{
    if (!sig_ || !s->signature().compatible(*sig_))
        throw Error("structure '" + s->name() + "' is not over the workspace signature");
    if (structures_.count(s->name()))
        throw Error("structure '" + s->name() + "' declared twice");
    structure_order_.push_back(s->name());
    structures_[s->name()] = std::move(s);
}

void Workspace::add_theory(Theory t)
{
    if (std::find(theory_order_.begin(), theory_order_.end(), t.name) != theory_order_.end())
        throw Error("theory '" + t.name + "' declared twice");
    theory_order_.push_back(t.name);
    std::string name = t.name;
    theories_.insert_or_assign(std::move(name), std::move(t));
}

std::vector<std::string> Workspace::structure_names() const { return structure_order_; }
std::vector<std::string> Workspace::span_names() const { return span_order_; }
std::vector<std::string> Workspace::theory_names() const { return theory_order_; }
std::vector<std::string> Workspace::class_names() const { return class_order_; }

std::string render_structure(const Structure &s)
{
    const Signature &sig = s.signature();
    std::string out = "structure " + (s.name().empty() ? std::string("A") : s.name()) + " : " + sig.name() +
                      " { universe " + std::to_string(s.size()) + ";";
    for (std::size_t fi = 0; fi < sig.functions().size(); ++fi) {
        const auto &f = sig.functions()[fi];
        const auto &table = s.function_table(static_cast<int>(fi));
        out += " " + f.name + " = " + (f.arity == 0 ? std::to_string(table[0]) : render_list(table)) + ";";
    }
    for (std::size_t ri = 0; ri < sig.relations().size(); ++ri) {
        const auto &r = sig.relations()[ri];
        const auto &table = s.relation_table(static_cast<int>(ri));
        std::vector<std::string> tuples;
        for (std::size_t t = 0; t < table.size(); ++t)
            if (table[t] == 1)
                tuples.push_back(render_tuple(s.tuple_at(t, r.arity)));
        out += " " + r.name + " = {" + join(tuples, ",") + "};";
    }
    return out + " }";
}

std::string Workspace::render() const
{
    std::string out;
    if (sig_) {
        out += "signature " + sig_->name() + " {";
        for (const auto &f : sig_->functions())
            out += f.arity == 0 ? " const " + f.name + ";" : " fun " + f.name + "/" + std::to_string(f.arity) + ";";
        for (const auto &r : sig_->relations())
            out += " rel " + r.name + "/" + std::to_string(r.arity) + ";";
        out += " }\n";
    }
    for (const auto &name : structure_order_)
        out += render_structure(*structures_.at(name)) + "\n";
    for (const auto &name : theory_order_) {
        const Theory &t = theories_.at(name);
        out += "theory " + name + " : " + sig_->name() + " {";
        for (const auto &s : t.sentences)
            out += "\n    " + posmod::render(s) + ";";
        out += t.sentences.empty() ? " }\n" : "\n}\n";
    }
    for (const auto &name : class_order_)
        out += "class " + name + " = " + class_text_.at(name) + ";\n";
    for (const auto &name : pool_order_)
        out += "pool " + name + " = " + pools_.at(name).text + ";\n";
    for (const auto &name : span_order_) {
        const Span &s = spans_.at(name);
        out += "span " + name + " { apex " + s.apex()->name() + "; left " + s.left()->name() + " = " +
               render_list(s.f.map) + "; right " + s.right()->name() + " = " + render_list(s.g.map) + "; }\n";
    }
    return out;
}

namespace {

constexpr std::string_view digraphs_source = R"(# Directed graphs: one binary relation.
signature G { rel R/2; }

structure P1 : G { universe 1; R = {}; }
structure L1 : G { universe 1; R = {(0,0)}; }
structure E2 : G { universe 2; R = {(0,1)}; }

theory posets : G {
    forall x. true -> R(x,x);
    forall x y. R(x,y) & R(y,x) -> x = y;
    forall x y z. R(x,y) & R(y,z) -> R(x,z);
}

class digraphs2 = models(empty, <=2);
class digraphs3 = models(empty, <=3);
class posets3 = models(posets, <=3);
class posets4 = models(posets, <=4);

pool qf2 = qf(atoms<=2);
pool k2 = k2;

span fan { apex P1; left E2 = [0]; right E2 = [0]; }
span loop_edge { apex P1; left L1 = [0]; right E2 = [0]; }
)";

constexpr std::string_view unary_source = R"(# One unary function.
signature U { fun f/1; }

structure F1 : U { universe 1; f = [0]; }
structure C2 : U { universe 2; f = [1,0]; }
structure M2 : U { universe 2; f = [0,0]; }
structure B3 : U { universe 3; f = [0,2,1]; }

theory T_inj : U { forall x y. f(x) = f(y) -> x = y; }
theory T_fpf : U {
    include T_inj;
    forall x. f(x) = x -> false;
}
theory T_point : U {
    include T_inj;
    forall x y. true -> x = y;
}

class inj3 = models(T_inj, <=3);
class fpf3 = models(T_fpf, <=3);
class point3 = models(T_point, <=3);

pool qf2 = qf(atoms<=2);
pool k2 = k2;

span fixpoints { apex F1; left M2 = [0]; right F1 = [0]; }
)";

} // namespace

std::string_view bundled_source(const std::string &name)
{
    if (name == "digraphs")
        return digraphs_source;
    if (name == "unary")
        return unary_source;
    throw UnknownName("no bundled workspace named '" + name + "'");
}

const std::vector<std::shared_ptr<Workspace>> &bundled_workspaces()
{
    static std::once_flag once;
    static std::vector<std::shared_ptr<Workspace>> all;
    std::call_once(once, [] {
        for (const char *name : {"digraphs", "unary"})
            all.push_back(std::make_shared<Workspace>(Workspace::parse(bundled_source(name), name)));
    });
    return all;
}

std::shared_ptr<Workspace> bundled_workspace(const std::string &name)
{
    for (const auto &ws : bundled_workspaces())
        if (ws->name() == name)
            return ws;
    throw UnknownName("no bundled workspace named '" + name + "'");
}

} // namespace posmod
