#include "posmod/syntax.hpp"

#include <cctype>

namespace posmod {

ParseError::ParseError(const std::string &message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column)
{
}

namespace detail {

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            }
            else {
                ++column;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = column;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
                ++j;
            tok.kind = Token::Kind::Identifier;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
        }
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            tok.kind = Token::Kind::Number;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
        }
        else {
            static const char *two_char[] = {"->", "<=", "!="};
            tok.kind = Token::Kind::Punct;
            tok.text = std::string(1, c);
            for (const char *p : two_char)
                if (text.substr(i, 2) == p)
                    tok.text = p;
            static const std::string_view allowed = "(){}[],;.=&|:/~!<>-*";
            if (tok.text.size() == 1 && allowed.find(c) == std::string_view::npos)
                throw ParseError(std::string("unexpected character '") + c + "'", line, column);
            advance(tok.text.size());
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.line = line;
    end.column = column;
    out.push_back(end);
    return out;
}

const Token &TokenStream::peek(std::size_t ahead) const
{
    std::size_t idx = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[idx];
}

const Token &TokenStream::next()
{
    const Token &t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size())
        ++pos_;
    return t;
}

bool TokenStream::accept(std::string_view s)
{
    const Token &t = peek();
    if ((t.kind == Token::Kind::Punct || t.kind == Token::Kind::Identifier) && t.text == s) {
        next();
        return true;
    }
    return false;
}

const Token &TokenStream::expect(std::string_view s)
{
    if (peek().text != s || peek().kind == Token::Kind::End)
        fail("expected '" + std::string(s) + "'");
    return next();
}

std::string TokenStream::expect_identifier(std::string_view what)
{
    if (peek().kind != Token::Kind::Identifier)
        fail("expected " + std::string(what));
    return next().text;
}

int TokenStream::expect_number(std::string_view what)
{
    if (peek().kind != Token::Kind::Number)
        fail("expected " + std::string(what));
    return std::stoi(next().text);
}

void TokenStream::fail(const std::string &message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token &t, const std::string &message) const
{
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(message + ", found " + found, t.line, t.column);
}

namespace {

bool is_keyword(const std::string &s)
{
    return s == "exists" || s == "forall" || s == "true" || s == "false" || s == "not";
}

void reject_negation(TokenStream &in)
{
    const Token &t = in.peek();
    if (t.kind == Token::Kind::Punct && (t.text == "~" || t.text == "!" || t.text == "!="))
        throw NegationRejected("negation is not allowed in a positive formula", t.line, t.column);
    if (t.kind == Token::Kind::Identifier && t.text == "not")
        throw NegationRejected("negation is not allowed in a positive formula", t.line, t.column);
    if (t.kind == Token::Kind::Punct && t.text == "->")
        throw NegationRejected("implication is not allowed inside a positive formula", t.line, t.column);
}

Formula parse_disjunction(TokenStream &in, const Signature &sig);

std::vector<std::string> parse_binder_list(TokenStream &in, const Signature &sig)
{
    std::vector<std::string> vars;
    while (in.peek().kind == Token::Kind::Identifier && !is_keyword(in.peek().text)) {
        const Token &t = in.next();
        if (sig.declares(t.text))
            throw ParseError("cannot bind signature symbol '" + t.text + "'", t.line, t.column);
        vars.push_back(t.text);
    }
    if (vars.empty())
        in.fail("expected at least one variable");
    in.expect(".");
    return vars;
}

std::vector<Term> parse_arguments(TokenStream &in, const Signature &sig)
{
    std::vector<Term> args;
    in.expect("(");
    if (!in.accept(")")) {
        do {
            args.push_back(parse_term(in, sig));
        } while (in.accept(","));
        in.expect(")");
    }
    return args;
}

Formula parse_primary(TokenStream &in, const Signature &sig)
{
    reject_negation(in);
    const Token &t = in.peek();
    if (t.kind == Token::Kind::Punct && t.text == "(") {
        in.next();
        Formula inner = parse_formula(in, sig);
        reject_negation(in);
        in.expect(")");
        return inner;
    }
    if (t.kind != Token::Kind::Identifier)
        in.fail("expected a formula");
    if (t.text == "true") {
        in.next();
        return Formula::truth();
    }
    if (t.text == "false") {
        in.next();
        return Formula::falsum();
    }
    if (t.text == "exists") {
        in.next();
        auto vars = parse_binder_list(in, sig);
        return Formula::exists(vars, parse_formula(in, sig));
    }
    if (t.text == "forall")
        in.fail("universal quantifiers are only allowed at the head of a sentence");
    if (auto rel = sig.relation_index(t.text)) {
        Token head = in.next();
        if (in.peek().text != "(")
            throw ArityError(std::to_string(head.line) + ":" + std::to_string(head.column) + ": relation symbol '" +
                             head.text + "' needs arguments");
        auto args = parse_arguments(in, sig);
        int arity = sig.relations()[*rel].arity;
        if (static_cast<int>(args.size()) != arity)
            throw ArityError(std::to_string(head.line) + ":" + std::to_string(head.column) + ": relation symbol '" +
                             head.text + "' expects " + std::to_string(arity) + " arguments, got " +
                             std::to_string(args.size()));
        return Formula::relation(head.text, std::move(args));
    }
    Term lhs = parse_term(in, sig);
    reject_negation(in);
    in.expect("=");
    Term rhs = parse_term(in, sig);
    return Formula::equation(std::move(lhs), std::move(rhs));
}

Formula parse_conjunction(TokenStream &in, const Signature &sig)
{
    std::vector<Formula> parts;
    parts.push_back(parse_primary(in, sig));
    while (in.accept("&"))
        parts.push_back(parse_primary(in, sig));
    return Formula::conjunction(std::move(parts));
}

Formula parse_disjunction(TokenStream &in, const Signature &sig)
{
    std::vector<Formula> parts;
    parts.push_back(parse_conjunction(in, sig));
    while (in.accept("|"))
        parts.push_back(parse_conjunction(in, sig));
    return Formula::disjunction(std::move(parts));
}

} // namespace

Term parse_term(TokenStream &in, const Signature &sig)
{
    const Token &t = in.peek();
    if (t.kind != Token::Kind::Identifier || is_keyword(t.text))
        in.fail("expected a term");
    Token head = in.next();
    auto where = std::to_string(head.line) + ":" + std::to_string(head.column) + ": ";
    if (sig.relation_index(head.text))
        throw ArityError(where + "relation symbol '" + head.text + "' used as a term");
    auto fn = sig.function_index(head.text);
    if (in.peek().text == "(") {
        if (!fn)
            throw UnknownSymbol(where + "unknown function symbol '" + head.text + "'");
        auto args = parse_arguments(in, sig);
        int arity = sig.functions()[*fn].arity;
        if (static_cast<int>(args.size()) != arity)
            throw ArityError(where + "function symbol '" + head.text + "' expects " + std::to_string(arity) +
                             " arguments, got " + std::to_string(args.size()));
        return Term::apply(head.text, std::move(args));
    }
    if (fn) {
        if (sig.functions()[*fn].arity != 0)
            throw ArityError(where + "function symbol '" + head.text + "' used without arguments");
        return Term::apply(head.text);
    }
    return Term::variable(head.text);
}

Formula parse_formula(TokenStream &in, const Signature &sig)
{
    return parse_disjunction(in, sig);
}

HInductiveSentence parse_sentence(TokenStream &in, const Signature &sig)
{
    HInductiveSentence s;
    if (in.accept("forall"))
        s.variables = parse_binder_list(in, sig);
    s.premise = parse_formula(in, sig);
    if (in.peek().text != "->")
        in.fail("expected '->' in h-inductive sentence");
    in.next();
    s.conclusion = parse_formula(in, sig);
    reject_negation(in);
    return s;
}

} // namespace detail

namespace {
template <typename T, typename F>
T parse_whole(std::string_view text, F &&f)
{
    detail::TokenStream in(detail::tokenize(text));
    T value = f(in);
    if (!in.at_end()) {
        const auto &t = in.peek();
        if (t.kind == detail::Token::Kind::Punct && (t.text == "->" || t.text == "~" || t.text == "!" || t.text == "!="))
            throw NegationRejected("negation or implication is not allowed in a positive formula", t.line, t.column);
        in.fail("unexpected trailing input");
    }
    return value;
}
} // namespace

Formula parse_formula(std::string_view text, const Signature &sig)
{
    return parse_whole<Formula>(text, [&](detail::TokenStream &in) { return detail::parse_formula(in, sig); });
}

HInductiveSentence parse_sentence(std::string_view text, const Signature &sig)
{
    return parse_whole<HInductiveSentence>(text, [&](detail::TokenStream &in) { return detail::parse_sentence(in, sig); });
}

std::vector<HInductiveSentence> parse_theory(std::string_view text, const Signature &sig)
{
    detail::TokenStream in(detail::tokenize(text));
    std::vector<HInductiveSentence> out;
    while (!in.at_end()) {
        if (in.accept(";"))
            continue;
        out.push_back(detail::parse_sentence(in, sig));
        if (!in.at_end())
            in.expect(";");
    }
    return out;
}

Term parse_term(std::string_view text, const Signature &sig)
{
    return parse_whole<Term>(text, [&](detail::TokenStream &in) { return detail::parse_term(in, sig); });
}

std::string render(const Term &t)
{
    if (t.is_variable() || t.args.empty())
        return t.name;
    std::string out = t.name + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i)
            out += ",";
        out += render(t.args[i]);
    }
    return out + ")";
}

namespace {
std::string render_operand(const Formula &child, Formula::Kind parent)
{
    bool wrap = child.kind == Formula::Kind::Exists || child.kind == parent ||
                (parent == Formula::Kind::And && child.kind == Formula::Kind::Or);
    std::string s = render(child);
    return wrap ? "(" + s + ")" : s;
}
} // namespace

std::string render(const Formula &f)
{
    switch (f.kind) {
    case Formula::Kind::Truth:
        return "true";
    case Formula::Kind::Falsum:
        return "false";
    case Formula::Kind::Equation:
        return render(f.terms[0]) + " = " + render(f.terms[1]);
    case Formula::Kind::Relation: {
        std::string out = f.symbol + "(";
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
            if (i)
                out += ",";
            out += render(f.terms[i]);
        }
        return out + ")";
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::string sep = f.kind == Formula::Kind::And ? " & " : " | ";
        std::string out;
        for (std::size_t i = 0; i < f.children.size(); ++i) {
            if (i)
                out += sep;
            out += render_operand(f.children[i], f.kind);
        }
        return out;
    }
    case Formula::Kind::Exists: {
        std::string out = "exists";
        const Formula *body = &f;
        while (body->kind == Formula::Kind::Exists) {
            out += " " + body->symbol;
            body = &body->children.front();
        }
        return out + ". " + render(*body);
    }
    }
    return {};
}

std::string render(const HInductiveSentence &s)
{
    std::string out;
    if (!s.variables.empty()) {
        out = "forall";
        for (const auto &v : s.variables)
            out += " " + v;
        out += ". ";
    }
    return out + render(s.premise) + " -> " + render(s.conclusion);
}

} // namespace posmod
