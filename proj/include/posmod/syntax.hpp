#pragma once

// Text form of positive formulas and h-inductive sentences.
//
//   formula  ::= 'exists' var+ '.' formula | disj
//   disj     ::= conj ('|' conj)*
//   conj     ::= primary ('&' primary)*
//   primary  ::= 'true' | 'false' | R '(' term,* ')' | term '=' term
//              | '(' formula ')' | 'exists' var+ '.' formula
//   sentence ::= ['forall' var+ '.'] formula '->' formula
//
// `#` starts a comment running to the end of the line. Whitespace and
// newlines are insignificant.

#include "posmod/logic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace posmod {

class ParseError : public Error {
public:
    ParseError(const std::string &message, int line, int column);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Raised for `~`, `!`, `not`, `!=`, or `->` inside a positive formula.
class NegationRejected : public ParseError {
public:
    using ParseError::ParseError;
};

Formula parse_formula(std::string_view text, const Signature &sig);
HInductiveSentence parse_sentence(std::string_view text, const Signature &sig);
/// Sentences separated (or terminated) by `;`.
std::vector<HInductiveSentence> parse_theory(std::string_view text, const Signature &sig);
Term parse_term(std::string_view text, const Signature &sig);

std::string render(const Term &t);
std::string render(const Formula &f);
std::string render(const HInductiveSentence &s);

namespace detail {

struct Token {
    enum class Kind { Identifier, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int column = 1;
};

/// Shared by the formula parser and the workspace parser.
std::vector<Token> tokenize(std::string_view text);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token &peek(std::size_t ahead = 0) const;
    const Token &next();
    bool at_end() const { return peek().kind == Token::Kind::End; }
    bool accept(std::string_view punct_or_keyword);
    const Token &expect(std::string_view punct_or_keyword);
    std::string expect_identifier(std::string_view what);
    int expect_number(std::string_view what);
    [[noreturn]] void fail(const std::string &message) const;
    [[noreturn]] void fail_at(const Token &t, const std::string &message) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

Formula parse_formula(TokenStream &in, const Signature &sig);
HInductiveSentence parse_sentence(TokenStream &in, const Signature &sig);
Term parse_term(TokenStream &in, const Signature &sig);

} // namespace detail

} // namespace posmod
