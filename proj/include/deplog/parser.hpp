#pragma once

// Recursive-descent parser for the concrete syntax:
//
//   formula := ("forall"|"exists") VAR "." formula | disj
//   disj    := conj ("|" conj)*
//   conj    := unit ("&" unit)*
//   unit    := "(" formula ")" | ["~"] atom
//   atom    := "=(" [term ("," term)*] ")" | REL "(" term ("," term)* ")"
//            | term "=" term | "true" | "false"
//   term    := VAR | CONST | FUN "(" [term ("," term)*] ")"
//   eso     := ("exists" "fn" FUN "/" ARITY ".")* formula
//
// With a signature every symbol must be declared. Without one the signature
// is inferred: applications become relations or functions by position, and
// bare identifiers that are not bound (and not listed as free variables)
// become constants.

#include <cctype>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deplog/error.hpp"
#include "deplog/syntax.hpp"
#include "deplog/transforms/prenex.hpp"

namespace deplog {

using Sentence = std::variant<DFormula, EsoSentence>;

struct ParsedSentence {
    Sentence value;
    Signature signature;
};

namespace detail {

enum class Tok { Ident, Int, LParen, RParen, Comma, Dot, Amp, Bar, Tilde, Equals, Slash, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t pos = 0;
};

inline bool is_keyword(std::string_view s) {
    return s == "forall" || s == "exists" || s == "true" || s == "false" || s == "fn";
}

class Parser {
  public:
    Parser(std::string_view text, const Signature* sig, std::set<std::string> free_variables)
        : text_(text), strict_(sig != nullptr), free_variables_(std::move(free_variables)) {
        if (sig) {
            validate(*sig);
            sig_ = *sig;
        }
        tokenize();
    }

    DFormula parse_formula_text() {
        if (peek().kind == Tok::Ident && peek().text == "exists" && peek(1).text == "fn")
            fail("function quantifier in a dependence-logic formula", peek());
        auto f = formula();
        expect_end();
        check_namespaces();
        return f;
    }

    EsoSentence parse_eso_text() {
        EsoSentence e;
        while (peek().kind == Tok::Ident && peek().text == "exists" && peek(1).kind == Tok::Ident &&
               peek(1).text == "fn") {
            advance();
            advance();
            const auto& name_tok = expect(Tok::Ident, "function name");
            if (is_keyword(name_tok.text)) fail("keyword used as function name", name_tok);
            if (sig_.declares(name_tok.text)) fail("quantified function '" + name_tok.text + "' clashes with a signature symbol", name_tok);
            if (quantified_.count(name_tok.text)) fail("function '" + name_tok.text + "' quantified twice", name_tok);
            expect(Tok::Slash, "'/'");
            const auto& arity_tok = expect(Tok::Int, "arity");
            expect(Tok::Dot, "'.'");
            int arity = std::stoi(arity_tok.text);
            quantified_.emplace(name_tok.text, arity);
            e.functions.push_back({name_tok.text, arity});
        }
        std::size_t body_start = peek().pos;
        auto f = formula();
        expect_end();
        check_namespaces();
        if (contains_dependence_atoms(f)) fail_at("dependence atom inside ESO matrix", body_start);
        if (!is_sentence(f)) fail_at("free variable '" + *free_vars(f).begin() + "' in ESO matrix", body_start);
        auto [prefix, matrix] = split_prefix(f);
        if (!is_quantifier_free(matrix)) {
            // Nested quantifiers are moved into the prefix.
            std::tie(prefix, matrix) = split_prefix(to_prenex(rename_apart(f)));
        }
        e.prefix = std::move(prefix);
        e.matrix = std::move(matrix);
        return e;
    }

    const Signature& signature() const { return sig_; }

  private:
    // -- tokens ------------------------------------------------------------

    void tokenize() {
        std::size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (c == '#') { // comment to end of line
                while (i < text_.size() && text_[i] != '\n') ++i;
                continue;
            }
            Token t;
            t.pos = i;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
                t.kind = Tok::Ident;
                t.text = std::string(text_.substr(i, j - i));
                i = j;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
                t.kind = Tok::Int;
                t.text = std::string(text_.substr(i, j - i));
                i = j;
            } else {
                switch (c) {
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                case ',': t.kind = Tok::Comma; break;
                case '.': t.kind = Tok::Dot; break;
                case '&': t.kind = Tok::Amp; break;
                case '|': t.kind = Tok::Bar; break;
                case '~': t.kind = Tok::Tilde; break;
                case '=': t.kind = Tok::Equals; break;
                case '/': t.kind = Tok::Slash; break;
                default: fail_at(std::string("unexpected character '") + c + "'", i);
                }
                t.text = std::string(1, c);
                ++i;
            }
            tokens_.push_back(std::move(t));
        }
        tokens_.push_back(Token{Tok::End, "", text_.size()});
    }

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
    }
    const Token& advance() {
        const Token& t = tokens_[index_];
        if (index_ + 1 < tokens_.size()) ++index_;
        return t;
    }
    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what, peek());
        return advance();
    }
    void expect_end() {
        if (peek().kind != Tok::End) fail("unexpected trailing input", peek());
    }

    [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, pos, line, col);
    }
    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        fail_at(msg + (t.kind == Tok::End ? " (found end of input)" : " (found '" + t.text + "')"), t.pos);
    }

    // -- grammar -------------------------------------------------------------

    DFormula formula() {
        if (peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists")) {
            Quantifier q = advance().text == "forall" ? Quantifier::Forall : Quantifier::Exists;
            const auto& v = expect(Tok::Ident, "variable");
            if (is_keyword(v.text)) fail("keyword used as variable", v);
            if (sig_.declares(v.text) || quantified_.count(v.text))
                fail("variable '" + v.text + "' clashes with a symbol name", v);
            expect(Tok::Dot, "'.'");
            variables_.insert(v.text);
            bound_.push_back(v.text);
            auto body = formula();
            bound_.pop_back();
            return quantify(q, v.text, std::move(body));
        }
        return disjunction();
    }

    DFormula disjunction() {
        auto f = conjunction();
        while (peek().kind == Tok::Bar) {
            advance();
            f = disj(std::move(f), conjunction());
        }
        return f;
    }

    DFormula conjunction() {
        auto f = unit();
        while (peek().kind == Tok::Amp) {
            advance();
            f = conj(std::move(f), unit());
        }
        return f;
    }

    DFormula unit() {
        if (peek().kind == Tok::LParen) {
            advance();
            auto f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (peek().kind == Tok::Tilde) {
            const auto& tilde = advance();
            DFormula inner;
            if (peek().kind == Tok::LParen) {
                advance();
                inner = formula();
                expect(Tok::RParen, "')'");
            } else {
                inner = atom();
            }
            if (!inner.is_literal() || inner.kind == FormulaKind::NegDependence)
                fail_at("negation applied to a non-atom (formulas must be in negation normal form)", tilde.pos);
            return negate_atom(inner);
        }
        return atom();
    }

    DFormula atom() {
        const auto& t = peek();
        if (t.kind == Tok::Equals) {
            advance();
            expect(Tok::LParen, "'(' after '='");
            return dep(term_list());
        }
        if (t.kind != Tok::Ident) fail("expected an atomic formula", t);
        if (t.text == "true") {
            advance();
            return verum();
        }
        if (t.text == "false") {
            advance();
            return falsum();
        }
        if (t.text == "forall" || t.text == "exists")
            fail("quantifier must be parenthesized inside a connective", t);
        if (sig_.relations.count(t.text)) {
            const auto& name = advance();
            expect(Tok::LParen, "'(' after relation symbol");
            auto args = term_list();
            if (static_cast<int>(args.size()) != sig_.relations.at(name.text))
                fail_at("arity mismatch for relation '" + name.text + "'", name.pos);
            return rel(name.text, std::move(args));
        }
        if (!strict_ && peek(1).kind == Tok::LParen && !sig_.functions.count(t.text) && !quantified_.count(t.text)) {
            // Relation or function application, decided by what follows.
            const auto& name = advance();
            advance();
            auto args = term_list();
            if (peek().kind != Tok::Equals) {
                if (args.empty()) fail_at("relation '" + name.text + "' needs at least one argument", name.pos);
                record(sig_.relations, name, static_cast<int>(args.size()));
                return rel(name.text, std::move(args));
            }
            record(sig_.functions, name, static_cast<int>(args.size()));
            return equality_rest(apply(name.text, std::move(args)));
        }
        auto lhs = term();
        return equality_rest(std::move(lhs));
    }

    DFormula equality_rest(Term lhs) {
        expect(Tok::Equals, "'=' or a relation atom");
        return eq(std::move(lhs), term());
    }

    // After an opening parenthesis: [term ("," term)*] ")".
    std::vector<Term> term_list() {
        std::vector<Term> out;
        if (peek().kind == Tok::RParen) {
            advance();
            return out;
        }
        out.push_back(term());
        while (peek().kind == Tok::Comma) {
            advance();
            out.push_back(term());
        }
        expect(Tok::RParen, "',' or ')'");
        return out;
    }

    Term term() {
        const auto& t = expect(Tok::Ident, "a term");
        if (is_keyword(t.text)) fail("keyword used as a term", t);
        if (peek().kind == Tok::LParen) {
            advance();
            auto args = term_list();
            int arity = static_cast<int>(args.size());
            if (auto it = quantified_.find(t.text); it != quantified_.end()) {
                if (it->second != arity) fail_at("arity mismatch for function '" + t.text + "'", t.pos);
            } else if (auto jt = sig_.functions.find(t.text); jt != sig_.functions.end()) {
                if (jt->second != arity) fail_at("arity mismatch for function '" + t.text + "'", t.pos);
            } else if (strict_) {
                fail_at("undeclared function symbol '" + t.text + "'", t.pos);
            } else {
                record(sig_.functions, t, arity);
            }
            return apply(t.text, std::move(args));
        }
        if (std::find(bound_.begin(), bound_.end(), t.text) != bound_.end()) return var(t.text);
        if (sig_.constants.count(t.text)) return constant(t.text);
        if (sig_.relations.count(t.text) || sig_.functions.count(t.text) || quantified_.count(t.text))
            fail_at("symbol '" + t.text + "' used as a variable", t.pos);
        if (strict_ || free_variables_.count(t.text)) {
            variables_.insert(t.text);
            return var(t.text);
        }
        sig_.constants.insert(t.text);
        constant_positions_.emplace(t.text, t.pos);
        return constant(t.text);
    }

    void record(std::map<std::string, int>& table, const Token& name, int arity) {
        auto& other = &table == &sig_.relations ? sig_.functions : sig_.relations;
        if (other.count(name.text) || sig_.constants.count(name.text))
            fail_at("symbol '" + name.text + "' used with two different roles", name.pos);
        auto [it, fresh] = table.emplace(name.text, arity);
        if (!fresh && it->second != arity) fail_at("arity mismatch for symbol '" + name.text + "'", name.pos);
    }

    void check_namespaces() const {
        for (const auto& [name, pos] : constant_positions_) {
            if (variables_.count(name))
                fail_at("identifier '" + name + "' used both as a bound variable and outside its scope", pos);
            if (sig_.relations.count(name) || sig_.functions.count(name))
                fail_at("symbol '" + name + "' used with two different roles", pos);
        }
    }

    std::string_view text_;
    bool strict_;
    Signature sig_;
    std::set<std::string> free_variables_;
    std::map<std::string, int> quantified_;
    std::vector<std::string> bound_;
    std::set<std::string> variables_;
    std::map<std::string, std::size_t> constant_positions_;
    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

inline bool looks_like_eso(std::string_view text) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
            } else if (text[i] == '#') {
                while (i < text.size() && text[i] != '\n') ++i;
            } else {
                break;
            }
        }
    };
    auto word = [&] {
        skip();
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        auto w = text.substr(i, j - i);
        i = j;
        return w;
    };
    return word() == "exists" && word() == "fn";
}

} // namespace detail

/// Parses a dependence-logic formula against a declared signature. Bare
/// identifiers that are not declared constants are variables.
inline DFormula parse_dformula(std::string_view text, const Signature& sig) {
    return detail::Parser(text, &sig, {}).parse_formula_text();
}

/// Parses an ESO sentence against a declared signature.
inline EsoSentence parse_eso(std::string_view text, const Signature& sig) {
    return detail::Parser(text, &sig, {}).parse_eso_text();
}

/// Parses either kind of sentence, chosen by a leading `exists fn`. Without a
/// signature one is inferred; `free_variables` lists identifiers that must be
/// read as variables even when unbound (the variables of a team).
inline ParsedSentence parse_any(std::string_view text, const Signature* sig = nullptr,
                                const std::set<std::string>& free_variables = {}) {
    detail::Parser p(text, sig, free_variables);
    if (detail::looks_like_eso(text)) {
        auto e = p.parse_eso_text();
        return {std::move(e), p.signature()};
    }
    auto f = p.parse_formula_text();
    return {std::move(f), p.signature()};
}

inline std::string render(const Sentence& s) {
    return std::visit([](const auto& v) { return render(v); }, s);
}

} // namespace deplog
