#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qrank/quiver.hpp"

namespace qrank::detail {

enum class Tok { Ident, Number, Sym, Arrow, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, col;
};

std::vector<Token> lex(std::string_view text, const std::string& source);

class Cursor {
public:
    Cursor(std::vector<Token> toks, std::string source) : t_(std::move(toks)), src_(std::move(source)) {}

    const Token& peek() const { return t_[i_]; }
    const Token& next() { return t_[i_ < t_.size() - 1 ? i_++ : i_]; }
    bool at_end() const { return t_[i_].kind == Tok::End; }
    bool is_sym(char c) const { return t_[i_].kind == Tok::Sym && t_[i_].text[0] == c; }
    bool is_word(std::string_view w) const { return t_[i_].kind == Tok::Ident && t_[i_].text == w; }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const {
        throw ParseError(src_, at.line, at.col, msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(peek(), msg); }

    void expect_sym(char c);
    void expect_word(std::string_view w);
    void expect_arrow();
    std::string ident(const char* what);
    long long integer(const char* what);

private:
    std::vector<Token> t_;
    std::string src_;
    std::size_t i_ = 0;
};

}  // namespace qrank::detail
