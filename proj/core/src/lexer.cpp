#include "lexer.hpp"

#include <cctype>
#include <charconv>

namespace qrank {

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t col, const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

namespace detail {

namespace {

bool ident_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '#' || c == '\'' || c >= 0x80;
}

// '-' joins two name characters, as in "extended-subspace".
std::size_t scan_ident(std::string_view s, std::size_t k) {
    while (k < s.size()) {
        if (ident_char(static_cast<unsigned char>(s[k]))) {
            ++k;
        } else if (s[k] == '-' && k + 1 < s.size() && ident_char(static_cast<unsigned char>(s[k + 1]))) {
            k += 2;
        } else {
            break;
        }
    }
    return k;
}

}  // namespace

std::vector<Token> lex(std::string_view s, const std::string& source) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
                ++col;
            }
            ++i;
        }
    };
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        std::size_t l = line, cl = col;
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", l, cl});
            advance(2);
            continue;
        }
        if (c == '-' || c == '+' || std::isdigit(c)) {
            std::size_t j = i + ((c == '-' || c == '+') ? 1 : 0);
            if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                std::size_t k = j;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                // Digits followed by identifier characters form a name such as "1a".
                if (k < s.size() && ident_char(static_cast<unsigned char>(s[k])) && c != '-' && c != '+') {
                    k = scan_ident(s, k);
                    out.push_back({Tok::Ident, std::string(s.substr(i, k - i)), l, cl});
                } else {
                    out.push_back({Tok::Number, std::string(s.substr(i, k - i)), l, cl});
                }
                advance(k - i);
                continue;
            }
        }
        if (ident_char(c)) {
            std::size_t k = scan_ident(s, i);
            out.push_back({Tok::Ident, std::string(s.substr(i, k - i)), l, cl});
            advance(k - i);
            continue;
        }
        if (std::string_view("{}:;=[],()").find(static_cast<char>(c)) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, static_cast<char>(c)), l, cl});
            advance(1);
            continue;
        }
        throw ParseError(source, l, cl, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

void Cursor::expect_sym(char c) {
    if (!is_sym(c)) fail(std::string("expected '") + c + "'" + (at_end() ? " before end of input" : ", found '" + peek().text + "'"));
    next();
}

void Cursor::expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "'" + (at_end() ? " before end of input" : ", found '" + peek().text + "'"));
    next();
}

void Cursor::expect_arrow() {
    if (peek().kind != Tok::Arrow) fail("expected '->'");
    next();
}

std::string Cursor::ident(const char* what) {
    if (peek().kind != Tok::Ident && peek().kind != Tok::Number) fail(std::string("expected ") + what);
    return next().text;
}

long long Cursor::integer(const char* what) {
    if (peek().kind != Tok::Number) fail(std::string("expected ") + what);
    const Token& t = peek();
    long long v = 0;
    const char* b = t.text.data() + (t.text[0] == '+' ? 1 : 0);
    auto [p, ec] = std::from_chars(b, t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) fail("integer out of range");
    next();
    return v;
}

}  // namespace detail
}  // namespace qrank
