#include <cctype>
#include <string>

#include "numqa/errors.hpp"
#include "numqa/formula.hpp"
#include "numqa/table.hpp"

namespace numqa {

namespace {

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return is_ident_start(c) || is_digit(c);
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (true) {
            skip_whitespace();
            if (pos_ >= text_.size()) break;
            tokens.push_back(next());
        }
        if (tokens.empty()) throw TokenizeError("empty formula", 0);
        Token end;
        end.type = Tok::end;
        end.pos = text_.size();
        tokens.push_back(std::move(end));
        return tokens;
    }

private:
    void skip_whitespace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek(std::size_t off = 0) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    Token make(Tok type, std::size_t start, std::string raw) {
        Token t;
        t.type = type;
        t.pos = start;
        t.raw = std::move(raw);
        return t;
    }

    Token simple(Tok type, std::size_t len) {
        Token t = make(type, pos_, std::string(text_.substr(pos_, len)));
        pos_ += len;
        return t;
    }

    Token next() {
        char c = peek();
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return number();
        if (is_ident_start(c)) return identifier();
        switch (c) {
            case '{': return cell_reference();
            case '#': return step_reference();
            case '"': return quoted();
            case '+': return simple(Tok::plus, 1);
            case '-': return simple(Tok::minus, 1);
            case '*': return simple(Tok::star, 1);
            case '/': return simple(Tok::slash, 1);
            case '^': return simple(Tok::caret, 1);
            case '>': return simple(Tok::greater, 1);
            case '(': return simple(Tok::lparen, 1);
            case ')': return simple(Tok::rparen, 1);
            case ',': return simple(Tok::comma, 1);
            case ':': return simple(Tok::colon, 1);
            default: break;
        }
        // UTF-8 multiplication and division signs
        if (static_cast<unsigned char>(c) == 0xC3) {
            unsigned char c2 = static_cast<unsigned char>(peek(1));
            if (c2 == 0x97) return simple(Tok::star, 2);   // ×
            if (c2 == 0xB7) return simple(Tok::slash, 2);  // ÷
        }
        throw TokenizeError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    // Numbers accept comma grouping ("113,246") when each group is exactly
    // three digits; a comma that does not continue a group stays a separate
    // token, which is how DSL argument lists stay unambiguous.
    Token number() {
        std::size_t start = pos_;
        std::size_t first_run = 0;
        while (is_digit(peek())) {
            ++pos_;
            ++first_run;
        }
        if (first_run >= 1 && first_run <= 3) {
            while (peek() == ',' && is_digit(peek(1)) && is_digit(peek(2)) && is_digit(peek(3)) &&
                   !is_digit(peek(4)))
                pos_ += 4;
        }
        if (peek() == '.' && is_digit(peek(1))) {
            ++pos_;
            while (is_digit(peek())) ++pos_;
        }
        Token t = make(Tok::number, start, std::string(text_.substr(start, pos_ - start)));
        auto clean = degroup_number(t.raw);
        if (!clean) throw TokenizeError("malformed number '" + t.raw + "'", start);
        t.number = Decimal::parse_or_throw(*clean);
        return t;
    }

    Token identifier() {
        std::size_t start = pos_;
        while (is_ident_char(peek())) ++pos_;
        return make(Tok::ident, start, std::string(text_.substr(start, pos_ - start)));
    }

    Token quoted() {
        std::size_t start = pos_;
        ++pos_;
        std::string content;
        while (pos_ < text_.size() && text_[pos_] != '"') content.push_back(text_[pos_++]);
        if (pos_ >= text_.size()) throw TokenizeError("unterminated quoted string", start);
        ++pos_;
        Token t = make(Tok::text, start, content);
        return t;
    }

    Token step_reference() {
        std::size_t start = pos_;
        ++pos_;
        if (!is_digit(peek())) throw TokenizeError("expected digits after '#'", start);
        int step = 0;
        while (is_digit(peek())) step = step * 10 + (text_[pos_++] - '0');
        Token t = make(Tok::step_ref, start, std::string(text_.substr(start, pos_ - start)));
        t.step = step;
        return t;
    }

    // "{ Col 2 , Row 1 }" with flexible spacing, case, and optional
    // underscores ("{Col_2, Row_1}", "{ col10, row2 }").
    Token cell_reference() {
        std::size_t start = pos_;
        ++pos_;
        int col = ref_part("col", start);
        skip_whitespace();
        if (peek() != ',') throw TokenizeError("malformed cell reference", start);
        ++pos_;
        int row = ref_part("row", start);
        skip_whitespace();
        if (pos_ >= text_.size()) throw UnterminatedReference("unterminated cell reference", start);
        if (peek() != '}') throw TokenizeError("malformed cell reference", start);
        ++pos_;
        Token t = make(Tok::cell_ref, start, std::string(text_.substr(start, pos_ - start)));
        t.ref = CellRef{col, row};
        return t;
    }

    int ref_part(std::string_view word, std::size_t start) {
        skip_whitespace();
        for (char expected : word) {
            if (pos_ >= text_.size()) throw UnterminatedReference("unterminated cell reference", start);
            if (std::tolower(static_cast<unsigned char>(peek())) != expected)
                throw TokenizeError("malformed cell reference", start);
            ++pos_;
        }
        if (peek() == '_') ++pos_;
        skip_whitespace();
        if (!is_digit(peek())) throw TokenizeError("malformed cell reference", start);
        int n = 0;
        while (is_digit(peek())) n = n * 10 + (text_[pos_++] - '0');
        if (n < 1) throw TokenizeError("cell reference indices are 1-based", start);
        return n;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    return Lexer(text).run();
}

}  // namespace numqa
