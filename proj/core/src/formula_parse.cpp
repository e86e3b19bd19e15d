#include <cctype>
#include <string>

#include "numqa/errors.hpp"
#include "numqa/formula.hpp"

namespace numqa {

namespace {

bool is_placeholder_name(const std::string& name, int* index) {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'X')) return false;
    int value = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') return false;
        value = value * 10 + (name[i] - '0');
    }
    *index = value;
    return true;
}

std::optional<OpKind> op_for_token(Tok type) {
    switch (type) {
        case Tok::plus: return OpKind::add;
        case Tok::minus: return OpKind::subtract;
        case Tok::star: return OpKind::multiply;
        case Tok::slash: return OpKind::divide;
        case Tok::caret: return OpKind::exp;
        case Tok::greater: return OpKind::greater;
        default: return std::nullopt;
    }
}

class Parser {
public:
    Parser(std::vector<Token> tokens, bool allow_steps)
        : tokens_(std::move(tokens)), allow_steps_(allow_steps) {}

    Formula run() {
        Formula expr = expression(1);
        while (allow_steps_ && peek().type == Tok::comma) {
            steps_.push_back(expr);
            advance();
            expr = expression(1);
        }
        if (peek().type != Tok::end)
            throw ParseError("trailing input '" + peek().raw + "'", peek().pos, "end of formula");
        return expr;
    }

private:
    const Token& peek(std::size_t off = 0) const {
        std::size_t i = pos_ + off;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    void expect(Tok type, const char* what) {
        if (peek().type != type)
            throw ParseError("unexpected token '" + peek().raw + "'", peek().pos, what);
        advance();
    }

    Formula expression(int min_precedence) {
        Formula left = primary();
        while (true) {
            auto op = op_for_token(peek().type);
            if (!op) break;
            int prec = op_precedence(*op);
            if (prec < min_precedence) break;
            advance();
            Formula right = expression(prec + 1);  // left-associative
            left = Formula::binary(*op, std::move(left), std::move(right));
        }
        return left;
    }

    Formula primary() {
        const Token& t = peek();
        switch (t.type) {
            case Tok::number: {
                advance();
                return Formula::number(t.number, t.raw);
            }
            case Tok::minus: {
                // Unary minus only directly before a literal: "-9".
                if (peek(1).type != Tok::number)
                    throw ParseError("'-' must be followed by a number literal", t.pos, "number");
                advance();
                const Token& num = peek();
                advance();
                return Formula::number(num.number.negated(), "-" + num.raw);
            }
            case Tok::cell_ref: {
                advance();
                return Formula::cell(t.ref);
            }
            case Tok::step_ref: {
                if (!allow_steps_)
                    throw ParseError("step references are only valid in DSL programs", t.pos);
                advance();
                if (t.step < 0 || t.step >= static_cast<int>(steps_.size()))
                    throw DanglingStepReference(t.step, t.pos);
                return steps_[t.step];
            }
            case Tok::lparen: {
                advance();
                Formula inner = expression(1);
                expect(Tok::rparen, "')'");
                return inner.with_parens(true);
            }
            case Tok::ident: {
                if (peek(1).type == Tok::lparen) return call();
                int index = 0;
                if (is_placeholder_name(t.raw, &index)) {
                    advance();
                    return Formula::placeholder(index);
                }
                throw ParseError("unexpected identifier '" + t.raw + "'", t.pos, "operand");
            }
            default:
                throw ParseError("unexpected token '" + t.raw + "'", t.pos, "operand");
        }
    }

    Formula call() {
        const Token& name = peek();
        advance();  // ident
        advance();  // lparen
        if (auto agg = agg_by_name(name.raw)) return aggregation_call(*agg, name.pos);
        auto op = op_by_name(name.raw);
        if (!op) throw UnknownOperator(name.raw, name.pos);
        std::vector<Formula> args;
        if (peek().type != Tok::rparen) {
            args.push_back(expression(1));
            while (peek().type == Tok::comma) {
                advance();
                args.push_back(expression(1));
            }
        }
        expect(Tok::rparen, "')'");
        if (args.size() != 2)
            throw ArityMismatch("'" + name.raw + "' takes 2 arguments, got " +
                                    std::to_string(args.size()),
                                name.pos);
        return Formula::binary(*op, std::move(args[0]), std::move(args[1]));
    }

    // table_max(ending allowance balance, none) — the target is a raw header
    // name read up to the next ',' or ')'; a quoted string is taken verbatim.
    Formula aggregation_call(AggKind kind, std::size_t call_pos) {
        std::string target;
        if (peek().type == Tok::text) {
            target = peek().raw;
            advance();
        } else {
            while (peek().type != Tok::comma && peek().type != Tok::rparen &&
                   peek().type != Tok::end) {
                const Token& t = peek();
                std::string piece;
                switch (t.type) {
                    case Tok::ident:
                    case Tok::number: piece = t.raw; break;
                    case Tok::colon: piece = ":"; break;
                    case Tok::minus: piece = "-"; break;
                    default:
                        throw ParseError("unexpected token '" + t.raw + "' in aggregation target",
                                         t.pos);
                }
                if (!target.empty()) target += " ";
                target += piece;
                advance();
            }
            if (target.empty())
                throw ParseError("empty aggregation target", peek().pos, "header name");
        }
        if (peek().type == Tok::comma) {
            advance();
            const Token& none = peek();
            if (none.type != Tok::ident || to_lower_ascii(none.raw) != "none")
                throw ParseError("second aggregation argument must be 'none'", none.pos);
            advance();
        }
        expect(Tok::rparen, "')'");
        (void)call_pos;
        return Formula::aggregation(kind, std::move(target));
    }

    static std::string to_lower_ascii(std::string s) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    bool allow_steps_ = false;
    std::vector<Formula> steps_;
};

// "table-max" (prompt-header spelling) -> "table_max" so the lexer sees one
// identifier instead of ident minus ident.
std::string normalize_dsl_spelling(std::string_view text) {
    static constexpr std::string_view names[] = {"table-max", "table-min", "table-sum",
                                                 "table-average"};
    std::string out(text);
    for (std::string_view name : names) {
        std::size_t at = 0;
        while ((at = out.find(name, at)) != std::string::npos) {
            out[at + 5] = '_';
            at += name.size();
        }
    }
    return out;
}

}  // namespace

Formula parse_infix(std::string_view text) {
    return parse_infix(tokenize(text));
}

Formula parse_infix(const std::vector<Token>& tokens) {
    return Parser(tokens, /*allow_steps=*/false).run();
}

Formula parse_dsl(std::string_view text) {
    return Parser(tokenize(normalize_dsl_spelling(text)), /*allow_steps=*/true).run();
}

std::pair<Formula, FormulaForm> parse_formula(std::string_view text) {
    bool dsl = text.find('#') != std::string_view::npos;
    if (!dsl) {
        std::size_t i = 0;
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                text[i] == '-'))
            ++i;
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        dsl = i > start && i < text.size() && text[i] == '(' &&
              !std::isdigit(static_cast<unsigned char>(text[start]));
    }
    if (dsl) return {parse_dsl(text), FormulaForm::dsl};
    return {parse_infix(text), FormulaForm::infix};
}

}  // namespace numqa
