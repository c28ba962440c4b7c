#include <cctype>

#include "qlambert/expr.hpp"

namespace qlambert {

namespace {

std::string join(const std::vector<std::string>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i == 0 ? "" : (i + 1 == v.size() ? " or " : ", ")) + v[i];
    }
    return out;
}

std::string position(std::size_t line, std::size_t column)
{
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       std::vector<std::string> expected)
    : std::runtime_error(position(line, column) + ": " + message), line_(line), column_(column),
      expected_(std::move(expected))
{
}

UnknownBuilder::UnknownBuilder(const std::string& name, std::size_t line, std::size_t column)
    : ParseError("unknown builder '" + name + "'", line, column, {}), name_(name)
{
}

namespace {

enum class Tok { Number, Ident, Param, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : src_(s) {}

    Token next()
    {
        skip_space();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size()) {
            return t;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::Number;
            t.text = digits();
            // "p/r" without spaces is a single rational literal.
            if (pos_ + 1 < src_.size() && src_[pos_] == '/'
                && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                advance();
                t.text += "/" + digits();
            }
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::Ident;
            t.text = word();
        } else if (c == '$') {
            advance();
            if (pos_ >= src_.size() || !(std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                throw ParseError("expected parameter name after '$'", line_, col_, {"name"});
            }
            t.kind = Tok::Param;
            t.text = word();
        } else if (std::string_view("+-*/^(),;").find(c) != std::string_view::npos) {
            t.kind = Tok::Sym;
            t.text = std::string(1, c);
            advance();
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line_, col_, {});
        }
        return t;
    }

private:
    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_space()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            advance();
        }
    }
    std::string digits()
    {
        std::string s;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            s += src_[pos_];
            advance();
        }
        return s;
    }
    std::string word()
    {
        std::string s;
        while (pos_ < src_.size()
               && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            s += src_[pos_];
            advance();
        }
        return s;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

    ExprPtr parse_all()
    {
        auto e = expr();
        if (tok_.kind != Tok::End) {
            fail({"operator", "end of input"});
        }
        return e;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected)
    {
        const std::string found = tok_.kind == Tok::End ? "end of input" : "'" + tok_.text + "'";
        const std::string message = "expected " + join(expected) + ", found " + found;
        throw ParseError(message, tok_.line, tok_.column, std::move(expected));
    }

    bool is_sym(char c) const { return tok_.kind == Tok::Sym && tok_.text[0] == c; }
    void expect(char c)
    {
        if (!is_sym(c)) {
            fail({std::string("'") + c + "'"});
        }
        tok_ = lex_.next();
    }

    ExprPtr expr()
    {
        auto lhs = term();
        while (is_sym('+') || is_sym('-')) {
            const char op = tok_.text[0];
            tok_ = lex_.next();
            auto rhs = term();
            lhs = op == '+' ? ex::add(lhs, rhs) : ex::sub(lhs, rhs);
        }
        return lhs;
    }

    ExprPtr term()
    {
        auto lhs = factor();
        while (is_sym('*') || is_sym('/')) {
            const char op = tok_.text[0];
            tok_ = lex_.next();
            auto rhs = factor();
            lhs = op == '*' ? ex::mul(lhs, rhs) : ex::div(lhs, rhs);
        }
        return lhs;
    }

    ExprPtr factor()
    {
        if (is_sym('-')) {
            tok_ = lex_.next();
            return ex::neg(factor());
        }
        auto base = atom();
        if (is_sym('^')) {
            tok_ = lex_.next();
            return ex::pow(base, atom());
        }
        return base;
    }

    ExprPtr atom()
    {
        switch (tok_.kind) {
        case Tok::Number: {
            auto e = ex::rat(Rational::parse(tok_.text));
            tok_ = lex_.next();
            return e;
        }
        case Tok::Param: {
            auto e = ex::param(tok_.text);
            tok_ = lex_.next();
            return e;
        }
        case Tok::Ident: {
            Token name = tok_;
            tok_ = lex_.next();
            if (is_sym('(')) {
                if (!is_known_call(name.text)) {
                    throw UnknownBuilder(name.text, name.line, name.column);
                }
                return call_rest(name.text);
            }
            return name.text == "q" ? ex::q() : ex::index(name.text);
        }
        case Tok::Sym:
            if (is_sym('(')) {
                tok_ = lex_.next();
                auto e = expr();
                expect(')');
                return e;
            }
            break;
        case Tok::End:
            break;
        }
        fail({"number", "'q'", "'$'parameter", "name", "'('"});
    }

    ExprPtr call_rest(const std::string& name)
    {
        expect('(');
        std::vector<ExprPtr> args{expr()};
        while (is_sym(',')) {
            tok_ = lex_.next();
            args.push_back(expr());
        }
        ExprPtr base;
        if (is_sym(';')) {
            tok_ = lex_.next();
            base = expr();
        }
        if (!is_sym(')')) {
            fail(base ? std::vector<std::string>{"')'"}
                      : std::vector<std::string>{"','", "';'", "')'"});
        }
        tok_ = lex_.next();
        return ex::call(name, std::move(args), std::move(base));
    }

    Lexer lex_;
    Token tok_;
};

} // namespace

ExprPtr parse(std::string_view text)
{
    return Parser(text).parse_all();
}

} // namespace qlambert
