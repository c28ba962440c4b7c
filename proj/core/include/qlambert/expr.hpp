#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlambert/builders.hpp"
#include "qlambert/rational.hpp"

namespace qlambert {

/// Node kinds of the q-series expression language.
enum class ExprKind {
    Rat,   ///< nonnegative rational literal
    Q,     ///< the variable q
    Param, ///< $name
    Index, ///< bare index variable bound by Sum, or `n` inside a weight
    Call,  ///< NAME(args; base)
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind = ExprKind::Rat;
    Rational value;            ///< Rat
    std::string name;          ///< Param, Index, Call
    std::vector<ExprPtr> args; ///< operands or call arguments
    ExprPtr base;              ///< optional "; q^b" of a Call
};

/// Structural equality (deep).
bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b)
{
    return a && b ? equal(*a, *b) : a == b;
}

namespace ex {
/// A negative literal becomes Neg(Rat), so Rat nodes stay nonnegative.
ExprPtr rat(const Rational& v);
ExprPtr q();
ExprPtr param(std::string name);
ExprPtr index(std::string name);
ExprPtr call(std::string name, std::vector<ExprPtr> args, ExprPtr base = nullptr);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr a);
ExprPtr pow(ExprPtr a, ExprPtr b);
} // namespace ex

/// Every function-call name the language accepts.
bool is_known_call(std::string_view name);
const std::vector<std::string_view>& known_calls();

/// Syntax error with a 1-based position and the tokens that would have fit.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column,
               std::vector<std::string> expected);

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }
    [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

/// A call to a name outside the builder vocabulary.
class UnknownBuilder : public ParseError {
public:
    UnknownBuilder(const std::string& name, std::size_t line, std::size_t column);
    [[nodiscard]] const std::string& name() const { return name_; }

private:
    std::string name_;
};

ExprPtr parse(std::string_view text);

/// Canonical text; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);
inline std::string print(const ExprPtr& e)
{
    return print(*e);
}

/// Evaluation failure; `path()` lists the enclosing calls, outermost first.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, std::vector<std::string> path = {});

    [[nodiscard]] const std::string& message() const { return message_; }
    [[nodiscard]] const std::vector<std::string>& path() const { return path_; }

    /// Same error one call level further out.
    [[nodiscard]] EvalError within(const std::string& frame) const;

private:
    std::string message_;
    std::vector<std::string> path_;
};

using Bindings = std::map<std::string, Param<Rational>, std::less<>>;

/// Evaluates to a power series truncated at `degree`. Intermediate negative
/// powers of q are allowed; the final value must be a power series.
Series evaluate(const Expr& e, std::size_t degree, const Bindings& bindings = {},
                const BuildOptions& opts = {});
inline Series evaluate(const ExprPtr& e, std::size_t degree, const Bindings& bindings = {},
                       const BuildOptions& opts = {})
{
    return evaluate(*e, degree, bindings, opts);
}

/// Names of all $params referenced in e.
std::vector<std::string> referenced_params(const Expr& e);

} // namespace qlambert
