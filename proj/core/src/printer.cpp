#include "qlambert/expr.hpp"

namespace qlambert {

namespace {

// Binding strength; a child printed below its slot's minimum gets parentheses.
int precedence(const Expr& e)
{
    switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
        return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
        return 2;
    case ExprKind::Neg:
        return 3;
    case ExprKind::Pow:
        return 4;
    default:
        return 5;
    }
}

std::string emit(const Expr& e, int min_prec);

std::string binary(const Expr& e, const char* op, int p)
{
    return emit(*e.args[0], p) + op + emit(*e.args[1], p + 1);
}

std::string body(const Expr& e)
{
    switch (e.kind) {
    case ExprKind::Rat:
        return e.value.str();
    case ExprKind::Q:
        return "q";
    case ExprKind::Param:
        return "$" + e.name;
    case ExprKind::Index:
        return e.name;
    case ExprKind::Call: {
        std::string s = e.name + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            s += (i ? ", " : "") + emit(*e.args[i], 0);
        }
        if (e.base) {
            s += "; " + emit(*e.base, 0);
        }
        return s + ")";
    }
    case ExprKind::Add:
        return binary(e, " + ", 1);
    case ExprKind::Sub:
        return binary(e, " - ", 1);
    case ExprKind::Mul:
        return binary(e, "*", 2);
    case ExprKind::Div:
        return binary(e, " / ", 2);
    case ExprKind::Neg:
        return "-" + emit(*e.args[0], 3);
    case ExprKind::Pow:
        return emit(*e.args[0], 5) + "^" + emit(*e.args[1], 5);
    }
    return "?";
}

std::string emit(const Expr& e, int min_prec)
{
    std::string s = body(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

} // namespace

std::string print(const Expr& e)
{
    return emit(e, 0);
}

} // namespace qlambert
