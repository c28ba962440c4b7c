#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qlambert/expr.hpp"

using namespace qlambert;

namespace {

Series eval(std::string_view text, std::size_t d, const Bindings& b = {})
{
    return evaluate(parse(text), d, b);
}

ExprPtr random_expr(oracle::Rng& rng, int depth)
{
    const auto leaf = [&]() -> ExprPtr {
        switch (rng.integer(0, 4)) {
        case 0: return ex::rat(rng.rational(5));
        case 1: return ex::q();
        case 2: return ex::param(rng.integer(0, 1) ? "x" : "zeta");
        case 3: return ex::index(rng.integer(0, 1) ? "j" : "n");
        default: return ex::rat(Rational(rng.integer(0, 9)));
        }
    };
    if (depth == 0) {
        return leaf();
    }
    switch (rng.integer(0, 7)) {
    case 0: return ex::add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 1: return ex::sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 2: return ex::mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3: return ex::div(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return ex::neg(random_expr(rng, depth - 1));
    case 5: return ex::pow(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: {
        const auto& names = known_calls();
        std::string name(names[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(names.size()) - 1))]);
        std::vector<ExprPtr> args;
        for (auto k = rng.integer(1, 3); k > 0; --k) {
            args.push_back(random_expr(rng, depth - 1));
        }
        ExprPtr base = rng.integer(0, 2) == 0 ? random_expr(rng, depth - 1) : nullptr;
        return ex::call(name, std::move(args), std::move(base));
    }
    default: return leaf();
    }
}

} // namespace

TEST(Parse, Examples)
{
    const auto e = parse("L(q, -q; q^2)");
    ASSERT_EQ(e->kind, ExprKind::Call);
    EXPECT_EQ(e->name, "L");
    ASSERT_EQ(e->args.size(), 2u);
    EXPECT_TRUE(equal(e->args[0], ex::q()));
    EXPECT_TRUE(equal(e->args[1], ex::neg(ex::q())));
    EXPECT_TRUE(equal(e->base, ex::pow(ex::q(), ex::rat(2))));
}

TEST(Parse, ErrorColumn)
{
    try {
        parse("L(q, (");
        FAIL() << "expected a parse error";
    } catch (const ParseError& err) {
        EXPECT_EQ(err.line(), 1u);
        EXPECT_EQ(err.column(), 7u);
        EXPECT_FALSE(err.expected().empty());
    }
    try {
        parse("1 +\n  * q");
        FAIL();
    } catch (const ParseError& err) {
        EXPECT_EQ(err.line(), 2u);
        EXPECT_EQ(err.column(), 3u);
    }
    EXPECT_THROW(parse("Nope(q)"), UnknownBuilder);
    EXPECT_THROW(parse("q^("), ParseError);
    EXPECT_THROW(parse("q q"), ParseError);
}

TEST(Parse, Precedence)
{
    // Unary minus binds looser than ^, and "1/2" without spaces is one literal.
    EXPECT_TRUE(equal(parse("-q^2"), ex::neg(ex::pow(ex::q(), ex::rat(2)))));
    EXPECT_TRUE(equal(parse("1/2*q"), ex::mul(ex::rat(Rational(1, 2)), ex::q())));
    EXPECT_TRUE(equal(parse("1 / 2"), ex::div(ex::rat(1), ex::rat(2))));
    EXPECT_TRUE(equal(parse("a - b - c"), ex::sub(ex::sub(ex::index("a"), ex::index("b")), ex::index("c"))));
    // ^ does not chain; the exponent is a single atom.
    EXPECT_THROW(parse("q^2^3"), ParseError);
}

TEST(Print, RoundTripExamples)
{
    for (const char* s : {"Y(q)", "A(q, q, q^2, -q; q^2)", "1/2*q*(L(q, -q; q^2)^2 - L(q^2, -q, -q; q^2))",
                          "-(q + 1)^2", "q^(2*$N + 1)", "(1 - q) / (1 + q)", "D($x, $x*L($x*q, q))"}) {
        const auto e = parse(s);
        EXPECT_TRUE(equal(parse(print(e)), e)) << s << " -> " << print(e);
    }
    EXPECT_EQ(print(parse("Y(q)")), "Y(q)");
    EXPECT_NE(print(parse("L(q, q; q^2)")).find("; q^2"), std::string::npos);
}

TEST(Print, RoundTripRandomAsts)
{
    oracle::Rng rng(77);
    for (int i = 0; i < 500; ++i) {
        const auto e = random_expr(rng, static_cast<int>(rng.integer(0, 4)));
        const std::string text = print(e);
        ExprPtr back;
        ASSERT_NO_THROW(back = parse(text)) << text;
        EXPECT_TRUE(equal(back, e)) << text << " reprinted as " << print(back);
    }
}

TEST(Eval, Examples)
{
    EXPECT_EQ(eval("G(q)", 4)[4], Rational(3));
    EXPECT_EQ(eval("$x", 3, {{"x", {Rational(1, 2), 0}}}), Series::constant(Rational(1, 2), 3));
    // D marks $x; at x = 1 the derivative weights each term of L(x q, q; q) by n.
    EXPECT_EQ(eval("D($x, L($x*q, q; q))", 12, {{"x", {1, 0}}}), eval("WL(n, 0, q, q)", 12));
    EXPECT_TRUE(eval("2*A(q,q,q^2,-q;q^2) - X(q) - NegQ(X(q))", 30).is_zero_series());
    EXPECT_FALSE(eval("2*A(q,q,q^2,-q;q^2) - 2*X(q)", 30).is_zero_series());
}

TEST(Eval, Homomorphism)
{
    const char* pieces[] = {"L(q, q)", "Y(q)", "A(q, q, q^2, -q; q^2)", "1/(1 - q)", "Poch(q; q^2)", "3/4 - q^3"};
    for (const char* a : pieces) {
        for (const char* b : pieces) {
            const std::string sa = a, sb = b;
            EXPECT_EQ(eval("(" + sa + ") + (" + sb + ")", 20), eval(sa, 20) + eval(sb, 20));
            EXPECT_EQ(eval("(" + sa + ") * (" + sb + ")", 20), eval(sa, 20) * eval(sb, 20));
        }
    }
}

TEST(Eval, LaurentIntermediates)
{
    EXPECT_EQ(eval("(q^3 + q^5) / q^2", 4), eval("q + q^3", 4));
    EXPECT_EQ(eval("1/(2*q) * (2*q + 4*q^2)", 4), eval("1 + 2*q", 4));
    EXPECT_THROW(eval("1/q", 4), EvalError);
}

TEST(Eval, SumAndSubstitution)
{
    EXPECT_EQ(eval("Sum(j, 1, 4, q^j)", 6), eval("q + q^2 + q^3 + q^4", 6));
    EXPECT_EQ(eval("SubstQ(1 + q, q^3)", 6), eval("1 + q^3", 6));
    EXPECT_EQ(eval("Shift(q^2 + q^3, -2)", 4), eval("1 + q", 4));
    EXPECT_EQ(eval("OddPart(1 + q + q^2 + q^3)", 4), eval("q + q^3", 4));
    EXPECT_EQ(eval("X(-q)", 10), eval("NegQ(X(q))", 10));
    EXPECT_EQ(eval("SubstQ(X(q), -q)", 10), eval("NegQ(X(q))", 10));
}

TEST(Eval, ErrorsCarryCallPath)
{
    try {
        eval("A(q, L(q, q), q, q)", 5);
        FAIL();
    } catch (const EvalError& e) {
        ASSERT_FALSE(e.path().empty());
        EXPECT_EQ(e.path().front(), "A");
    }
    EXPECT_THROW(eval("$y", 3), EvalError);
    EXPECT_THROW(eval("L(q, q; 1 + q)", 3), EvalError);
    EXPECT_THROW(eval("D($x, D($x, $x))", 3, {{"x", {1, 0}}}), EvalError);
}

TEST(Eval, ReferencedParams)
{
    const auto names = referenced_params(*parse("$x*L($y, q) + D($x, $z)"));
    EXPECT_EQ(names, (std::vector<std::string>{"x", "y", "z"}));
}
