#include "qlambert/expr.hpp"

#include <algorithm>
#include <set>

namespace qlambert {

bool equal(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind || a.value != b.value || a.name != b.name
        || a.args.size() != b.args.size() || !equal(a.base, b.base)) {
        return false;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!equal(a.args[i], b.args[i])) {
            return false;
        }
    }
    return true;
}

namespace ex {
namespace {
ExprPtr node(ExprKind k, std::vector<ExprPtr> args = {})
{
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = std::move(args);
    return e;
}
} // namespace

ExprPtr rat(const Rational& v)
{
    if (v.sign() < 0) {
        return neg(rat(-v));
    }
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Rat;
    e->value = v;
    return e;
}

ExprPtr q()
{
    return node(ExprKind::Q);
}

ExprPtr param(std::string name)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Param;
    e->name = std::move(name);
    return e;
}

ExprPtr index(std::string name)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Index;
    e->name = std::move(name);
    return e;
}

ExprPtr call(std::string name, std::vector<ExprPtr> args, ExprPtr base)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Call;
    e->name = std::move(name);
    e->args = std::move(args);
    e->base = std::move(base);
    return e;
}

ExprPtr add(ExprPtr a, ExprPtr b) { return node(ExprKind::Add, {std::move(a), std::move(b)}); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return node(ExprKind::Sub, {std::move(a), std::move(b)}); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return node(ExprKind::Mul, {std::move(a), std::move(b)}); }
ExprPtr div(ExprPtr a, ExprPtr b) { return node(ExprKind::Div, {std::move(a), std::move(b)}); }
ExprPtr neg(ExprPtr a) { return node(ExprKind::Neg, {std::move(a)}); }
ExprPtr pow(ExprPtr a, ExprPtr b) { return node(ExprKind::Pow, {std::move(a), std::move(b)}); }
} // namespace ex

const std::vector<std::string_view>& known_calls()
{
    static const std::vector<std::string_view> names = {
        "L",  "Lstar", "A",  "Poch", "PochN", "Bilin",   "OrdDouble", "WL",      "Y",
        "X",  "G",     "H",  "f1",   "f3",    "SigmaGF", "EvenPart",  "OddPart", "NegQ",
        "Shift", "SubstQ", "Sum", "D"};
    return names;
}

bool is_known_call(std::string_view name)
{
    const auto& n = known_calls();
    return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {
void collect(const Expr& e, std::set<std::string>& out)
{
    if (e.kind == ExprKind::Param) {
        out.insert(e.name);
    }
    for (const auto& a : e.args) {
        collect(*a, out);
    }
    if (e.base) {
        collect(*e.base, out);
    }
}
} // namespace

std::vector<std::string> referenced_params(const Expr& e)
{
    std::set<std::string> names;
    collect(e, names);
    return {names.begin(), names.end()};
}

} // namespace qlambert
