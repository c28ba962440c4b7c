#include <algorithm>
#include <limits>
#include <optional>

#include "qlambert/expr.hpp"

namespace qlambert {

EvalError::EvalError(const std::string& message, std::vector<std::string> path)
    : std::runtime_error([&] {
          std::string where;
          for (const auto& p : path) {
              where += (where.empty() ? "" : " > ") + p;
          }
          return where.empty() ? message : "in " + where + ": " + message;
      }()),
      message_(message), path_(std::move(path))
{
}

EvalError EvalError::within(const std::string& frame) const
{
    std::vector<std::string> p{frame};
    p.insert(p.end(), path_.begin(), path_.end());
    return EvalError(message_, std::move(p));
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

/// q^off * sum co[i] q^i, known modulo q^prec (kInf: exact Laurent polynomial).
template <typename S>
struct LVal {
    std::int64_t off = 0;
    std::vector<S> co;
    std::int64_t prec = kInf;

    [[nodiscard]] bool exact() const { return prec == kInf; }
    [[nodiscard]] std::int64_t end() const { return off + static_cast<std::int64_t>(co.size()); }
};

template <typename S>
LVal<S> exact_monomial(S c, std::int64_t e)
{
    LVal<S> v;
    if (!is_zero(c)) {
        v.off = e;
        v.co.push_back(std::move(c));
    }
    return v;
}

template <typename S>
LVal<S> from_series(const QSeries<S>& s)
{
    LVal<S> v;
    v.co = s.coeffs();
    v.prec = static_cast<std::int64_t>(s.degree()) + 1;
    return v;
}

Rational to_rational(const Rational& r) { return r; }
Rational deriv_of(const Dual& d) { return d.deriv(); }

bool is_integer_scalar(const Rational& r) { return r.is_integer(); }
bool is_integer_scalar(const Dual& d) { return d.deriv().is_zero() && d.value().is_integer(); }

template <typename S>
class Evaluator {
public:
    Evaluator(std::int64_t cap, const Bindings& bindings, const BuildOptions& opts,
              std::optional<std::string> lifted, std::map<std::string, std::int64_t> indices)
        : cap_(cap), bindings_(bindings), opts_(opts), lifted_(std::move(lifted)),
          indices_(std::move(indices))
    {
    }

    LVal<S> eval(const Expr& e)
    {
        switch (e.kind) {
        case ExprKind::Rat:
            return exact_monomial(S(e.value), 0);
        case ExprKind::Q:
            return exact_monomial(S(1), 1);
        case ExprKind::Param:
            return eval_param(e.name);
        case ExprKind::Index: {
            auto it = indices_.find(e.name);
            if (it == indices_.end()) {
                throw EvalError("unbound index '" + e.name + "'");
            }
            return exact_monomial(S(it->second), 0);
        }
        case ExprKind::Add:
            return add(eval(*e.args[0]), eval(*e.args[1]), false);
        case ExprKind::Sub:
            return add(eval(*e.args[0]), eval(*e.args[1]), true);
        case ExprKind::Mul:
            return mul(eval(*e.args[0]), eval(*e.args[1]));
        case ExprKind::Div:
            return mul(eval(*e.args[0]), inverse(eval(*e.args[1])));
        case ExprKind::Neg: {
            auto v = eval(*e.args[0]);
            for (auto& c : v.co) {
                c = -c;
            }
            return v;
        }
        case ExprKind::Pow:
            return power(eval(*e.args[0]), to_int(eval(*e.args[1]), "exponent"));
        case ExprKind::Call:
            try {
                return eval_call(e);
            } catch (const EvalError& err) {
                throw err.within(e.name);
            } catch (const std::domain_error& err) {
                std::string_view msg = err.what();
                if (msg.starts_with(e.name + ": ")) {
                    msg.remove_prefix(e.name.size() + 2);
                }
                throw EvalError(std::string(msg), {e.name});
            } catch (const std::out_of_range& err) {
                throw EvalError(err.what(), {e.name});
            }
        }
        throw EvalError("unsupported node");
    }

    std::int64_t cap() const { return cap_; }

private:
    LVal<S> eval_param(const std::string& name)
    {
        auto it = bindings_.find(name);
        if (it == bindings_.end()) {
            throw EvalError("unbound parameter '$" + name + "'");
        }
        const auto& p = it->second;
        S c(p.c);
        if constexpr (std::is_same_v<S, Dual>) {
            if (lifted_ && *lifted_ == name) {
                c = Dual(p.c, Rational(1));
            }
        }
        return exact_monomial(std::move(c), static_cast<std::int64_t>(p.e));
    }

    // ---- Laurent arithmetic ---------------------------------------------

    /// Strips leading (and, when exact, trailing) zeros, then truncates to the cap.
    LVal<S> settle(LVal<S> v) const
    {
        std::size_t lead = 0;
        while (lead < v.co.size() && is_zero(v.co[lead])) {
            ++lead;
        }
        v.co.erase(v.co.begin(), v.co.begin() + static_cast<std::ptrdiff_t>(lead));
        v.off += static_cast<std::int64_t>(lead);
        if (v.exact()) {
            while (!v.co.empty() && is_zero(v.co.back())) {
                v.co.pop_back();
            }
            if (v.co.empty()) {
                v.off = 0;
            } else if (v.end() > cap_) {
                truncate(v, cap_);
            }
        } else if (v.co.empty()) {
            v.off = v.prec;
        } else if (v.prec > cap_) {
            truncate(v, cap_);
        }
        return v;
    }

    static void truncate(LVal<S>& v, std::int64_t prec)
    {
        v.co.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, prec - v.off)));
        v.prec = prec;
        if (v.co.empty()) {
            v.off = prec;
        }
    }

    LVal<S> add(LVal<S> a, const LVal<S>& b, bool subtract) const
    {
        const std::int64_t prec = std::min(a.prec, b.prec);
        const std::int64_t lo = std::min(a.co.empty() ? b.off : a.off, b.co.empty() ? a.off : b.off);
        std::int64_t hi = std::max(a.end(), b.end());
        if (prec != kInf) {
            hi = prec;
        }
        LVal<S> r;
        r.off = std::min(lo, hi);
        r.prec = prec;
        r.co.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - r.off)));
        auto accumulate = [&](const LVal<S>& v, bool negate) {
            for (std::size_t i = 0; i < v.co.size(); ++i) {
                const std::int64_t k = v.off + static_cast<std::int64_t>(i) - r.off;
                if (k < 0 || k >= static_cast<std::int64_t>(r.co.size())) {
                    continue;
                }
                if (negate) {
                    r.co[static_cast<std::size_t>(k)] -= v.co[i];
                } else {
                    r.co[static_cast<std::size_t>(k)] += v.co[i];
                }
            }
        };
        accumulate(a, false);
        accumulate(b, subtract);
        return settle(std::move(r));
    }

    /// Leading exponent; for an unknown-zero value this is its precision.
    static std::int64_t lead(const LVal<S>& v) { return v.co.empty() ? v.prec : v.off; }
    static std::int64_t rel_prec(const LVal<S>& v) { return v.exact() ? kInf : v.prec - lead(v); }

    LVal<S> mul(const LVal<S>& a, const LVal<S>& b) const
    {
        if ((a.exact() && a.co.empty()) || (b.exact() && b.co.empty())) {
            return {};
        }
        LVal<S> r;
        r.off = lead(a) + lead(b);
        std::size_t n = a.co.size() + b.co.size();
        if (!a.exact() || !b.exact()) {
            const std::int64_t rel = std::min(rel_prec(a), rel_prec(b));
            r.prec = std::min(r.off + rel, std::max(cap_, r.off));
            n = static_cast<std::size_t>(r.prec - r.off);
        }
        r.co.resize(n);
        for (std::size_t i = 0; i < a.co.size() && i < n; ++i) {
            if (is_zero(a.co[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.co.size() && i + j < n; ++j) {
                if (!is_zero(b.co[j])) {
                    r.co[i + j] += a.co[i] * b.co[j];
                }
            }
        }
        return settle(std::move(r));
    }

    LVal<S> inverse(const LVal<S>& b) const
    {
        if (b.co.empty()) {
            throw EvalError(b.exact() ? "division by zero"
                                      : "division by a series with no known nonzero coefficient");
        }
        if (!is_invertible(b.co[0])) {
            throw EvalError("division by a series whose leading coefficient is not invertible");
        }
        if (b.exact() && b.co.size() == 1) {
            return exact_monomial(b.co[0].inverse(), -b.off);
        }
        const std::int64_t n = b.exact() ? std::max<std::int64_t>(1, cap_ + b.off)
                                         : static_cast<std::int64_t>(b.co.size());
        std::vector<S> unit(b.co.begin(),
                            b.co.begin() + std::min<std::ptrdiff_t>(n, std::ssize(b.co)));
        const auto recip = QSeries<S>(static_cast<std::size_t>(n - 1), std::move(unit)).unit_reciprocal();
        LVal<S> r;
        r.off = -b.off;
        r.co = recip.coeffs();
        r.prec = r.off + n;
        return settle(std::move(r));
    }

    LVal<S> power(const LVal<S>& a, std::int64_t k) const
    {
        if (k < 0) {
            return power(inverse(a), -k);
        }
        LVal<S> result = exact_monomial(S(1), 0);
        LVal<S> base = a;
        while (k > 0) {
            if (k & 1) {
                result = mul(result, base);
            }
            k >>= 1;
            if (k > 0) {
                base = mul(base, base);
            }
        }
        return result;
    }

    // ---- scalar and parameter extraction --------------------------------

    std::int64_t to_int(const LVal<S>& v, const std::string& what) const
    {
        if (!v.exact()) {
            throw EvalError(what + " must be an exact integer");
        }
        if (v.co.empty()) {
            return 0;
        }
        if (v.co.size() != 1 || v.off != 0 || !is_integer_scalar(v.co[0])) {
            throw EvalError(what + " must be an integer constant");
        }
        return value_part(v.co[0]).to_int64();
    }

    Param<S> to_param(const LVal<S>& v, const std::string& what) const
    {
        if (!v.exact() || v.co.size() > 1) {
            throw EvalError(what + " must be a monomial c*q^e");
        }
        if (v.co.empty()) {
            return Param<S>{S(0), 0};
        }
        if (v.off < 0) {
            throw EvalError(what + " has a negative power of q (q^" + std::to_string(v.off) + ")");
        }
        return Param<S>{v.co[0], static_cast<std::size_t>(v.off)};
    }

    Param<S> arg_param(const Expr& call, std::size_t i, const std::string& what)
    {
        return to_param(eval(*call.args[i]), what);
    }

    std::int64_t arg_int(const Expr& call, std::size_t i, const std::string& what)
    {
        return to_int(eval(*call.args[i]), what);
    }

    Base base_of(const Expr& call)
    {
        if (!call.base) {
            return Base{1};
        }
        const auto p = to_param(eval(*call.base), "base");
        if (p.e < 1 || !is_zero(p.c - S(1))) {
            throw EvalError("base must be q^b with b >= 1");
        }
        return Base{p.e};
    }

    void arity(const Expr& call, std::size_t lo, std::size_t hi = 0) const
    {
        const std::size_t n = call.args.size();
        if (hi == 0) {
            hi = lo;
        }
        if (n < lo || n > hi) {
            throw EvalError(call.name + " expects "
                            + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi))
                            + " arguments, got " + std::to_string(n));
        }
    }

    void no_base(const Expr& call) const
    {
        if (call.base) {
            throw EvalError(call.name + " takes no base argument");
        }
    }

    /// Coefficients (constant first) of a polynomial in the index `n`.
    std::vector<Rational> poly(const Expr& e)
    {
        using V = std::vector<Rational>;
        auto trim = [](V v) {
            while (v.size() > 1 && v.back().is_zero()) {
                v.pop_back();
            }
            return v;
        };
        switch (e.kind) {
        case ExprKind::Rat:
            return {e.value};
        case ExprKind::Index:
            if (e.name == "n") {
                return {Rational(0), Rational(1)};
            }
            [[fallthrough]];
        case ExprKind::Param: {
            const auto v = eval(e);
            const std::int64_t k = v.co.empty() ? 0 : v.off;
            if (!v.exact() || v.co.size() > 1 || k != 0) {
                throw EvalError("weight must be a polynomial in n with constant coefficients");
            }
            if constexpr (std::is_same_v<S, Dual>) {
                if (!v.co.empty() && !v.co[0].deriv().is_zero()) {
                    throw EvalError("weight cannot depend on the differentiated parameter");
                }
            }
            return {v.co.empty() ? Rational(0) : value_part(v.co[0])};
        }
        case ExprKind::Add:
        case ExprKind::Sub: {
            V a = poly(*e.args[0]);
            V b = poly(*e.args[1]);
            a.resize(std::max(a.size(), b.size()));
            for (std::size_t i = 0; i < b.size(); ++i) {
                a[i] = e.kind == ExprKind::Add ? a[i] + b[i] : a[i] - b[i];
            }
            return trim(a);
        }
        case ExprKind::Neg: {
            V a = poly(*e.args[0]);
            for (auto& c : a) {
                c = -c;
            }
            return a;
        }
        case ExprKind::Mul: {
            const V a = poly(*e.args[0]);
            const V b = poly(*e.args[1]);
            V r(a.size() + b.size() - 1);
            for (std::size_t i = 0; i < a.size(); ++i) {
                for (std::size_t j = 0; j < b.size(); ++j) {
                    r[i + j] += a[i] * b[j];
                }
            }
            return trim(r);
        }
        case ExprKind::Pow: {
            const V a = poly(*e.args[0]);
            const V k = poly(*e.args[1]);
            if (k.size() != 1 || !k[0].is_integer() || k[0].sign() < 0) {
                throw EvalError("weight exponent must be a nonnegative integer");
            }
            V r{Rational(1)};
            for (std::int64_t i = 0; i < k[0].to_int64(); ++i) {
                V t(r.size() + a.size() - 1);
                for (std::size_t x = 0; x < r.size(); ++x) {
                    for (std::size_t y = 0; y < a.size(); ++y) {
                        t[x + y] += r[x] * a[y];
                    }
                }
                r = trim(t);
            }
            return r;
        }
        default:
            throw EvalError("weight must be a polynomial in n");
        }
    }

    std::size_t work_degree() const { return static_cast<std::size_t>(std::max<std::int64_t>(cap_ - 1, 0)); }

    std::vector<Param<S>> params_from(const Expr& call, std::size_t first)
    {
        std::vector<Param<S>> ps;
        for (std::size_t i = first; i < call.args.size(); ++i) {
            ps.push_back(arg_param(call, i, "argument " + std::to_string(i + 1)));
        }
        return ps;
    }

    /// f(q) -> f(c q^e) for a power series f truncated at its own degree.
    LVal<S> substitute(LVal<S> v, const Param<S>& m) const
    {
        if (m.e < 1) {
            throw EvalError("substitution q -> c*q^e needs e >= 1");
        }
        const auto e = static_cast<std::int64_t>(m.e);
        LVal<S> r;
        r.off = v.off * e;
        r.prec = v.exact() ? kInf : v.prec * e;
        const std::int64_t span = v.co.empty() ? 0 : (static_cast<std::int64_t>(v.co.size()) - 1) * e + 1;
        r.co.resize(static_cast<std::size_t>(v.exact() ? span : std::max<std::int64_t>(0, r.prec - r.off)));
        if (v.co.empty()) {
            return settle(std::move(r));
        }
        S cpow = m.c.pow(v.off);
        for (std::size_t i = 0; i < v.co.size(); ++i) {
            r.co[i * m.e] = v.co[i] * cpow;
            cpow *= m.c;
        }
        return settle(std::move(r));
    }

    LVal<S> special(Special which, const Param<S>& arg) const
    {
        if (arg.e < 1) {
            throw EvalError("the argument must carry a positive power of q");
        }
        const std::size_t d = work_degree() / arg.e;
        return substitute(from_series(build_special<S>(which, d)), arg);
    }

    LVal<S> eval_call(const Expr& c)
    {
        const std::string& n = c.name;
        const std::size_t W = work_degree();

        if (auto sp = special_from_name(n)) {
            arity(c, 1);
            no_base(c);
            return special(*sp, arg_param(c, 0, "argument"));
        }
        if (n == "L") {
            if (c.args.empty()) {
                arity(c, 1, 64);
            }
            const auto x = arg_param(c, 0, "x");
            const auto ys = params_from(c, 1);
            return from_series(build_L<S>(x, ys, base_of(c), W, opts_));
        }
        if (n == "Lstar") {
            arity(c, 2);
            return from_series(build_Lstar<S>(arg_param(c, 0, "x"), arg_param(c, 1, "y"), base_of(c), W, opts_));
        }
        if (n == "A") {
            arity(c, 4);
            return from_series(build_A<S>(arg_param(c, 0, "x"), arg_param(c, 1, "y"), arg_param(c, 2, "z"),
                                          arg_param(c, 3, "w"), base_of(c), W, opts_));
        }
        if (n == "Poch") {
            arity(c, 1);
            return from_series(build_poch<S>(arg_param(c, 0, "a"), base_of(c), std::nullopt, W));
        }
        if (n == "PochN") {
            arity(c, 2);
            const auto len = arg_int(c, 1, "length");
            if (len < 0) {
                throw EvalError("PochN length must be >= 0");
            }
            return from_series(build_poch<S>(arg_param(c, 0, "a"), base_of(c),
                                              static_cast<std::size_t>(len), W));
        }
        if (n == "Bilin") {
            arity(c, 13);
            no_base(c);
            BilinearSpec<S> s;
            s.sign = static_cast<int>(arg_int(c, 0, "sign"));
            s.alpha = arg_int(c, 1, "alpha");
            s.beta = arg_int(c, 2, "beta");
            s.gamma = arg_int(c, 3, "gamma");
            s.delta = arg_int(c, 4, "delta");
            s.x = arg_param(c, 5, "x");
            s.z = arg_param(c, 6, "z");
            s.n_factor = {arg_param(c, 7, "u"), arg_int(c, 8, "a"), arg_int(c, 9, "a0")};
            s.m_factor = {arg_param(c, 10, "v"), arg_int(c, 11, "b"), arg_int(c, 12, "b0")};
            return from_series(build_bilinear(s, W));
        }
        if (n == "OrdDouble") {
            arity(c, 3);
            no_base(c);
            OrderedDoubleSpec s{Weight{poly(*c.args[0]), 1}, arg_int(c, 1, "u"), arg_int(c, 2, "v")};
            return from_series(build_ordered_double<S>(s, W));
        }
        if (n == "WL") {
            arity(c, 3, 64);
            const Weight w{poly(*c.args[0]), arg_int(c, 1, "n0")};
            const auto x = arg_param(c, 2, "x");
            const auto ys = params_from(c, 3);
            return from_series(build_weighted_L<S>(w, x, ys, base_of(c), W, opts_));
        }
        if (n == "SigmaGF") {
            arity(c, 2);
            no_base(c);
            const auto k = arg_int(c, 0, "k");
            const auto stride = arg_int(c, 1, "stride");
            if (k < 0 || stride < 1) {
                throw EvalError("SigmaGF needs k >= 0 and stride >= 1");
            }
            return from_series(build_sigma_gf<S>(static_cast<unsigned>(k), static_cast<std::size_t>(stride), W));
        }
        if (n == "EvenPart" || n == "OddPart" || n == "NegQ") {
            arity(c, 1);
            no_base(c);
            auto v = eval(*c.args[0]);
            for (std::size_t i = 0; i < v.co.size(); ++i) {
                const bool odd = ((v.off + static_cast<std::int64_t>(i)) % 2) != 0;
                if ((n == "EvenPart" && odd) || (n == "OddPart" && !odd)) {
                    v.co[i] = S(0);
                } else if (n == "NegQ" && odd) {
                    v.co[i] = -v.co[i];
                }
            }
            return settle(std::move(v));
        }
        if (n == "Shift") {
            arity(c, 2);
            no_base(c);
            auto v = eval(*c.args[0]);
            const auto s = arg_int(c, 1, "shift");
            if (!v.co.empty() && v.off + s < 0) {
                throw EvalError("shift by " + std::to_string(s) + " below the valuation "
                                + std::to_string(v.off));
            }
            v.off += s;
            if (!v.exact()) {
                v.prec += s;
            }
            return settle(std::move(v));
        }
        if (n == "SubstQ") {
            arity(c, 2);
            no_base(c);
            return substitute(eval(*c.args[0]), arg_param(c, 1, "substitution"));
        }
        if (n == "Sum") {
            arity(c, 4);
            no_base(c);
            if (c.args[0]->kind != ExprKind::Index) {
                throw EvalError("Sum needs an index name as its first argument");
            }
            const std::string& idx = c.args[0]->name;
            const auto lo = arg_int(c, 1, "lower bound");
            const auto hi = arg_int(c, 2, "upper bound");
            const auto saved = indices_.find(idx) != indices_.end()
                                   ? std::optional<std::int64_t>(indices_[idx])
                                   : std::nullopt;
            LVal<S> acc;
            for (std::int64_t j = lo; j <= hi; ++j) {
                indices_[idx] = j;
                acc = add(std::move(acc), eval(*c.args[3]), false);
            }
            if (saved) {
                indices_[idx] = *saved;
            } else {
                indices_.erase(idx);
            }
            return acc;
        }
        if (n == "D") {
            arity(c, 2);
            no_base(c);
            return derivative(c);
        }
        throw EvalError("unknown builder '" + n + "'");
    }

    LVal<S> derivative(const Expr& c);

    std::int64_t cap_;
    const Bindings& bindings_;
    const BuildOptions& opts_;
    std::optional<std::string> lifted_;
    std::map<std::string, std::int64_t> indices_;
};

template <>
LVal<Dual> Evaluator<Dual>::derivative(const Expr&)
{
    throw EvalError("at most one D(...) is allowed per expression");
}

template <>
LVal<Rational> Evaluator<Rational>::derivative(const Expr& c)
{
    if (c.args[0]->kind != ExprKind::Param) {
        throw EvalError("D needs a $parameter as its first argument");
    }
    const std::string& name = c.args[0]->name;
    if (bindings_.find(name) == bindings_.end()) {
        throw EvalError("unbound parameter '$" + name + "'");
    }
    Evaluator<Dual> inner(cap_, bindings_, opts_, name, indices_);
    const auto v = inner.eval(*c.args[1]);
    LVal<Rational> r;
    r.off = v.off;
    r.prec = v.prec;
    r.co.reserve(v.co.size());
    for (const auto& d : v.co) {
        r.co.push_back(deriv_of(d));
    }
    return settle(std::move(r));
}

} // namespace

Series evaluate(const Expr& e, std::size_t degree, const Bindings& bindings, const BuildOptions& opts)
{
    const auto need = static_cast<std::int64_t>(degree) + 1;
    std::int64_t slack = 4;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Evaluator<Rational> ev(need + slack, bindings, opts, std::nullopt, {});
        const auto v = ev.eval(e);
        if (!v.exact() && v.prec < need) {
            slack = 2 * slack + (need - v.prec);
            continue;
        }
        if (!v.co.empty() && v.off < 0) {
            throw EvalError("result has a nonzero coefficient at q^" + std::to_string(v.off));
        }
        Series out(degree);
        for (std::size_t i = 0; i < v.co.size(); ++i) {
            const std::int64_t k = v.off + static_cast<std::int64_t>(i);
            if (k >= 0 && k <= static_cast<std::int64_t>(degree)) {
                out[static_cast<std::size_t>(k)] = to_rational(v.co[i]);
            }
        }
        return out;
    }
    throw EvalError("could not reach precision q^" + std::to_string(degree));
}

} // namespace qlambert
