#include "qlambert/builders.hpp"

#include <algorithm>

#include "qlambert/numbertheory.hpp"

namespace qlambert {

Rational Weight::at(std::int64_t n) const
{
    Rational acc;
    const Rational rn(n);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * rn + *it;
    }
    return acc;
}

bool Weight::is_constant() const
{
    return std::all_of(coeffs.begin() + std::min<std::ptrdiff_t>(1, std::ssize(coeffs)),
                       coeffs.end(), [](const Rational& c) { return c.is_zero(); });
}

std::optional<Special> special_from_name(std::string_view name)
{
    if (name == "Y") return Special::Y;
    if (name == "X") return Special::X;
    if (name == "G") return Special::G;
    if (name == "H") return Special::H;
    if (name == "f1") return Special::f1;
    if (name == "f3") return Special::f3;
    return std::nullopt;
}

std::string_view special_name(Special s)
{
    switch (s) {
    case Special::Y: return "Y";
    case Special::X: return "X";
    case Special::G: return "G";
    case Special::H: return "H";
    case Special::f1: return "f1";
    case Special::f3: return "f3";
    }
    return "?";
}

namespace {

void require_base(Base base, std::string_view who)
{
    if (base.b == 0) {
        throw BuilderError(std::string(who) + ": base exponent must be >= 1");
    }
}

template <typename S>
void require_region(const Param<S>& p, std::string_view who, std::string_view name,
                    const BuildOptions& opts)
{
    if (opts.enforce_analytic_region && p.e == 0 && value_part(p.c).abs() >= Rational(1)) {
        throw BuilderError(std::string(who) + ": parameter " + std::string(name)
                           + " outside |c| < 1 (c = " + value_part(p.c).str() + ")");
    }
}

/// term *= 1/(1 - c q^s), rejecting a vanishing constant denominator.
template <typename S>
void divide_factor(QSeries<S>& term, const S& c, std::int64_t s, std::string_view who,
                   std::string_view name)
{
    if (s < 0) {
        throw BuilderError(std::string(who) + ": denominator exponent for " + std::string(name)
                           + " is negative (" + std::to_string(s) + ")");
    }
    if (is_zero(c) || static_cast<std::size_t>(s) > term.degree()) {
        return;
    }
    if (s == 0 && !is_invertible(S(1) - c)) {
        throw BuilderError(std::string(who) + ": parameter " + std::string(name)
                           + " = 1 makes the denominator 1 - " + std::string(name) + " vanish");
    }
    term.divide_by_one_minus(c, static_cast<std::size_t>(s));
}

std::string y_name(std::size_t i)
{
    return "y" + std::to_string(i + 1);
}

/// c^n q^{e n} / prod_i (1 - y_i q^{e_i + b n}), with the power c^n given.
template <typename S>
QSeries<S> lambert_term(const S& xn, const Param<S>& x, std::span<const Param<S>> ys,
                        std::size_t b, std::size_t n, std::size_t degree, std::string_view who)
{
    auto term = QSeries<S>::monomial(xn, x.e * n, degree);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        divide_factor(term, ys[i].c, static_cast<std::int64_t>(ys[i].e + b * n), who, y_name(i));
    }
    return term;
}

template <typename S>
std::vector<S> powers(const S& c, std::size_t top)
{
    std::vector<S> p;
    p.reserve(top + 1);
    p.emplace_back(1);
    for (std::size_t k = 1; k <= top; ++k) {
        p.push_back(p.back() * c);
    }
    return p;
}

/// First index k whose factor 1 - c q^{e + b k} is congruent to 1 mod q^{D+1}.
template <typename S>
std::size_t trivial_from(const Param<S>& p, std::size_t b, std::size_t degree)
{
    if (is_zero(p.c) || p.e > degree) {
        return 0;
    }
    return (degree - p.e) / b + 1;
}

} // namespace

template <typename S>
QSeries<S> build_L(const Param<S>& x, std::span<const Param<S>> ys, Base base, std::size_t degree,
                   const BuildOptions& opts)
{
    require_base(base, "L");
    require_region(x, "L", "x", opts);
    const std::size_t b = base.b;
    QSeries<S> sum(degree);

    std::size_t n_last = 0;
    if (!is_zero(x.c)) {
        if (x.e >= 1) {
            n_last = degree / x.e;
        } else {
            for (const auto& y : ys) {
                const std::size_t t = trivial_from(y, b, degree);
                if (t > 0) {
                    n_last = std::max(n_last, t - 1);
                }
            }
        }
    }

    S xn(1);
    for (std::size_t n = 0; n <= n_last; ++n) {
        if (n > 0) {
            xn *= x.c;
        }
        sum += lambert_term(xn, x, ys, b, n, degree, "L");
    }

    if (x.e == 0 && !is_zero(x.c)) {
        // Past n_last every factor is 1, leaving sum_{n > n_last} x^n.
        const S one_minus = S(1) - x.c;
        if (!is_invertible(one_minus)) {
            throw BuilderError("L: parameter x = 1 makes the geometric tail diverge");
        }
        sum[0] += xn * x.c / one_minus;
    }
    return sum;
}

template <typename S>
QSeries<S> build_weighted_L(const Weight& w, const Param<S>& x, std::span<const Param<S>> ys,
                            Base base, std::size_t degree, const BuildOptions& opts)
{
    require_base(base, "WL");
    const std::size_t b = base.b;
    const auto n0 = static_cast<std::size_t>(std::max<std::int64_t>(w.n0, 0));

    if (x.e == 0) {
        if (!w.is_constant()) {
            throw BuilderError("WL: a non-constant weight needs x with exponent >= 1");
        }
        auto head = build_L(x, ys, base, degree, opts);
        S xn(1);
        for (std::size_t n = 0; n < n0; ++n) {
            head -= lambert_term(xn, x, ys, b, n, degree, "WL");
            xn *= x.c;
        }
        return head * S(w.at(0));
    }

    QSeries<S> sum(degree);
    S xn = x.c.pow(static_cast<std::int64_t>(n0));
    for (std::size_t n = n0; x.e * n <= degree; ++n) {
        if (n > n0) {
            xn *= x.c;
        }
        const Rational wn = w.at(static_cast<std::int64_t>(n));
        if (wn.is_zero()) {
            continue;
        }
        sum += lambert_term(S(wn) * xn, x, ys, b, n, degree, "WL");
    }
    return sum;
}

template <typename S>
QSeries<S> build_Lstar(const Param<S>& x, const Param<S>& y, Base base, std::size_t degree,
                       const BuildOptions& opts)
{
    require_base(base, "Lstar");
    if (x.e != 0) {
        throw BuilderError("Lstar: parameter x must have exponent 0 (the bilateral sum needs |q| < |x|)");
    }
    if (!is_invertible(x.c)) {
        throw BuilderError("Lstar: parameter x must be nonzero");
    }
    if (!is_invertible(y.c)) {
        throw BuilderError("Lstar: parameter y must be nonzero");
    }
    require_region(x, "Lstar", "x", opts);
    const std::size_t b = base.b;

    const Param<S> ys[] = {y};
    QSeries<S> sum = build_L(x, std::span<const Param<S>>(ys), base, degree, opts);

    const S x_inv = x.c.inverse();
    const S y_inv = y.c.inverse();
    S x_neg(1);
    for (std::size_t m = 1; b * m <= degree + y.e; ++m) {
        x_neg *= x_inv;
        const std::size_t s = b * m;
        if (s > y.e) {
            // 1/(1 - y q^{-(s - e)}) = -sum_{j>=1} y^{-j} q^{j(s - e)}
            const std::size_t step = s - y.e;
            S yj(1);
            for (std::size_t k = step; k <= degree; k += step) {
                yj *= y_inv;
                sum[k] -= x_neg * yj;
            }
        } else if (s == y.e) {
            const S one_minus = S(1) - y.c;
            if (!is_invertible(one_minus)) {
                throw BuilderError("Lstar: parameter y makes 1 - y q^{bn} vanish at n = -"
                                   + std::to_string(m));
            }
            sum[0] += x_neg / one_minus;
        } else {
            const std::size_t step = y.e - s;
            S yj(1);
            for (std::size_t k = 0; k <= degree; k += step) {
                sum[k] += x_neg * yj;
                yj *= y.c;
            }
        }
    }
    return sum;
}

template <typename S>
QSeries<S> build_A(const Param<S>& x, const Param<S>& y, const Param<S>& z, const Param<S>& w,
                   Base base, std::size_t degree, const BuildOptions& opts)
{
    require_base(base, "A");
    require_region(y, "A", "y", opts);
    if (opts.enforce_analytic_region && x.e == 0 && y.e == 0) {
        require_region(Param<S>{x.c * y.c, 0}, "A", "x*y", opts);
    }
    const std::size_t b = base.b;

    const std::size_t m_trivial = trivial_from(z, b, degree);
    const std::size_t n_trivial = trivial_from(w, b, degree);

    // Outer indices 0 .. n_count-1 are enumerated; the rest is either zero
    // (some positive exponent) or a closed geometric tail (x.e = y.e = 0).
    std::size_t n_count = 0;
    if (is_zero(y.c)) {
        n_count = 1;
    } else if (x.e + y.e >= 1) {
        n_count = degree / (x.e + y.e) + 1;
    } else {
        n_count = std::max(m_trivial, n_trivial);
    }

    auto z_term = [&](std::size_t m, const S& ym) {
        auto t = QSeries<S>::monomial(ym, y.e * m, degree);
        divide_factor(t, z.c, static_cast<std::int64_t>(z.e + b * m), "A", "z");
        return t;
    };

    // inner[n] = sum_{m >= n} y^m / (1 - z q^{bm})
    std::vector<QSeries<S>> inner(n_count, QSeries<S>(degree));
    if (is_zero(y.c)) {
        inner[0] = z_term(0, S(1));
    } else if (y.e >= 1) {
        const std::size_t m_top = degree / y.e;
        const auto yp = powers(y.c, m_top);
        QSeries<S> acc(degree);
        for (std::size_t m = m_top + 1; m-- > 0;) {
            acc += z_term(m, yp[m]);
            if (m < n_count) {
                inner[m] = acc;
            }
        }
    } else {
        const S one_minus_y = S(1) - y.c;
        if (!is_invertible(one_minus_y)) {
            throw BuilderError("A: parameter y = 1 makes the inner geometric tail diverge");
        }
        const std::size_t top = std::max(m_trivial, n_count);
        const auto yp = powers(y.c, top);
        // From m_trivial on the z-factor is 1 and the tail is y^m / (1 - y).
        auto acc = QSeries<S>::constant(yp[top] / one_minus_y, degree);
        for (std::size_t m = top; m-- > 0;) {
            if (m >= m_trivial) {
                acc = QSeries<S>::constant(yp[m] / one_minus_y, degree);
            } else {
                acc += z_term(m, yp[m]);
            }
            if (m < n_count) {
                inner[m] = acc;
            }
        }
    }

    QSeries<S> sum(degree);
    S xn(1);
    for (std::size_t n = 0; n < n_count; ++n) {
        if (n > 0) {
            xn *= x.c;
        }
        if (x.e * n > degree) {
            break;
        }
        auto term = inner[n].shift(static_cast<std::int64_t>(x.e * n)) * xn;
        divide_factor(term, w.c, static_cast<std::int64_t>(w.e + b * n), "A", "w");
        sum += term;
    }

    if (!is_zero(y.c) && x.e + y.e == 0) {
        // sum_{n >= K} (xy)^n / (1 - y) = (xy)^K / ((1 - y)(1 - xy))
        const S xy = x.c * y.c;
        if (!is_zero(xy) || n_count == 0) {
            const S one_minus_xy = S(1) - xy;
            if (!is_invertible(one_minus_xy)) {
                throw BuilderError("A: parameters with x*y = 1 make the outer tail diverge");
            }
            sum[0] += xy.pow(static_cast<std::int64_t>(n_count)) / ((S(1) - y.c) * one_minus_xy);
        }
    }
    return sum;
}

template <typename S>
QSeries<S> build_bilinear(const BilinearSpec<S>& spec, std::size_t degree)
{
    if (spec.alpha < 1) {
        throw BuilderError("Bilin: alpha must be >= 1 (use OrdDouble for alpha = 0)");
    }
    if (spec.sign != 1 && spec.sign != -1) {
        throw BuilderError("Bilin: sign must be +1 or -1");
    }
    const std::int64_t m_lin = spec.beta + static_cast<std::int64_t>(spec.z.e);
    const std::int64_t n_lin = spec.gamma + static_cast<std::int64_t>(spec.x.e);
    if (m_lin < 0 || n_lin < 0) {
        throw BuilderError("Bilin: exponents must be nondecreasing in m and n");
    }
    auto exponent = [&](std::int64_t m, std::int64_t n) {
        return spec.alpha * m * n + m_lin * m + n_lin * n + spec.delta;
    };
    if (exponent(1, 1) < 0) {
        throw BuilderError("Bilin: the (1,1) term has a negative power of q");
    }
    for (const auto* f : {&spec.n_factor, &spec.m_factor}) {
        if (f->slope < 0 || static_cast<std::int64_t>(f->p.e) + f->slope + f->offset < 0) {
            throw BuilderError("Bilin: denominator exponents must be >= 0 and nondecreasing");
        }
    }

    const auto d = static_cast<std::int64_t>(degree);
    QSeries<S> sum(degree);
    S zm(1);
    for (std::int64_t m = 1; exponent(m, 1) <= d; ++m) {
        zm *= spec.z.c;
        if (spec.sign < 0) {
            zm = -zm;
        }
        const std::int64_t m_exp = static_cast<std::int64_t>(spec.m_factor.p.e)
                                   + spec.m_factor.slope * m + spec.m_factor.offset;
        S xn(1);
        for (std::int64_t n = 1; exponent(m, n) <= d; ++n) {
            xn *= spec.x.c;
            const std::int64_t n_exp = static_cast<std::int64_t>(spec.n_factor.p.e)
                                       + spec.n_factor.slope * n + spec.n_factor.offset;
            auto term = QSeries<S>::monomial(zm * xn, static_cast<std::size_t>(exponent(m, n)),
                                             degree);
            divide_factor(term, spec.n_factor.p.c, n_exp, "Bilin", "u");
            divide_factor(term, spec.m_factor.p.c, m_exp, "Bilin", "v");
            sum += term;
        }
    }
    return sum;
}

template <typename S>
QSeries<S> build_ordered_double(const OrderedDoubleSpec& spec, std::size_t degree)
{
    if (spec.u < 1 || spec.v < 1) {
        throw BuilderError("OrdDouble: numerator exponents u, v must be >= 1");
    }
    const auto d = static_cast<std::int64_t>(degree);
    QSeries<S> sum(degree);
    for (std::int64_t n = std::max<std::int64_t>(1, spec.weight.n0); spec.u * n + spec.v * (n + 1) <= d;
         ++n) {
        const Rational wn = spec.weight.at(n);
        if (wn.is_zero()) {
            continue;
        }
        for (std::int64_t m = n + 1; spec.u * n + spec.v * m <= d; ++m) {
            auto term = QSeries<S>::monomial(S(wn), static_cast<std::size_t>(spec.u * n + spec.v * m),
                                             degree);
            term.divide_by_one_minus(S(1), static_cast<std::size_t>(n));
            term.divide_by_one_minus(S(1), static_cast<std::size_t>(m));
            sum += term;
        }
    }
    return sum;
}

template <typename S>
QSeries<S> build_poch(const Param<S>& a, Base base, std::optional<std::size_t> n,
                      std::size_t degree)
{
    require_base(base, "Poch");
    auto r = QSeries<S>::constant(S(1), degree);
    if (is_zero(a.c)) {
        return r;
    }
    for (std::size_t k = 0; !n || k < *n; ++k) {
        const std::size_t s = a.e + base.b * k;
        if (s > degree) {
            break;
        }
        r.multiply_by_one_minus(a.c, s);
    }
    return r;
}

template <typename S>
QSeries<S> build_special(Special which, std::size_t degree)
{
    const S one(1);
    switch (which) {
    case Special::Y: {
        BilinearSpec<S> spec;
        spec.sign = -1;
        spec.alpha = 2;
        spec.beta = 1;
        spec.n_factor = {param(-one), 1, 0};
        spec.m_factor = {param(one), 2, -1};
        return build_bilinear(spec, degree);
    }
    case Special::X: {
        // sum_{n>=1} n q^n / (1 + q^{2n+1}), then divided by q.
        const Param<S> ys[] = {param(-one, 1)};
        return build_weighted_L(Weight{{Rational(0), Rational(1)}, 1}, param(one, 1),
                                std::span<const Param<S>>(ys), Base{2}, degree + 1)
            .shift(-1);
    }
    case Special::G: {
        const Param<S> ys[] = {param(one, 1)};
        return build_L(param(one, 1), std::span<const Param<S>>(ys), Base{1}, degree).shift(1);
    }
    case Special::H: {
        const Param<S> ys[] = {param(one, 1), param(one, 1)};
        return build_L(param(one, 2), std::span<const Param<S>>(ys), Base{1}, degree).shift(2);
    }
    case Special::f1: {
        const Param<S> one_y[] = {param(one)};
        const Param<S> two_y[] = {param(one), param(one)};
        auto first = build_weighted_L(Weight{{Rational(0), Rational(-1), Rational(1)}, 1},
                                      param(one, 1), std::span<const Param<S>>(one_y), Base{1},
                                      degree);
        auto second = build_weighted_L(Weight{{Rational(0), Rational(2)}, 1}, param(one, 2),
                                       std::span<const Param<S>>(two_y), Base{1}, degree);
        return first - second;
    }
    case Special::f3:
        return build_ordered_double<S>(OrderedDoubleSpec{Weight{{Rational(0), Rational(2)}, 1}, 1, 1},
                                       degree);
    }
    throw BuilderError("unknown special series");
}

template <typename S>
QSeries<S> build_sigma_gf(unsigned k, std::size_t stride, std::size_t degree)
{
    if (stride == 0) {
        throw BuilderError("SigmaGF: stride must be >= 1");
    }
    QSeries<S> r(degree);
    for (std::size_t n = 1; stride * n <= degree; ++n) {
        r[stride * n] = S(Rational(nt::sigma(k, static_cast<std::int64_t>(n))));
    }
    return r;
}

#define QLAMBERT_INSTANTIATE_BUILDERS(S)                                                          \
    template QSeries<S> build_L(const Param<S>&, std::span<const Param<S>>, Base, std::size_t,    \
                                const BuildOptions&);                                              \
    template QSeries<S> build_Lstar(const Param<S>&, const Param<S>&, Base, std::size_t,          \
                                    const BuildOptions&);                                          \
    template QSeries<S> build_A(const Param<S>&, const Param<S>&, const Param<S>&,                \
                                const Param<S>&, Base, std::size_t, const BuildOptions&);          \
    template QSeries<S> build_bilinear(const BilinearSpec<S>&, std::size_t);                      \
    template QSeries<S> build_ordered_double(const OrderedDoubleSpec&, std::size_t);              \
    template QSeries<S> build_weighted_L(const Weight&, const Param<S>&,                          \
                                         std::span<const Param<S>>, Base, std::size_t,             \
                                         const BuildOptions&);                                     \
    template QSeries<S> build_poch(const Param<S>&, Base, std::optional<std::size_t>,             \
                                   std::size_t);                                                   \
    template QSeries<S> build_special(Special, std::size_t);                                      \
    template QSeries<S> build_sigma_gf(unsigned, std::size_t, std::size_t);

QLAMBERT_INSTANTIATE_BUILDERS(Rational)
QLAMBERT_INSTANTIATE_BUILDERS(Dual)

} // namespace qlambert
