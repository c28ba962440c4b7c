#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlambert/qseries.hpp"

namespace qlambert {

/// A builder was handed parameters outside its contract. The message names
/// the builder and the offending parameter.
class BuilderError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The monomial c q^e standing in for a series parameter such as x or y.
template <typename S>
struct Param {
    S c{};
    std::size_t e = 0;

    friend bool operator==(const Param&, const Param&) = default;
};

template <typename S>
Param<S> param(S c, std::size_t e = 0)
{
    return {std::move(c), e};
}

/// The builder's q is instantiated as q^b.
struct Base {
    std::size_t b = 1;
};

/// Polynomial weight w(n) = sum_i coeffs[i] n^i applied from index n0 on.
struct Weight {
    std::vector<Rational> coeffs{Rational(1)};
    std::int64_t n0 = 0;

    [[nodiscard]] Rational at(std::int64_t n) const;
    [[nodiscard]] bool is_constant() const;
};

/// Policy knobs for the builders.
struct BuildOptions {
    /// Reject parameters with exponent 0 whose |c| >= 1 in outer-sum positions.
    /// The formal truncations are defined without this; it mirrors |x| < 1.
    bool enforce_analytic_region = false;
};

/// sum_{n>=0} x^n / prod_i (1 - y_i q^{bn}).
template <typename S>
QSeries<S> build_L(const Param<S>& x, std::span<const Param<S>> ys, Base base, std::size_t degree,
                   const BuildOptions& opts = {});

/// Bilateral sum_{n in Z} x^n / (1 - y q^{bn}); x must have exponent 0.
template <typename S>
QSeries<S> build_Lstar(const Param<S>& x, const Param<S>& y, Base base, std::size_t degree,
                       const BuildOptions& opts = {});

/// sum_{n>=0} sum_{m>=n} x^n y^m / ((1 - w q^{bn})(1 - z q^{bm})).
template <typename S>
QSeries<S> build_A(const Param<S>& x, const Param<S>& y, const Param<S>& z, const Param<S>& w,
                   Base base, std::size_t degree, const BuildOptions& opts = {});

/// Denominator factor (1 - c q^{e + slope*k + offset}) for k >= 1.
template <typename S>
struct LinearFactor {
    Param<S> p;
    std::int64_t slope = 1;
    std::int64_t offset = 0;
};

/// sum_{m,n>=1} sign^m x^n z^m q^{alpha mn + beta m + gamma n + delta}
///   / ((1 - u q^{a n + a0}) (1 - v q^{b m + b0})), alpha >= 1.
template <typename S>
struct BilinearSpec {
    int sign = 1;
    std::int64_t alpha = 1;
    std::int64_t beta = 0;
    std::int64_t gamma = 0;
    std::int64_t delta = 0;
    Param<S> x{S(1), 0};
    Param<S> z{S(1), 0};
    LinearFactor<S> n_factor;
    LinearFactor<S> m_factor;
};

template <typename S>
QSeries<S> build_bilinear(const BilinearSpec<S>& spec, std::size_t degree);

/// sum_{1<=n<m} w(n) q^{un + vm} / ((1 - q^n)(1 - q^m)); u, v >= 1.
struct OrderedDoubleSpec {
    Weight weight;
    std::int64_t u = 1;
    std::int64_t v = 1;
};

template <typename S>
QSeries<S> build_ordered_double(const OrderedDoubleSpec& spec, std::size_t degree);

/// sum_{n>=n0} w(n) x^n / prod_i (1 - y_i q^{bn}). Non-constant weights need x.e >= 1.
template <typename S>
QSeries<S> build_weighted_L(const Weight& w, const Param<S>& x, std::span<const Param<S>> ys,
                            Base base, std::size_t degree, const BuildOptions& opts = {});

/// (a; q^b)_n, or (a; q^b)_inf when n is empty.
template <typename S>
QSeries<S> build_poch(const Param<S>& a, Base base, std::optional<std::size_t> n,
                      std::size_t degree);

/// The named series: Y, X, G, H, f1, f3.
enum class Special { Y, X, G, H, f1, f3 };

std::optional<Special> special_from_name(std::string_view name);
std::string_view special_name(Special s);

template <typename S>
QSeries<S> build_special(Special which, std::size_t degree);

/// sum_{n>=1} sigma_k(n) q^{stride n}.
template <typename S>
QSeries<S> build_sigma_gf(unsigned k, std::size_t stride, std::size_t degree);

#define QLAMBERT_EXTERN_BUILDERS(S)                                                               \
    extern template QSeries<S> build_L(const Param<S>&, std::span<const Param<S>>, Base,          \
                                       std::size_t, const BuildOptions&);                          \
    extern template QSeries<S> build_Lstar(const Param<S>&, const Param<S>&, Base, std::size_t,   \
                                           const BuildOptions&);                                   \
    extern template QSeries<S> build_A(const Param<S>&, const Param<S>&, const Param<S>&,         \
                                       const Param<S>&, Base, std::size_t, const BuildOptions&);   \
    extern template QSeries<S> build_bilinear(const BilinearSpec<S>&, std::size_t);               \
    extern template QSeries<S> build_ordered_double(const OrderedDoubleSpec&, std::size_t);       \
    extern template QSeries<S> build_weighted_L(const Weight&, const Param<S>&,                   \
                                                std::span<const Param<S>>, Base, std::size_t,      \
                                                const BuildOptions&);                              \
    extern template QSeries<S> build_poch(const Param<S>&, Base, std::optional<std::size_t>,      \
                                          std::size_t);                                            \
    extern template QSeries<S> build_special(Special, std::size_t);                               \
    extern template QSeries<S> build_sigma_gf(unsigned, std::size_t, std::size_t);

QLAMBERT_EXTERN_BUILDERS(Rational)
QLAMBERT_EXTERN_BUILDERS(Dual)

#undef QLAMBERT_EXTERN_BUILDERS

} // namespace qlambert
