#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qlambert/dual.hpp"
#include "qlambert/rational.hpp"

namespace qlambert {

/// Raised when a series operation is applied outside its domain
/// (non-unit reciprocal, shift below valuation, ...).
class SeriesDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Truncated formal power series c_0 + c_1 q + ... + c_D q^D (mod q^{D+1})
/// over an exact scalar ring (Rational or Dual).
///
/// The truncation degree is fixed at construction. Binary operations on
/// series of different degree truncate to the smaller one.
template <typename S>
class QSeries {
public:
    using scalar_type = S;

    QSeries() : coeffs_(1) {}
    explicit QSeries(std::size_t degree) : coeffs_(degree + 1) {}
    QSeries(std::size_t degree, std::vector<S> coeffs) : coeffs_(std::move(coeffs))
    {
        coeffs_.resize(degree + 1);
    }

    static QSeries constant(S c, std::size_t degree)
    {
        QSeries r(degree);
        r.coeffs_[0] = std::move(c);
        return r;
    }

    /// c q^e; the zero series when e exceeds the degree.
    static QSeries monomial(S c, std::size_t e, std::size_t degree)
    {
        QSeries r(degree);
        if (e <= degree) {
            r.coeffs_[e] = std::move(c);
        }
        return r;
    }

    [[nodiscard]] std::size_t degree() const { return coeffs_.size() - 1; }
    [[nodiscard]] const std::vector<S>& coeffs() const { return coeffs_; }

    [[nodiscard]] const S& coeff(std::size_t k) const
    {
        if (k > degree()) {
            throw std::out_of_range("coefficient index " + std::to_string(k) + " beyond degree "
                                    + std::to_string(degree()));
        }
        return coeffs_[k];
    }
    S& operator[](std::size_t k) { return coeffs_[k]; }
    const S& operator[](std::size_t k) const { return coeffs_[k]; }

    /// Index of the first nonzero coefficient, or nullopt for the zero series.
    [[nodiscard]] std::optional<std::size_t> valuation() const
    {
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (!is_zero(coeffs_[k])) {
                return k;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] bool is_zero_series() const { return !valuation().has_value(); }

    [[nodiscard]] QSeries truncated(std::size_t degree) const
    {
        QSeries r(degree);
        const std::size_t n = std::min(degree, this->degree());
        for (std::size_t k = 0; k <= n; ++k) {
            r.coeffs_[k] = coeffs_[k];
        }
        return r;
    }

    QSeries& operator+=(const QSeries& o)
    {
        shrink_to(o.degree());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] += o.coeffs_[k];
        }
        return *this;
    }
    QSeries& operator-=(const QSeries& o)
    {
        shrink_to(o.degree());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] -= o.coeffs_[k];
        }
        return *this;
    }
    QSeries& operator*=(const S& c)
    {
        for (auto& a : coeffs_) {
            a *= c;
        }
        return *this;
    }

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const S& c) { return a *= c; }
    friend QSeries operator*(const S& c, QSeries a) { return a *= c; }
    friend QSeries operator-(QSeries a)
    {
        for (auto& c : a.coeffs_) {
            c = -c;
        }
        return a;
    }

    /// Cauchy product mod q^{min(D_a, D_b)+1}, skipping zero coefficients.
    friend QSeries operator*(const QSeries& a, const QSeries& b)
    {
        const std::size_t d = std::min(a.degree(), b.degree());
        QSeries r(d);
        for (std::size_t i = 0; i <= d; ++i) {
            if (is_zero(a.coeffs_[i])) {
                continue;
            }
            for (std::size_t j = 0; i + j <= d; ++j) {
                if (!is_zero(b.coeffs_[j])) {
                    r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
                }
            }
        }
        return r;
    }
    QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

    friend bool operator==(const QSeries&, const QSeries&) = default;

    /// In place: multiply by 1/(1 - c q^s). For s = 0 this is the scalar 1/(1-c).
    void divide_by_one_minus(const S& c, std::size_t s)
    {
        if (is_zero(c)) {
            return;
        }
        if (s == 0) {
            const S denom = S(1) - c;
            if (!is_invertible(denom)) {
                throw SeriesDomainError("factor 1/(1 - c) with c = 1");
            }
            *this *= denom.inverse();
            return;
        }
        for (std::size_t k = s; k < coeffs_.size(); ++k) {
            if (!is_zero(coeffs_[k - s])) {
                coeffs_[k] += c * coeffs_[k - s];
            }
        }
    }

    /// In place: multiply by (1 - c q^s).
    void multiply_by_one_minus(const S& c, std::size_t s)
    {
        if (is_zero(c)) {
            return;
        }
        if (s == 0) {
            *this *= (S(1) - c);
            return;
        }
        for (std::size_t k = coeffs_.size(); k-- > s;) {
            if (!is_zero(coeffs_[k - s])) {
                coeffs_[k] -= c * coeffs_[k - s];
            }
        }
    }

    /// 1/(1 - t) = sum_j t^j for t with zero constant term.
    [[nodiscard]] QSeries geometric_inverse() const
    {
        if (!is_zero(coeffs_[0])) {
            throw SeriesDomainError("geometric_inverse needs a zero constant term");
        }
        // r = 1 + t r, solved coefficient by coefficient.
        QSeries r(degree());
        r.coeffs_[0] = S(1);
        for (std::size_t k = 1; k <= degree(); ++k) {
            S acc{};
            for (std::size_t i = 1; i <= k; ++i) {
                if (!is_zero(coeffs_[i])) {
                    acc += coeffs_[i] * r.coeffs_[k - i];
                }
            }
            r.coeffs_[k] = std::move(acc);
        }
        return r;
    }

    /// Multiplicative inverse of a series with invertible constant term.
    [[nodiscard]] QSeries unit_reciprocal() const
    {
        if (!is_invertible(coeffs_[0])) {
            throw SeriesDomainError("unit_reciprocal needs an invertible constant term");
        }
        const S inv0 = coeffs_[0].inverse();
        QSeries r(degree());
        r.coeffs_[0] = inv0;
        for (std::size_t k = 1; k <= degree(); ++k) {
            S acc{};
            for (std::size_t i = 1; i <= k; ++i) {
                if (!is_zero(coeffs_[i])) {
                    acc += coeffs_[i] * r.coeffs_[k - i];
                }
            }
            r.coeffs_[k] = -(acc * inv0);
        }
        return r;
    }

    [[nodiscard]] QSeries even_part() const
    {
        QSeries r(degree());
        for (std::size_t k = 0; k <= degree(); k += 2) {
            r.coeffs_[k] = coeffs_[k];
        }
        return r;
    }

    [[nodiscard]] QSeries odd_part() const
    {
        QSeries r(degree());
        for (std::size_t k = 1; k <= degree(); k += 2) {
            r.coeffs_[k] = coeffs_[k];
        }
        return r;
    }

    /// q -> -q.
    [[nodiscard]] QSeries subst_neg_q() const
    {
        QSeries r = *this;
        for (std::size_t k = 1; k <= degree(); k += 2) {
            r.coeffs_[k] = -r.coeffs_[k];
        }
        return r;
    }

    /// q -> q^b, keeping the numeric truncation degree.
    [[nodiscard]] QSeries subst_q_pow(std::size_t b) const
    {
        if (b == 0) {
            throw SeriesDomainError("subst_q_pow needs b >= 1");
        }
        QSeries r(degree());
        for (std::size_t k = 0; k * b <= degree(); ++k) {
            r.coeffs_[k * b] = coeffs_[k];
        }
        return r;
    }

    /// Multiply by q^s. Negative s requires valuation >= |s|; the degree drops by |s|.
    [[nodiscard]] QSeries shift(std::int64_t s) const
    {
        if (s >= 0) {
            QSeries r(degree());
            const auto us = static_cast<std::size_t>(s);
            for (std::size_t k = 0; k + us <= degree(); ++k) {
                r.coeffs_[k + us] = coeffs_[k];
            }
            return r;
        }
        const auto us = static_cast<std::size_t>(-s);
        const auto v = valuation();
        if (us > degree() || (v && *v < us)) {
            throw SeriesDomainError("shift by " + std::to_string(s) + " below the valuation "
                                    + (v ? std::to_string(*v) : std::string("(zero)")));
        }
        QSeries r(degree() - us);
        for (std::size_t k = us; k <= degree(); ++k) {
            r.coeffs_[k - us] = coeffs_[k];
        }
        return r;
    }

    /// "c0 + c1*q + c2*q^2 + ..." omitting zero terms ("0" for the zero series).
    [[nodiscard]] std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k <= degree(); ++k) {
            if (is_zero(coeffs_[k])) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            if (k == 0) {
                os << coeffs_[k];
            } else {
                os << coeffs_[k] << (k == 1 ? "*q" : "*q^" + std::to_string(k));
            }
        }
        if (first) {
            os << "0";
        }
        return os.str();
    }

private:
    void shrink_to(std::size_t d)
    {
        if (d < degree()) {
            coeffs_.resize(d + 1);
        }
    }

    std::vector<S> coeffs_;
};

using Series = QSeries<Rational>;
using DualSeries = QSeries<Dual>;

/// Coefficients rendered as exact rational strings, for JSON output.
std::vector<std::string> coefficient_strings(const Series& s);

/// Value and derivative parts of a dual series.
Series value_series(const DualSeries& s);
Series deriv_series(const DualSeries& s);

/// Lift a rational series into the dual ring with zero derivative.
DualSeries lift(const Series& s);

} // namespace qlambert
