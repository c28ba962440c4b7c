#include "qlambert/transform_group.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace qlambert::group {

Monomial4 Monomial4::identity()
{
    Monomial4 m;
    for (std::size_t i = 0; i < 4; ++i) {
        m.rows[i][i] = 1;
    }
    return m;
}

Monomial4 operator*(const Monomial4& lhs, const Monomial4& rhs)
{
    Monomial4 r;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            std::int64_t acc = 0;
            for (std::size_t k = 0; k < 4; ++k) {
                acc += lhs.rows[i][k] * rhs.rows[k][j];
            }
            r.rows[i][j] = acc;
        }
    }
    return r;
}

namespace {

std::int64_t det3(const Monomial4& m, std::size_t skip_col)
{
    std::array<std::array<std::int64_t, 3>, 3> a{};
    for (std::size_t i = 1; i < 4; ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            if (j != skip_col) {
                a[i - 1][c++] = m.rows[i][j];
            }
        }
    }
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
           - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
           + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

void write_factors(std::ostream& os, const Monomial4::Row& row, int sign, int& count)
{
    static constexpr char names[] = {'x', 'y', 'z', 'w'};
    for (std::size_t j = 0; j < 4; ++j) {
        const std::int64_t e = row[j] * sign;
        if (e <= 0) {
            continue;
        }
        if (count++ > 0) {
            os << '*';
        }
        os << names[j];
        if (e > 1) {
            os << '^' << e;
        }
    }
}

std::string component(const Monomial4::Row& row)
{
    std::ostringstream num;
    std::ostringstream den;
    int n = 0;
    int d = 0;
    write_factors(num, row, 1, n);
    write_factors(den, row, -1, d);
    std::string out = n == 0 ? "1" : num.str();
    if (d == 1) {
        out += "/" + den.str();
    } else if (d > 1) {
        out += "/(" + den.str() + ")";
    }
    return out;
}

} // namespace

std::int64_t Monomial4::determinant() const
{
    std::int64_t total = 0;
    for (std::size_t j = 0; j < 4; ++j) {
        const std::int64_t term = rows[0][j] * det3(*this, j);
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

std::string Monomial4::str() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < 4; ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += component(rows[i]);
    }
    return out + ")";
}

Monomial4 generator(Generator g)
{
    Monomial4 m;
    if (g == Generator::S) {
        // (x, y, z, w) -> (z/w, w, xy, y)
        m.rows = {{{0, 0, 1, -1}, {0, 0, 0, 1}, {1, 1, 0, 0}, {0, 1, 0, 0}}};
    } else {
        // (x, y, z, w) -> (y, x, w, z)
        m.rows = {{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}};
    }
    return m;
}

char letter(Generator g)
{
    return g == Generator::S ? 'S' : 'T';
}

Monomial4 apply(Generator g, const Monomial4& m)
{
    return generator(g) * m;
}

std::vector<Element> closure()
{
    std::vector<Element> out{{Monomial4::identity(), ""}};
    std::set<Monomial4> seen{out.front().matrix};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (Generator g : {Generator::S, Generator::T}) {
            Monomial4 next = apply(g, out[head].matrix);
            if (seen.insert(next).second) {
                out.push_back({next, letter(g) + out[head].word});
            }
        }
    }
    return out;
}

int order(const Monomial4& m, int limit)
{
    Monomial4 p = m;
    for (int k = 1; k <= limit; ++k) {
        if (p == Monomial4::identity()) {
            return k;
        }
        p = p * m;
    }
    return 0;
}

template <typename S>
std::array<Param<S>, 4> act(const Monomial4& m, const std::array<Param<S>, 4>& p)
{
    std::array<Param<S>, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        S c(1);
        std::int64_t e = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            const std::int64_t k = m.rows[i][j];
            if (k == 0) {
                continue;
            }
            if (k < 0 && !is_invertible(p[j].c)) {
                throw BuilderError("group action divides by a zero parameter");
            }
            c *= p[j].c.pow(k);
            e += k * static_cast<std::int64_t>(p[j].e);
        }
        if (e < 0) {
            throw BuilderError("group action produced a negative power of q in component "
                               + std::to_string(i + 1));
        }
        out[i] = Param<S>{c, static_cast<std::size_t>(e)};
    }
    return out;
}

template std::array<Param<Rational>, 4> act(const Monomial4&, const std::array<Param<Rational>, 4>&);
template std::array<Param<Dual>, 4> act(const Monomial4&, const std::array<Param<Dual>, 4>&);

} // namespace qlambert::group
