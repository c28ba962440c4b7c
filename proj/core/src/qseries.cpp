#include "qlambert/qseries.hpp"

namespace qlambert {

std::vector<std::string> coefficient_strings(const Series& s)
{
    std::vector<std::string> out;
    out.reserve(s.degree() + 1);
    for (const auto& c : s.coeffs()) {
        out.push_back(c.str());
    }
    return out;
}

Series value_series(const DualSeries& s)
{
    Series r(s.degree());
    for (std::size_t k = 0; k <= s.degree(); ++k) {
        r[k] = s[k].value();
    }
    return r;
}

Series deriv_series(const DualSeries& s)
{
    Series r(s.degree());
    for (std::size_t k = 0; k <= s.degree(); ++k) {
        r[k] = s[k].deriv();
    }
    return r;
}

DualSeries lift(const Series& s)
{
    DualSeries r(s.degree());
    for (std::size_t k = 0; k <= s.degree(); ++k) {
        r[k] = Dual(s[k]);
    }
    return r;
}

template class QSeries<Rational>;
template class QSeries<Dual>;

} // namespace qlambert
