#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "qlambert/builders.hpp"
#include "qlambert/transform_group.hpp"

using namespace qlambert;
using namespace qlambert::group;

TEST(Group, GeneratorActions)
{
    const auto id = Monomial4::identity();
    EXPECT_EQ(apply(Generator::S, apply(Generator::S, id)), id);
    EXPECT_EQ(apply(Generator::T, id).str(), "(y, x, w, z)");
    EXPECT_EQ(apply(Generator::S, id).str(), "(z/w, w, x*y, y)");
}

TEST(Group, Relations)
{
    const auto id = Monomial4::identity();
    const auto s = generator(Generator::S), t = generator(Generator::T);
    EXPECT_EQ(s * s, id);
    EXPECT_EQ(t * t, id);
    EXPECT_EQ(order(s * t), 12);
    Monomial4 p = id;
    for (int k = 1; k <= 12; ++k) {
        p = p * (s * t);
        EXPECT_EQ(p == id, k == 12) << "k=" << k;
    }
}

TEST(Group, Closure)
{
    const auto elems = closure();
    ASSERT_EQ(elems.size(), 24u);
    EXPECT_EQ(elems.front().matrix, Monomial4::identity());
    EXPECT_TRUE(elems.front().word.empty());
    std::set<Monomial4> seen;
    for (const auto& e : elems) {
        EXPECT_TRUE(seen.insert(e.matrix).second);
        EXPECT_EQ(std::abs(e.matrix.determinant()), 1);
        // The stored word reproduces the matrix.
        Monomial4 m = Monomial4::identity();
        for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) {
            m = apply(*it == 'S' ? Generator::S : Generator::T, m);
        }
        EXPECT_EQ(m, e.matrix) << e.word;
    }
    bool st_found = false;
    for (const auto& e : elems) {
        if (e.matrix == generator(Generator::S) * generator(Generator::T)) {
            EXPECT_EQ(e.word.size(), 2u);
            st_found = true;
        }
    }
    EXPECT_TRUE(st_found);
}

TEST(Group, SemanticSpotCheck)
{
    // A(x,y,z,w) = A(S(x,y,z,w)) and A + A(T(...)) = L(x,w)L(y,z) + L(xy,z,w).
    oracle::Rng rng(9);
    const std::size_t d = 32;
    for (int i = 0; i < 5; ++i) {
        const std::array<Param<Rational>, 4> p{{{rng.unit_disc(), 1}, {rng.unit_disc(), 1},
                                                {rng.unit_disc(), 1}, {rng.unit_disc(), 1}}};
        auto A = [&](const std::array<Param<Rational>, 4>& a) {
            return build_A<Rational>(a[0], a[1], a[2], a[3], Base{1}, d);
        };
        const auto sp = act(generator(Generator::S), p);
        EXPECT_EQ(A(p), A(sp));
        const auto tp = act(generator(Generator::T), p);
        const Param<Rational> w[] = {p[3]}, z[] = {p[2]}, zw[] = {p[2], p[3]};
        const Series rhs = build_L<Rational>(p[0], w, Base{1}, d) * build_L<Rational>(p[1], z, Base{1}, d)
                           + build_L<Rational>({p[0].c * p[1].c, p[0].e + p[1].e}, zw, Base{1}, d);
        EXPECT_EQ(A(p) + A(tp), rhs);
    }
}

TEST(Group, ActRejectsNegativeExponents)
{
    const std::array<Param<Rational>, 4> p{{{1, 0}, {1, 0}, {1, 0}, {1, 1}}};
    EXPECT_THROW(act(generator(Generator::S), p), BuilderError);
}
