#include <gtest/gtest.h>

#include <set>

#include "qlambert/catalog.hpp"
#include "qlambert/verifier.hpp"

using namespace qlambert;

namespace {

const IdentityRecord& rec(std::string_view id)
{
    const auto* r = find_record(builtin_catalog(), id);
    if (!r) {
        throw std::runtime_error("missing record " + std::string(id));
    }
    return *r;
}

const char* kSmall = R"(
# two records
id: one
lhs: 1/(1 - q)
rhs: Sum(j, 0, 30, q^j)
degree: 20
cite: geometric series

id: two
lhs: L($x, q)
rhs: 1/(1-q) * $x
     + 0
param: x nonzero exp=1
cite: wrong on purpose
)";

} // namespace

TEST(Catalog, Inventory)
{
    const auto& cat = builtin_catalog();
    EXPECT_GE(cat.size(), 24u);
    std::set<std::string> ids;
    for (const auto& r : cat) {
        EXPECT_TRUE(ids.insert(r.id).second) << r.id;
        EXPECT_FALSE(r.citation.empty()) << r.id;
    }
    for (const char* id : {"psi11", "prop21-m1", "prop21-m2", "prop22-w", "prop22-z", "prop22-y", "prop22-x",
                           "xxyy", "a002133", "neg-q-corollary", "adsy-general", "adsy-eqid", "y-product",
                           "y-odd", "aab1-general", "aab1-corollary", "aab1-equiv", "aab1-predicate", "prop3",
                           "aab2-equiv", "aab2-predicate", "x-closed-form", "denom-zero", "f3-lemma",
                           "f3-lemma-eqid2", "f1-eq-f3", "f1-eq-f3-derivative"}) {
        EXPECT_TRUE(ids.contains(id)) << id;
    }
}

TEST(Catalog, RecordShapes)
{
    const auto& m2 = rec("prop21-m2");
    EXPECT_EQ(m2.mode.kind, ModeKind::Equal);
    ASSERT_EQ(m2.params.size(), 4u);
    EXPECT_EQ(m2.params[2].name, "z");
    EXPECT_EQ(m2.params[2].excluded, std::vector<Rational>{Rational(1)});
    EXPECT_EQ(m2.params[3].excluded, std::vector<Rational>{Rational(1)});

    const auto& odd = rec("y-odd");
    EXPECT_EQ(odd.mode.kind, ModeKind::OddFunction);
    EXPECT_TRUE(odd.params.empty());

    const auto& eq = rec("adsy-eqid");
    ASSERT_EQ(eq.int_params.size(), 1u);
    EXPECT_EQ(eq.int_params[0].lo, 1);
    EXPECT_EQ(eq.int_params[0].hi, 8);
    EXPECT_EQ(rec("aab1-predicate").mode.kind, ModeKind::SubseqEquals);
    EXPECT_EQ(rec("prop3").params[3].distinct_from, std::vector<std::string>{"z"});
}

TEST(Catalog, ParsesTextFormat)
{
    const auto recs = parse_catalog(kSmall);
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].default_degree, 20u);
    EXPECT_EQ(recs[1].params[0].exponent, 1u);
    EXPECT_TRUE(recs[1].params[0].nonzero);
    EXPECT_TRUE(equal(recs[1].rhs, parse("1/(1-q) * $x + 0")));
}

TEST(Catalog, MalformedInputNamesIdAndLine)
{
    try {
        parse_catalog("id: a\nlhs: q\nrhs: q +\n");
        FAIL();
    } catch (const CatalogError& e) {
        EXPECT_EQ(e.id(), "a");
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse_catalog("id: a\nlhs: q\n"), CatalogError);
    EXPECT_THROW(parse_catalog("id: a\nlhs: $x\nrhs: 0\n"), CatalogError);
    EXPECT_THROW(parse_catalog("id: a\nlhs: q\nrhs: q\n\nid: a\nlhs: q\nrhs: q\n"), CatalogError);
    EXPECT_THROW(parse_catalog("id: a\nlhs: q\nrhs: q\nmode: sideways\n"), CatalogError);
    EXPECT_THROW(parse_catalog("id: a\nlhs: q\nrhs: q\nbogus: 1\n"), CatalogError);
    EXPECT_THROW(load_catalog("/nonexistent/catalog.qcat"), std::exception);
}

TEST(Sampling, DeterministicAndConstrained)
{
    const auto& r = rec("prop3");
    for (std::size_t t = 0; t < 20; ++t) {
        const auto a = sample_params(r, 7, t);
        EXPECT_EQ(a, sample_params(r, 7, t));
        for (const auto& [name, p] : a) {
            EXPECT_FALSE(p.c.is_zero());
            EXPECT_LT(p.c.abs(), Rational(1));
        }
        EXPECT_NE(a.at("w").c, a.at("z").c);
    }
    EXPECT_NE(sample_params(r, 0, 0), sample_params(r, 0, 1));
    const auto fixed = sample_params(rec("f3-derivative"), 0, 0);
    EXPECT_EQ(fixed.at("x"), (Param<Rational>{1, 1}));
}

TEST(Sampling, UnsatisfiableConstraintsFail)
{
    const auto recs = parse_catalog("id: a\nlhs: $x\nrhs: $x\nparam: x fixed=0 nonzero\n");
    EXPECT_THROW(sample_params(recs[0], 0, 0), SamplingError);
}

TEST(Params, FormatAndParse)
{
    EXPECT_EQ(parse_param("1/2"), (Param<Rational>{Rational(1, 2), 0}));
    EXPECT_EQ(parse_param("-3/4,2"), (Param<Rational>{Rational(-3, 4), 2}));
    EXPECT_EQ(format_param({Rational(-3, 4), 2}), "-3/4,2");
    EXPECT_EQ(format_param({Rational(5), 0}), "5");
    EXPECT_THROW(parse_param("1/2,-1"), std::exception);
}

TEST(Verifier, PassesAndFails)
{
    const auto recs = parse_catalog(kSmall);
    VerifyOptions o;
    const auto ok = verify(recs[0], o);
    EXPECT_TRUE(ok.pass);
    EXPECT_EQ(ok.trials, 1u);
    const auto bad = verify(recs[1], o);
    EXPECT_FALSE(bad.pass);
    ASSERT_EQ(bad.failures.size(), 5u);
    EXPECT_EQ(bad.failures[0].k, 0u);
    EXPECT_TRUE(bad.failures[0].bindings.contains("x"));
}

TEST(Verifier, ModeEqualIsSymmetric)
{
    for (const char* id : {"psi11", "x-closed-form", "prop21-m1"}) {
        IdentityRecord r = rec(id);
        std::swap(r.lhs, r.rhs);
        EXPECT_TRUE(verify(r, {}).pass) << id;
    }
    auto recs = parse_catalog(kSmall);
    std::swap(recs[1].lhs, recs[1].rhs);
    EXPECT_FALSE(verify(recs[1], {}).pass);
}

TEST(Verifier, EvaluationErrorsAreFailures)
{
    const auto recs = parse_catalog("id: e\nlhs: 1/q\nrhs: 0\n");
    const auto rep = verify(recs[0], {});
    EXPECT_FALSE(rep.pass);
    ASSERT_EQ(rep.failures.size(), 1u);
    EXPECT_FALSE(rep.failures[0].k.has_value());
    EXPECT_FALSE(rep.failures[0].error.empty());
}

TEST(Verifier, DegenerateAnchors)
{
    // prop21-m2 at x = y = 0: both sides are 2/((1 - w)(1 - z)).
    IdentityRecord m2 = rec("prop21-m2");
    m2.params[0].fixed = Rational(0);
    m2.params[1].fixed = Rational(0);
    EXPECT_TRUE(verify(m2, {}).pass);
    const Bindings b{{"x", {0, 0}}, {"y", {0, 0}}, {"z", {Rational(1, 3), 0}}, {"w", {Rational(1, 5), 0}}};
    EXPECT_EQ(evaluate(m2.lhs, 5, b), Series::constant(Rational(2) / (Rational(2, 3) * Rational(4, 5)), 5));

    // prop22-y at y = 0: A(x,0,z,w) = L(0,z,w).
    IdentityRecord py = rec("prop22-y");
    py.params[1].fixed = Rational(0);
    EXPECT_TRUE(verify(py, {}).pass);
}

TEST(Report, JsonShapeAndDeterminism)
{
    std::vector<IdentityRecord> recs{rec("psi11"), rec("y-odd"), parse_catalog(kSmall)[1]};
    VerifyOptions o;
    o.jobs = 3;
    const auto a = to_json(verify_all(recs, o), false);
    o.jobs = 1;
    const auto b = to_json(verify_all(recs, o), false);
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("\"identity\": \"psi11\""), std::string::npos);
    EXPECT_NE(a.find("\"status\": \"fail\""), std::string::npos);
    EXPECT_EQ(a.find("millis"), std::string::npos);
    EXPECT_NE(to_json(verify_all(recs, o), true).find("millis"), std::string::npos);
    const auto csv = to_csv(verify_all(recs, o));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,status,degree,millis");
    // Sorted by id.
    EXPECT_LT(a.find("psi11"), a.find("two"));
    EXPECT_LT(a.find("two"), a.find("y-odd"));
}
