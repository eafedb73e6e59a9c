#include <gtest/gtest.h>

#include "tplab/validate.hpp"

using namespace tplab;
using validate::Compare;

TEST(Report, PassIffAllChecksPass) {
    validate::Report r("x");
    EXPECT_FALSE(r.passed());
    r.rel("a", 1.0, 1.0 + 1e-9, 1e-8, "t");
    r.abs("b", 0.0, 0.5, 1.0, "t");
    r.below("c", 0.1, 0.2, "t");
    r.truth("d", true, "t");
    EXPECT_TRUE(r.passed());
    r.rel("e", 1.0, 1.1, 0.05, "t");
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.failures(), 1u);
}

TEST(Report, NonFiniteActualFails) {
    EXPECT_FALSE(validate::evaluate(Compare::abs, 0.0, std::nan(""), 1e300));
    EXPECT_FALSE(validate::evaluate(Compare::below, 0.0, std::numeric_limits<double>::infinity(), 1.0));
}

TEST(Report, GuardRecordsExceptions) {
    validate::Report r("x");
    r.guard("boom", [] { throw NonConvergence("no luck", 1.0, 2.0); });
    ASSERT_EQ(r.checks().size(), 1u);
    EXPECT_FALSE(r.checks()[0].passed);
    EXPECT_EQ(r.checks()[0].note, "no luck");
}

TEST(Report, ToleranceOverridesUseLongestPrefix) {
    validate::Report r("x");
    r.rel("fou_cov[a]", 1.0, 1.1, 0.01, "t");
    r.rel("fou_cov[b]", 1.0, 1.1, 0.01, "t");
    r.rel("tfbm", 1.0, 1.1, 0.01, "t");
    r.override_tolerances({{"fou_cov", 0.2}, {"fou_cov[b]", 0.001}});
    EXPECT_TRUE(r.checks()[0].passed);
    EXPECT_FALSE(r.checks()[1].passed);
    EXPECT_EQ(r.checks()[1].tolerance, 0.001);
    EXPECT_FALSE(r.checks()[2].passed);
}

TEST(Report, JsonShape) {
    validate::Report r("demo");
    r.rel("a", 1.0, 1.0, 1e-12, "identity");
    auto j = r.to_json({{"seed", "42"}});
    EXPECT_EQ(j["suite"], "demo");
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["config"]["seed"], "42");
    EXPECT_EQ(j["checks"][0]["compare"], "relative");
    EXPECT_EQ(j["checks"][0]["provenance"], "identity");
}

TEST(Suites, UnknownSuiteRejected) { EXPECT_THROW(validate::run_suite("nope"), DomainError); }

TEST(Suites, FastSuitesPass) {
    for (const char* s : {"specfun", "identities", "scaling", "tmbm-equivalence"}) {
        auto r = validate::run_suite(s);
        EXPECT_TRUE(r.passed()) << s;
        EXPECT_GT(r.checks().size(), 2u) << s;
    }
}

TEST(Figure1, CurvesSatisfyChecks) {
    auto f = validate::figure1_curves();
    EXPECT_EQ(f.t.size(), 1001u);
    EXPECT_EQ(f.t[50], 0.5);
    auto r = validate::criterion_figure1(f.t, f.fou, f.tfbm);
    EXPECT_TRUE(r.passed());
}

TEST(Oracle, Float128QuadratureMatchesClosedForm) {
    double q = static_cast<double>(validate::fou_cov_by_quadrature<validate::quad128>(0.75, 1.0, 0.3));
    EXPECT_NEAR(q / 0.41490190675709317, 1.0, 1e-9);
}

TEST(Oracle, KummerLogRoute) { EXPECT_NEAR(validate::kummer_u_log_route(0.75, 1.5, 0.8), 1.03691383274257649, 1e-11); }
