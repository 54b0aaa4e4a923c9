#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "campanato/cases.hpp"
#include "campanato/error.hpp"
#include "campanato/report.hpp"

using namespace campanato;

namespace {

const CaseResult& cached(const std::string& id) {
    static std::map<std::string, CaseResult> results;
    auto it = results.find(id);
    if (it == results.end()) it = results.emplace(id, runCase(id)).first;
    return it->second;
}

/// Mean oscillation of the zero-extended log over [-r, r], in closed form:
/// m = (log r - 1)/2. For r >= 1/e the level e^m lies in (0, r] and ∫_0^r |log x - m| dx = 2e^m + r m;
/// below that log x < m on all of (0, r) and the positive half contributes r|m| as well.
double logOscillation(double r) {
    const double m = 0.5 * (std::log(r) - 1.0);
    if (std::exp(m) > r) return std::abs(m);
    return (2.0 * std::exp(m) + r * m + r * std::abs(m)) / (2.0 * r);
}

}  // namespace

TEST(Cases, CatalogHasTenUniqueIds) {
    const auto& ids = caseCatalog();
    EXPECT_EQ(ids.size(), 10u);
    EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), ids.size());
}

TEST(Cases, UnknownIdIsInvalidInput) { EXPECT_THROW((void)runCase("no-such-case"), InvalidInput); }

TEST(Cases, EveryCaseDeclaresTolerancesTracesAndAssertions) {
    for (const auto& id : caseCatalog()) {
        const CaseResult& r = cached(id);
        EXPECT_EQ(r.caseId, id);
        EXPECT_FALSE(r.tolerances.empty()) << id;
        EXPECT_FALSE(r.traces.empty()) << id;
        EXPECT_FALSE(r.assertions.empty()) << id;
        const bool allPassed =
            std::all_of(r.assertions.begin(), r.assertions.end(), [](const Assertion& a) { return a.passed; });
        EXPECT_EQ(r.verdict == Verdict::Pass, allPassed) << id;
    }
}

TEST(Cases, SandwichPasses) {
    const CaseResult& r = cached("seminorm-sandwich");
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.metrics.at("violations"), 0.0);
    EXPECT_GE(r.metrics.at("minSymmetricOverSingle"), 1.0 - 1e-9);
    EXPECT_LE(r.metrics.at("maxSymmetricOverSingle"), 2.0 + 1e-9);
}

TEST(Cases, LogZeroExtensionMatchesClosedForm) {
    const CaseResult& r = cached("log-zero-extension");
    EXPECT_EQ(r.verdict, Verdict::Pass);
    const std::map<std::string, double> radii{{"0.01", 0.01}, {"1", 1.0}, {"100", 100.0}};
    for (const auto& [key, rad] : radii) {
        EXPECT_NEAR(r.metrics.at("mean@r=" + key), 0.5 * (std::log(rad) - 1.0), 1e-9) << key;
        EXPECT_NEAR(r.metrics.at("oscillation@r=" + key) / logOscillation(rad), 1.0, 1e-9) << key;
    }
    const Trace& t = r.traces.at("oscillation");
    ASSERT_EQ(t.size(), 13u);
    for (const auto& [rad, osc] : t) EXPECT_NEAR(osc / logOscillation(rad), 1.0, 1e-8) << rad;
}

TEST(Cases, StripOscillationAtEight) {
    const CaseResult& r = cached("strip-separation");
    EXPECT_NEAR(r.metrics.at("oscillation@r=8"), 4.0, 0.004);
    EXPECT_NEAR(r.metrics.at("campanatoSlope"), 1.0, 0.05);
    EXPECT_LE(r.metrics.at("insideBmoEstimate"), 1.1);
    // Inside balls have radius at most 1, and x1 oscillates by r/2 on a square of radius r.
    EXPECT_LE(r.metrics.at("insideBmoEstimate"), 0.5 + 1e-12);
    EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(Cases, CuspEuclideanSlope) {
    const CaseResult& r = cached("cusp-metric-separation");
    EXPECT_NEAR(r.metrics.at("euclideanSlope"), -0.125, 0.02);
    // Closed form on Q ⊂ Ω: ∫_Q |f| = 4r·r^{1+γα}/(1+γα), |Q| = 4r².
    const double ga = 0.5 * 0.75;
    for (const auto& [rad, value] : r.traces.at("euclideanSquares")) {
        const double exact = 4.0 * rad * std::pow(rad, 1.0 + ga) / (1.0 + ga) / std::pow(4.0 * rad * rad, 1.25);
        EXPECT_NEAR(value / exact, 1.0, 1e-3) << rad;
    }
    EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(Cases, PropertyACornerRatioMatchesWedgeArea) {
    const CaseResult& r = cached("property-A-cusp");
    EXPECT_GT(r.metrics.at("cEstimate"), 0.0);
    // Ball at (1, 0) with radius r: x1 in (1 - r², 1), 0 < x2 < 1 - sqrt(x1) (< r), so the area is
    // r² - (2/3)(1 - (1 - r²)^{3/2}).
    for (const auto& [rad, ratio] : r.traces.at("cornerRatio")) {
        const long double q = static_cast<long double>(rad) * rad;
        const long double area = q - (2.0L / 3.0L) * (1.0L - std::pow(1.0L - q, 1.5L));
        const double exact = static_cast<double>(area / std::pow(static_cast<long double>(rad), 3.0L));
        EXPECT_NEAR(ratio / exact, 1.0, 2e-2) << rad;
    }
}

TEST(Cases, ReflectionRatiosBelowProofConstant) {
    const CaseResult& r = cached("reflection-bound");
    const double ng = 1.0 + 1.0 / 0.5;
    const double c = std::pow(4.0 * (1.0 + std::sqrt(2.0)), ng);
    EXPECT_NEAR(r.metrics.at("constantCase2"), 4.0 * c * c, 1e-6 * c * c);
    EXPECT_NEAR(r.metrics.at("constantCase1"), 2.0 * std::pow(3.0, 2.0 * ng), 1e-9);
    EXPECT_EQ(r.traces.at("ratios").size(), 5u);
    EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(Cases, McShaneProfileMatchesClosedForm) {
    // For φ = |t|^{1/2} on [-1, 1] with L = 1, subadditivity of the square root gives
    // |y|^{1/2} + |t - y|^{1/2} >= |t|^{1/2}, with equality at y = 0: φ̃(t) = |t|^{1/2}.
    const CaseResult& r = cached("mcshane-preservation");
    for (const auto& [t, v] : r.traces.at("extensionProfile")) {
        const double exact = std::sqrt(std::abs(t));
        EXPECT_NEAR(v, exact, 1e-6) << t;
    }
    EXPECT_EQ(r.metrics.at("gridMismatches"), 0.0);
    EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(Cases, JohnNirenbergTailIsLogLinear) {
    const CaseResult& r = cached("john-nirenberg-probe");
    EXPECT_LT(r.metrics.at("tailSlope"), 0.0);
    EXPECT_GE(r.metrics.at("fitR2"), 0.9);
}

TEST(Cases, Gamma1AndAtlas) {
    EXPECT_LE(cached("gamma1-collapse").metrics.at("worstRatio"), 4.0);
    const CaseResult& a = cached("atlas-roundtrip");
    EXPECT_LE(a.metrics.at("restrictionError"), 1e-8);
    EXPECT_LE(a.metrics.at("linearityError"), 1e-9);
    EXPECT_TRUE(std::isfinite(a.metrics.at("normRatio")));
    EXPECT_EQ(a.verdict, Verdict::Pass);
}

TEST(Cases, DeterministicForFixedSeed) {
    for (const std::string id : {"seminorm-sandwich", "reflection-bound", "gamma1-collapse"}) {
        EXPECT_EQ(dumpJson(toJson(runCase(id))), dumpJson(toJson(cached(id)))) << id;
    }
    const CaseResult other = runCase("seminorm-sandwich", CaseOptions{7, 0});
    EXPECT_NE(dumpJson(toJson(other)), dumpJson(toJson(cached("seminorm-sandwich"))));
}
