#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "campanato/error.hpp"
#include "campanato/report.hpp"
#include "campanato/rng.hpp"

using namespace campanato;

namespace {

std::filesystem::path freshDir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("campanato-report-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CaseResult sample(const std::string& id, bool pass) {
    CaseResult r;
    r.caseId = id;
    r.seed = 42;
    r.metrics["a"] = 1.5;
    r.metrics["b"] = kInfinity;
    r.tolerances["t"] = 1e-3;
    r.traces["main"] = {{1.0, 2.0}, {0.5, 0.25}};
    r.check("first", true, 1.0, 2.0);
    r.check("second", pass, 3.0, 2.0, "detail, with comma");
    r.finalize();
    return r;
}

}  // namespace

TEST(Report, FormatNumberRoundTrips) {
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double x = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.below(200)) - 100);
        EXPECT_EQ(std::stod(formatNumber(x)), x);
    }
    EXPECT_EQ(formatNumber(kInfinity), "inf");
    EXPECT_EQ(formatNumber(-kInfinity), "-inf");
    EXPECT_EQ(formatNumber(std::nan("")), "nan");
    EXPECT_EQ(formatNumber(0.5), "0.5");
}

TEST(Report, CaseResultJsonShape) {
    const nlohmann::json j = toJson(sample("demo", true));
    EXPECT_EQ(j.at("caseId"), "demo");
    EXPECT_EQ(j.at("verdict"), "pass");
    EXPECT_EQ(j.at("metrics").at("a"), 1.5);
    EXPECT_EQ(j.at("metrics").at("b"), "inf");
    EXPECT_EQ(j.at("toleranceUsed").at("t"), 1e-3);
    EXPECT_EQ(j.at("traces").at("main").size(), 2u);
    EXPECT_EQ(j.at("assertions").size(), 2u);
    EXPECT_EQ(toJson(sample("demo", false)).at("verdict"), "fail");
    EXPECT_EQ(dumpJson(j), dumpJson(toJson(sample("demo", true))));
}

TEST(Report, VerdictRules) {
    CaseResult empty;
    empty.finalize();
    EXPECT_EQ(empty.verdict, Verdict::Inconclusive);
    EXPECT_EQ(sample("x", true).verdict, Verdict::Pass);
    EXPECT_EQ(sample("x", false).verdict, Verdict::Fail);
}

TEST(Report, WritesJsonAndNamedTraceCsv) {
    const auto dir = freshDir("write");
    const auto files = writeCaseResult(sample("demo", true), dir);
    ASSERT_EQ(files.size(), 2u);
    EXPECT_TRUE(std::filesystem::exists(dir / "demo.json"));
    EXPECT_EQ(slurp(dir / "demo.main.csv"), "x,y\n1,2\n0.5,0.25\n");
}

TEST(Report, MergeSummarizesSortedResults) {
    const auto dir = freshDir("merge");
    (void)writeCaseResult(sample("zeta", false), dir);
    (void)writeCaseResult(sample("alpha", true), dir);
    std::ofstream(dir / "other.json") << R"({"unrelated": true})";
    const std::string csv = mergeReports(dir);
    EXPECT_EQ(csv,
              "caseId,verdict,seed,assertionsPassed,assertionsTotal,failedAssertions\n"
              "alpha,pass,42,2,2,\n"
              "zeta,fail,42,1,2,second\n");
}

TEST(Report, MergeRejectsEmptyOrMissingDirectories) {
    EXPECT_THROW((void)mergeReports(freshDir("empty")), InvalidInput);
    EXPECT_THROW((void)mergeReports(freshDir("empty") / "missing"), InvalidInput);
}
