#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "campanato/seminorm.hpp"

namespace campanato {

enum class Verdict { Pass, Fail, Inconclusive };
[[nodiscard]] std::string toString(Verdict v);

struct Assertion {
    std::string name;
    bool passed = false;
    /// Measured quantity and the bound it was compared against.
    double value = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct CaseResult {
    std::string caseId;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::Inconclusive;
    std::map<std::string, double> metrics;
    std::map<std::string, Trace> traces;
    std::map<std::string, double> tolerances;
    std::vector<Assertion> assertions;
    std::vector<std::string> notes;

    void check(const std::string& name, bool passed, double value, double bound, std::string detail = {});
    /// Pass iff every assertion passed; inconclusive when there are none.
    void finalize();
};

struct CaseOptions {
    std::uint64_t seed = 42;
    /// Extra refinement rounds on top of each case's own setting.
    int refine = 0;
};

[[nodiscard]] const std::vector<std::string>& caseCatalog();
/// Throws InvalidInput for unknown ids.
[[nodiscard]] CaseResult runCase(const std::string& caseId, const CaseOptions& opts = {});

}  // namespace campanato
