#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "campanato/cases.hpp"
#include "campanato/domain.hpp"
#include "campanato/seminorm.hpp"

namespace campanato {

/// Shortest text that round-trips the double ("%.17g" fallback); "nan"/"inf" spelled out.
[[nodiscard]] std::string formatNumber(double v);

[[nodiscard]] nlohmann::json toJson(const Point& p);
[[nodiscard]] nlohmann::json toJson(const Trace& t);
[[nodiscard]] nlohmann::json toJson(const SeminormReport& r);
[[nodiscard]] nlohmann::json toJson(const PropertyAReport& r);
[[nodiscard]] nlohmann::json toJson(const AtlasReport& r);
[[nodiscard]] nlohmann::json toJson(const CaseResult& r);

/// Two-space indented dump with sorted keys and a trailing newline.
[[nodiscard]] std::string dumpJson(const nlohmann::json& j);

/// Writes "x,y" rows for a trace.
void writeTraceCsv(const std::filesystem::path& file, const Trace& trace);

/// Writes <dir>/<caseId>.json and <dir>/<caseId>.<trace>.csv; returns the written paths.
std::vector<std::filesystem::path> writeCaseResult(const CaseResult& r, const std::filesystem::path& dir);

/// CSV summary (one row per case result JSON found in `dir`, sorted by file name).
/// Throws InvalidInput if `dir` holds no case results.
[[nodiscard]] std::string mergeReports(const std::filesystem::path& dir);

}  // namespace campanato
