#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace campanato::cli {

enum ExitCode : int { kPass = 0, kCaseFailed = 1, kInvalidInput = 2, kInternalError = 3 };

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out;
    int refine = 0;
};

int seminormEstimate(const CommonFlags& f);
int domainCheckA(const CommonFlags& f);
int extendReflect(const CommonFlags& f);
int extendMcShane(const CommonFlags& f);
int extendAtlas(const CommonFlags& f);
int caseRun(const std::string& id, const CommonFlags& f);
int caseRunAll(const CommonFlags& f);
int reportMerge(const std::filesystem::path& dir);

}  // namespace campanato::cli
