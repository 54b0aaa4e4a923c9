#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "campanato/atlas.hpp"
#include "campanato/domain.hpp"
#include "campanato/extend.hpp"
#include "campanato/field.hpp"
#include "campanato/seminorm.hpp"

namespace campanato {

struct FieldConfig {
    std::string name;
    std::map<std::string, double> params;
};

struct McShaneConfig {
    BoundaryFunction phi;
    Box window;
    double gamma = 1.0;
    /// Unset: sampled Hölder constant inflated by 1%.
    std::optional<double> constant;
    McShaneOptions options;
};

/// Inputs of the `extend` subcommands.
struct ExtendConfig {
    /// Points at which extended values are reported.
    std::vector<Point> points;
    /// reflect: f̃ is also estimated on {x̄ ∈ W, x_N < ceiling} when set.
    std::optional<double> ceiling;
    std::optional<McShaneConfig> mcshane;
    std::shared_ptr<const Atlas> atlas;
};

struct ExperimentConfig {
    std::optional<MetricParams> metric;
    std::shared_ptr<const Domain> domain;
    std::optional<FieldConfig> field;
    SeminormSpec seminorm;
    SamplerConfig sampler;
    ExtendConfig extend;
    /// Unset: commands print to stdout only.
    std::optional<std::filesystem::path> outputDir;

    /// Builds the configured field on the configured domain.
    [[nodiscard]] ScalarField makeField() const;
};

/// Validates the whole document before building anything. Unknown keys and
/// type errors throw InvalidInput naming the offending key path. Relative
/// atlas file paths are resolved against `baseDir`.
[[nodiscard]] ExperimentConfig parseExperimentConfig(const nlohmann::json& doc,
                                                     const std::filesystem::path& baseDir = {});
[[nodiscard]] ExperimentConfig loadExperimentConfig(const std::filesystem::path& file);

[[nodiscard]] Isometry parseIsometry(const nlohmann::json& j, int dimension, const std::string& path);
[[nodiscard]] std::shared_ptr<const Atlas> parseAtlas(const nlohmann::json& j, const std::string& path);
[[nodiscard]] std::shared_ptr<const Domain> parseDomain(const nlohmann::json& j, const std::string& path,
                                                        const std::filesystem::path& baseDir = {});

}  // namespace campanato
