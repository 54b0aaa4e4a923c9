#include "campanato/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "campanato/error.hpp"

namespace campanato {

namespace {

using nlohmann::json;

/// Non-finite values have no JSON literal; they are kept as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    return formatNumber(v);
}

std::string csvField(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void writeText(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + file.string());
    out << text;
    if (!out) throw InvalidInput("write failed for " + file.string());
}

}  // namespace

std::string formatNumber(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

json toJson(const Point& p) {
    json a = json::array();
    for (const double c : p.coords()) a.push_back(number(c));
    return a;
}

json toJson(const Trace& t) {
    json a = json::array();
    for (const auto& [x, y] : t) a.push_back(json::array({number(x), number(y)}));
    return a;
}

json toJson(const SeminormReport& r) {
    json rounds = json::array();
    for (const double v : r.rounds) rounds.push_back(number(v));
    return {
        {"kind", r.kind},
        {"normalization", toString(r.normalization)},
        {"estimate", number(r.estimate)},
        {"witnessBall", {{"center", toJson(r.witnessBall.center)}, {"radius", number(r.witnessBall.radius)}}},
        {"perRadiusTrace", toJson(r.perRadiusTrace)},
        {"standardErrorAtWitness", number(r.standardErrorAtWitness)},
        {"rounds", rounds},
        {"ballsEvaluated", r.ballsEvaluated},
        {"ballsAdmissible", r.ballsAdmissible},
        {"fullPairAverage", r.fullPairAverage},
    };
}

json toJson(const PropertyAReport& r) {
    json rounds = json::array();
    for (const double v : r.rounds) rounds.push_back(number(v));
    return {
        {"cEstimate", number(r.cEstimate)},
        {"witnessCenter", toJson(r.witnessCenter)},
        {"witnessRadius", number(r.witnessRadius)},
        {"perRadius", toJson(r.perRadius)},
        {"rounds", rounds},
    };
}

json toJson(const AtlasReport& r) {
    json conds = json::array();
    for (const auto& c : r.conditions) {
        json e{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
        e["witness"] = c.witness ? toJson(*c.witness) : json(nullptr);
        conds.push_back(std::move(e));
    }
    return {{"allPassed", r.allPassed()}, {"conditions", conds}};
}

json toJson(const CaseResult& r) {
    json metrics = json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = number(v);
    json tolerances = json::object();
    for (const auto& [k, v] : r.tolerances) tolerances[k] = number(v);
    json traces = json::object();
    for (const auto& [k, v] : r.traces) traces[k] = toJson(v);
    json assertions = json::array();
    for (const auto& a : r.assertions) {
        assertions.push_back({{"name", a.name},
                              {"passed", a.passed},
                              {"value", number(a.value)},
                              {"bound", number(a.bound)},
                              {"detail", a.detail}});
    }
    return {
        {"caseId", r.caseId},
        {"seed", r.seed},
        {"verdict", toString(r.verdict)},
        {"metrics", metrics},
        {"toleranceUsed", tolerances},
        {"traces", traces},
        {"assertions", assertions},
        {"notes", r.notes},
    };
}

std::string dumpJson(const json& j) { return j.dump(2) + "\n"; }

void writeTraceCsv(const std::filesystem::path& file, const Trace& trace) {
    std::string text = "x,y\n";
    for (const auto& [x, y] : trace) text += formatNumber(x) + "," + formatNumber(y) + "\n";
    writeText(file, text);
}

std::vector<std::filesystem::path> writeCaseResult(const CaseResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    const auto jsonPath = dir / (r.caseId + ".json");
    writeText(jsonPath, dumpJson(toJson(r)));
    written.push_back(jsonPath);
    for (const auto& [name, trace] : r.traces) {
        const auto csv = dir / (r.caseId + "." + name + ".csv");
        writeTraceCsv(csv, trace);
        written.push_back(csv);
    }
    return written;
}

std::string mergeReports(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw InvalidInput("report merge: not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::ostringstream out;
    out << "caseId,verdict,seed,assertionsPassed,assertionsTotal,failedAssertions\n";
    std::size_t rows = 0;
    for (const auto& f : files) {
        std::ifstream in(f);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error&) {
            throw InvalidInput("report merge: invalid JSON in " + f.string());
        }
        if (!j.is_object() || !j.contains("caseId") || !j.contains("verdict") || !j.contains("assertions")) continue;
        std::size_t passed = 0;
        std::string failed;
        for (const auto& a : j.at("assertions")) {
            if (a.value("passed", false)) {
                ++passed;
            } else {
                if (!failed.empty()) failed += ";";
                failed += a.value("name", std::string{});
            }
        }
        out << csvField(j.at("caseId").get<std::string>()) << "," << j.at("verdict").get<std::string>() << ","
            << j.value("seed", std::uint64_t{0}) << "," << passed << "," << j.at("assertions").size() << ","
            << csvField(failed) << "\n";
        ++rows;
    }
    if (rows == 0) throw InvalidInput("report merge: no case results in " + dir.string());
    return out.str();
}

}  // namespace campanato
