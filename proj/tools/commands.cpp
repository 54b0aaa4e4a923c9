#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "campanato/cases.hpp"
#include "campanato/config.hpp"
#include "campanato/error.hpp"
#include "campanato/extend.hpp"
#include "campanato/report.hpp"
#include "campanato/rng.hpp"

namespace campanato::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 42;

ExperimentConfig load(const CommonFlags& f) {
    ExperimentConfig cfg = loadExperimentConfig(f.config);
    if (f.seed) cfg.sampler.seed = *f.seed;
    cfg.sampler.refinementRounds += f.refine;
    if (f.out) cfg.outputDir = *f.out;
    return cfg;
}

json header(const std::string& command, const ExperimentConfig& cfg) {
    json h{{"command", command}, {"domain", cfg.domain->kind()}, {"seed", cfg.sampler.seed}};
    if (cfg.field) h["field"] = cfg.field->name;
    return h;
}

/// Prints the document; also writes <out>/<stem>.json and the traces when an output directory is set.
void emit(const json& doc, const std::string& stem, const ExperimentConfig& cfg,
          const std::vector<std::pair<std::string, Trace>>& traces = {}) {
    const std::string text = dumpJson(doc);
    std::cout << text;
    if (!cfg.outputDir) return;
    std::filesystem::create_directories(*cfg.outputDir);
    std::ofstream out(*cfg.outputDir / (stem + ".json"), std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw InvalidInput("cannot write to " + cfg.outputDir->string());
    for (const auto& [name, trace] : traces) writeTraceCsv(*cfg.outputDir / (stem + "." + name + ".csv"), trace);
}

json valuesAt(const ScalarField& f, const std::vector<Point>& points) {
    json a = json::array();
    for (const auto& p : points) a.push_back({{"point", toJson(p)}, {"value", f(p)}});
    return a;
}

const ElementaryDomain& requireElementary(const Domain& d, const std::string& command) {
    const auto* e = std::get_if<ElementaryDomain>(&d.variant());
    if (!e) throw InvalidInput(command + ": domain.type must be \"elementary\"");
    return *e;
}

}  // namespace

int seminormEstimate(const CommonFlags& f) {
    const ExperimentConfig cfg = load(f);
    const ScalarField field = cfg.makeField();
    const SeminormReport rep = estimateSeminorm(field, *cfg.domain, cfg.seminorm, cfg.sampler);
    json doc = header("seminorm estimate", cfg);
    doc["seminorm"] = toJson(rep);
    emit(doc, "seminorm-estimate", cfg, {{"perRadius", rep.perRadiusTrace}});
    return kPass;
}

int domainCheckA(const CommonFlags& f) {
    const ExperimentConfig cfg = load(f);
    const MetricParams m = cfg.metric ? *cfg.metric : MetricParams(cfg.domain->dimension(), cfg.seminorm.gamma);
    const PropertyAReport rep = checkPropertyA(*cfg.domain, m, cfg.sampler);
    json doc = header("domain check-a", cfg);
    doc["gamma"] = m.gamma();
    doc["criticalExponent"] = m.criticalExponent();
    doc["declaredPropertyA"] = cfg.domain->hasPropertyA();
    doc["propertyA"] = toJson(rep);
    if (const auto* e = std::get_if<ElementaryDomain>(&cfg.domain->variant())) {
        const CuspInclusionReport cusp = cuspInclusion(*e, cfg.sampler);
        json c{{"holds", cusp.holds}, {"checked", cusp.checked}};
        if (cusp.vertex) c["vertex"] = toJson(*cusp.vertex);
        if (cusp.violation) c["violation"] = toJson(*cusp.violation);
        doc["cuspCondition"] = std::move(c);
    }
    if (const auto* a = std::get_if<AtlasDomain>(&cfg.domain->variant())) {
        doc["atlas"] = toJson(validateAtlas(*a->atlas, *cfg.domain, cfg.sampler));
    }
    emit(doc, "domain-check-a", cfg, {{"perRadius", rep.perRadius}});
    return kPass;
}

int extendReflect(const CommonFlags& f) {
    const ExperimentConfig cfg = load(f);
    const ElementaryDomain& e = requireElementary(*cfg.domain, "extend reflect");
    const ScalarField field = cfg.makeField();
    const ScalarField ext = reflectExtend(field);
    json doc = header("extend reflect", cfg);
    doc["values"] = valuesAt(ext, cfg.extend.points);

    const SeminormReport onOmega = estimateSeminorm(field, *cfg.domain, cfg.seminorm, cfg.sampler);
    doc["seminormOnDomain"] = toJson(onOmega);
    std::vector<std::pair<std::string, Trace>> traces{{"domain", onOmega.perRadiusTrace}};
    if (cfg.extend.ceiling) {
        const auto upper = makeDomain(ElementaryDomain{
            e.dimension, e.gamma, makeBoundaryFunction("constant", {{"value", *cfg.extend.ceiling}}), 0.0, e.window});
        const SeminormReport onUpper = estimateSeminorm(restrictTo(ext, upper), *upper, cfg.seminorm, cfg.sampler);
        const MetricParams m(e.dimension, e.gamma);
        const double ng = m.criticalExponent();
        const double M = e.holderConstant;
        const double lambda = cfg.seminorm.lambda;
        const double c = std::pow(4.0 * (1.0 + std::pow(2.0, e.gamma) * M), ng);
        doc["seminormExtended"] = toJson(onUpper);
        doc["ratio"] = onUpper.estimate / onOmega.estimate;
        doc["constantCase1"] = std::pow(2.0, cfg.seminorm.p) * std::pow(1.0 + 2.0 * M, ng * (1.0 + lambda));
        doc["constantProof"] = 4.0 * std::pow(c, 1.0 + lambda);
        traces.emplace_back("extended", onUpper.perRadiusTrace);
    }
    emit(doc, "extend-reflect", cfg, traces);
    return kPass;
}

int extendMcShane(const CommonFlags& f) {
    const ExperimentConfig cfg = load(f);
    if (!cfg.extend.mcshane) throw InvalidInput("extend mcshane: 'extend.mcshane' is required");
    const McShaneConfig& mc = *cfg.extend.mcshane;
    const McShaneExtension ext = mcshaneExtend(mc.phi.eval, mc.window, mc.gamma, mc.constant, cfg.sampler, mc.options);
    const int k = mc.window.dimension();

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < ext.gridSize(); ++i) {
        const std::vector<double> y = ext.gridNode(i);
        if (ext(y) != mc.phi(y)) ++mismatches;
    }
    // Pairs with one point in W and one in W enlarged by its width on every side.
    Box wide = mc.window;
    for (std::size_t a = 0; a < wide.lo.size(); ++a) {
        const double w = mc.window.hi[a] - mc.window.lo[a];
        wide.lo[a] -= w;
        wide.hi[a] += w;
    }
    Rng rng(deriveSeed(cfg.sampler.seed, 0x4d435348ULL));
    std::vector<double> x(static_cast<std::size_t>(k));
    std::vector<double> y(static_cast<std::size_t>(k));
    double lip = 0.0;
    for (int s = 0; s < cfg.sampler.pairSampleCount; ++s) {
        mc.window.sample(rng, x);
        wide.sample(rng, y);
        double d = 0.0;
        for (int a = 0; a < k; ++a) d += (x[a] - y[a]) * (x[a] - y[a]);
        if (d == 0.0) continue;
        lip = std::max(lip, std::abs(ext(x) - ext(y)) / std::pow(std::sqrt(d), mc.gamma));
    }

    json values = json::array();
    for (const auto& p : cfg.extend.points) {
        if (p.dimension() != k) throw InvalidInput("extend mcshane: points must have the dimension of the window");
        values.push_back({{"point", toJson(p)}, {"value", ext(p.coords())}});
    }
    json doc = header("extend mcshane", cfg);
    doc["phi"] = mc.phi.name;
    doc["constant"] = ext.constant();
    doc["gamma"] = ext.gamma();
    doc["nodesPerAxis"] = ext.nodesPerAxis();
    doc["gridNodes"] = ext.gridSize();
    doc["gridMismatches"] = mismatches;
    doc["sampledLipPhi"] = holderSeminorm(mc.phi.eval, mc.window, mc.gamma, cfg.sampler);
    doc["sampledLipExtension"] = lip;
    doc["pairs"] = cfg.sampler.pairSampleCount;
    doc["values"] = std::move(values);
    emit(doc, "extend-mcshane", cfg);
    return kPass;
}

int extendAtlas(const CommonFlags& f) {
    const ExperimentConfig cfg = load(f);
    if (!cfg.extend.atlas) throw InvalidInput("extend atlas: 'extend.atlas' is required");
    const auto& atlas = cfg.extend.atlas;
    const ScalarField field = cfg.makeField();
    const AtlasReport check = validateAtlas(*atlas, *cfg.domain, cfg.sampler);
    json doc = header("extend atlas", cfg);
    doc["atlas"] = toJson(check);
    if (!check.allPassed()) {
        emit(doc, "extend-atlas", cfg);
        throw InvalidInput("extend atlas: the atlas does not describe the domain (see the condition report)");
    }
    const PartitionOfUnity pu = makePartitionOfUnity(atlas, cfg.domain.get(), cfg.sampler);
    std::vector<AtlasPart> parts;
    for (std::size_t k = 0; k < pu.size(); ++k) parts.push_back({multiply(field, pu.field(k)), k});
    const AtlasExtensionResult res = atlasExtend(parts, atlas, *cfg.domain, cfg.sampler);
    doc["provenance"] = res.provenance;
    doc["restrictionError"] = res.restrictionError;
    doc["checkedPoints"] = res.checkedPoints;
    doc["values"] = valuesAt(res.F, cfg.extend.points);
    emit(doc, "extend-atlas", cfg);
    return kPass;
}

int caseRun(const std::string& id, const CommonFlags& f) {
    const CaseOptions opts{f.seed.value_or(kDefaultSeed), f.refine};
    const CaseResult res = runCase(id, opts);
    writeCaseResult(res, f.out.value_or("results"));
    std::cout << toString(res.verdict) << "  " << res.caseId << "\n";
    for (const auto& a : res.assertions) {
        if (!a.passed) {
            std::cout << "    failed: " << a.name << " (value " << formatNumber(a.value) << ", bound "
                      << formatNumber(a.bound) << ")\n";
        }
    }
    return res.verdict == Verdict::Pass ? kPass : kCaseFailed;
}

int caseRunAll(const CommonFlags& f) {
    int code = kPass;
    for (const auto& id : caseCatalog()) {
        if (caseRun(id, f) != kPass) code = kCaseFailed;
    }
    const std::filesystem::path dir = f.out.value_or("results");
    std::ofstream(dir / "summary.csv", std::ios::binary | std::ios::trunc) << mergeReports(dir);
    return code;
}

int reportMerge(const std::filesystem::path& dir) {
    const std::string csv = mergeReports(dir);
    std::ofstream(dir / "summary.csv", std::ios::binary | std::ios::trunc) << csv;
    std::cout << csv;
    return kPass;
}

}  // namespace campanato::cli
