#include "campanato/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "campanato/error.hpp"

namespace campanato {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InvalidInput("config: '" + path + "' " + what);
}

void requireObject(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path.empty() ? "<root>" : path, "must be an object");
}

void checkKeys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    requireObject(j, path);
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!ok.contains(key)) throw InvalidInput("config: unknown key '" + join(path, key) + "'");
    }
}

const json& required(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) fail(join(path, key), "is required");
    return j.at(key);
}

double asNumber(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

std::int64_t asInteger(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "must be an integer");
    return v.get<std::int64_t>();
}

int asInt(const json& v, const std::string& path) {
    const std::int64_t x = asInteger(v, path);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) fail(path, "is out of range");
    return static_cast<int>(x);
}

std::string asString(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "must be a string");
    return v.get<std::string>();
}

bool asBool(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "must be a boolean");
    return v.get<bool>();
}

std::vector<double> asVector(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(asNumber(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

double numberOr(const json& j, const std::string& key, const std::string& path, double fallback) {
    return j.contains(key) ? asNumber(j.at(key), join(path, key)) : fallback;
}

int intOr(const json& j, const std::string& key, const std::string& path, int fallback) {
    return j.contains(key) ? asInt(j.at(key), join(path, key)) : fallback;
}

Point asPoint(const json& v, const std::string& path) {
    const std::vector<double> c = asVector(v, path);
    if (c.empty() || c.size() > static_cast<std::size_t>(kMaxDimension)) fail(path, "must have 1 to 4 coordinates");
    return Point(std::span<const double>(c));
}

Box asBox(const json& v, const std::string& path) {
    checkKeys(v, path, {"lo", "hi"});
    Box b{asVector(required(v, "lo", path), join(path, "lo")), asVector(required(v, "hi", path), join(path, "hi"))};
    try {
        b.validate();
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
    return b;
}

std::map<std::string, double> asParams(const json& v, const std::string& path) {
    requireObject(v, path);
    std::map<std::string, double> out;
    for (const auto& [key, value] : v.items()) out[key] = asNumber(value, join(path, key));
    return out;
}

BoundaryFunction asBoundaryFunction(const json& v, const std::string& path) {
    checkKeys(v, path, {"name", "params"});
    const std::string name = asString(required(v, "name", path), join(path, "name"));
    const auto params = v.contains("params") ? asParams(v.at("params"), join(path, "params"))
                                             : std::map<std::string, double>{};
    try {
        return makeBoundaryFunction(name, params);
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
}

json readJsonFile(const std::filesystem::path& file, const std::string& path) {
    std::ifstream in(file);
    if (!in) fail(path, "cannot open file " + file.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(path, std::string("is not valid JSON: ") + e.what());
    }
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& baseDir) {
    return p.is_absolute() || baseDir.empty() ? p : baseDir / p;
}

/// Inline atlas object, or {"file": path}.
std::shared_ptr<const Atlas> atlasOrFile(const json& v, const std::string& path, const std::filesystem::path& base) {
    requireObject(v, path);
    if (v.contains("file")) {
        checkKeys(v, path, {"file"});
        const auto file = resolve(asString(v.at("file"), join(path, "file")), base);
        return parseAtlas(readJsonFile(file, path), path);
    }
    return parseAtlas(v, path);
}

SamplerConfig parseSampler(const json& v, const std::string& path) {
    checkKeys(v, path,
              {"seed", "centerCount", "radiusLadder", "quadratureNodesPerBall", "pairSampleCount", "refinementRounds",
               "quadrature", "tensorNodesPerAxis", "fixedCenters", "centerWindow", "boundaryFraction"});
    SamplerConfig s;
    if (v.contains("seed")) {
        const json& seed = v.at("seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
            fail(join(path, "seed"), "must be a non-negative integer");
        }
        s.seed = seed.get<std::uint64_t>();
    }
    s.centerCount = intOr(v, "centerCount", path, s.centerCount);
    if (v.contains("radiusLadder")) {
        const std::string lp = join(path, "radiusLadder");
        const json& l = v.at("radiusLadder");
        checkKeys(l, lp, {"rMax", "factor", "count"});
        s.radiusLadder.rMax = numberOr(l, "rMax", lp, s.radiusLadder.rMax);
        s.radiusLadder.factor = numberOr(l, "factor", lp, s.radiusLadder.factor);
        s.radiusLadder.count = intOr(l, "count", lp, s.radiusLadder.count);
    }
    s.quadratureNodesPerBall = intOr(v, "quadratureNodesPerBall", path, s.quadratureNodesPerBall);
    s.pairSampleCount = intOr(v, "pairSampleCount", path, s.pairSampleCount);
    s.refinementRounds = intOr(v, "refinementRounds", path, s.refinementRounds);
    if (v.contains("quadrature")) {
        const std::string q = asString(v.at("quadrature"), join(path, "quadrature"));
        if (q == "monteCarlo") {
            s.quadrature = QuadratureMode::MonteCarlo;
        } else if (q == "tensor") {
            s.quadrature = QuadratureMode::Tensor;
        } else {
            fail(join(path, "quadrature"), "must be \"monteCarlo\" or \"tensor\"");
        }
    }
    s.tensorNodesPerAxis = intOr(v, "tensorNodesPerAxis", path, s.tensorNodesPerAxis);
    if (v.contains("fixedCenters")) {
        const std::string fp = join(path, "fixedCenters");
        const json& fc = v.at("fixedCenters");
        if (!fc.is_array()) fail(fp, "must be an array of points");
        for (std::size_t i = 0; i < fc.size(); ++i) s.fixedCenters.push_back(asPoint(fc[i], fp + "[" + std::to_string(i) + "]"));
    }
    if (v.contains("centerWindow")) s.centerWindow = asBox(v.at("centerWindow"), join(path, "centerWindow"));
    s.boundaryFraction = numberOr(v, "boundaryFraction", path, s.boundaryFraction);
    try {
        s.validate();
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
    return s;
}

SeminormSpec parseSeminorm(const json& v, const std::string& path, int dimension,
                           const std::optional<MetricParams>& metric) {
    checkKeys(v, path, {"kind", "lambda", "p", "gamma", "normalization", "rotation"});
    SeminormSpec s;
    try {
        if (v.contains("kind")) s.kind = parseSeminormKind(asString(v.at("kind"), join(path, "kind")));
        if (v.contains("normalization")) {
            s.normalization = parseNormalization(asString(v.at("normalization"), join(path, "normalization")));
        }
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
    s.lambda = numberOr(v, "lambda", path, s.lambda);
    s.p = numberOr(v, "p", path, s.p);
    s.gamma = numberOr(v, "gamma", path, metric ? metric->gamma() : s.gamma);
    if (v.contains("rotation")) s.rotation = parseIsometry(v.at("rotation"), dimension, join(path, "rotation"));
    try {
        s.validate();
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
    return s;
}

ExtendConfig parseExtend(const json& v, const std::string& path, const std::filesystem::path& base) {
    checkKeys(v, path, {"points", "ceiling", "mcshane", "atlas"});
    ExtendConfig e;
    if (v.contains("points")) {
        const std::string pp = join(path, "points");
        const json& pts = v.at("points");
        if (!pts.is_array()) fail(pp, "must be an array of points");
        for (std::size_t i = 0; i < pts.size(); ++i) e.points.push_back(asPoint(pts[i], pp + "[" + std::to_string(i) + "]"));
    }
    if (v.contains("ceiling")) e.ceiling = asNumber(v.at("ceiling"), join(path, "ceiling"));
    if (v.contains("mcshane")) {
        const std::string mp = join(path, "mcshane");
        const json& m = v.at("mcshane");
        checkKeys(m, mp, {"phi", "window", "gamma", "constant", "nodesPerAxis", "refine"});
        McShaneConfig mc{asBoundaryFunction(required(m, "phi", mp), join(mp, "phi")),
                         asBox(required(m, "window", mp), join(mp, "window")), numberOr(m, "gamma", mp, 1.0),
                         std::nullopt, {}};
        if (!(mc.gamma > 0.0 && mc.gamma <= 1.0)) fail(join(mp, "gamma"), "must lie in (0, 1]");
        if (m.contains("constant")) {
            mc.constant = asNumber(m.at("constant"), join(mp, "constant"));
            if (*mc.constant < 0.0) fail(join(mp, "constant"), "must be non-negative");
        }
        mc.options.nodesPerAxis = intOr(m, "nodesPerAxis", mp, 0);
        if (mc.options.nodesPerAxis < 0 || mc.options.nodesPerAxis == 1) fail(join(mp, "nodesPerAxis"), "must be 0 or >= 2");
        if (m.contains("refine")) mc.options.refine = asBool(m.at("refine"), join(mp, "refine"));
        e.mcshane = std::move(mc);
    }
    if (v.contains("atlas")) e.atlas = atlasOrFile(v.at("atlas"), join(path, "atlas"), base);
    return e;
}

}  // namespace

Isometry parseIsometry(const json& j, int dimension, const std::string& path) {
    checkKeys(j, path, {"linear", "translation", "plane", "degrees", "radians"});
    std::vector<double> t(static_cast<std::size_t>(dimension), 0.0);
    if (j.contains("translation")) {
        t = asVector(j.at("translation"), join(path, "translation"));
        if (t.size() != static_cast<std::size_t>(dimension)) fail(join(path, "translation"), "has the wrong length");
    }
    if (j.contains("plane")) {
        if (j.contains("linear")) fail(path, "cannot combine 'plane' with 'linear'");
        if (j.contains("degrees") == j.contains("radians")) fail(path, "needs exactly one of 'degrees' or 'radians'");
        const std::vector<double> plane = asVector(j.at("plane"), join(path, "plane"));
        if (plane.size() != 2) fail(join(path, "plane"), "must list two axis indices");
        const int a = static_cast<int>(plane[0]);
        const int b = static_cast<int>(plane[1]);
        if (a != plane[0] || b != plane[1] || a < 0 || b < 0 || a >= dimension || b >= dimension || a == b) {
            fail(join(path, "plane"), "must list two distinct 0-based axes");
        }
        const double angle = j.contains("degrees") ? asNumber(j.at("degrees"), join(path, "degrees")) *
                                                         std::numbers::pi / 180.0
                                                   : asNumber(j.at("radians"), join(path, "radians"));
        return Isometry::translation(t).compose(Isometry::planeRotation(dimension, a, b, angle));
    }
    if (j.contains("degrees") || j.contains("radians")) fail(path, "an angle needs 'plane'");
    std::vector<double> q;
    if (j.contains("linear")) {
        q = asVector(j.at("linear"), join(path, "linear"));
    } else {
        q = Isometry::identity(dimension).linear();
    }
    try {
        return Isometry(dimension, q, t);
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
}

std::shared_ptr<const Atlas> parseAtlas(const json& j, const std::string& path) {
    checkKeys(j, path, {"dimension", "gamma", "delta", "patches"});
    auto atlas = std::make_shared<Atlas>();
    atlas->dimension = asInt(required(j, "dimension", path), join(path, "dimension"));
    if (atlas->dimension < 2 || atlas->dimension > kMaxDimension) fail(join(path, "dimension"), "must be 2 to 4");
    atlas->gamma = numberOr(j, "gamma", path, 1.0);
    atlas->delta = asNumber(required(j, "delta", path), join(path, "delta"));
    const std::string pp = join(path, "patches");
    const json& patches = required(j, "patches", path);
    if (!patches.is_array()) fail(pp, "must be an array");
    for (std::size_t i = 0; i < patches.size(); ++i) {
        const std::string ip = pp + "[" + std::to_string(i) + "]";
        const json& pj = patches[i];
        checkKeys(pj, ip, {"toChart", "box", "phi", "holderConstant"});
        AtlasPatch patch;
        patch.toChart = pj.contains("toChart") ? parseIsometry(pj.at("toChart"), atlas->dimension, join(ip, "toChart"))
                                               : Isometry::identity(atlas->dimension);
        patch.box = asBox(required(pj, "box", ip), join(ip, "box"));
        if (pj.contains("phi")) patch.phi = asBoundaryFunction(pj.at("phi"), join(ip, "phi"));
        patch.holderConstant = numberOr(pj, "holderConstant", ip, 0.0);
        atlas->patches.push_back(std::move(patch));
    }
    try {
        atlas->validateStructure();
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
    return atlas;
}

std::shared_ptr<const Domain> parseDomain(const json& j, const std::string& path,
                                          const std::filesystem::path& baseDir) {
    requireObject(j, path);
    const std::string type = asString(required(j, "type", path), join(path, "type"));
    try {
        if (type == "strip") {
            checkKeys(j, path, {"type"});
            return makeDomain(Strip{});
        }
        if (type == "halfLine") {
            checkKeys(j, path, {"type"});
            return makeDomain(HalfLine{});
        }
        if (type == "cusp") {
            checkKeys(j, path, {"type", "gamma"});
            const double g = numberOr(j, "gamma", path, 0.5);
            if (!(g > 0.0 && g <= 1.0)) fail(join(path, "gamma"), "must lie in (0, 1]");
            return makeDomain(CuspDomain{g});
        }
        if (type == "elementary") {
            checkKeys(j, path, {"type", "dimension", "gamma", "phi", "holderConstant", "window"});
            ElementaryDomain e;
            e.dimension = intOr(j, "dimension", path, 2);
            e.gamma = numberOr(j, "gamma", path, 1.0);
            e.phi = asBoundaryFunction(required(j, "phi", path), join(path, "phi"));
            e.holderConstant = numberOr(j, "holderConstant", path, 0.0);
            if (j.contains("window")) e.window = asBox(j.at("window"), join(path, "window"));
            return makeDomain(std::move(e));
        }
        if (type == "cuboid") {
            checkKeys(j, path, {"type", "box", "toChart"});
            Box box = asBox(required(j, "box", path), join(path, "box"));
            const int n = box.dimension();
            Isometry iso = j.contains("toChart") ? parseIsometry(j.at("toChart"), n, join(path, "toChart"))
                                                 : Isometry::identity(n);
            return makeDomain(CuboidDomain{std::move(iso), std::move(box)});
        }
        if (type == "fullSpace") {
            checkKeys(j, path, {"type", "dimension"});
            return makeDomain(FullSpace{intOr(j, "dimension", path, 2)});
        }
        if (type == "atlas") {
            checkKeys(j, path, {"type", "atlas"});
            return makeDomain(AtlasDomain{atlasOrFile(required(j, "atlas", path), join(path, "atlas"), baseDir)});
        }
        if (type == "mapped") {
            checkKeys(j, path, {"type", "base", "map"});
            auto base = parseDomain(required(j, "base", path), join(path, "base"), baseDir);
            Isometry map = parseIsometry(required(j, "map", path), base->dimension(), join(path, "map"));
            return makeDomain(MappedDomain{std::move(base), std::move(map)});
        }
    } catch (const InvalidInput& e) {
        const std::string what = e.what();
        if (what.rfind("config:", 0) == 0) throw;
        fail(path, what);
    }
    fail(join(path, "type"),
         "must be one of strip, halfLine, cusp, elementary, cuboid, fullSpace, atlas, mapped (got '" + type + "')");
}

ScalarField ExperimentConfig::makeField() const {
    if (!field) throw InvalidInput("config: 'field' is required for this command");
    return builtinField(field->name, field->params, domain);
}

ExperimentConfig parseExperimentConfig(const json& doc, const std::filesystem::path& baseDir) {
    checkKeys(doc, "", {"metric", "domain", "field", "seminorm", "sampler", "extend", "output"});
    ExperimentConfig cfg;
    if (doc.contains("metric")) {
        const json& m = doc.at("metric");
        checkKeys(m, "metric", {"dimension", "gamma"});
        try {
            cfg.metric = MetricParams(asInt(required(m, "dimension", "metric"), "metric.dimension"),
                                      numberOr(m, "gamma", "metric", 1.0));
        } catch (const InvalidInput& e) {
            const std::string what = e.what();
            if (what.rfind("config:", 0) == 0) throw;
            fail("metric", what);
        }
    }
    cfg.domain = parseDomain(required(doc, "domain", ""), "domain", baseDir);
    const int n = cfg.domain->dimension();
    if (cfg.metric && cfg.metric->dimension() != n) fail("metric.dimension", "does not match the domain dimension");
    if (doc.contains("field")) {
        const json& f = doc.at("field");
        checkKeys(f, "field", {"name", "params"});
        FieldConfig fc{asString(required(f, "name", "field"), "field.name"),
                       f.contains("params") ? asParams(f.at("params"), "field.params")
                                            : std::map<std::string, double>{}};
        cfg.field = std::move(fc);
    }
    cfg.seminorm = parseSeminorm(doc.contains("seminorm") ? doc.at("seminorm") : json::object(), "seminorm", n,
                                 cfg.metric);
    if (doc.contains("sampler")) cfg.sampler = parseSampler(doc.at("sampler"), "sampler");
    for (std::size_t i = 0; i < cfg.sampler.fixedCenters.size(); ++i) {
        if (cfg.sampler.fixedCenters[i].dimension() != n) {
            fail("sampler.fixedCenters[" + std::to_string(i) + "]", "does not match the domain dimension");
        }
    }
    if (cfg.sampler.centerWindow && cfg.sampler.centerWindow->dimension() != n) {
        fail("sampler.centerWindow", "does not match the domain dimension");
    }
    if (doc.contains("extend")) cfg.extend = parseExtend(doc.at("extend"), "extend", baseDir);
    for (std::size_t i = 0; i < cfg.extend.points.size(); ++i) {
        if (cfg.extend.points[i].dimension() != n && !cfg.extend.mcshane) {
            fail("extend.points[" + std::to_string(i) + "]", "does not match the domain dimension");
        }
    }
    if (doc.contains("output")) cfg.outputDir = asString(doc.at("output"), "output");
    if (cfg.field) {
        // Catalog errors surface here, before any command runs.
        try {
            (void)cfg.makeField();
        } catch (const InvalidInput& e) {
            fail("field", e.what());
        }
    }
    return cfg;
}

ExperimentConfig loadExperimentConfig(const std::filesystem::path& file) {
    const json doc = readJsonFile(file, file.string());
    return parseExperimentConfig(doc, file.parent_path());
}

}  // namespace campanato
