#include "filtlab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "filtlab/scenarios.hpp"

namespace filtlab {

using nlohmann::json;

namespace {

std::string fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

void require_type(const json& doc, const std::string& key, json::value_t type) {
    FILTLAB_REQUIRE(doc.contains(key), ConfigError, "config: missing key '" + key + "'");
    const auto& v = doc.at(key);
    const bool numeric_ok = type == json::value_t::number_float &&
                            (v.is_number_float() || v.is_number_integer());
    FILTLAB_REQUIRE(v.type() == type || numeric_ok, ConfigError,
                    "config: key '" + key + "' has the wrong type");
}

std::vector<double> table(const json& j, const std::string& key) {
    if (!j.contains(key)) return {};
    FILTLAB_REQUIRE(j.at(key).is_array(), ConfigError, "config: '" + key + "' must be an array");
    return j.at(key).get<std::vector<double>>();
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    FILTLAB_REQUIRE(doc.is_object(), ConfigError, "config must be a JSON object");
    FILTLAB_REQUIRE(doc.value("schema", "") == config_schema_id, ConfigError,
                    "config: unsupported schema (expected " + std::string(config_schema_id) + ")");

    ScenarioConfig out;
    out.config_hash = fnv1a(text);
    out.mode = doc.value("mode", "exact");
    FILTLAB_REQUIRE(out.mode == "exact" || out.mode == "mc", ConfigError,
                    "config: mode must be 'exact' or 'mc'");
    if (doc.contains("seed")) {
        require_type(doc, "seed", json::value_t::number_unsigned);
        out.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("tol")) {
        require_type(doc, "tol", json::value_t::number_float);
        out.tol = doc.at("tol").get<double>();
        FILTLAB_REQUIRE(out.tol > 0.0, ConfigError, "config: tolerance must be positive");
    }
    out.scenario = doc.value("scenario", "");
    out.model_file = doc.value("model_file", "");
    FILTLAB_REQUIRE(!out.scenario.empty() || !out.model_file.empty() || out.mode == "mc",
                    ConfigError, "config: exact mode needs a scenario name or a model file");
    if (!out.scenario.empty() && out.mode == "exact") {
        bool known = false;
        for (const auto& entry : scenarios::catalog())
            known = known || (entry.name == out.scenario && entry.exact_mode);
        FILTLAB_REQUIRE(known, ConfigError,
                        "config: unknown exact-mode scenario '" + out.scenario + "'");
    }
    if (doc.contains("steps")) {
        out.steps = doc.at("steps").get<int>();
        FILTLAB_REQUIRE(out.steps >= 1 && out.steps <= 12, ConfigError,
                        "config: steps must lie in [1, 12] for exact scenarios");
    }

    if (doc.contains("densities")) {
        FILTLAB_REQUIRE(doc.at("densities").is_array(), ConfigError,
                        "config: densities must be an array");
        static const std::set<std::string> families = {"f_infinity", "fh", "exponential",
                                                       "generic"};
        for (const auto& d : doc.at("densities")) {
            DensityConfig dc;
            dc.family = d.value("family", "");
            FILTLAB_REQUIRE(families.count(dc.family) == 1, ConfigError,
                            "config: unknown density family '" + dc.family + "'");
            dc.f_expr = d.value("F_expr", "1");
            dc.rho_expr = d.value("rho_expr", "");
            dc.z_table = table(d, "z_table");
            dc.f_proc = table(d, "F_proc");
            dc.h_proc = table(d, "H_proc");
            if (dc.family == "generic")
                FILTLAB_REQUIRE(!dc.rho_expr.empty(), ConfigError,
                                "config: generic density needs rho_expr");
            out.densities.push_back(std::move(dc));
        }
    }

    if (doc.contains("claims")) {
        FILTLAB_REQUIRE(doc.at("claims").is_array(), ConfigError,
                        "config: claims must be an array");
        for (const auto& c : doc.at("claims")) {
            ClaimConfig cc;
            cc.z_table = table(c, "z_table");
            FILTLAB_REQUIRE(!cc.z_table.empty(), ConfigError, "config: claim needs z_table");
            cc.f_expr = c.value("F_expr", "");
            out.claims.push_back(std::move(cc));
        }
    }

    if (doc.contains("suites")) {
        FILTLAB_REQUIRE(doc.at("suites").is_array(), ConfigError,
                        "config: suites must be an array");
        static const std::set<std::string> known = {"hypothesis", "measure", "representation",
                                                    "refinement", "kusuoka"};
        for (const auto& s : doc.at("suites")) {
            const std::string name = s.get<std::string>();
            FILTLAB_REQUIRE(known.count(name) == 1, ConfigError,
                            "config: unknown suite '" + name + "'");
            out.suites.push_back(name);
        }
    }
    FILTLAB_REQUIRE(!out.suites.empty(), ConfigError, "config: no suites requested");

    if (doc.contains("refinement")) {
        const auto& r = doc.at("refinement");
        if (r.contains("step_counts"))
            out.refinement.step_counts = r.at("step_counts").get<std::vector<int>>();
        FILTLAB_REQUIRE(out.refinement.step_counts.size() >= 3, ConfigError,
                        "config: refinement needs at least three grid levels");
        out.refinement.min_order = r.value("min_order", 0.9);
    }
    if (doc.contains("kusuoka")) {
        const auto& k = doc.at("kusuoka");
        out.kusuoka.paths = k.value("paths", 10000);
        out.kusuoka.steps = k.value("steps", 50);
        out.kusuoka.coupling = k.value("coupling", 2.0);
        out.kusuoka.level = k.value("level", 0.01);
        FILTLAB_REQUIRE(out.kusuoka.paths >= 100 && out.kusuoka.steps >= 4, ConfigError,
                        "config: kusuoka needs at least 100 paths and 4 steps");
        FILTLAB_REQUIRE(out.kusuoka.level > 0.0 && out.kusuoka.level < 1.0, ConfigError,
                        "config: kusuoka level must lie in (0,1)");
    }

    out.out_dir = doc.value("out_dir", "");
    out.parallel = doc.value("parallel", false);
    return out;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    FILTLAB_REQUIRE(in.good(), ConfigError, "cannot open config: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace filtlab
