#include "filtlab/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace filtlab {

using nlohmann::json;

std::string save_model(const RandomTimeModel& model,
                       const std::optional<std::vector<PathTable>>& drivers) {
    json doc;
    doc["schema"] = model_schema_id;
    doc["grid"] = model.grid().times();
    doc["weights"] = model.weights();

    json parts = json::array();
    for (int k = 0; k < model.f().points(); ++k) parts.push_back(model.f().at(k).blocks());
    doc["partitions"] = parts;

    // tau: grid index 1..K per scenario, -1 for +infinity.
    json tau = json::array();
    for (int i = 0; i < model.scenarios(); ++i)
        tau.push_back(model.tau(i) == tau_infinite ? -1 : model.tau(i));
    doc["tau"] = tau;

    if (drivers) {
        json ds = json::array();
        for (const auto& d : *drivers) ds.push_back(d.values);
        doc["drivers"] = ds;
    }
    return doc.dump(2);
}

RandomTimeModel load_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("model document is not valid JSON: ") + e.what());
    }
    FILTLAB_REQUIRE(doc.value("schema", "") == model_schema_id, ConfigError,
                    "unsupported model schema (expected " + std::string(model_schema_id) + ")");
    FILTLAB_REQUIRE(doc.contains("grid") && doc.contains("weights") && doc.contains("tau") &&
                        doc.contains("partitions"),
                    ConfigError, "model document missing required keys");

    TimeGrid grid(doc["grid"].get<std::vector<double>>());
    std::vector<double> weights = doc["weights"].get<std::vector<double>>();
    const int n = static_cast<int>(weights.size());

    std::vector<Partition> parts;
    for (const auto& blocks : doc["partitions"])
        parts.emplace_back(n, blocks.get<std::vector<std::vector<int>>>());
    Filtration filtration(std::move(parts));

    std::vector<int> tau;
    for (const auto& t : doc["tau"]) {
        const int v = t.get<int>();
        tau.push_back(v < 0 ? tau_infinite : v);
    }

    FiniteFilteredSpace space(std::move(weights), std::move(grid), std::move(filtration));
    return RandomTimeModel(std::move(space), std::move(tau));
}

void save_model_file(const RandomTimeModel& model, const std::string& path,
                     const std::optional<std::vector<PathTable>>& drivers) {
    std::ofstream out(path);
    FILTLAB_REQUIRE(out.good(), ConfigError, "cannot open model file for writing: " + path);
    out << save_model(model, drivers) << "\n";
}

RandomTimeModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    FILTLAB_REQUIRE(in.good(), ConfigError, "cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_model(buffer.str());
}

}  // namespace filtlab
