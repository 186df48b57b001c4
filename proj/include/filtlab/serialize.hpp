#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "filtlab/random_time.hpp"

namespace filtlab {

// Versioned structured-text schema for a random-time model: grid, weights,
// optional driver paths, partitions and tau values.  Round-trip stable: a
// saved model parses back equal to the original.
inline constexpr const char* model_schema_id = "filtlab/model-v1";

std::string save_model(const RandomTimeModel& model,
                       const std::optional<std::vector<PathTable>>& drivers = std::nullopt);
RandomTimeModel load_model(const std::string& text);

void save_model_file(const RandomTimeModel& model, const std::string& path,
                     const std::optional<std::vector<PathTable>>& drivers = std::nullopt);
RandomTimeModel load_model_file(const std::string& path);

}  // namespace filtlab
