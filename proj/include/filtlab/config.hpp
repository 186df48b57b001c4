#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "filtlab/errors.hpp"

namespace filtlab {

inline constexpr const char* config_schema_id = "filtlab/config-v1";
inline constexpr const char* output_dir_env = "FILTLAB_OUT";

// One density request in a scenario config.
struct DensityConfig {
    std::string family;              // f_infinity | fh | exponential | generic
    std::string f_expr = "1";        // terminal factor as a function of the terminal driver value
    std::vector<double> z_table;     // per-time shape (fh family)
    std::vector<double> f_proc;      // per-time dm integrand (exponential family)
    std::vector<double> h_proc;      // per-time dN integrand (exponential family)
    std::string rho_expr;            // generic family: terminal expression for rho
};

struct ClaimConfig {
    std::vector<double> z_table;     // per-time payout profile
    std::string f_expr;              // optional terminal factor (empty: plain z_tau claim)
};

struct RefinementConfig {
    std::vector<int> step_counts = {8, 16, 32, 64, 128};
    double min_order = 0.9;
};

struct KusuokaConfig {
    int paths = 10000;
    int steps = 50;
    double coupling = 2.0;
    double level = 0.01;
};

struct ScenarioConfig {
    std::string mode = "exact";  // exact | mc
    std::uint64_t seed = 1;
    double tol = 1e-12;
    std::string scenario;          // catalog name
    int steps = 4;                 // grid size for exact scenarios
    std::string model_file;        // alternative: explicit model document
    std::vector<DensityConfig> densities;
    std::vector<ClaimConfig> claims;
    std::vector<std::string> suites;  // hypothesis | measure | representation | refinement | kusuoka
    RefinementConfig refinement;
    KusuokaConfig kusuoka;
    std::string out_dir;           // empty: environment variable, then ./filtlab_out
    bool parallel = false;

    std::string config_hash;       // filled by the parser, FNV-1a of the raw text
};

// Parse + validate.  Throws ConfigError with a line-level message on schema
// violations; never produces a partially-valid config.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

}  // namespace filtlab
