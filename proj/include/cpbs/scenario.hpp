// scenario.hpp — scenario configuration, strict key=value parsing, data-file generation

#pragma once

#include "cpbs/dynamics.hpp"
#include "cpbs/model.hpp"
#include "cpbs/spectral.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpbs::scenario {

enum class Kind { Spectrum, Evolve, Indicators, Covariance, DephasingSweep };

Kind kind_from_name(const std::string& name);
std::string to_string(Kind kind);

struct ThetaGrid {
    double start{0.0};
    double stop{3.141592653589793};
    int count{1001};

    std::vector<double> points() const;
};

struct ScenarioConfig {
    Kind kind{Kind::Spectrum};
    model::ModelParams params;
    dynamics::DrainRates drains;
    std::vector<double> dephasing_rates{0.01, 0.1, 1.0};
    dynamics::RateUnit dephasing_unit{dynamics::RateUnit::GHz};
    ThetaGrid grid;
    std::string output_dir{"out"};
    double jp_ueV{100.0};
};

// Benchmark configuration: Delta=0.05, gamma=0.005, J=4, Jp=1, delta1=delta2=0.5,
// Gamma1=Gamma2=1e-4, theta in [0, pi] with 1001 points, Jp = 100 micro-eV.
ScenarioConfig default_benchmark();

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& file, int line, int col, const std::string& message);
    int line;
    int col;
};

// Merge an INI-style file into the config. Sections [model] [drains] [dephasing]
// [grid] [units] [output]; '#' and ';' start comments; unknown sections or keys
// are rejected with line:column positions.
void apply_file(ScenarioConfig& config, const std::filesystem::path& path);
void apply_text(ScenarioConfig& config, const std::string& text, const std::string& file_name);

// Apply a "section.key=value" override (the CLI --set flag).
void apply_override(ScenarioConfig& config, const std::string& assignment);

// Reject out-of-domain values (grid count < 2, stop <= start, negative rates, ...).
void validate(const ScenarioConfig& config);

// Run the configured scenario and return the written files.
std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& config);

} // namespace cpbs::scenario
