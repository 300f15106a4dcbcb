#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ahosm/simulate.hpp"

namespace ahosm {

/// A fully assembled, validated scenario: stabilizer + adaptive law +
/// uncertainty model + simulation parameters. Round-trips through
/// parse_scenario / serialize_scenario.
struct Scenario {
    StabilizerKind stabilizer = StabilizerKind::hong;
    ChainConfig chain;  // valid when stabilizer == hong
    bool betas_overridden = false;
    AdaptiveConfig adaptive;
    UncertaintyModel uncertainty;
    StateVector z0;
    double dt = 1e-4;
    double t_final = 1.0;
    Integrator method = Integrator::euler;
    ControlLaw law = ControlLaw::adaptive;
    int record_stride = 1;
    std::uint64_t seed = 1;
    double blowup_guard = 1e12;
};

SimulationSpec to_simulation_spec(const Scenario& sc);

/// Parses the line-oriented scenario format. Unknown sections/keys and
/// malformed values raise ParseError with origin:line:col diagnostics.
Scenario parse_scenario(std::string_view text, const std::string& origin);

/// Canonical serialization (fixed section/key order, shortest round-trip
/// number formatting); parse(serialize(s)) reproduces s.
std::string serialize_scenario(const Scenario& sc);

/// Compiled-in scenarios: paper-order1, paper-order3, order3-certified.
const std::vector<std::string>& builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);
Scenario builtin_scenario(const std::string& name);

/// Loads a scenario from a file path, or by built-in name.
Scenario load_scenario_file(const std::string& path);
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace ahosm
