#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "urysohn/config.hpp"
#include "urysohn/controls.hpp"
#include "urysohn/experiments.hpp"
#include "urysohn/solver.hpp"

namespace urysohn {

/// Column order of every experiment CSV.
inline constexpr const char* kCsvHeader = "epsilon,r0,delta_used,distance,pass";

nlohmann::json constants_json(const Constants& c);

/// {nodes, values, iterations, residual, converged, p_norm, beta_star}
nlohmann::json trajectory_json(const Trajectory& t, const Constants& c, double p);

nlohmann::json robustness_json(const RunConfig& cfg, const std::vector<RobustnessReport>& rows);
std::string robustness_csv(const std::vector<RobustnessReport>& rows);

nlohmann::json density_json(const RunConfig& cfg, const std::vector<DensityReport>& reports);
std::string density_csv(const std::vector<DensityReport>& reports);

/// Control file: {"grid": {"cells_per_axis", "domain"}, "values": [[...], ...]}.
nlohmann::json control_file_json(const Control& u);
/// Throws ConfigError when the grid fingerprint or shape does not match `sys`.
Control read_control_file(const nlohmann::json& doc, const DiscreteSystem& sys);

}  // namespace urysohn
