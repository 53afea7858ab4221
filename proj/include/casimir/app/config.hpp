#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/engine.hpp"
#include "casimir/layers.hpp"
#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"
#include "json.hpp"

namespace casimir::app {

/// One entry of the [structure] regions list, left to right.
struct Region {
  enum class Role { wall_layer, terminator, gap, plate };
  Role role = Role::wall_layer;
  std::string material;  // "mirror" for perfect mirrors
  double thickness = 0.0;  // meters; unused for terminators and mirror plates
  int line = 0;
  int column = 0;

  bool is_mirror() const { return material == "mirror"; }
  /// Canonical token, with full-precision thickness.
  std::string token() const;
};

struct OutputTarget {
  std::string format;  // csv | json
  std::string path;
};

struct RunConfig {
  std::map<std::string, DispersionModel> materials;
  std::vector<Region> regions;
  double temperature = 0.0;
  ForceMethod method = ForceMethod::exact_difference;
  QuadratureSpec quadrature;
  std::optional<ZeroTermPolicy> zero_term_policy;
  std::vector<OutputTarget> outputs;

  ThermalOptions thermal() const { return {temperature, zero_term_policy}; }
};

/// RunConfig with only the builtin `vacuum` material.
RunConfig default_config();

/// Parses the sectioned key = value format. Throws ConfigError with line/column.
RunConfig parse_config_text(std::string_view text);
/// Parses a JSON config, or a JSON report carrying one under "config".
RunConfig parse_config_json(const nlohmann::json& doc);
/// Reads `path` and dispatches on its content (JSON if it starts with '{').
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

/// Parses one region token, e.g. "gap:vacuum:1e-6", "plate:mirror", "gold:semi-infinite".
Region parse_region(std::string_view token, int line = 0, int column = 0);

enum class Topology { two_wall, cavity };

Topology topology(const RunConfig& config);

/// wall | gap | wall.
struct TwoWallSetup {
  Wall left;
  DispersionModel medium;
  double width;
  Wall right;

  InterspaceView view() const { return InterspaceView::between(left, medium, width, right); }
};

TwoWallSetup build_two_wall(const RunConfig& config);
CavityConfig build_cavity(const RunConfig& config);

/// Interspace medium name (the material of the first gap).
std::string gap_material(const RunConfig& config);

}  // namespace casimir::app
