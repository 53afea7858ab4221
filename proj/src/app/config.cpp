#include "casimir/app/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir::app {

namespace {

std::string full_precision(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Offset of `part` inside `whole` (both views into the same buffer).
int offset_in(std::string_view whole, std::string_view part) {
  return static_cast<int>(part.data() - whole.data());
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return v;
}

double require_number(std::string_view text, int line, int column, bool allow_inf = false) {
  const auto v = parse_number(text);
  if (!v || (!allow_inf && !std::isfinite(*v))) {
    throw ConfigError("expected a finite number, got '" + std::string(trim(text)) + "'", line,
                      column);
  }
  return *v;
}

int require_int(std::string_view text, int line, int column) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("expected an integer, got '" + std::string(text) + "'", line, column);
  }
  return v;
}

MatsubaraTail parse_tail(std::string_view text, int line, int column) {
  if (text == "none") return MatsubaraTail::none;
  if (text == "integral-tail-estimate") return MatsubaraTail::integral_tail_estimate;
  throw ConfigError("matsubara_tail must be none or integral-tail-estimate", line, column);
}

// Raw key/value description of one material section.
struct MaterialFields {
  std::string kind;
  std::map<std::string, double> values;
  int line = 0;
};

DispersionModel build_material(const std::string& name, const MaterialFields& f) {
  auto get = [&](const char* key, double fallback) {
    const auto it = f.values.find(key);
    return it == f.values.end() ? fallback : it->second;
  };
  std::optional<Oscillator> mu_model;
  if (f.values.count("mu_plasma_freq")) {
    mu_model = Oscillator{get("mu_plasma_freq", 0.0), get("mu_resonance_freq", 0.0),
                          get("mu_damping", 0.0)};
  }
  try {
    if (f.kind == "constant") {
      if (mu_model) throw ConfigError("constant material takes mu_static, not an oscillator");
      return DispersionModel::constant(get("eps_static", 1.0), get("mu_static", 1.0));
    }
    if (f.kind == "drude_lorentz") {
      return DispersionModel::drude_lorentz(get("plasma_freq", 0.0), get("resonance_freq", 0.0),
                                            get("damping", 0.0), mu_model);
    }
    if (f.kind == "plasma") return DispersionModel::plasma(get("plasma_freq", 0.0), mu_model);
    if (f.kind == "mirror") return DispersionModel::perfect_mirror();
  } catch (const DomainError& e) {
    throw ConfigError("material '" + name + "': " + e.what(), f.line, 1);
  }
  throw ConfigError("material '" + name + "': unknown kind '" + f.kind +
                        "' (constant, drude_lorentz, plasma, mirror)",
                    f.line, 1);
}

const std::map<std::string, bool>& material_keys() {
  static const std::map<std::string, bool> keys = {
      {"eps_static", true},     {"mu_static", true},         {"plasma_freq", true},
      {"resonance_freq", true}, {"damping", true},           {"mu_plasma_freq", true},
      {"mu_resonance_freq", true}, {"mu_damping", true}};
  return keys;
}

void apply_run_key(RunConfig& cfg, std::string_view key, std::string_view value, int line,
                   int column) {
  if (key == "temperature") {
    cfg.temperature = require_number(value, line, column);
    if (cfg.temperature < 0.0) throw ConfigError("temperature must be >= 0", line, column);
  } else if (key == "method") {
    try {
      cfg.method = parse_force_method(value);
    } catch (const DomainError& e) {
      throw ConfigError(e.what(), line, column);
    }
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "' in [run]", line, 1);
  }
}

void apply_quadrature_key(RunConfig& cfg, std::string_view key, std::string_view value, int line,
                          int column) {
  QuadratureSpec& q = cfg.quadrature;
  if (key == "rel_tol") {
    q.rel_tol = require_number(value, line, column);
  } else if (key == "abs_floor") {
    q.abs_floor = require_number(value, line, column);
  } else if (key == "max_subdivisions") {
    q.max_subdivisions = require_int(value, line, column);
  } else if (key == "q_cutoff") {
    if (value == "none") {
      q.q_cutoff.reset();
    } else {
      q.q_cutoff = require_number(value, line, column);
    }
  } else if (key == "matsubara_terms") {
    q.matsubara_max_terms = require_int(value, line, column);
  } else if (key == "matsubara_tail") {
    q.matsubara_tail = parse_tail(value, line, column);
  } else if (key == "zero_term_policy") {
    try {
      cfg.zero_term_policy = parse_zero_term_policy(value);
    } catch (const DomainError& e) {
      throw ConfigError(e.what(), line, column);
    }
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "' in [quadrature]", line, 1);
  }
}

void validate_quadrature(const RunConfig& cfg) {
  try {
    cfg.quadrature.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("[quadrature] ") + e.what());
  }
}

// Builds the geometry once so that every structural error surfaces at load time.
void validate_structure(const RunConfig& cfg);

void check_references(const RunConfig& cfg) {
  for (const Region& r : cfg.regions) {
    if (r.is_mirror()) continue;
    if (!cfg.materials.count(r.material)) {
      throw ConfigError("unknown material '" + r.material + "'", r.line, r.column);
    }
  }
}

}  // namespace

std::string Region::token() const {
  switch (role) {
    case Role::terminator: return is_mirror() ? "mirror" : material + ":semi-infinite";
    case Role::wall_layer: return material + ":" + full_precision(thickness);
    case Role::gap: return "gap:" + material + ":" + full_precision(thickness);
    case Role::plate:
      return is_mirror() ? "plate:mirror" : "plate:" + material + ":" + full_precision(thickness);
  }
  return {};
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.materials.emplace("vacuum", DispersionModel::vacuum());
  return cfg;
}

Region parse_region(std::string_view token, int line, int column) {
  token = trim(token);
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = token.find(':', start);
    parts.push_back(trim(token.substr(start, colon - start)));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  for (auto p : parts) {
    if (p.empty()) throw ConfigError("empty field in region '" + std::string(token) + "'", line, column);
  }

  Region r;
  r.line = line;
  r.column = column;
  auto thickness = [&](std::string_view text, bool allow_inf) {
    const double d = require_number(text, line, column, allow_inf);
    if (!(d > 0.0)) throw ConfigError("region thickness must be > 0", line, column);
    return d;
  };

  if (parts.size() == 1 && parts[0] == "mirror") {
    r.role = Region::Role::terminator;
    r.material = "mirror";
  } else if (parts[0] == "gap") {
    if (parts.size() != 3) throw ConfigError("gap region must read gap:<material>:<thickness>", line, column);
    r.role = Region::Role::gap;
    r.material = parts[1];
    if (r.is_mirror()) throw ConfigError("an interspace cannot be a perfect mirror", line, column);
    r.thickness = thickness(parts[2], true);
  } else if (parts[0] == "plate") {
    r.role = Region::Role::plate;
    if (parts.size() == 2 && parts[1] == "mirror") {
      r.material = "mirror";
    } else if (parts.size() == 3) {
      r.material = parts[1];
      r.thickness = thickness(parts[2], false);
    } else {
      throw ConfigError("plate region must read plate:<material>:<thickness> or plate:mirror", line, column);
    }
  } else if (parts.size() == 2) {
    r.material = parts[0];
    if (parts[1] == "semi-infinite") {
      r.role = Region::Role::terminator;
    } else {
      r.role = Region::Role::wall_layer;
      r.thickness = thickness(parts[1], false);
    }
    if (r.is_mirror()) throw ConfigError("use 'mirror' for a perfect-mirror wall", line, column);
  } else {
    throw ConfigError("cannot parse region '" + std::string(token) + "'", line, column);
  }
  return r;
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig cfg = default_config();
  std::map<std::string, MaterialFields> materials;
  std::string section;
  bool have_structure = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = raw;
    if (const std::size_t hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string_view body = trim(line);
    if (body.empty()) continue;

    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("unterminated section header", line_no, offset_in(raw, body) + 1);
      section = std::string(trim(body.substr(1, body.size() - 2)));
      if (section.rfind("material.", 0) == 0) {
        const std::string name = section.substr(9);
        if (name.empty() || name == "mirror") {
          throw ConfigError("invalid material name '" + name + "'", line_no, offset_in(raw, body) + 1);
        }
        if (materials.count(name)) throw ConfigError("duplicate material '" + name + "'", line_no, 1);
        materials[name].line = line_no;
      } else if (section != "structure" && section != "run" && section != "quadrature" &&
                 section != "output") {
        throw ConfigError("unknown section [" + section + "]", line_no, offset_in(raw, body) + 1);
      }
      continue;
    }

    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key = value", line_no, offset_in(raw, body) + 1);
    }
    const std::string_view key = trim(body.substr(0, eq));
    const std::string_view value = trim(body.substr(eq + 1));
    const int key_col = offset_in(raw, key) + 1;
    const int value_col = offset_in(raw, value) + 1;
    if (section.empty()) throw ConfigError("key outside of any section", line_no, key_col);
    if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", line_no, value_col);

    if (section.rfind("material.", 0) == 0) {
      MaterialFields& m = materials[section.substr(9)];
      if (key == "kind") {
        m.kind = std::string(value);
      } else if (material_keys().count(std::string(key))) {
        m.values[std::string(key)] = require_number(value, line_no, value_col);
      } else {
        throw ConfigError("unknown material key '" + std::string(key) + "'", line_no, key_col);
      }
    } else if (section == "structure") {
      if (key != "regions") throw ConfigError("unknown key '" + std::string(key) + "' in [structure]", line_no, key_col);
      have_structure = true;
      cfg.regions.clear();
      std::size_t start = 0;
      while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string_view tok = value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        const std::string_view trimmed = trim(tok);
        const int col = offset_in(raw, trimmed.empty() ? tok : trimmed) + 1;
        if (trimmed.empty()) throw ConfigError("empty region in list", line_no, col);
        cfg.regions.push_back(parse_region(trimmed, line_no, col));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else if (section == "run") {
      apply_run_key(cfg, key, value, line_no, value_col);
    } else if (section == "quadrature") {
      apply_quadrature_key(cfg, key, value, line_no, value_col);
    } else if (section == "output") {
      if (key != "csv" && key != "json") throw ConfigError("[output] keys are csv and json", line_no, key_col);
      cfg.outputs.push_back({std::string(key), std::string(value)});
    }
  }

  for (const auto& [name, fields] : materials) {
    if (fields.kind.empty()) throw ConfigError("material '" + name + "' has no kind", fields.line, 1);
    cfg.materials.insert_or_assign(name, build_material(name, fields));
  }
  if (!have_structure) throw ConfigError("missing [structure] regions");
  check_references(cfg);
  validate_quadrature(cfg);
  validate_structure(cfg);
  return cfg;
}

namespace {

nlohmann::json material_json(const DispersionModel& m) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(m.kind()));
  switch (m.kind()) {
    case MaterialKind::Constant:
      j["eps_static"] = m.eps_static();
      j["mu_static"] = m.mu_static();
      break;
    case MaterialKind::DrudeLorentz:
      j["resonance_freq"] = m.eps_oscillator().resonance_freq;
      j["damping"] = m.eps_oscillator().damping;
      [[fallthrough]];
    case MaterialKind::Plasma:
      j["plasma_freq"] = m.eps_oscillator().plasma_freq;
      if (m.mu_model()) {
        j["mu_plasma_freq"] = m.mu_model()->plasma_freq;
        j["mu_resonance_freq"] = m.mu_model()->resonance_freq;
        j["mu_damping"] = m.mu_model()->damping;
      }
      break;
    case MaterialKind::PerfectMirror: break;
  }
  return j;
}

}  // namespace

nlohmann::json to_json(const RunConfig& config) {
  nlohmann::json j;
  for (const auto& [name, model] : config.materials) j["materials"][name] = material_json(model);
  j["regions"] = nlohmann::json::array();
  for (const Region& r : config.regions) j["regions"].push_back(r.token());
  j["temperature"] = config.temperature;
  j["method"] = std::string(to_string(config.method));
  auto& q = j["quadrature"];
  q["rel_tol"] = config.quadrature.rel_tol;
  q["abs_floor"] = config.quadrature.abs_floor;
  q["max_subdivisions"] = config.quadrature.max_subdivisions;
  q["q_cutoff"] = config.quadrature.q_cutoff ? nlohmann::json(*config.quadrature.q_cutoff)
                                             : nlohmann::json("none");
  q["matsubara_terms"] = config.quadrature.matsubara_max_terms;
  q["matsubara_tail"] = std::string(to_string(config.quadrature.matsubara_tail));
  if (config.zero_term_policy) q["zero_term_policy"] = to_string(*config.zero_term_policy);
  return j;
}

RunConfig parse_config_json(const nlohmann::json& doc) {
  const nlohmann::json& j = doc.contains("config") ? doc.at("config") : doc;
  RunConfig cfg = default_config();
  try {
    if (j.contains("materials")) {
      for (const auto& [name, m] : j.at("materials").items()) {
        MaterialFields f;
        f.kind = m.at("kind").get<std::string>();
        for (const auto& [key, value] : m.items()) {
          if (key == "kind") continue;
          if (!material_keys().count(key)) throw ConfigError("unknown material key '" + key + "'");
          f.values[key] = value.get<double>();
        }
        cfg.materials.insert_or_assign(name, build_material(name, f));
      }
    }
    for (const auto& tok : j.at("regions")) cfg.regions.push_back(parse_region(tok.get<std::string>()));
    if (j.contains("temperature")) cfg.temperature = j.at("temperature").get<double>();
    if (cfg.temperature < 0.0) throw ConfigError("temperature must be >= 0");
    if (j.contains("method")) cfg.method = parse_force_method(j.at("method").get<std::string>());
    if (j.contains("quadrature")) {
      const auto& q = j.at("quadrature");
      for (const auto& [key, value] : q.items()) {
        if (value.is_string()) {
          apply_quadrature_key(cfg, key, value.get<std::string>(), 0, 0);
        } else if (value.is_number_integer()) {
          apply_quadrature_key(cfg, key, std::to_string(value.get<long long>()), 0, 0);
        } else if (value.is_number()) {
          const double v = value.get<double>();
          if (key == "rel_tol") cfg.quadrature.rel_tol = v;
          else if (key == "abs_floor") cfg.quadrature.abs_floor = v;
          else if (key == "q_cutoff") cfg.quadrature.q_cutoff = v;
          else apply_quadrature_key(cfg, key, full_precision(v), 0, 0);
        } else {
          throw ConfigError("bad value for quadrature key '" + key + "'");
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("JSON config: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("JSON config: ") + e.what());
  }
  check_references(cfg);
  validate_quadrature(cfg);
  validate_structure(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("JSON config: ") + e.what());
    }
    return parse_config_json(doc);
  }
  return parse_config_text(text);
}

namespace {

struct Split {
  std::vector<std::size_t> gaps;
};

Split split_regions(const RunConfig& config) {
  Split s;
  for (std::size_t i = 0; i < config.regions.size(); ++i) {
    if (config.regions[i].role == Region::Role::gap) s.gaps.push_back(i);
  }
  return s;
}

const Region& region_at(const RunConfig& config, std::size_t i) { return config.regions.at(i); }

// Left wall: tokens [0, end) read left to right, terminator first.
Wall left_wall(const RunConfig& config, std::size_t end) {
  if (end == 0) throw ConfigError("structure: missing left wall");
  const Region& term = region_at(config, 0);
  if (term.role != Region::Role::terminator) {
    throw ConfigError("structure: leftmost region must be 'mirror' or '<material>:semi-infinite'",
                      term.line, term.column);
  }
  std::vector<Layer> layers;
  for (std::size_t i = end; i-- > 1;) {
    const Region& r = region_at(config, i);
    if (r.role != Region::Role::wall_layer) {
      throw ConfigError("structure: unexpected region in left wall", r.line, r.column);
    }
    layers.push_back(Layer{config.materials.at(r.material), r.thickness});
  }
  const DispersionModel terminator =
      term.is_mirror() ? DispersionModel::perfect_mirror() : config.materials.at(term.material);
  return Wall::stack(std::move(layers), terminator);
}

// Right wall: tokens [begin, size) read left to right, terminator last.
Wall right_wall(const RunConfig& config, std::size_t begin) {
  const std::size_t n = config.regions.size();
  if (begin >= n) throw ConfigError("structure: missing right wall");
  const Region& term = region_at(config, n - 1);
  if (term.role != Region::Role::terminator) {
    throw ConfigError("structure: rightmost region must be 'mirror' or '<material>:semi-infinite'",
                      term.line, term.column);
  }
  std::vector<Layer> layers;
  for (std::size_t i = begin; i + 1 < n; ++i) {
    const Region& r = region_at(config, i);
    if (r.role != Region::Role::wall_layer) {
      throw ConfigError("structure: unexpected region in right wall", r.line, r.column);
    }
    layers.push_back(Layer{config.materials.at(r.material), r.thickness});
  }
  const DispersionModel terminator =
      term.is_mirror() ? DispersionModel::perfect_mirror() : config.materials.at(term.material);
  return Wall::stack(std::move(layers), terminator);
}

template <class F>
auto as_config_error(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("structure: ") + e.what());
  }
}

}  // namespace

Topology topology(const RunConfig& config) {
  const Split s = split_regions(config);
  for (std::size_t i = 0; i < config.regions.size(); ++i) {
    const Region& r = config.regions[i];
    if (r.role == Region::Role::plate &&
        !(s.gaps.size() == 2 && i == s.gaps[0] + 1 && i + 1 == s.gaps[1])) {
      throw ConfigError("structure: a plate must sit between two gaps", r.line, r.column);
    }
    if (r.role == Region::Role::terminator && i != 0 && i + 1 != config.regions.size()) {
      throw ConfigError("structure: terminators only at the two ends", r.line, r.column);
    }
  }
  if (s.gaps.size() == 1) {
    const Region& g = config.regions[s.gaps[0]];
    if (!std::isfinite(g.thickness)) {
      throw ConfigError("structure: the gap of a two-wall setup must be finite", g.line, g.column);
    }
    return Topology::two_wall;
  }
  if (s.gaps.size() == 2) {
    if (s.gaps[1] != s.gaps[0] + 2) {
      throw ConfigError("structure: cavity must read wall, gap, plate, gap, wall");
    }
    const Region& g1 = config.regions[s.gaps[0]];
    const Region& g3 = config.regions[s.gaps[1]];
    if (g1.material != g3.material) {
      throw ConfigError("structure: both gaps must hold the same medium", g3.line, g3.column);
    }
    if (!std::isfinite(g1.thickness)) {
      throw ConfigError("structure: the left gap must be finite", g1.line, g1.column);
    }
    if (!std::isfinite(g3.thickness) && s.gaps[1] + 1 != config.regions.size()) {
      throw ConfigError("structure: nothing may follow an infinite gap", g3.line, g3.column);
    }
    return Topology::cavity;
  }
  throw ConfigError("structure: expected one gap (wall/gap/wall) or two (wall/gap/plate/gap/wall)");
}

TwoWallSetup build_two_wall(const RunConfig& config) {
  if (topology(config) != Topology::two_wall) {
    throw ConfigError("this command needs a wall/gap/wall structure");
  }
  const std::size_t g = split_regions(config).gaps[0];
  const Region& gap = config.regions[g];
  return as_config_error([&] {
    return TwoWallSetup{left_wall(config, g), config.materials.at(gap.material), gap.thickness,
                        right_wall(config, g + 1)};
  });
}

CavityConfig build_cavity(const RunConfig& config) {
  if (topology(config) != Topology::cavity) {
    throw ConfigError("this command needs a wall/gap/plate/gap/wall structure");
  }
  const Split s = split_regions(config);
  const Region& g1 = config.regions[s.gaps[0]];
  const Region& plate = config.regions[s.gaps[0] + 1];
  const Region& g3 = config.regions[s.gaps[1]];
  return as_config_error([&] {
    const DispersionModel medium = config.materials.at(g1.material);
    CavityConfig cavity{left_wall(config, s.gaps[0]),
                        Gap{medium, g1.thickness},
                        plate.is_mirror()
                            ? Plate::perfect_mirror()
                            : Plate::slab(Layer{config.materials.at(plate.material), plate.thickness}),
                        Gap{medium, g3.thickness},
                        // An infinite right gap has no wall; the placeholder is never seen.
                        std::isfinite(g3.thickness) ? right_wall(config, s.gaps[1] + 1)
                                                    : Wall::perfect_mirror()};
    cavity.validate();
    return cavity;
  });
}

namespace {

void validate_structure(const RunConfig& cfg) {
  if (topology(cfg) == Topology::two_wall) {
    build_two_wall(cfg);
  } else {
    build_cavity(cfg);
  }
}

}  // namespace

std::string gap_material(const RunConfig& config) {
  const Split s = split_regions(config);
  if (s.gaps.empty()) throw ConfigError("structure has no gap");
  return config.regions[s.gaps[0]].material;
}

}  // namespace casimir::app
