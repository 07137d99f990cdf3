#pragma once

/**
 * @file config.hpp
 * @brief Flat key = value configuration with SI unit suffixes.
 *
 * Configuration files are UTF-8 text, one `key = value` pair per line with
 * `#` comments. Unit suffixes (um, mm, mW, ...) are resolved here, at the
 * boundary; everything past this layer is strict SI. Unknown keys and
 * malformed or out-of-range values are rejected with the offending key and
 * line number.
 */

#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nvrf/errors.hpp"
#include "nvrf/model.hpp"

namespace nvrf {

namespace detail {

enum class KeyType { Double, Int, Enum, String };

struct KeySpec {
  std::string_view name;
  KeyType type = KeyType::Double;
  double min = -1e308;       // inclusive, Double/Int keys
  double max = 1e308;        // inclusive
  bool min_exclusive = false;
  std::vector<std::string_view> tokens; // Enum keys
};

inline const std::vector<KeySpec> &key_registry() {
  static const std::vector<KeySpec> keys = {
      {"protocol.kind", KeyType::Enum, 0, 0, false, {"slope", "variance"}},
      {"protocol.beta", KeyType::Double, 0, 1e308, true},
      {"protocol.cmax", KeyType::Double, 0.0, 1.0},
      {"protocol.tau", KeyType::Double, 0, 1e308, true},
      {"noise.kappa", KeyType::Double, 0.0, 0.5},
      {"noise.xi", KeyType::Double, 1.0, 1e308},
      {"nv.rho", KeyType::Double, 0, 1e308, true},
      {"nv.sigma", KeyType::Double, 0, 1e308, true},
      {"optics.p_laser", KeyType::Double, 0, 1e308, true},
      {"optics.i_sat", KeyType::Double, 0, 1e308, true},
      {"optics.beam", KeyType::Enum, 0, 0, false, {"parallel", "perpendicular", "axial"}},
      {"cpw.w", KeyType::Double, 0, 1e308, true},
      {"cpw.z", KeyType::Double, 0, 1e308, true},
      {"cpw.l", KeyType::Double, 0, 1e308, true},
      {"cpw.standoff", KeyType::Double, 0.0, 1e308},
      {"loop.r", KeyType::Double, 0, 1e308, true},
      {"loop.z", KeyType::Double, 0, 1e308, true},
      {"loop.wire_ratio", KeyType::Double, 0.0, 1.0, true},
      {"probe.c1", KeyType::Double, 0, 1e308, true},
      {"probe.c2", KeyType::Double, 0, 1e308, true},
      {"probe.t_fixed", KeyType::Double, 0.0, 1e308}, // 0 disables fixed thickness
      {"grid.nx", KeyType::Int, 16, 1e6},
      {"grid.nz", KeyType::Int, 16, 1e6},
      {"grid.extent", KeyType::Double, 2.0, 1e3},
      {"sweep.min", KeyType::Double, 0, 1e308, true},
      {"sweep.max", KeyType::Double, 0, 1e308, true},
      {"sweep.points", KeyType::Int, 8, 1e6},
      {"out.dir", KeyType::String},
  };
  return keys;
}

inline const KeySpec *find_key(std::string_view name) {
  for (const auto &k : key_registry()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

inline std::optional<double> unit_multiplier(std::string_view unit) {
  struct Entry { std::string_view name; double factor; };
  static constexpr Entry table[] = {
      {"m", 1.0},   {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9},
      {"W", 1.0},   {"mW", 1e-3}, {"uW", 1e-6},
      {"s", 1.0},   {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9},
      {"ohm", 1.0},
  };
  for (const auto &e : table) {
    if (e.name == unit) return e.factor;
  }
  return std::nullopt;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

} // namespace detail

using ConfigValue = std::variant<double, long long, std::string>;

/// Validated flat configuration. Values are already SI.
class Config {
public:
  bool has(std::string_view key) const { return values_.count(std::string(key)) > 0; }

  void set(std::string_view key, ConfigValue value) {
    values_[std::string(key)] = std::move(value);
  }

  double get_double(std::string_view key) const {
    return std::get<double>(require(key, "number"));
  }
  long long get_int(std::string_view key) const {
    return std::get<long long>(require(key, "integer"));
  }
  const std::string &get_string(std::string_view key) const {
    return std::get<std::string>(require(key, "string"));
  }

  ProtocolKind protocol_kind() const {
    return get_string("protocol.kind") == "slope" ? ProtocolKind::Slope
                                                  : ProtocolKind::Variance;
  }
  BeamGeometry beam() const {
    const auto &tok = get_string("optics.beam");
    if (tok == "parallel") return BeamGeometry::ParallelCpw;
    if (tok == "perpendicular") return BeamGeometry::PerpendicularCpw;
    return BeamGeometry::LoopAxial;
  }

  /// Canonical `key = value` text; doubles use the shortest exact
  /// representation so a reparse reproduces the identical Config.
  std::string serialize() const {
    std::string out;
    for (const auto &[key, value] : values_) {
      out += key;
      out += " = ";
      if (const auto *d = std::get_if<double>(&value)) {
        char buf[40];
        auto res = std::to_chars(buf, buf + sizeof(buf), *d);
        out.append(buf, res.ptr);
      } else if (const auto *i = std::get_if<long long>(&value)) {
        out += std::to_string(*i);
      } else {
        out += std::get<std::string>(value);
      }
      out += '\n';
    }
    return out;
  }

  bool operator==(const Config &other) const { return values_ == other.values_; }

  const std::map<std::string, ConfigValue> &items() const { return values_; }

  /// Overlays every entry of `other` on top of this configuration.
  void merge(const Config &other) {
    for (const auto &[key, value] : other.values_) values_[key] = value;
  }

private:
  const ConfigValue &require(std::string_view key, const char *kind) const {
    auto it = values_.find(std::string(key));
    if (it == values_.end()) {
      throw ConfigError("missing required key '" + std::string(key) + "'");
    }
    (void)kind;
    return it->second;
  }

  std::map<std::string, ConfigValue> values_;
};

/// Parses `key = value` lines. Unit suffixes are accepted on numeric keys
/// and converted to SI; unknown keys, malformed values and out-of-range
/// values raise ConfigError naming the key and line.
inline Config parse_config(std::string_view text) {
  Config config;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key{detail::trim(line.substr(0, eq))};
    const std::string_view value_text = detail::trim(line.substr(eq + 1));
    const auto *spec = detail::find_key(key);
    if (spec == nullptr) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    auto fail = [&](const std::string &why) -> ConfigError {
      return ConfigError("line " + std::to_string(line_no) + ": key '" + key + "': " + why);
    };
    if (value_text.empty()) throw fail("empty value");

    switch (spec->type) {
    case detail::KeyType::String:
      config.set(key, std::string(value_text));
      break;
    case detail::KeyType::Enum: {
      bool known = false;
      for (auto tok : spec->tokens) known = known || tok == value_text;
      if (!known) throw fail("invalid value '" + std::string(value_text) + "'");
      config.set(key, std::string(value_text));
      break;
    }
    case detail::KeyType::Int: {
      long long v = 0;
      auto res = std::from_chars(value_text.data(), value_text.data() + value_text.size(), v);
      if (res.ec != std::errc{} || res.ptr != value_text.data() + value_text.size()) {
        throw fail("malformed integer '" + std::string(value_text) + "'");
      }
      if (v < spec->min || v > spec->max) throw fail("value out of range");
      config.set(key, v);
      break;
    }
    case detail::KeyType::Double: {
      const auto space = value_text.find_first_of(" \t");
      const std::string_view num_text = value_text.substr(0, space);
      double v = 0.0;
      auto res = std::from_chars(num_text.data(), num_text.data() + num_text.size(), v);
      if (res.ec != std::errc{} || res.ptr != num_text.data() + num_text.size()) {
        throw fail("malformed number '" + std::string(num_text) + "'");
      }
      if (space != std::string_view::npos) {
        const std::string_view unit = detail::trim(value_text.substr(space));
        const auto mult = detail::unit_multiplier(unit);
        if (!mult) throw fail("unknown unit '" + std::string(unit) + "'");
        v *= *mult;
      }
      if (key == "noise.kappa" && v != 0.0 && v != 0.5) {
        throw fail("must be exactly 0 or 0.5");
      }
      const bool above_min = spec->min_exclusive ? v > spec->min : v >= spec->min;
      if (!above_min || v > spec->max) throw fail("value out of range");
      config.set(key, v);
      break;
    }
    }
  }
  return config;
}

/// Baseline parameter set: shot-noise-limited slope detection on a 10 um,
/// 50 ohm waveguide probed over 1 mm with 1 W of laser power.
inline Config paper_defaults() {
  Config c;
  c.set("protocol.kind", std::string("slope"));
  c.set("protocol.beta", 1e4);
  c.set("protocol.cmax", 0.03);
  c.set("protocol.tau", 1e-5);
  c.set("noise.kappa", 0.5);
  c.set("noise.xi", 1.0);
  c.set("nv.rho", 8e23);
  c.set("nv.sigma", 1e5);
  c.set("optics.p_laser", 1.0);
  c.set("optics.i_sat", 1e9);
  c.set("optics.beam", std::string("parallel"));
  c.set("cpw.w", 1e-5);
  c.set("cpw.z", 50.0);
  c.set("cpw.l", 1e-3);
  c.set("cpw.standoff", 0.0);
  c.set("loop.r", 1e-5);
  c.set("loop.z", 50.0);
  c.set("loop.wire_ratio", 0.2);
  c.set("probe.c1", 1.0);
  c.set("probe.c2", 1.0);
  c.set("probe.t_fixed", 0.0);
  c.set("grid.nx", static_cast<long long>(120));
  c.set("grid.nz", static_cast<long long>(120));
  c.set("grid.extent", 3.0);
  c.set("sweep.min", 1e-7);
  c.set("sweep.max", 1e-2);
  c.set("sweep.points", static_cast<long long>(49));
  c.set("out.dir", std::string("out"));
  return c;
}

} // namespace nvrf
