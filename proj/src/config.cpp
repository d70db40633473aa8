#include "satqkd/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"

namespace satqkd {

namespace {

enum class Dim { None, Length, Angle, Time, Frequency };

struct Unit {
  Dim dim;
  double factor;
};

const std::map<std::string, Unit>& units() {
  static const std::map<std::string, Unit> table = {
      {"km", {Dim::Length, 1e3}},     {"m", {Dim::Length, 1.0}},    {"cm", {Dim::Length, 1e-2}},
      {"mm", {Dim::Length, 1e-3}},    {"um", {Dim::Length, 1e-6}},  {"nm", {Dim::Length, 1e-9}},
      {"pm", {Dim::Length, 1e-12}},   {"deg", {Dim::Angle, kDeg}},  {"rad", {Dim::Angle, 1.0}},
      {"urad", {Dim::Angle, 1e-6}},   {"s", {Dim::Time, 1.0}},      {"ms", {Dim::Time, 1e-3}},
      {"ns", {Dim::Time, 1e-9}},      {"Hz", {Dim::Frequency, 1.0}}, {"kHz", {Dim::Frequency, 1e3}},
      {"MHz", {Dim::Frequency, 1e6}}, {"GHz", {Dim::Frequency, 1e9}},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double quantity(const std::string& text, const std::string& key, Dim want) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  const std::string suffix = trim(t.substr(used));
  if (suffix.empty()) return v;
  const auto it = units().find(suffix);
  if (it == units().end()) throw ConfigError(key + ": unknown unit '" + suffix + "'");
  if (want != Dim::None && it->second.dim != want)
    throw ConfigError(key + ": unit '" + suffix + "' has the wrong dimension");
  if (want == Dim::None) throw ConfigError(key + ": takes no unit");
  return v * it->second.factor;
}

int integer(const std::string& text, const std::string& key) {
  const double v = quantity(text, key, Dim::None);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": expected an integer");
  return static_cast<int>(v);
}

bool boolean(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": expected true or false");
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define NUM(KEY, MEMBER, DIM)                                                          \
  Field {                                                                              \
    KEY, [](RunConfig& c, const std::string& v) { c.MEMBER = quantity(v, KEY, DIM); }, \
        [](const RunConfig& c) { return fmt(c.MEMBER); }                               \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"scenario.noise", [](RunConfig& c, const std::string& v) {
         NoiseEnvironment::from_scenario(trim(v));
         c.noise = trim(v);
       },
       [](const RunConfig& c) { return c.noise; }},
      {"scenario.setup", [](RunConfig& c, const std::string& v) {
         c.setup = integer(v, "scenario.setup");
         setup_preset(c.setup);
       },
       [](const RunConfig& c) { return std::to_string(c.setup); }},
      {"scenario.profile", [](RunConfig& c, const std::string& v) {
         const std::string name = trim(v);
         if (name != "auto") TurbulenceProfile::from_name(name);
         c.profile = name;
       },
       [](const RunConfig& c) { return c.profile; }},
      NUM("beam.lambda", beam.lambda, Dim::Length),
      NUM("beam.w0", beam.w0, Dim::Length),
      NUM("beam.R0", beam.R0, Dim::Length),
      NUM("receiver.a_R", rx.a_R, Dim::Length),
      NUM("receiver.fov", rx.Omega_fov, Dim::None),
      NUM("receiver.delta_t", rx.Delta_t, Dim::Time),
      NUM("receiver.delta_lambda", rx.Delta_lambda, Dim::Length),
      NUM("receiver.eta_eff", rx.eta_eff, Dim::None),
      NUM("receiver.n_ex", rx.n_ex, Dim::None),
      NUM("atmosphere.alpha0", ext.alpha0, Dim::None),
      NUM("atmosphere.h_tilde", ext.h_tilde, Dim::Length),
      NUM("pointing.error", pointing_error, Dim::Angle),
      NUM("protocol.N", protocol.N, Dim::None),
      NUM("protocol.m", protocol.m, Dim::None),
      NUM("protocol.f_et", protocol.f_et, Dim::None),
      NUM("protocol.beta", protocol.beta, Dim::None),
      NUM("protocol.p_ec", protocol.p_ec, Dim::None),
      NUM("protocol.eps_s", protocol.eps_s, Dim::None),
      NUM("protocol.eps_h", protocol.eps_h, Dim::None),
      NUM("protocol.eps_pe", protocol.eps_pe, Dim::None),
      NUM("protocol.eps_cor", protocol.eps_cor, Dim::None),
      NUM("protocol.d", protocol.d, Dim::None),
      NUM("protocol.mu", protocol.mu, Dim::None),
      NUM("protocol.phi", protocol.phi_thr, Dim::None),
      NUM("protocol.clock", protocol.clock_hz, Dim::Frequency),
      {"protocol.detection", [](RunConfig& c, const std::string& v) {
         const std::string t = trim(v);
         if (t == "homodyne") c.protocol.detection = Detection::Homodyne;
         else if (t == "heterodyne") c.protocol.detection = Detection::Heterodyne;
         else throw ConfigError("protocol.detection: expected homodyne or heterodyne");
       },
       [](const RunConfig& c) {
         return std::string(c.protocol.detection == Detection::Homodyne ? "homodyne" : "heterodyne");
       }},
      {"protocol.tail", [](RunConfig& c, const std::string& v) {
         const std::string t = trim(v);
         if (t == "gaussian") c.protocol.tail = Tail::Gaussian;
         else if (t == "hoeffding") c.protocol.tail = Tail::Hoeffding;
         else throw ConfigError("protocol.tail: expected gaussian or hoeffding");
       },
       [](const RunConfig& c) {
         return std::string(c.protocol.tail == Tail::Gaussian ? "gaussian" : "hoeffding");
       }},
      {"protocol.attack", [](RunConfig& c, const std::string& v) {
         const std::string t = trim(v);
         if (t == "collective") c.protocol.attack = Attack::Collective;
         else if (t == "general") c.protocol.attack = Attack::General;
         else throw ConfigError("protocol.attack: expected collective or general");
       },
       [](const RunConfig& c) {
         return std::string(c.protocol.attack == Attack::Collective ? "collective" : "general");
       }},
      {"protocol.llo", [](RunConfig& c, const std::string& v) { c.protocol.llo = boolean(v, "protocol.llo"); },
       [](const RunConfig& c) { return std::string(c.protocol.llo ? "true" : "false"); }},
      NUM("protocol.linewidth", protocol.linewidth, Dim::Frequency),
      {"protocol.optimize", [](RunConfig& c, const std::string& v) { c.optimize = boolean(v, "protocol.optimize"); },
       [](const RunConfig& c) { return std::string(c.optimize ? "true" : "false"); }},
      NUM("orbit.h", h, Dim::Length),
      {"orbit.n_bks", [](RunConfig& c, const std::string& v) { c.n_bks = integer(v, "orbit.n_bks"); },
       [](const RunConfig& c) { return std::to_string(c.n_bks); }},
  };
  return table;
}

#undef NUM

const Field& field(const std::string& key) {
  for (const auto& f : fields())
    if (f.key == key) return f;
  throw ConfigError("unknown configuration key '" + key + "'");
}

}  // namespace

Scenario RunConfig::scenario() const {
  Scenario s = make_scenario(noise, setup, profile);
  // explicit values already include the preset
  s.beam = beam;
  s.rx = rx;
  s.ext = ext;
  s.pointing_error = pointing_error;
  s.protocol = protocol;
  return s;
}

Entries parse_config_text(const std::string& text, const std::string& origin) {
  Entries out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    field(key);
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

Entries read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

double parse_quantity(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  std::size_t used = 0;
  try {
    std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  const std::string suffix = trim(t.substr(used));
  if (suffix.empty()) return std::stod(t);
  const auto it = units().find(suffix);
  if (it == units().end()) throw ConfigError(key + ": unknown unit '" + suffix + "'");
  return quantity(text, key, it->second.dim);
}

RunConfig resolve_config(const Entries& entries) {
  RunConfig c;
  for (const auto& [k, v] : entries) field(k);
  for (const auto& [k, v] : entries)
    if (k == "scenario.setup") field(k).set(c, v);
  apply_setup(c.setup, c.beam, c.rx);
  for (const auto& [k, v] : entries)
    if (k != "scenario.setup") field(k).set(c, v);
  return c;
}

Entries dump_config(const RunConfig& c) {
  Entries out;
  for (const auto& f : fields()) out.emplace_back(f.key, f.get(c));
  return out;
}

std::string config_summary(const RunConfig& c) {
  std::string s;
  for (const auto& [k, v] : dump_config(c)) {
    if (!s.empty()) s += ' ';
    s += k + '=' + v;
  }
  return s;
}

}  // namespace satqkd
