#pragma once

#include <string>
#include <utility>
#include <vector>

#include "satqkd/scenario.hpp"

namespace satqkd {

using Entries = std::vector<std::pair<std::string, std::string>>;

// Everything a command needs, in SI units.
struct RunConfig {
  std::string noise = "night-down";
  int setup = 1;
  std::string profile = "auto";
  BeamParams beam;
  ReceiverParams rx;
  ExtinctionModel ext;
  double pointing_error = 1e-6;
  ProtocolParams protocol;
  double h = 530e3;
  int n_bks = 10;
  bool optimize = true;

  Scenario scenario() const;
};

// `key = value` lines; '#' starts a comment. Later keys win.
Entries parse_config_text(const std::string& text, const std::string& origin = "<text>");
Entries read_config_file(const std::string& path);

// Defaults, then the setup preset, then every explicit key in order.
RunConfig resolve_config(const Entries& entries);

// Parses a number with an optional unit suffix (km, m, cm, nm, pm, deg, rad, ns, s, Hz, kHz, MHz).
double parse_quantity(const std::string& text, const std::string& key);

// Every key with its resolved value, in a fixed order.
Entries dump_config(const RunConfig& c);
// One-line form for CSV comments.
std::string config_summary(const RunConfig& c);

}  // namespace satqkd
