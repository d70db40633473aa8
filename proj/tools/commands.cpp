#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "satqkd/bounds.hpp"
#include "satqkd/config.hpp"
#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"
#include "satqkd/parallel.hpp"

namespace satqkd::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> quantities(const std::string& list, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(list, ',')) out.push_back(parse_quantity(item, what));
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

class Csv {
 public:
  Csv(std::ostream& out, const RunConfig& cfg, const std::vector<std::string>& header) : out_(out) {
    out_ << "# config: " << config_summary(cfg) << '\n';
    row(header);
  }
  void comment(const std::string& text) { out_ << "# " << text << '\n'; }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << csv_field(fields[i]);
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

struct Common {
  std::string config_file;
  std::vector<std::string> sets;
  std::string noise, profile;
  int setup = 0;
  std::string h;
  unsigned jobs = 1;

  RunConfig resolve() const {
    Entries e;
    if (!config_file.empty()) e = read_config_file(config_file);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
      const Entries one = parse_config_text(s, "--set");
      e.insert(e.end(), one.begin(), one.end());
    }
    if (!noise.empty()) e.emplace_back("scenario.noise", noise);
    if (setup) e.emplace_back("scenario.setup", std::to_string(setup));
    if (!profile.empty()) e.emplace_back("scenario.profile", profile);
    if (!h.empty()) e.emplace_back("orbit.h", h);
    return resolve_config(e);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_file, "key = value configuration file");
  cmd->add_option("--set", c.sets, "override one key, key=value (repeatable)");
  cmd->add_option("--scenario", c.noise,
                  "night-up, night-down, day-up, day-down-clear or day-down-cloudy");
  cmd->add_option("--setup", c.setup, "spot-size setup 1..4");
  cmd->add_option("--profile", c.profile, "turbulence profile or auto");
  cmd->add_option("--altitude", c.h, "satellite altitude, e.g. 530km");
  cmd->add_option("-j,--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 256u));
}

// ---- bounds

struct BoundsArgs {
  std::string h_grid = "100km,200km,500km,1000km,2000km,5000km,10000km,20000km,50000km,100000km";
  std::string theta_list = "0,1";
};

void cmd_bounds(const Common& common, const BoundsArgs& a, std::ostream& out) {
  const RunConfig cfg = common.resolve();
  const Scenario s = cfg.scenario();
  const auto hs = quantities(a.h_grid, "--h-grid");
  const auto thetas = quantities(a.theta_list, "--theta");
  const double nbar = s.nbar();
  const auto rows = parallel_map<std::vector<std::string>>(
      hs.size() * thetas.size(), common.jobs, [&](std::size_t k) {
        const double h = hs[k / thetas.size()];
        const double theta = thetas[k % thetas.size()];
        const FadingModel m = s.fading(h, theta);
        const double z = slant_range(h, theta);
        return std::vector<std::string>{num(h / 1e3),
                                        num(theta),
                                        num(diffraction_bound(z, s.beam, s.rx.a_R)),
                                        num(bound_V(h, theta, s.beam, s.rx, s.ext)),
                                        num(bound_B(m)),
                                        num(thermal_upper(nbar, m).value),
                                        num(thermal_lower(nbar, m).integral.value)};
      });
  Csv csv(out, cfg, {"h_km", "theta", "U", "V", "B", "thermal_upper", "thermal_lower"});
  for (const auto& r : rows) csv.row(r);
}

// ---- rate

struct RateArgs {
  std::string theta_grid = "0,0.25,0.5,0.75,1";
};

void cmd_rate(const Common& common, const RateArgs& a, std::ostream& out) {
  const RunConfig cfg = common.resolve();
  const Scenario s = cfg.scenario();
  const auto thetas = quantities(a.theta_grid, "--theta-grid");
  const auto rows = parallel_map<std::vector<std::string>>(thetas.size(), common.jobs, [&](std::size_t i) {
    const FadingModel m = s.fading(cfg.h, thetas[i]);
    const RateResult r = s.rate(m, s.protocol);
    return std::vector<std::string>{num(thetas[i]),      num(m.eta),           num(r.p_th),
                                    num(s.nbar()),       num(s.nbar_prime()),  num(r.rate.raw),
                                    num(r.rate.value)};
  });
  Csv csv(out, cfg, {"theta", "eta", "p_th", "nbar", "nbar_prime", "rate_raw", "rate"});
  for (const auto& r : rows) csv.row(r);
}

// ---- pass

void cmd_pass(const Common& common, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = common.resolve();
  const PassReport p = build_pass(cfg.scenario(), cfg.h, cfg.n_bks, cfg.optimize, common.jobs);
  if (!p.plan.diagnostic.empty()) err << "warning: " << p.plan.diagnostic << '\n';
  nlohmann::ordered_json j;
  j["h_km"] = p.h / 1e3;
  j["t_Q_s"] = p.t_Q;
  j["t_T_s"] = p.t_T;
  j["slices"] = nlohmann::ordered_json::array();
  for (const auto& sl : p.plan.slices) j["slices"].push_back({sl.theta_lo, sl.theta_hi});
  j["per_slice_rate"] = p.rate.per_slice;
  j["R_orb"] = p.rate.R_orb;
  j["bits_per_pass"] = p.bits_per_pass;
  j["bits_per_day"] = p.bits_per_day;
  j["n_bks"] = p.plan.n_bks;
  j["mu"] = p.mu;
  j["phi"] = p.phi;
  j["optimized"] = p.optimized;
  j["period_s"] = p.period_s;
  j["orbits_per_day"] = p.orbits_per_day;
  if (std::isfinite(p.inclination_deg)) j["inclination_deg"] = p.inclination_deg;
  j["diagnostic"] = p.plan.diagnostic;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : dump_config(cfg)) j["config"][k] = v;
  out << j.dump(2) << '\n';
}

// ---- compare-fiber

struct FiberArgs {
  std::string scenarios = "night-down:530km:2,day-down-clear:530km:2,night-up:155km:3";
  std::string d_grid;
  std::string n_rep = "0,1,10,30";
};

struct SatelliteEntry {
  std::string label;
  double bits_per_day;
};

void cmd_compare_fiber(const Common& common, const FiberArgs& a, std::ostream& out) {
  const RunConfig base = common.resolve();
  std::vector<int> reps;
  for (const auto& r : split(a.n_rep, ',')) {
    const double v = parse_quantity(r, "--n-rep");
    if (v < 0 || v != std::floor(v)) throw ConfigError("--n-rep: expected non-negative integers");
    reps.push_back(static_cast<int>(v));
  }
  if (reps.empty()) throw ConfigError("--n-rep: empty list");

  std::vector<SatelliteEntry> sats;
  for (const auto& item : split(a.scenarios, ',')) {
    const auto parts = split(item, ':');
    if (parts.empty() || parts.size() > 3) throw ConfigError("--scenarios: expected noise[:h[:setup]]");
    RunConfig cfg = base;
    cfg.noise = parts[0];
    NoiseEnvironment::from_scenario(cfg.noise);
    if (parts.size() > 1) cfg.h = parse_quantity(parts[1], "--scenarios");
    if (parts.size() > 2) {
      const double v = parse_quantity(parts[2], "--scenarios");
      cfg.setup = static_cast<int>(v);
      if (cfg.setup != v) throw ConfigError("--scenarios: setup must be an integer");
      apply_setup(cfg.setup, cfg.beam, cfg.rx);
    }
    const PassReport p = build_pass(cfg.scenario(), cfg.h, cfg.n_bks, cfg.optimize, common.jobs);
    sats.push_back({item, p.bits_per_day});
  }

  std::vector<double> ds;
  if (a.d_grid.empty()) {
    for (double d = 100e3; d <= kPi * earth::R_E; d += 100e3) ds.push_back(d);
  } else {
    ds = quantities(a.d_grid, "--d-grid");
  }

  std::vector<std::string> header{"d_km"};
  for (int r : reps) header.push_back(r == 0 ? "fiber_bits_per_day" : "rep" + std::to_string(r) + "_bits_per_day");
  for (const auto& s : sats) header.push_back("sat_" + s.label + "_bits_per_day");
  Csv csv(out, base, header);
  const double C = base.protocol.clock_hz;
  for (const auto& s : sats)
    for (int r : reps) {
      const double d = crossover_distance([&](double x) { return repeater_rate(x, r); }, C, s.bits_per_day);
      csv.comment("crossover " + s.label + " n_rep=" + std::to_string(r) + " d_km=" + num(d / 1e3));
    }
  for (double d : ds) {
    std::vector<std::string> row{num(d / 1e3)};
    for (int r : reps) row.push_back(num(bits_per_day(repeater_rate(d, r), C)));
    for (const auto& s : sats) row.push_back(num(s.bits_per_day));
    csv.row(row);
  }
}

// ---- validate-mc

struct McArgs {
  double samples = 1e6;
  std::uint64_t seed = 1;
  int bins = 50;
  std::string theta = "0";
};

void cmd_validate_mc(const Common& common, const McArgs& a, std::ostream& out) {
  const RunConfig cfg = common.resolve();
  if (!(a.samples >= 1) || a.samples > 1e9) throw ConfigError("--samples must lie in [1, 1e9]");
  if (a.bins < 1) throw ConfigError("--bins must be positive");
  const double theta = parse_quantity(a.theta, "--theta");
  const Scenario s = cfg.scenario();
  const FadingModel m = s.fading(cfg.h, theta);
  const auto n = static_cast<std::size_t>(a.samples);
  FadingSampler sampler(m, a.seed);
  std::vector<double> tau(n);
  for (auto& t : tau) t = sampler();
  std::sort(tau.begin(), tau.end());

  double ks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double F = fading_cdf(tau[i], m);
    ks = std::max({ks, std::abs(F - double(i) / n), std::abs(double(i + 1) / n - F)});
  }
  const double eta_th = s.protocol.phi_thr * m.eta;
  const double p_an = p_threshold(eta_th, m);
  const double above = tau.end() - std::upper_bound(tau.begin(), tau.end(), eta_th);
  const double p_emp = above / n;

  Csv csv(out, cfg, {"tau_bin_lo", "tau_bin_hi", "empirical_p", "analytic_p"});
  csv.comment("samples=" + std::to_string(n) + " seed=" + std::to_string(a.seed) + " theta=" + num(theta));
  csv.comment("ks=" + num(ks));
  csv.comment("p_threshold analytic=" + num(p_an) + " empirical=" + num(p_emp) +
              " sigma=" + num(std::sqrt(p_an * (1 - p_an) / n)));
  const double width = m.eta / a.bins;
  for (int k = 0; k < a.bins; ++k) {
    const double lo = k * width, hi = k == a.bins - 1 ? m.eta : (k + 1) * width;
    const auto first = std::lower_bound(tau.begin(), tau.end(), lo);
    const auto last = k == a.bins - 1 ? tau.end() : std::lower_bound(tau.begin(), tau.end(), hi);
    csv.row({num(lo), num(hi), num(double(last - first) / n), num(p_slot(k, width, m))});
  }
}

// ---- max-range

void cmd_max_range(const Common& common, bool all, std::ostream& out) {
  const RunConfig cfg = common.resolve();
  std::vector<std::string> names{cfg.noise};
  if (all) names = {"night-up", "night-down", "day-up", "day-down-clear", "day-down-cloudy"};
  const auto rows = parallel_map<std::vector<std::string>>(names.size(), common.jobs, [&](std::size_t i) {
    RunConfig c = cfg;
    c.noise = names[i];
    const Scenario s = c.scenario();
    const double simple = max_range_simple(s.env, s.rx, s.beam);
    const MaxRange t = max_range_tight(s.env, s.rx, s.beam, s.profile, s.ext, s.pointing_error);
    return std::vector<std::string>{names[i], std::to_string(c.setup), num(simple / 1e3), num(t.z / 1e3),
                                    t.breaking_everywhere ? "true" : "false", t.capped ? "true" : "false"};
  });
  Csv csv(out, cfg, {"scenario", "setup", "simple_km", "tight_km", "breaking_everywhere", "capped"});
  for (const auto& r : rows) csv.row(r);
}

void cmd_show_config(const Common& common, std::ostream& out) {
  for (const auto& [k, v] : dump_config(common.resolve())) out << k << " = " << v << '\n';
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Satellite CV-QKD link budgets, bounds and key rates"};
  app.require_subcommand(1);
  Common common;

  auto* bounds = app.add_subcommand("bounds", "capacity bounds versus altitude");
  BoundsArgs bounds_args;
  add_common(bounds, common);
  bounds->add_option("--h-grid", bounds_args.h_grid, "comma-separated altitudes");
  bounds->add_option("--theta", bounds_args.theta_list, "comma-separated zenith angles");

  auto* rate = app.add_subcommand("rate", "composable key rate versus zenith angle");
  RateArgs rate_args;
  add_common(rate, common);
  rate->add_option("--theta-grid", rate_args.theta_grid, "comma-separated zenith angles");

  auto* pass = app.add_subcommand("pass", "orbital pass report (JSON)");
  add_common(pass, common);

  auto* fiber = app.add_subcommand("compare-fiber", "satellite versus fiber bits per day");
  FiberArgs fiber_args;
  add_common(fiber, common);
  fiber->add_option("--scenarios", fiber_args.scenarios, "comma-separated noise[:h[:setup]]");
  fiber->add_option("--d-grid", fiber_args.d_grid, "comma-separated station separations");
  fiber->add_option("--n-rep", fiber_args.n_rep, "comma-separated repeater counts (0 = none)");

  auto* mc = app.add_subcommand("validate-mc", "Monte Carlo check of the fading law");
  McArgs mc_args;
  add_common(mc, common);
  mc->add_option("--samples", mc_args.samples, "number of samples");
  mc->add_option("--seed", mc_args.seed, "RNG seed");
  mc->add_option("--bins", mc_args.bins, "histogram bins");
  mc->add_option("--theta", mc_args.theta, "zenith angle");

  auto* range = app.add_subcommand("max-range", "maximum secure range");
  bool all = false;
  add_common(range, common);
  range->add_flag("--all", all, "every noise scenario");

  auto* show = app.add_subcommand("show-config", "print the resolved configuration");
  add_common(show, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*bounds) cmd_bounds(common, bounds_args, out);
    else if (*rate) cmd_rate(common, rate_args, out);
    else if (*pass) cmd_pass(common, out, err);
    else if (*fiber) cmd_compare_fiber(common, fiber_args, out);
    else if (*mc) cmd_validate_mc(common, mc_args, out);
    else if (*range) cmd_max_range(common, all, out);
    else if (*show) cmd_show_config(common, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericError;
  }
  return kOk;
}

}  // namespace satqkd::cli
