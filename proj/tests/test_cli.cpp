#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"

using satqkd::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("csv quoting") {
  using satqkd::cli::csv_field;
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"bounds", "--h-grid", ""}).code == 2);
  CHECK(invoke({"bounds", "--h-grid", "100 parsecs"}).code == 2);
  CHECK(invoke({"rate", "--set", "orbit.altitude=3"}).code == 2);
  CHECK(invoke({"rate", "--scenario", "dusk"}).code == 2);
  CHECK(invoke({"show-config", "-c", "/nonexistent.cfg"}).code == 2);
  const Result help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("validate-mc") != std::string::npos);
}

TEST_CASE("bounds table") {
  const Result r = invoke({"bounds", "--h-grid", "200km,2000km", "--theta", "0,1", "-j", "2"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 6);
  CHECK(l[0].rfind("# config: ", 0) == 0);
  CHECK(l[1] == "h_km,theta,U,V,B,thermal_upper,thermal_lower");
  CHECK(l[2].rfind("200,0,", 0) == 0);
  CHECK(l[3].rfind("200,1,", 0) == 0);
  CHECK(l[4].rfind("2000,0,", 0) == 0);
}

TEST_CASE("rate table and overrides") {
  const Result r = invoke({"rate", "--setup", "2", "--theta-grid", "0,1", "--set", "protocol.mu=9.28"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0].find("scenario.setup=2") != std::string::npos);
  CHECK(l[0].find("protocol.mu=9.28") != std::string::npos);
  CHECK(l[1] == "theta,eta,p_th,nbar,nbar_prime,rate_raw,rate");
}

TEST_CASE("show-config precedence") {
  const Result r = invoke({"show-config", "--set", "orbit.h=155km", "--altitude", "300km"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("orbit.h = 300000\n") != std::string::npos);
  const Result s = invoke({"show-config", "--setup", "3"});
  CHECK(s.out.find("receiver.a_R = 2\n") != std::string::npos);
}

TEST_CASE("validate-mc is reproducible") {
  const std::vector<std::string> args{"validate-mc", "--samples", "20000", "--seed", "11", "--bins", "10"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto l = lines(a.out);
  CHECK(l[1] == "tau_bin_lo,tau_bin_hi,empirical_p,analytic_p");
  CHECK(a.out.find("# ks=") != std::string::npos);
  auto other = args;
  other[4] = "12";
  CHECK(invoke(other).out != a.out);
}

TEST_CASE("pass report") {
  const Result r = invoke({"pass", "--altitude", "530km", "--setup", "2", "--set", "protocol.optimize=false",
                           "--set", "protocol.phi=0.73", "-j", "4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  const std::vector<std::string> keys{"h_km", "t_Q_s", "t_T_s", "slices", "per_slice_rate",
                                      "R_orb", "bits_per_pass", "bits_per_day"};
  auto it = j.begin();
  for (const auto& k : keys) {
    REQUIRE(it != j.end());
    CHECK(it.key() == k);
    ++it;
  }
  CHECK(j["slices"].size() == 10);
  CHECK(j["R_orb"].get<double>() > 0.03);
}

TEST_CASE("max-range") {
  const Result r = invoke({"max-range", "--scenario", "day-up"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 3);
  CHECK(l[1] == "scenario,setup,simple_km,tight_km,breaking_everywhere,capped");
  CHECK(l[2].rfind("day-up,1,", 0) == 0);
}
