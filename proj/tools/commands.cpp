// Copyright 2026 The subsamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subsamp/amplification.hpp"
#include "subsamp/dataset.hpp"
#include "subsamp/error.hpp"
#include "subsamp/kernel.hpp"
#include "subsamp/measure.hpp"
#include "subsamp/mgf.hpp"
#include "subsamp/oracle.hpp"
#include "subsamp/profiles.hpp"
#include "subsamp/suites.hpp"

namespace subsamp {
namespace cli {
namespace {

using nlohmann::json;

// Flag validation failures and malformed config/scenario files. Mapped to
// exit code 2, while library errors raised during computation map to 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s, const char* field) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string tok = trimmed(s.substr(start, comma - start));
    if (tok.empty()) {
      throw ConfigError(std::string(field) + ": empty list entry");
    }
    out.push_back(tok);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& tok, const char* field) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(field) + ": '" + tok +
                      "' is not a number");
  }
}

long parse_long(const std::string& tok, const char* field) {
  try {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(field) + ": '" + tok +
                      "' is not an integer");
  }
}

std::uint64_t parse_seed(const std::string& tok, const char* field) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError(std::string(field) + ": '" + tok +
                      "' is not an unsigned integer");
  }
}

// Epsilon tokens are plain numbers or "ln<number>", e.g. "ln2" = log(2).
double parse_eps_token(const std::string& tok, const char* field) {
  if (tok.rfind("ln", 0) == 0 && tok.size() > 2) {
    double v = parse_double(tok.substr(2), field);
    if (!(v > 0.0)) {
      throw ConfigError(std::string(field) + ": ln argument must be > 0");
    }
    return std::log(v);
  }
  return parse_double(tok, field);
}

// Grid spec: "start:stop:count" (count >= 1), or a comma list of epsilon
// tokens. log_spacing applies geometric spacing to the start/stop form.
std::vector<double> parse_eps_grid(const std::string& spec,
                                   bool log_spacing) {
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      std::size_t colon = spec.find(':', start);
      parts.push_back(trimmed(spec.substr(start, colon - start)));
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) {
      throw ConfigError("--eps: grid spec must be start:stop:count");
    }
    double a = parse_eps_token(parts[0], "--eps");
    double b = parse_eps_token(parts[1], "--eps");
    long count = parse_long(parts[2], "--eps");
    if (count < 1) throw ConfigError("--eps: grid count must be >= 1");
    if (count == 1) return {a};
    if (log_spacing && !(a > 0.0 && b > 0.0)) {
      throw ConfigError("--eps: --log needs positive endpoints");
    }
    std::vector<double> grid(static_cast<std::size_t>(count));
    double la = log_spacing ? std::log(a) : a;
    double lb = log_spacing ? std::log(b) : b;
    for (long i = 0; i < count; ++i) {
      double v;
      if (i == 0) {
        v = a;
      } else if (i == count - 1) {
        v = b;
      } else {
        double t = la + ((lb - la) * static_cast<double>(i)) /
                            static_cast<double>(count - 1);
        v = log_spacing ? std::exp(t) : t;
      }
      grid[static_cast<std::size_t>(i)] = v;
    }
    return grid;
  }
  std::vector<double> grid;
  for (const std::string& tok : split_list(spec, "--eps")) {
    grid.push_back(parse_eps_token(tok, "--eps"));
  }
  return grid;
}

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(std::string(what) + ": cannot read " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": " + path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("--out: cannot write " + path);
  out << content;
  if (!out) throw ConfigError("--out: write failed for " + path);
}

// String-valued option storage: "" means unset, so JSON config values can
// fill in anything the command line left out.
struct Bindings {
  std::vector<std::tuple<CLI::Option*, std::string, std::string*>> strings;
  std::vector<std::tuple<CLI::Option*, std::string, bool*>> flags;

  void bind(CLI::App* cmd, const char* name, std::string& target,
            const char* desc) {
    CLI::Option* opt = cmd->add_option(name, target, desc);
    strings.emplace_back(opt, std::string(name + 2), &target);
  }
  void bind_flag(CLI::App* cmd, const char* name, bool& target,
                 const char* desc) {
    CLI::Option* opt = cmd->add_flag(name, target, desc);
    flags.emplace_back(opt, std::string(name + 2), &target);
  }
};

// Flags override config file fields: a key is consulted only when the
// option was not given on the command line.
void apply_config(const std::string& config_path, const Bindings& b) {
  if (config_path.empty()) return;
  json j = load_json_file(config_path, "--config");
  if (!j.is_object()) {
    throw ConfigError("--config: file must hold a JSON object");
  }
  std::set<std::string> known;
  for (const auto& [opt, key, target] : b.strings) known.insert(key);
  for (const auto& [opt, key, target] : b.flags) known.insert(key);
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ConfigError("--config: unknown key '" + key + "'");
    }
  }
  for (const auto& [opt, key, target] : b.strings) {
    if (opt->count() == 0 && j.contains(key)) {
      const json& v = j.at(key);
      *target = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  for (const auto& [opt, key, target] : b.flags) {
    if (opt->count() == 0 && j.contains(key)) {
      if (!j.at(key).is_boolean()) {
        throw ConfigError("--config: key '" + key + "' must be a boolean");
      }
      *target = j.at(key).get<bool>();
    }
  }
}

json effective_options(const Bindings& b, const std::string& config_path) {
  json out = json::object();
  for (const auto& [opt, key, target] : b.strings) {
    if (!target->empty()) out[key] = *target;
  }
  for (const auto& [opt, key, target] : b.flags) {
    if (*target) out[key] = true;
  }
  if (!config_path.empty()) out["config"] = config_path;
  return out;
}

// Writes the named files plus an effective-config sidecar, or streams the
// single output to stdout when no --out was given.
void emit_outputs(const std::string& out, const char* command,
                  const json& options,
                  const std::vector<std::pair<std::string, std::string>>&
                      files) {
  if (out.empty()) {
    std::cout << files.front().second;
    return;
  }
  json outputs = json::array();
  for (const auto& [path, content] : files) {
    write_file(path, content);
    outputs.push_back(path);
  }
  json meta;
  meta["command"] = command;
  meta["options"] = options;
  meta["outputs"] = outputs;
  write_file(out + ".meta.json", meta.dump(2) + "\n");
}

PrivacyProfile base_profile_from(const std::string& mech,
                                 const std::string& theta_s,
                                 const std::string& p_s,
                                 const std::string& csv_path) {
  try {
    if (mech == "laplace" || mech == "gaussian") {
      if (theta_s.empty()) {
        throw ConfigError("--theta is required for mechanism " + mech);
      }
      double theta = parse_double(theta_s, "--theta");
      return mech == "laplace" ? laplace_profile(theta)
                               : gaussian_profile(theta);
    }
    if (mech == "rr") {
      if (p_s.empty()) throw ConfigError("--p is required for mechanism rr");
      return rr_profile(parse_double(p_s, "--p"));
    }
    if (mech == "csv") {
      if (csv_path.empty()) {
        throw ConfigError("--profile-csv is required for mechanism csv");
      }
      std::ifstream in(csv_path);
      if (!in) {
        throw ConfigError("--profile-csv: cannot read " + csv_path);
      }
      return load_profile_csv(in);
    }
    throw ConfigError("--mech: unknown mechanism '" + mech +
                      "' (expected laplace, gaussian, rr, or csv)");
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

// Solves for the parameter that puts delta(0) at the target. delta(0) is
// increasing in theta (laplace, gaussian) and in p (rr).
PrivacyProfile calibrate_profile(const std::string& mech, double target) {
  if (!(target > 0.0 && target < 1.0)) {
    throw ConfigError("--calibrate-delta0 must lie in (0, 1)");
  }
  std::function<PrivacyProfile(double)> make;
  double lo, hi;
  if (mech == "laplace") {
    make = [](double t) { return laplace_profile(t); };
    lo = 1e-8;
    hi = 200.0;
  } else if (mech == "gaussian") {
    make = [](double t) { return gaussian_profile(t); };
    lo = 1e-8;
    hi = 200.0;
  } else if (mech == "rr") {
    make = [](double t) { return rr_profile(t); };
    lo = 0.5;
    hi = 1.0;
  } else {
    throw ConfigError("--calibrate-delta0 applies to laplace, gaussian, "
                      "and rr only");
  }
  try {
    if (make(lo).evaluate(0.0) > target || make(hi).evaluate(0.0) < target) {
      throw ConfigError("--calibrate-delta0: target out of range for " +
                        mech);
    }
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      if (make(mid).evaluate(0.0) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return make(0.5 * (lo + hi));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

struct ProfileOpts {
  std::string mech, theta, p, profile_csv, eps, calibrate, out, config;
  bool log_spacing = false;
};

int cmd_profile(const ProfileOpts& o, const Bindings& b) {
  if (o.mech.empty()) throw ConfigError("--mech is required");
  if (o.eps.empty()) throw ConfigError("--eps is required");
  std::vector<std::string> mechs = split_list(o.mech, "--mech");
  for (std::size_t i = 0; i < mechs.size(); ++i) {
    for (std::size_t k = i + 1; k < mechs.size(); ++k) {
      if (mechs[i] == mechs[k]) {
        throw ConfigError("--mech: duplicate mechanism '" + mechs[i] + "'");
      }
    }
  }
  std::vector<double> grid = parse_eps_grid(o.eps, o.log_spacing);
  bool calibrated = !o.calibrate.empty();
  if (calibrated && (!o.theta.empty() || !o.p.empty())) {
    throw ConfigError("--calibrate-delta0 conflicts with --theta and --p");
  }
  if (mechs.size() > 1 && o.out.empty()) {
    throw ConfigError("--out is required when --mech lists several "
                      "mechanisms");
  }
  double target = calibrated
                      ? parse_double(o.calibrate, "--calibrate-delta0")
                      : 0.0;

  std::vector<std::pair<std::string, std::string>> files;
  for (const std::string& mech : mechs) {
    PrivacyProfile profile =
        calibrated ? calibrate_profile(mech, target)
                   : base_profile_from(mech, o.theta, o.p, o.profile_csv);
    std::string csv = "epsilon,delta\n";
    for (double e : grid) {
      csv += fmt(e) + "," + fmt(profile.evaluate(e)) + "\n";
    }
    std::string path = mechs.size() == 1 ? o.out : o.out + "." + mech +
                                                       ".csv";
    files.emplace_back(path, std::move(csv));
  }
  emit_outputs(o.out, "profile", effective_options(b, o.config), files);
  return 0;
}

struct AmplifyOpts {
  std::string scheme, gamma, n, m, relation, group, mech, theta, p,
      profile_csv, eps, out, config;
  bool log_spacing = false;
};

struct Combo {
  SubsamplingScheme scheme;
  std::string group;  // "", "whitebox", or "blackbox"
  std::string label;
};

int cmd_amplify(const AmplifyOpts& o, const Bindings& b) {
  if (o.scheme.empty()) throw ConfigError("--scheme is required");
  if (o.mech.empty()) throw ConfigError("--mech is required");
  if (o.eps.empty()) throw ConfigError("--eps is required");
  std::vector<double> grid = parse_eps_grid(o.eps, o.log_spacing);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] < grid[i - 1]) {
      throw ConfigError("--eps: amplify needs a non-descending grid");
    }
  }
  NeighborRelation relation;
  std::string rel = o.relation.empty() ? "removeadd" : o.relation;
  if (rel == "removeadd") {
    relation = NeighborRelation::kRemoveAdd;
  } else if (rel == "substitute") {
    relation = NeighborRelation::kSubstitute;
  } else {
    throw ConfigError("--relation must be removeadd or substitute");
  }
  PrivacyProfile base = base_profile_from(o.mech, o.theta, o.p,
                                          o.profile_csv);

  std::optional<long> n;
  if (!o.n.empty()) {
    n = parse_long(o.n, "--n");
  }
  std::vector<double> gammas;
  if (!o.gamma.empty()) {
    for (const std::string& tok : split_list(o.gamma, "--gamma")) {
      gammas.push_back(parse_double(tok, "--gamma"));
    }
  }
  std::vector<long> ms;
  if (!o.m.empty()) {
    for (const std::string& tok : split_list(o.m, "--m")) {
      ms.push_back(parse_long(tok, "--m"));
    }
  }
  std::vector<std::string> groups;
  if (!o.group.empty()) {
    groups = split_list(o.group, "--group");
    for (const std::string& g : groups) {
      if (g != "whitebox" && g != "blackbox") {
        throw ConfigError("--group entries must be whitebox or blackbox");
      }
    }
  }

  std::vector<Combo> combos;
  try {
    for (const std::string& s : split_list(o.scheme, "--scheme")) {
      if (s == "poisson") {
        if (gammas.empty()) {
          throw ConfigError("--gamma is required for scheme poisson");
        }
        if (relation == NeighborRelation::kSubstitute &&
            (!n || *n < 2)) {
          throw ConfigError("--n (>= 2) is required for poisson under "
                            "substitution");
        }
        for (double g : gammas) {
          Combo c{SubsamplingScheme::poisson(g), "", ""};
          c.label = c.scheme.label();
          if (relation == NeighborRelation::kSubstitute) c.label += "_sub";
          combos.push_back(std::move(c));
        }
      } else if (s == "wor") {
        if (!n) throw ConfigError("--n is required for scheme wor");
        if (ms.empty()) throw ConfigError("--m is required for scheme wor");
        for (long m : ms) {
          Combo c{SubsamplingScheme::wor(*n, m), "", ""};
          c.label = c.scheme.label();
          combos.push_back(std::move(c));
        }
      } else if (s == "wr") {
        if (!n) throw ConfigError("--n is required for scheme wr");
        if (ms.empty()) throw ConfigError("--m is required for scheme wr");
        if (groups.empty()) {
          throw ConfigError("--group is required for scheme wr");
        }
        for (long m : ms) {
          for (const std::string& g : groups) {
            Combo c{SubsamplingScheme::wr(*n, m), g, ""};
            c.label = c.scheme.label() + "_" + g;
            combos.push_back(std::move(c));
          }
        }
      } else {
        throw ConfigError("--scheme: unknown scheme '" + s +
                          "' (expected poisson, wor, or wr)");
      }
    }
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  struct Curve {
    std::string label;
    std::vector<double> eps_out, delta_out;
  };
  std::vector<Curve> curves;
  for (const Combo& combo : combos) {
    std::optional<GroupProfileFamily> family;
    if (combo.scheme.kind == SubsamplingScheme::Kind::kWr) {
      family = combo.group == "whitebox"
                   ? GroupProfileFamily::white_box(base)
                   : GroupProfileFamily::black_box(base);
    }
    Curve curve;
    curve.label = combo.label;
    double running = std::numeric_limits<double>::infinity();
    for (double e : grid) {
      AmplificationBound bound;
      switch (combo.scheme.kind) {
        case SubsamplingScheme::Kind::kPoisson:
          bound = relation == NeighborRelation::kRemoveAdd
                      ? amplify_poisson(base, combo.scheme.gamma, e)
                      : amplify_poisson_substitution(base, *n,
                                                     combo.scheme.gamma, e);
          break;
        case SubsamplingScheme::Kind::kWor:
          if (relation == NeighborRelation::kRemoveAdd) {
            scheme_eta(combo.scheme, relation);  // throws, pairing unsupported
          }
          bound = amplify_wor(base, combo.scheme.n, combo.scheme.m, e);
          break;
        case SubsamplingScheme::Kind::kWr:
          bound = relation == NeighborRelation::kSubstitute
                      ? amplify_wr(*family, combo.scheme.n, combo.scheme.m,
                                   e)
                      : amplify_wr_hybrid(*family, combo.scheme.n,
                                          combo.scheme.m, e);
          break;
      }
      // A bound at a smaller eps_out stays valid at larger ones, so the
      // running minimum keeps each delta column non-increasing.
      running = std::min(running, bound.delta_out);
      curve.eps_out.push_back(bound.eps_out);
      curve.delta_out.push_back(running);
    }
    curves.push_back(std::move(curve));
  }

  std::string csv;
  if (curves.size() == 1) {
    csv = "eps_in,eps_out,delta_out\n";
  } else {
    csv = "eps_in";
    for (const Curve& c : curves) {
      csv += ",eps_out_" + c.label + ",delta_out_" + c.label;
    }
    csv += "\n";
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv += fmt(grid[i]);
    for (const Curve& c : curves) {
      csv += "," + fmt(c.eps_out[i]) + "," + fmt(c.delta_out[i]);
    }
    csv += "\n";
  }
  emit_outputs(o.out, "amplify", effective_options(b, o.config),
               {{o.out, csv}});
  return 0;
}

struct VerifyOpts {
  std::string suite, scenario, trials, seed, out, config;
};

std::vector<suites::SuiteResult> run_suites(const std::string& name,
                                            std::optional<int> trials,
                                            std::uint64_t seed) {
  if (name == "all") {
    if (trials) throw ConfigError("--trials applies to a single suite");
    return suites::run_all(seed);
  }
  suites::SuiteResult r;
  if (name == "ajc") {
    r = suites::run_ajc(trials.value_or(suites::kDefaultAjcTrials), seed);
  } else if (name == "dominance") {
    r = suites::run_dominance(
        trials.value_or(suites::kDefaultDominanceTrials), seed);
  } else if (name == "lossrv") {
    r = suites::run_lossrv(trials.value_or(suites::kDefaultLossrvTrials),
                           seed);
  } else if (trials) {
    throw ConfigError("--trials does not apply to suite " + name);
  } else if (name == "tightness") {
    r = suites::run_tightness();
  } else if (name == "mgf") {
    r = suites::run_mgf();
  } else if (name == "coupling") {
    r = suites::run_coupling();
  } else if (name == "appendix") {
    r = suites::run_appendix();
  } else if (name == "group") {
    r = suites::run_group();
  } else {
    throw ConfigError("--suite: unknown suite '" + name +
                      "' (expected ajc, tightness, dominance, lossrv, mgf, "
                      "coupling, appendix, group, or all)");
  }
  return {r};
}

struct ScenarioRow {
  std::string name;
  double eps = 0.0, exact = 0.0, bound = 0.0, gap = 0.0;
  bool pass = false;
};

std::vector<std::string> string_array(const json& j, const char* field) {
  if (!j.is_array()) {
    throw ConfigError(std::string("scenario: ") + field +
                      " must be an array of strings");
  }
  std::vector<std::string> out;
  for (const json& v : j) {
    if (!v.is_string()) {
      throw ConfigError(std::string("scenario: ") + field +
                        " must be an array of strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

const json& require_field(const json& j, const char* field) {
  if (!j.contains(field)) {
    throw ConfigError(std::string("scenario: missing field '") + field +
                      "'");
  }
  return j.at(field);
}

std::vector<ScenarioRow> run_scenario(const std::string& path) {
  json j = load_json_file(path, "--scenario");
  if (!j.is_object()) {
    throw ConfigError("--scenario: file must hold a JSON object");
  }
  std::string name = j.value("name", std::string("scenario"));
  if (name.find(',') != std::string::npos) {
    throw ConfigError("scenario: name must not contain a comma");
  }

  std::string rel = require_field(j, "relation").get<std::string>();
  NeighborRelation relation;
  if (rel == "removeadd") {
    relation = NeighborRelation::kRemoveAdd;
  } else if (rel == "substitute") {
    relation = NeighborRelation::kSubstitute;
  } else {
    throw ConfigError("scenario: relation must be removeadd or substitute");
  }

  std::vector<double> epsilons;
  for (const json& e : require_field(j, "epsilons")) {
    if (e.is_string()) {
      epsilons.push_back(parse_eps_token(e.get<std::string>(), "epsilons"));
    } else if (e.is_number()) {
      epsilons.push_back(e.get<double>());
    } else {
      throw ConfigError("scenario: epsilons entries must be numbers or "
                        "ln-strings");
    }
  }
  if (epsilons.empty()) {
    throw ConfigError("scenario: epsilons must be non-empty");
  }

  try {
    std::vector<std::string> universe =
        string_array(require_field(j, "universe"), "universe");
    Dataset x = Dataset::from_elements(
        universe, string_array(require_field(j, "dataset"), "dataset"));

    const json& js = require_field(j, "scheme");
    std::string kind = require_field(js, "kind").get<std::string>();
    SubsamplingScheme scheme = SubsamplingScheme::poisson(0.5);
    if (kind == "poisson") {
      scheme = SubsamplingScheme::poisson(
          require_field(js, "gamma").get<double>());
    } else if (kind == "wor") {
      scheme = SubsamplingScheme::wor(require_field(js, "n").get<long>(),
                                      require_field(js, "m").get<long>());
    } else if (kind == "wr") {
      scheme = SubsamplingScheme::wr(require_field(js, "n").get<long>(),
                                     require_field(js, "m").get<long>());
    } else {
      throw ConfigError("scenario: scheme.kind must be poisson, wor, or wr");
    }

    bool dominance = j.contains("kernel");
    Dataset x_prime = x;
    if (j.contains("dataset_prime")) {
      x_prime = Dataset::from_elements(
          universe, string_array(j.at("dataset_prime"), "dataset_prime"));
    } else if (relation == NeighborRelation::kRemoveAdd &&
               j.contains("v")) {
      x_prime = x.with_removed(require_field(j, "v").get<std::string>());
    } else {
      throw ConfigError("scenario: dataset_prime is required");
    }

    std::vector<ScenarioRow> rows;
    if (dominance) {
      MechanismKernel::Table table;
      for (const auto& [enc, row] : j.at("kernel").items()) {
        if (!row.is_object()) {
          throw ConfigError("scenario: kernel rows must be objects");
        }
        std::vector<DiscreteMeasure::Entry> entries;
        for (const auto& [outcome, mass] : row.items()) {
          if (!mass.is_number()) {
            throw ConfigError("scenario: kernel masses must be numbers");
          }
          entries.emplace_back(outcome, mass.get<double>());
        }
        table.emplace(enc, DiscreteMeasure::probability(std::move(entries)));
      }
      MechanismKernel kernel = MechanismKernel::from_table(std::move(table));
      for (double eps : epsilons) {
        TightnessReport rep =
            verify_dominance(scheme, relation, kernel, x, x_prime, eps);
        ScenarioRow row{name, eps, rep.exact, rep.bound, rep.gap, false};
        row.pass = rep.gap >= -1e-10;
        rows.push_back(row);
      }
    } else {
      std::string v = require_field(j, "v").get<std::string>();
      double p = require_field(j, "p").get<double>();
      TightnessInstance instance{x, x_prime, v};
      for (double eps : epsilons) {
        TightnessReport rep =
            verify_tightness(scheme, relation, p, eps, instance);
        ScenarioRow row{name, eps, rep.exact, rep.bound, rep.gap, false};
        row.pass = rep.asserts_equality ? std::abs(rep.gap) <= 1e-12
                                        : rep.gap >= -1e-10;
        rows.push_back(row);
      }
    }
    return rows;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  } catch (const Error& e) {
    // The scenario file fully determines the computation, so any library
    // rejection means the scenario itself is malformed.
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

int cmd_verify(const VerifyOpts& o, const Bindings& b) {
  bool has_suite = !o.suite.empty();
  bool has_scenario = !o.scenario.empty();
  if (has_suite == has_scenario) {
    throw ConfigError("exactly one of --suite and --scenario is required");
  }
  std::uint64_t seed = o.seed.empty() ? 7 : parse_seed(o.seed, "--seed");
  std::optional<int> trials;
  if (!o.trials.empty()) {
    long t = parse_long(o.trials, "--trials");
    if (t < 1) throw ConfigError("--trials must be >= 1");
    trials = static_cast<int>(t);
  }

  bool all_pass = true;
  std::string csv;
  if (has_suite) {
    std::vector<suites::SuiteResult> results = run_suites(o.suite, trials,
                                                          seed);
    csv = "suite,check,result,exact,bound,gap\n";
    for (const suites::SuiteResult& r : results) {
      int failed = 0;
      for (const suites::Check& c : r.checks) {
        if (!c.pass) ++failed;
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
                  << " exact=" << fmt(c.lhs) << " bound=" << fmt(c.rhs)
                  << " gap=" << fmt(c.gap) << "\n";
        csv += r.suite + "," + c.name + "," + (c.pass ? "PASS" : "FAIL") +
               "," + fmt(c.lhs) + "," + fmt(c.rhs) + "," + fmt(c.gap) + "\n";
      }
      std::cout << "suite " << r.suite << ": " << r.checks.size()
                << " checks, " << failed << " failed\n";
      if (failed > 0) all_pass = false;
    }
  } else {
    std::vector<ScenarioRow> rows = run_scenario(o.scenario);
    csv = "scenario,epsilon,exact,bound,gap\n";
    int failed = 0;
    for (const ScenarioRow& row : rows) {
      if (!row.pass) ++failed;
      std::cout << (row.pass ? "PASS " : "FAIL ") << row.name
                << " eps=" << fmt(row.eps) << " exact=" << fmt(row.exact)
                << " bound=" << fmt(row.bound) << " gap=" << fmt(row.gap)
                << "\n";
      csv += row.name + "," + fmt(row.eps) + "," + fmt(row.exact) + "," +
             fmt(row.bound) + "," + fmt(row.gap) + "\n";
    }
    std::cout << "scenario: " << rows.size() << " checks, " << failed
              << " failed\n";
    if (failed > 0) all_pass = false;
  }
  if (!o.out.empty()) {
    emit_outputs(o.out, "verify", effective_options(b, o.config),
                 {{o.out, csv}});
  }
  return all_pass ? 0 : 1;
}

struct MgfOpts {
  std::string mech, theta, p, s, out, config;
};

int cmd_mgf(const MgfOpts& o, const Bindings& b) {
  if (o.mech.empty()) throw ConfigError("--mech is required");
  if (o.s.empty()) throw ConfigError("--s is required");
  if (o.mech == "csv") {
    throw ConfigError("--mech: mgf supports laplace, gaussian, and rr");
  }
  PrivacyProfile profile = base_profile_from(o.mech, o.theta, o.p, "");
  std::vector<double> orders;
  for (const std::string& tok : split_list(o.s, "--s")) {
    double s = parse_double(tok, "--s");
    if (s < 0.0) throw ConfigError("--s entries must be >= 0");
    orders.push_back(s);
  }

  // The built-in mechanism pairs are symmetric, so one profile serves both
  // integration directions.
  std::string csv = "s,phi,renyi_lambda,renyi_eps\n";
  for (double s : orders) {
    double phi = mgf_from_profiles(profile, profile, s);
    double lambda = s + 1.0;
    double reps = s > 0.0 ? renyi_epsilon(phi, lambda)
                          : std::numeric_limits<double>::quiet_NaN();
    csv += fmt(s) + "," + fmt(phi) + "," + fmt(lambda) + "," + fmt(reps) +
           "\n";
  }
  emit_outputs(o.out, "mgf", effective_options(b, o.config),
               {{o.out, csv}});
  return 0;
}

}  // namespace

int dispatch(int argc, char** argv) {
  CLI::App app{"Privacy amplification by subsampling: profiles, bounds, "
               "and verification"};
  app.require_subcommand(1);

  ProfileOpts po;
  Bindings pb;
  CLI::App* profile =
      app.add_subcommand("profile", "Evaluate privacy profiles on a grid");
  pb.bind(profile, "--mech", po.mech,
          "Comma list of laplace, gaussian, rr, csv");
  pb.bind(profile, "--theta", po.theta, "Noise scale for laplace/gaussian");
  pb.bind(profile, "--p", po.p, "Response-keeping probability for rr");
  pb.bind(profile, "--profile-csv", po.profile_csv,
          "Tabulated profile input for mech csv");
  pb.bind(profile, "--eps", po.eps,
          "Grid start:stop:count, or comma list; tokens allow lnN");
  pb.bind_flag(profile, "--log", po.log_spacing,
               "Geometric spacing for the grid form");
  pb.bind(profile, "--calibrate-delta0", po.calibrate,
          "Solve theta/p so that delta(0) hits this target");
  pb.bind(profile, "--out", po.out,
          "Output path (prefix when several mechanisms)");
  profile->add_option("--config", po.config,
                      "JSON config file; flags take precedence");

  AmplifyOpts ao;
  Bindings ab;
  CLI::App* amplify = app.add_subcommand(
      "amplify", "Apply subsampling amplification bounds to a profile");
  ab.bind(amplify, "--scheme", ao.scheme,
          "Comma list of poisson, wor, wr");
  ab.bind(amplify, "--gamma", ao.gamma,
          "Comma list of Poisson sampling rates");
  ab.bind(amplify, "--n", ao.n, "Population size");
  ab.bind(amplify, "--m", ao.m, "Comma list of sample sizes");
  ab.bind(amplify, "--relation", ao.relation,
          "removeadd (default) or substitute");
  ab.bind(amplify, "--group", ao.group,
          "Comma list of whitebox, blackbox (wr only)");
  ab.bind(amplify, "--mech", ao.mech, "laplace, gaussian, rr, or csv");
  ab.bind(amplify, "--theta", ao.theta, "Noise scale for laplace/gaussian");
  ab.bind(amplify, "--p", ao.p, "Response-keeping probability for rr");
  ab.bind(amplify, "--profile-csv", ao.profile_csv,
          "Tabulated profile input for mech csv");
  ab.bind(amplify, "--eps", ao.eps,
          "Grid start:stop:count, or comma list; tokens allow lnN");
  ab.bind_flag(amplify, "--log", ao.log_spacing,
               "Geometric spacing for the grid form");
  ab.bind(amplify, "--out", ao.out, "Output CSV path");
  amplify->add_option("--config", ao.config,
                      "JSON config file; flags take precedence");

  VerifyOpts vo;
  Bindings vb;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run verification suites or a scenario file");
  vb.bind(verify, "--suite", vo.suite,
          "ajc, tightness, dominance, lossrv, mgf, coupling, appendix, "
          "group, or all");
  vb.bind(verify, "--scenario", vo.scenario, "Scenario JSON file");
  vb.bind(verify, "--trials", vo.trials,
          "Trial count for ajc/dominance/lossrv");
  vb.bind(verify, "--seed", vo.seed, "Random seed (default 7)");
  vb.bind(verify, "--out", vo.out, "Report CSV path");
  verify->add_option("--config", vo.config,
                     "JSON config file; flags take precedence");

  MgfOpts mo;
  Bindings mb;
  CLI::App* mgf = app.add_subcommand(
      "mgf", "Integrate profile MGFs and Renyi conversions");
  mb.bind(mgf, "--mech", mo.mech, "laplace, gaussian, or rr");
  mb.bind(mgf, "--theta", mo.theta, "Noise scale for laplace/gaussian");
  mb.bind(mgf, "--p", mo.p, "Response-keeping probability for rr");
  mb.bind(mgf, "--s", mo.s, "Comma list of MGF orders (s >= 0)");
  mb.bind(mgf, "--out", mo.out, "Output CSV path");
  mgf->add_option("--config", mo.config,
                  "JSON config file; flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (profile->parsed()) {
      apply_config(po.config, pb);
      return cmd_profile(po, pb);
    }
    if (amplify->parsed()) {
      apply_config(ao.config, ab);
      return cmd_amplify(ao, ab);
    }
    if (verify->parsed()) {
      apply_config(vo.config, vb);
      return cmd_verify(vo, vb);
    }
    if (mgf->parsed()) {
      apply_config(mo.config, mb);
      return cmd_mgf(mo, mb);
    }
    std::cerr << app.help();
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cli
}  // namespace subsamp
