#include "secgame/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

using nlohmann::json;

// Metric catalogue in canonical (specification) order, with admissible value
// tokens. RVSS-only entries are marked so the CVSS grammar can reject them.
struct MetricDef {
  const char* name;
  std::vector<const char*> values;
  bool rvss_only;
};

const std::vector<MetricDef>& metric_defs() {
  static const std::vector<MetricDef> defs = {
      {"AV", {"N", "A", "L", "P"}, false},
      {"AC", {"L", "H"}, false},
      {"PR", {"N", "L", "H"}, false},
      {"UI", {"N", "R"}, false},
      {"S", {"U", "C"}, false},
      {"C", {"H", "L", "N"}, false},
      {"I", {"H", "L", "N"}, false},
      {"A", {"H", "L", "N"}, false},
      {"E", {"X", "H", "F", "P", "U"}, false},
      {"RL", {"X", "U", "W", "T", "O"}, false},
      {"RC", {"X", "C", "R", "U"}, false},
      {"CR", {"X", "H", "M", "L"}, false},
      {"IR", {"X", "H", "M", "L"}, false},
      {"AR", {"X", "H", "M", "L"}, false},
      {"MAV", {"X", "N", "A", "L", "P"}, false},
      {"MAC", {"X", "L", "H"}, false},
      {"MPR", {"X", "N", "L", "H"}, false},
      {"MUI", {"X", "N", "R"}, false},
      {"MS", {"X", "U", "C"}, false},
      {"MC", {"X", "H", "L", "N"}, false},
      {"MI", {"X", "H", "L", "N"}, false},
      {"MA", {"X", "H", "L", "N"}, false},
      {"Y", {"X", "Z", "O", "T", "M", "U"}, true},
      {"MY", {"X", "Z", "O", "T", "M", "U"}, true},
      {"H", {"X", "U", "N", "E", "HU"}, true},
      {"MH", {"X", "U", "N", "E", "HU"}, true},
      {"HR", {"X", "L", "M", "H"}, true},
  };
  return defs;
}

// RVSS refines the attack-vector categories; these extra values are legal for
// AV/MAV under the RVSS scheme only.
const std::vector<const char*>& rvss_av_values() {
  static const std::vector<const char*> extra = {"RN", "AN", "IN", "PP", "PR", "PI"};
  return extra;
}

const MetricDef* find_metric(const std::string& name) {
  for (const auto& d : metric_defs())
    if (name == d.name) return &d;
  return nullptr;
}

bool value_allowed(const MetricDef& def, const std::string& value, bool rvss) {
  for (const char* v : def.values)
    if (value == v) return true;
  if (rvss && (std::string(def.name) == "AV" || std::string(def.name) == "MAV"))
    for (const char* v : rvss_av_values())
      if (value == v) return true;
  return false;
}

// CVSS v3.1 round-up: smallest number with one decimal >= value.
double round_up_1(double value) {
  const long long scaled = std::llround(value * 100000.0);
  if (scaled % 10000 == 0) return static_cast<double>(scaled) / 100000.0;
  return (std::floor(static_cast<double>(scaled) / 10000.0) + 1.0) / 10.0;
}

double cvss_av_weight(const std::string& v) {
  if (v == "N") return 0.85;
  if (v == "A") return 0.62;
  if (v == "L") return 0.55;
  return 0.2;  // P
}

double cvss_ac_weight(const std::string& v) { return v == "L" ? 0.77 : 0.44; }

double cvss_pr_weight(const std::string& v, bool scope_changed) {
  if (v == "N") return 0.85;
  if (v == "L") return scope_changed ? 0.68 : 0.62;
  return scope_changed ? 0.5 : 0.27;  // H
}

double cvss_ui_weight(const std::string& v) { return v == "N" ? 0.85 : 0.62; }

double cia_weight(const std::string& v) {
  if (v == "H") return 0.56;
  if (v == "L") return 0.22;
  return 0.0;  // N
}

double exploit_maturity_weight(const std::string& v) {
  if (v == "U") return 0.91;
  if (v == "P") return 0.94;
  if (v == "F") return 0.97;
  return 1.0;  // H or X
}

double remediation_weight(const std::string& v) {
  if (v == "O") return 0.95;
  if (v == "T") return 0.96;
  if (v == "W") return 0.97;
  return 1.0;  // U or X
}

double confidence_weight(const std::string& v) {
  if (v == "U") return 0.92;
  if (v == "R") return 0.96;
  return 1.0;  // C or X
}

double requirement_weight(const std::string& v) {
  if (v == "H") return 1.5;
  if (v == "L") return 0.5;
  return 1.0;  // M or X
}

double av_weight_from(const RvssWeights& w, const std::string& value) {
  auto it = w.attack_vector.find(value);
  if (it == w.attack_vector.end())
    throw BadWeightConfigError("no attack-vector weight for value \"" + value + "\"");
  return it->second;
}

SafetyWeight safety_from(const RvssWeights& w, const std::string& value) {
  auto it = w.safety.find(value);
  if (it == w.safety.end())
    throw BadWeightConfigError("no safety weight for value \"" + value + "\"");
  return it->second;
}

double age_from(const RvssWeights& w, const std::string& value) {
  auto it = w.age.find(value);
  if (it == w.age.end()) throw BadWeightConfigError("no age weight for value \"" + value + "\"");
  return it->second;
}

struct BaseInputs {
  double av, ac, pr, ui;
  double c, i, a;
  bool scope_changed;
};

void require_base_metrics(const ScoreVector& v) {
  for (const char* m : {"AV", "AC", "PR", "UI", "S", "C", "I", "A"})
    if (!v.has(m)) throw MissingMetricError(std::string("base metric ") + m + " is missing");
}

double impact_subscore(double c, double i, double a, bool scope_changed) {
  const double iss = 1.0 - (1.0 - c) * (1.0 - i) * (1.0 - a);
  if (!scope_changed) return 6.42 * iss;
  return 7.52 * (iss - 0.029) - 3.25 * std::pow(iss - 0.02, 15.0);
}

double base_from_parts(double impact, double exploitability, bool scope_changed) {
  if (impact <= 0.0) return 0.0;
  const double raw = scope_changed ? 1.08 * (impact + exploitability) : impact + exploitability;
  return round_up_1(std::min(raw, 10.0));
}

double temporal_product(const ScoreVector& v) {
  return exploit_maturity_weight(v.get("E", "X")) * remediation_weight(v.get("RL", "X")) *
         confidence_weight(v.get("RC", "X"));
}

// Environmental score per v3.1: modified metrics fall back to their base
// counterparts, requirements scale the impact components, MISS is capped at
// 0.915 and the changed-scope impact uses the 0.9731/exponent-13 variant.
double environmental_score(const ScoreVector& v, const RvssWeights* weights) {
  const bool rvss = weights != nullptr;
  const std::string ms = v.get("MS", v.get("S", "U"));
  const bool scope_changed = ms == "C";

  const double mc = cia_weight(v.get("MC", v.get("C", "N")));
  const double mi = cia_weight(v.get("MI", v.get("I", "N")));
  const double ma = cia_weight(v.get("MA", v.get("A", "N")));
  const double cr = requirement_weight(v.get("CR", "X"));
  const double ir = requirement_weight(v.get("IR", "X"));
  const double ar = requirement_weight(v.get("AR", "X"));

  const double miss =
      std::min(1.0 - (1.0 - cr * mc) * (1.0 - ir * mi) * (1.0 - ar * ma), 0.915);
  double modified_impact =
      scope_changed ? 7.52 * (miss - 0.029) - 3.25 * std::pow(miss * 0.9731 - 0.02, 13.0)
                    : 6.42 * miss;

  const std::string mav = v.get("MAV", v.get("AV", "N"));
  const double av = rvss ? av_weight_from(*weights, mav) : cvss_av_weight(mav);
  const double mac = cvss_ac_weight(v.get("MAC", v.get("AC", "L")));
  const double mpr = cvss_pr_weight(v.get("MPR", v.get("PR", "N")), scope_changed);
  const double mui = cvss_ui_weight(v.get("MUI", v.get("UI", "N")));
  const double modified_exploitability = 8.22 * av * mac * mpr * mui;

  double temporal_mult = temporal_product(v);
  if (rvss) {
    // Safety applies to the modified impact (scaled by the analyst's safety
    // requirement); Age applies as a temporal multiplier.
    const SafetyWeight sw = safety_from(*weights, v.get("MH", v.get("H", "U")));
    auto hr_it = weights->safety_requirement.find(v.get("HR", "X"));
    const double hr = hr_it == weights->safety_requirement.end() ? 1.0 : hr_it->second;
    modified_impact = std::max(modified_impact * (1.0 + (sw.multiplier - 1.0) * hr),
                               sw.floor * hr);
    temporal_mult *= age_from(*weights, v.get("MY", v.get("Y", "U")));
  }

  if (modified_impact <= 0.0) return 0.0;
  const double raw = scope_changed
                         ? 1.08 * (modified_impact + modified_exploitability)
                         : modified_impact + modified_exploitability;
  const double env = round_up_1(std::min(raw, 10.0)) * temporal_mult;
  return round_up_1(std::clamp(env, 0.0, 10.0));
}

}  // namespace

std::string ScoreVector::get(const std::string& metric, const std::string& fallback) const {
  auto it = metrics.find(metric);
  if (it == metrics.end() || it->second == "X") return fallback;
  return it->second;
}

ScoreVector parse_vector(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, '/')) parts.push_back(part);
  if (parts.empty()) throw SyntaxError("empty vector string");

  ScoreVector v;
  if (parts[0] == "CVSS:3.1" || parts[0] == "CVSS:3.0") {
    v.scheme = "CVSS";
    v.version = parts[0].substr(5);
  } else if (parts[0] == "RVSS:1.0") {
    v.scheme = "RVSS";
    v.version = "1.0";
  } else {
    throw SyntaxError("unknown vector prefix \"" + parts[0] + "\"");
  }

  const bool rvss = v.scheme == "RVSS";
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto colon = parts[i].find(':');
    if (colon == std::string::npos)
      throw SyntaxError("bad metric token \"" + parts[i] + "\"");
    const std::string name = parts[i].substr(0, colon);
    const std::string value = parts[i].substr(colon + 1);
    const MetricDef* def = find_metric(name);
    if (def == nullptr) throw SyntaxError("unknown metric \"" + name + "\"");
    if (def->rvss_only && !rvss)
      throw SyntaxError("metric \"" + name + "\" requires the RVSS:1.0 prefix");
    if (!value_allowed(*def, value, rvss))
      throw SyntaxError("illegal value \"" + value + "\" for metric " + name);
    if (v.metrics.count(name)) throw SyntaxError("duplicate metric \"" + name + "\"");
    v.metrics[name] = value;
  }
  return v;
}

std::string to_string(const ScoreVector& v) {
  std::ostringstream os;
  os << v.scheme << ":" << v.version;
  for (const auto& d : metric_defs()) {
    auto it = v.metrics.find(d.name);
    if (it != v.metrics.end()) os << "/" << d.name << ":" << it->second;
  }
  return os.str();
}

double cvss_base(const ScoreVector& v) {
  require_base_metrics(v);
  const bool scope_changed = v.metrics.at("S") == "C";
  const std::string av = v.metrics.at("AV");
  // RVSS-refined AV categories have no CVSS weight; reject them here.
  if (!value_allowed(*find_metric("AV"), av, false))
    throw MissingMetricError("attack vector \"" + av +
                             "\" has no CVSS weight; score it with rvss_score");
  const double exploitability = 8.22 * cvss_av_weight(av) *
                                cvss_ac_weight(v.metrics.at("AC")) *
                                cvss_pr_weight(v.metrics.at("PR"), scope_changed) *
                                cvss_ui_weight(v.metrics.at("UI"));
  const double impact = impact_subscore(cia_weight(v.metrics.at("C")),
                                        cia_weight(v.metrics.at("I")),
                                        cia_weight(v.metrics.at("A")), scope_changed);
  return base_from_parts(impact, exploitability, scope_changed);
}

ScoreTriple cvss_scores(const ScoreVector& v) {
  ScoreTriple t;
  t.base = cvss_base(v);
  t.temporal = round_up_1(t.base * temporal_product(v));
  t.environmental = environmental_score(v, nullptr);
  return t;
}

ScoreTriple rvss_score(const ScoreVector& v, const RvssWeights& weights) {
  require_base_metrics(v);
  for (const auto& [value, w] : weights.attack_vector)
    if (!(w > 0.0) || w > 2.0)
      throw BadWeightConfigError("attack-vector weight for \"" + value +
                                 "\" outside (0, 2]");
  for (const auto& [value, w] : weights.safety) {
    if (!(w.multiplier > 0.0) || w.multiplier > 2.0)
      throw BadWeightConfigError("safety multiplier for \"" + value + "\" outside (0, 2]");
    if (w.floor < 0.0 || w.floor > 10.0)
      throw BadWeightConfigError("safety floor for \"" + value + "\" outside [0, 10]");
  }
  for (const auto& [value, w] : weights.age)
    if (!(w > 0.0) || w > 2.0)
      throw BadWeightConfigError("age weight for \"" + value + "\" outside (0, 2]");

  const bool scope_changed = v.metrics.at("S") == "C";
  const double exploitability = 8.22 * av_weight_from(weights, v.metrics.at("AV")) *
                                cvss_ac_weight(v.metrics.at("AC")) *
                                cvss_pr_weight(v.metrics.at("PR"), scope_changed) *
                                cvss_ui_weight(v.metrics.at("UI"));
  double impact = impact_subscore(cia_weight(v.metrics.at("C")), cia_weight(v.metrics.at("I")),
                                  cia_weight(v.metrics.at("A")), scope_changed);

  const SafetyWeight sw = safety_from(weights, v.get("H", "U"));
  impact = std::max(impact * sw.multiplier, sw.floor);

  ScoreTriple t;
  t.base = base_from_parts(impact, exploitability, scope_changed);
  const double age_mult = age_from(weights, v.get("Y", "U"));
  t.temporal = round_up_1(std::clamp(t.base * temporal_product(v) * age_mult, 0.0, 10.0));
  t.environmental = environmental_score(v, &weights);
  return t;
}

RvssWeights RvssWeights::identity() {
  RvssWeights w;
  w.attack_vector = {{"N", 0.85}, {"A", 0.62}, {"L", 0.55}, {"P", 0.2},
                     {"RN", 0.85}, {"AN", 0.62}, {"IN", 0.55},
                     {"PP", 0.2}, {"PR", 0.2}, {"PI", 0.2}};
  for (const char* v : {"U", "N", "E", "HU"}) w.safety[v] = SafetyWeight{1.0, 0.0};
  for (const char* v : {"Z", "O", "T", "M", "U"}) w.age[v] = 1.0;
  w.safety_requirement = {{"X", 1.0}, {"L", 0.5}, {"M", 1.0}, {"H", 1.5}};
  return w;
}

RvssWeights RvssWeights::defaults() {
  RvssWeights w = identity();
  // Refined attack vectors: remote network worst, isolated physical best.
  w.attack_vector["RN"] = 0.85;
  w.attack_vector["AN"] = 0.62;
  w.attack_vector["IN"] = 0.55;
  w.attack_vector["PP"] = 0.62;
  w.attack_vector["PR"] = 0.4;
  w.attack_vector["PI"] = 0.2;
  // Physical hazards keep a score floor even with empty C/I/A impact.
  w.safety["E"] = SafetyWeight{1.1, 2.5};
  w.safety["HU"] = SafetyWeight{1.2, 4.0};
  // Old unpatched flaws are likelier to have weaponized exploits.
  w.age["Z"] = 1.1;
  w.age["O"] = 1.0;
  w.age["T"] = 0.95;
  w.age["M"] = 0.9;
  return w;
}

RvssWeights parse_rvss_weights(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw SyntaxError("malformed JSON");
  RvssWeights w = RvssWeights::identity();
  if (j.contains("av"))
    for (const auto& [k, val] : j.at("av").items()) w.attack_vector[k] = val.get<double>();
  if (j.contains("safety")) {
    for (const auto& [k, val] : j.at("safety").items()) {
      SafetyWeight sw;
      if (val.is_number()) {
        sw.multiplier = val.get<double>();
      } else {
        if (val.contains("multiplier")) sw.multiplier = val.at("multiplier").get<double>();
        if (val.contains("floor")) sw.floor = val.at("floor").get<double>();
      }
      w.safety[k] = sw;
    }
  }
  if (j.contains("age"))
    for (const auto& [k, val] : j.at("age").items()) w.age[k] = val.get<double>();
  if (j.contains("safety_requirement"))
    for (const auto& [k, val] : j.at("safety_requirement").items())
      w.safety_requirement[k] = val.get<double>();
  return w;
}

std::string serialize(const RvssWeights& w) {
  json j;
  j["av"] = w.attack_vector;
  json safety;
  for (const auto& [k, sw] : w.safety)
    safety[k] = {{"multiplier", sw.multiplier}, {"floor", sw.floor}};
  j["safety"] = std::move(safety);
  j["age"] = w.age;
  j["safety_requirement"] = w.safety_requirement;
  return j.dump(2);
}

}  // namespace secgame
