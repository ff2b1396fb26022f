#include "secgame/config_game.hpp"

#include <algorithm>

#include <json.hpp>

#include "secgame/errors.hpp"
#include "secgame/zero_sum.hpp"

namespace secgame {
namespace {
using nlohmann::json;
}

void validate(const ConfigSpace& s) {
  if (s.configurations.empty()) throw ValidationError("need at least one configuration");
  if (s.attacks.empty()) throw ValidationError("need at least one attack");
  std::set<std::string> vulns(s.vulnerabilities.begin(), s.vulnerabilities.end());
  if (vulns.size() != s.vulnerabilities.size())
    throw ValidationError("duplicate vulnerability name");

  auto check_subset = [&](const std::map<std::string, std::set<std::string>>& m,
                          const std::vector<std::string>& keys, const char* what) {
    for (const auto& k : keys) {
      auto it = m.find(k);
      if (it == m.end()) return;  // missing entries mean the empty set
      for (const auto& v : it->second)
        if (!vulns.count(v))
          throw ValidationError(std::string(what) + " \"" + k +
                                "\" references unknown vulnerability \"" + v + "\"");
    }
  };
  check_subset(s.surface, s.configurations, "configuration");
  check_subset(s.exploits, s.attacks, "attack");

  for (const auto& [v, imp] : s.impact) {
    if (!vulns.count(v))
      throw ValidationError("impact table references unknown vulnerability \"" + v + "\"");
    if (imp < 0.0) throw ValidationError("impacts must be nonnegative");
  }
  for (const auto& [set_, imp] : s.impact_overrides) {
    for (const auto& v : set_)
      if (!vulns.count(v))
        throw ValidationError("impact override references unknown vulnerability \"" + v + "\"");
    if (imp < 0.0) throw ValidationError("impacts must be nonnegative");
  }
}

ConfigSpace parse_config_space(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw SyntaxError("malformed JSON");
  for (const char* key : {"configurations", "vulnerabilities", "attacks", "surface", "exploits"})
    if (!j.contains(key)) throw SyntaxError(std::string("spec misses \"") + key + "\"");

  ConfigSpace s;
  for (const auto& v : j.at("configurations")) s.configurations.push_back(v.get<std::string>());
  for (const auto& v : j.at("vulnerabilities")) s.vulnerabilities.push_back(v.get<std::string>());
  for (const auto& v : j.at("attacks")) s.attacks.push_back(v.get<std::string>());

  auto read_map = [](const json& mj) {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [k, arr] : mj.items()) {
      std::set<std::string> set_;
      for (const auto& v : arr) set_.insert(v.get<std::string>());
      out[k] = std::move(set_);
    }
    return out;
  };
  s.surface = read_map(j.at("surface"));
  s.exploits = read_map(j.at("exploits"));

  if (j.contains("impact"))
    for (const auto& [k, v] : j.at("impact").items()) s.impact[k] = v.get<double>();
  if (j.contains("impact_overrides")) {
    for (const auto& o : j.at("impact_overrides")) {
      std::set<std::string> set_;
      for (const auto& v : o.at("set")) set_.insert(v.get<std::string>());
      s.impact_overrides.emplace_back(std::move(set_), o.at("impact").get<double>());
    }
  }
  validate(s);
  return s;
}

double impact_of(const ConfigSpace& s, const std::set<std::string>& vulns) {
  if (vulns.empty()) return 0.0;
  for (const auto& [set_, imp] : s.impact_overrides)
    if (set_ == vulns) return imp;
  double total = 0.0;
  for (const auto& v : vulns) {
    auto it = s.impact.find(v);
    total += it == s.impact.end() ? 1.0 : it->second;  // unit impact by default
  }
  return total;
}

ZeroSumGame build_config_game(const ConfigSpace& s) {
  validate(s);
  ZeroSumGame g;
  g.row_role = RowRole::Max;  // the attacker maximizes the exploited impact
  g.row_labels = s.attacks;
  g.col_labels = s.configurations;
  g.payoff = Matrix(s.attacks.size(), s.configurations.size());
  static const std::set<std::string> kEmpty;
  for (std::size_t i = 0; i < s.attacks.size(); ++i) {
    auto git = s.exploits.find(s.attacks[i]);
    const auto& gamma = git == s.exploits.end() ? kEmpty : git->second;
    for (std::size_t j = 0; j < s.configurations.size(); ++j) {
      auto pit = s.surface.find(s.configurations[j]);
      const auto& pi = pit == s.surface.end() ? kEmpty : pit->second;
      std::set<std::string> overlap;
      std::set_intersection(gamma.begin(), gamma.end(), pi.begin(), pi.end(),
                            std::inserter(overlap, overlap.begin()));
      g.payoff(i, j) = impact_of(s, overlap);
    }
  }
  return g;
}

double security_capacity(const ConfigSpace& s) {
  return solve_zero_sum(build_config_game(s)).value;
}

}  // namespace secgame
