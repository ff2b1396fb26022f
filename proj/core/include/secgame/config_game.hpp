#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "secgame/game.hpp"

namespace secgame {

/// The system-configuration game: configurations expose attack surfaces
/// (vulnerability subsets), attacks exploit vulnerability subsets, and the
/// attacker is paid the impact of the overlap.
struct ConfigSpace {
  std::vector<std::string> configurations;
  std::vector<std::string> vulnerabilities;
  std::vector<std::string> attacks;
  std::map<std::string, std::set<std::string>> surface;   // config -> pi(c)
  std::map<std::string, std::set<std::string>> exploits;  // attack -> gamma(a)
  std::map<std::string, double> impact;                   // per-vulnerability score
  /// Optional exact impacts for specific vulnerability sets, overriding the
  /// default sum-of-impacts rule.
  std::vector<std::pair<std::set<std::string>, double>> impact_overrides;
};

void validate(const ConfigSpace& s);
ConfigSpace parse_config_space(const std::string& json_text);

/// Impact of a vulnerability set: 0 for the empty set, an exact override when
/// one matches, else the sum of per-vulnerability impacts.
double impact_of(const ConfigSpace& s, const std::set<std::string>& vulns);

/// Rows = attacks (maximizer), columns = configurations (minimizer), entry =
/// R(gamma(a) intersect pi(c)).
ZeroSumGame build_config_game(const ConfigSpace& s);

/// Value of the configuration game under best-effort defense.
double security_capacity(const ConfigSpace& s);

}  // namespace secgame
