#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secgame/attack_graph.hpp"
#include "secgame/game.hpp"
#include "secgame/zero_sum.hpp"

namespace secgame {

/// Parameters of the periodic-inspection game. The defender acts once per
/// period; lambda is the attacker's Poisson activity rate per period.
struct CtrConfig {
  double lambda = 1.0;
  int rounds = 1;
  /// Nodes the defender may check. Defaults to every non-start node.
  std::optional<std::vector<std::string>> inspectable;
};

/// Probability of the attacker sitting on each node. Nodes off the relevant
/// path carry 0; values sum to 1.
using LocationDistribution = std::map<std::string, double>;

std::vector<std::string> resolve_inspectable(const AttackGraph& g, const CtrConfig& cfg);

/// Attacker location after cfg.rounds periods on one attack path under one
/// checked node. Per period the attacker advances Poisson(lambda) steps,
/// capped at the path end; when the check sits on the path at depth d, any
/// advance that would reach depth >= d is parked at depth d-1 (the rope is
/// cut). Off-path checks leave the movement uncapped.
LocationDistribution location_distribution(const AttackGraph& g, const AttackPath& path,
                                           const std::string& check, const CtrConfig& cfg);

/// Matrix game: rows = inspectable nodes (defender, minimizer), columns =
/// attack paths, entry = probability mass on the target node.
ZeroSumGame build_ctr_game(const AttackGraph& g, const CtrConfig& cfg);

struct CtrSolution {
  ZeroSumGame game;
  Equilibrium equilibrium;
  std::map<std::string, double> defender_node_distribution;  // node id -> prob
  std::vector<double> attacker_path_distribution;            // by path index
  std::vector<AttackPath> paths;
  LocationDistribution equilibrium_location;
  double value = 0.0;  // target mass at the saddle point
};

CtrSolution solve_ctr(const AttackGraph& g, const CtrConfig& cfg);

}  // namespace secgame
