#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secgame/game.hpp"
#include "secgame/zero_sum.hpp"

namespace secgame {

/// One matrix cell of a phase game: either a literal payoff or a marker to be
/// replaced by the equilibrium value of the referenced child phase.
struct PhaseCell {
  double value = 0.0;
  std::optional<std::string> continuation;
};

struct PhaseNode {
  std::string id;
  RowRole row_role = RowRole::Max;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<PhaseCell>> cells;
};

/// Rooted tree of nested phase games. Continuation markers define the
/// child edges; validation enforces existing targets, unique parents, a
/// single root, and acyclicity.
struct PhaseTree {
  std::vector<PhaseNode> nodes;
  std::string root_id;
};

struct PhaseSolution {
  std::map<std::string, Equilibrium> equilibria;
  std::vector<std::string> solve_order;  // leaves first
  double root_value = 0.0;
};

PhaseTree parse_phase_tree(const std::string& json_text);
void validate(const PhaseTree& t);
std::string phase_tree_root(const PhaseTree& t);

/// Backward composition: leaves are solved first, each internal node's
/// continuation entries are replaced by the referenced child's value, then
/// the node itself is solved. Solver failures carry the node path.
PhaseSolution compose_phases(const PhaseTree& t);

}  // namespace secgame
