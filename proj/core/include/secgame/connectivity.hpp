#pragma once

#include <string>
#include <vector>

#include "secgame/matrix.hpp"

namespace secgame {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

/// Undirected weighted communication graph on nodes 0..n-1.
struct CommGraph {
  int n = 0;
  std::vector<WeightedEdge> edges;
};

void validate(const CommGraph& g);
CommGraph parse_comm_graph(const std::string& json_text);
std::string serialize(const CommGraph& g);

/// L = D - W; symmetric, rows sum to zero.
Matrix laplacian(const CommGraph& g);

/// All Laplacian eigenvalues, ascending, via cyclic Jacobi sweeps.
std::vector<double> laplacian_eigenvalues(const CommGraph& g);

/// Algebraic connectivity: the second-smallest Laplacian eigenvalue. Zero
/// exactly when the graph is disconnected. Requires n >= 2.
double fiedler_value(const CommGraph& g);

struct MaximinConnectivityResult {
  int best_config = 0;                // index into configs; ties -> lowest
  std::vector<int> worst_jam_edges;   // edge indices into that config
  double value = 0.0;                 // max over configs of min over jams
  std::vector<double> per_config;     // inner minimum per configuration
};

/// Discrete form of the maximin connectivity problem: for each candidate
/// configuration the worst lambda_2 over all removals of at most k edges is
/// found exhaustively; the best configuration is returned.
MaximinConnectivityResult maximin_connectivity(const std::vector<CommGraph>& configs, int k);

struct JammingGameSpec {
  CommGraph graph;
  int attack_budget = 0;
  int recover_budget = 0;
  double jam_cost = 0.0;
  double recover_cost = 0.0;
};

struct SpeOutcome {
  std::vector<int> attacker_edges;  // jammed edge indices (lexicographic tie-break)
  std::vector<int> defender_edges;  // recovered subset of the jammed edges
  double u_attacker = 0.0;          // -lambda2(final) - jam_cost * |A|
  double u_defender = 0.0;          // lambda2(final) - recover_cost * |D|
  double lambda2 = 0.0;             // connectivity of the post-play graph
};

/// Two-stage jamming/recovery game solved by backward induction over all
/// attacker edge sets and defender responses (exhaustive, deterministic
/// lexicographic tie-breaks).
SpeOutcome solve_jamming_spe(const JammingGameSpec& spec);

}  // namespace secgame
