#include "secgame/cut_the_rope.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "secgame/errors.hpp"
#include "secgame/parallel.hpp"

namespace secgame {
namespace {

constexpr std::size_t kMaxPaths = 10000;

void validate_config(const AttackGraph& g, const CtrConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (cfg.rounds < 1) throw ValidationError("rounds must be at least 1");
  if (cfg.inspectable) {
    if (cfg.inspectable->empty()) throw ValidationError("inspectable set must be nonempty");
    for (const auto& id : *cfg.inspectable) {
      if (!g.has_node(id))
        throw ValidationError("inspectable node \"" + id + "\" is not in the graph");
      if (id == g.start)
        throw ValidationError("the start node is outside the defender's perimeter");
    }
  }
}

// pmf[k] = P[Poisson(lambda) = k] for k < cap, pmf[cap] = P[D >= cap]:
// positions beyond the last reachable one are meaningless, so the tail is
// lumped there.
std::vector<double> poisson_with_tail(double lambda, std::size_t cap) {
  std::vector<double> pmf(cap + 1, 0.0);
  double p = std::exp(-lambda);
  double cum = 0.0;
  for (std::size_t k = 0; k < cap; ++k) {
    pmf[k] = p;
    cum += p;
    p *= lambda / static_cast<double>(k + 1);
  }
  pmf[cap] = std::max(0.0, 1.0 - cum);
  return pmf;
}

std::string path_label(const AttackPath& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (i) os << " -> ";
    os << p.nodes[i];
  }
  return os.str();
}

}  // namespace

std::vector<std::string> resolve_inspectable(const AttackGraph& g, const CtrConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.inspectable) {
    out = *cfg.inspectable;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    for (const auto& id : g.node_ids_sorted())
      if (id != g.start) out.push_back(id);
  }
  return out;
}

LocationDistribution location_distribution(const AttackGraph& g, const AttackPath& path,
                                           const std::string& check, const CtrConfig& cfg) {
  validate_config(g, cfg);
  const auto inspectable = resolve_inspectable(g, cfg);
  if (!std::binary_search(inspectable.begin(), inspectable.end(), check))
    throw InvalidCheckError("check node \"" + check + "\" is not inspectable");

  const std::size_t len = path.nodes.size();
  const std::optional<std::size_t> cut_depth = node_depth_on_path(path, check);

  // Markov kernel on path positions, iterated once per period with the same
  // check node each period.
  std::vector<double> pos(len, 0.0);
  pos[0] = 1.0;
  for (int round = 0; round < cfg.rounds; ++round) {
    std::vector<double> next(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
      if (pos[i] == 0.0) continue;
      const std::size_t cap = len - 1 - i;  // steps to the path end
      const auto pmf = poisson_with_tail(cfg.lambda, cap);
      for (std::size_t d = 0; d <= cap; ++d) {
        std::size_t j = i + d;
        if (cut_depth && j >= *cut_depth && *cut_depth > 0) j = *cut_depth - 1;
        next[j] += pos[i] * pmf[d];
      }
    }
    pos = std::move(next);
  }

  LocationDistribution dist;
  for (const auto& n : g.nodes) dist[n.id] = 0.0;
  for (std::size_t i = 0; i < len; ++i) dist[path.nodes[i]] += pos[i];
  return dist;
}

ZeroSumGame build_ctr_game(const AttackGraph& g, const CtrConfig& cfg) {
  validate(g);
  validate_config(g, cfg);
  PathEnumeration en = enumerate_paths(g, kMaxPaths);
  if (en.truncated)
    throw SizeLimitError("attack graph has more than " + std::to_string(kMaxPaths) + " paths");

  const auto checks = resolve_inspectable(g, cfg);
  ZeroSumGame game;
  game.row_role = RowRole::Min;  // defender minimizes the hit probability
  game.payoff = Matrix(checks.size(), en.paths.size());
  game.row_labels = checks;
  for (const auto& p : en.paths) game.col_labels.push_back(path_label(p));

  // Cells are independent; evaluate rows concurrently.
  parallel_for(checks.size(), [&](std::size_t r) {
    for (std::size_t c = 0; c < en.paths.size(); ++c) {
      const auto dist = location_distribution(g, en.paths[c], checks[r], cfg);
      game.payoff(r, c) = dist.at(g.target);
    }
  });
  return game;
}

CtrSolution solve_ctr(const AttackGraph& g, const CtrConfig& cfg) {
  CtrSolution sol;
  sol.game = build_ctr_game(g, cfg);
  sol.paths = enumerate_paths(g, kMaxPaths).paths;
  sol.equilibrium = solve_zero_sum(sol.game);

  const auto checks = resolve_inspectable(g, cfg);
  for (std::size_t r = 0; r < checks.size(); ++r)
    sol.defender_node_distribution[checks[r]] = sol.equilibrium.row_strategy[r];
  sol.attacker_path_distribution = sol.equilibrium.col_strategy;

  // Marginal attacker location under both equilibrium strategies.
  for (const auto& n : g.nodes) sol.equilibrium_location[n.id] = 0.0;
  for (std::size_t r = 0; r < checks.size(); ++r) {
    const double pr = sol.equilibrium.row_strategy[r];
    if (pr == 0.0) continue;
    for (std::size_t c = 0; c < sol.paths.size(); ++c) {
      const double pc = sol.attacker_path_distribution[c];
      if (pc == 0.0) continue;
      const auto dist = location_distribution(g, sol.paths[c], checks[r], cfg);
      for (const auto& [id, mass] : dist) sol.equilibrium_location[id] += pr * pc * mass;
    }
  }
  sol.value = sol.equilibrium_location.at(g.target);
  return sol;
}

}  // namespace secgame
