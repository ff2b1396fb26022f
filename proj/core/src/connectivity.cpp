#include "secgame/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <tuple>

#include <json.hpp>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

using nlohmann::json;

constexpr double kOffDiagTol = 1e-12;
constexpr int kMaxSweeps = 100;
constexpr long kEnumLimit = 1000000;

// Subsets of {0..n-1} with size <= k, in lexicographic sequence order
// ([] < [0] < [0,1] < [0,1,2] < [0,2] < [1] ...). That order doubles as the
// tie-break everywhere.
std::vector<std::vector<int>> subsets_up_to(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == k) return;
    for (int e = next; e < n; ++e) {
      cur.push_back(e);
      rec(e + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

long count_subsets_up_to(int n, int k) {
  long total = 0;
  long binom = 1;
  for (int j = 0; j <= std::min(n, k); ++j) {
    total += binom;
    if (total > kEnumLimit) return total;
    binom = binom * (n - j) / (j + 1);
  }
  return total;
}

CommGraph without_edges(const CommGraph& g, const std::vector<int>& removed,
                        const std::vector<int>& restored) {
  CommGraph out;
  out.n = g.n;
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    const bool jammed = std::binary_search(removed.begin(), removed.end(), i);
    const bool back = std::binary_search(restored.begin(), restored.end(), i);
    if (!jammed || back) out.edges.push_back(g.edges[i]);
  }
  return out;
}

}  // namespace

void validate(const CommGraph& g) {
  if (g.n < 1) throw ValidationError("communication graph needs at least one node");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
      throw ValidationError("edge endpoint outside [0, n)");
    if (e.u == e.v) throw ValidationError("self-loop on node " + std::to_string(e.u));
    if (!(e.weight > 0.0)) throw ValidationError("edge weights must be positive");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      throw ValidationError("duplicate edge {" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + "}");
  }
}

CommGraph parse_comm_graph(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw SyntaxError("malformed JSON");
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw SyntaxError("graph JSON must contain \"n\" and \"edges\"");
  CommGraph g;
  if (!j.at("n").is_number_integer()) throw SyntaxError("\"n\" must be an integer");
  g.n = j.at("n").get<int>();
  for (const auto& ej : j.at("edges")) {
    if (!ej.is_array() || ej.size() < 2 || ej.size() > 3)
      throw SyntaxError("edges must be [u,v] or [u,v,weight]");
    WeightedEdge e;
    e.u = ej[0].get<int>();
    e.v = ej[1].get<int>();
    if (ej.size() == 3) e.weight = ej[2].get<double>();
    g.edges.push_back(e);
  }
  validate(g);
  return g;
}

std::string serialize(const CommGraph& g) {
  json j;
  j["n"] = g.n;
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(json::array({e.u, e.v, e.weight}));
  j["edges"] = std::move(edges);
  return j.dump(2);
}

Matrix laplacian(const CommGraph& g) {
  validate(g);
  Matrix l(g.n, g.n, 0.0);
  for (const auto& e : g.edges) {
    l(e.u, e.u) += e.weight;
    l(e.v, e.v) += e.weight;
    l(e.u, e.v) -= e.weight;
    l(e.v, e.u) -= e.weight;
  }
  return l;
}

std::vector<double> laplacian_eigenvalues(const CommGraph& g) {
  Matrix a = laplacian(g);
  const std::size_t n = a.rows();
  if (n == 1) return {0.0};

  // Cyclic Jacobi: rotate away each off-diagonal entry in row-major sweeps
  // until the off-diagonal mass is negligible relative to the matrix scale.
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  const double stop = std::max(kOffDiagTol * scale, 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= stop) {
      std::vector<double> eig;
      eig.reserve(n);
      for (std::size_t i = 0; i < n; ++i) eig.push_back(a(i, i));
      std::sort(eig.begin(), eig.end());
      return eig;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= stop / (n * n)) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a(p, i);
          const double aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  throw ConvergenceError("Jacobi eigensolver exceeded its sweep budget");
}

double fiedler_value(const CommGraph& g) {
  if (g.n < 2) throw ValidationError("fiedler_value needs at least two nodes");
  const auto eig = laplacian_eigenvalues(g);
  double l2 = eig[1];
  if (l2 < 0.0 && l2 > -1e-9) l2 = 0.0;  // Jacobi roundoff on the zero eigenvalue
  return l2;
}

MaximinConnectivityResult maximin_connectivity(const std::vector<CommGraph>& configs, int k) {
  if (configs.empty()) throw ValidationError("need at least one configuration");
  if (k < 0) throw ValidationError("jam budget must be nonnegative");
  const int n0 = configs.front().n;
  for (const auto& g : configs) {
    validate(g);
    if (g.n != n0) throw ValidationError("all configurations must share the node count");
    if (count_subsets_up_to(static_cast<int>(g.edges.size()), k) > kEnumLimit)
      throw SizeLimitError("jam-set enumeration exceeds the feasibility bound");
  }

  MaximinConnectivityResult res;
  res.best_config = -1;
  for (int ci = 0; ci < static_cast<int>(configs.size()); ++ci) {
    const CommGraph& g = configs[ci];
    double worst = std::numeric_limits<double>::infinity();
    std::vector<int> worst_set;
    for (const auto& jam : subsets_up_to(static_cast<int>(g.edges.size()), k)) {
      const double l2 = fiedler_value(without_edges(g, jam, {}));
      if (l2 < worst - 1e-15) {
        worst = l2;
        worst_set = jam;
      }
    }
    res.per_config.push_back(worst);
    if (res.best_config < 0 || worst > res.value + 1e-15) {
      res.best_config = ci;
      res.value = worst;
      res.worst_jam_edges = worst_set;
    }
  }
  return res;
}

SpeOutcome solve_jamming_spe(const JammingGameSpec& spec) {
  validate(spec.graph);
  if (spec.attack_budget < 0 || spec.recover_budget < 0)
    throw ValidationError("budgets must be nonnegative");
  if (spec.jam_cost < 0 || spec.recover_cost < 0)
    throw ValidationError("costs must be nonnegative");
  const int ne = static_cast<int>(spec.graph.edges.size());
  if (count_subsets_up_to(ne, spec.attack_budget) > kEnumLimit)
    throw SizeLimitError("attack-set enumeration exceeds the feasibility bound");

  // Defender best response to a fixed attack: recover a subset of the jammed
  // edges maximizing lambda2 minus recovery cost.
  auto best_response = [&](const std::vector<int>& attack) {
    double best_u = -std::numeric_limits<double>::infinity();
    std::vector<int> best_d;
    double best_l2 = 0.0;
    for (const auto& d : subsets_up_to(static_cast<int>(attack.size()), spec.recover_budget)) {
      std::vector<int> restored;
      restored.reserve(d.size());
      for (int idx : d) restored.push_back(attack[idx]);
      const double l2 = fiedler_value(without_edges(spec.graph, attack, restored));
      const double u = l2 - spec.recover_cost * static_cast<double>(restored.size());
      if (u > best_u + 1e-12) {
        best_u = u;
        best_d = restored;
        best_l2 = l2;
      }
    }
    return std::tuple<std::vector<int>, double, double>{best_d, best_u, best_l2};
  };

  SpeOutcome out;
  double best_ua = -std::numeric_limits<double>::infinity();
  for (const auto& attack : subsets_up_to(ne, spec.attack_budget)) {
    auto [d, ud, l2] = best_response(attack);
    const double ua = -l2 - spec.jam_cost * static_cast<double>(attack.size());
    if (ua > best_ua + 1e-12) {
      best_ua = ua;
      out.attacker_edges = attack;
      out.defender_edges = d;
      out.u_attacker = ua;
      out.u_defender = ud;
      out.lambda2 = l2;
    }
  }
  return out;
}

}  // namespace secgame
