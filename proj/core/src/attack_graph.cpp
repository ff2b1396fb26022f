#include "secgame/attack_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <json.hpp>

#include "secgame/errors.hpp"

namespace secgame {
namespace {
using nlohmann::json;
}

bool AttackGraph::has_node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return true;
  return false;
}

const AttackNode& AttackGraph::node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw ValidationError("unknown node \"" + id + "\"");
}

std::vector<std::string> AttackGraph::successors(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& [u, v] : edges)
    if (u == id) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> AttackGraph::node_ids_sorted() const {
  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.id);
  std::sort(out.begin(), out.end());
  return out;
}

AttackGraph parse_attack_graph(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SyntaxError("malformed JSON");
  if (!j.is_object()) throw SyntaxError("graph file must be a JSON object");
  for (const char* key : {"nodes", "edges", "start", "target"})
    if (!j.contains(key)) throw SyntaxError(std::string("graph file misses \"") + key + "\"");

  AttackGraph g;
  if (!j.at("nodes").is_array()) throw SyntaxError("\"nodes\" must be an array");
  for (const auto& nj : j.at("nodes")) {
    if (!nj.is_object() || !nj.contains("id") || !nj.at("id").is_string())
      throw SyntaxError("every node needs a string \"id\"");
    AttackNode n;
    n.id = nj.at("id").get<std::string>();
    n.label = nj.contains("label") ? nj.at("label").get<std::string>() : n.id;
    const std::string kind = nj.contains("kind") ? nj.at("kind").get<std::string>() : "exploit";
    if (kind == "condition")
      n.kind = NodeKind::Condition;
    else if (kind == "exploit")
      n.kind = NodeKind::Exploit;
    else
      throw SyntaxError("node kind must be \"condition\" or \"exploit\", got \"" + kind + "\"");
    g.nodes.push_back(std::move(n));
  }
  if (!j.at("edges").is_array()) throw SyntaxError("\"edges\" must be an array");
  for (const auto& ej : j.at("edges")) {
    if (!ej.is_array() || ej.size() != 2 || !ej[0].is_string() || !ej[1].is_string())
      throw SyntaxError("every edge must be a [\"u\",\"v\"] pair");
    g.edges.emplace_back(ej[0].get<std::string>(), ej[1].get<std::string>());
  }
  if (!j.at("start").is_string() || !j.at("target").is_string())
    throw SyntaxError("\"start\" and \"target\" must be node ids");
  g.start = j.at("start").get<std::string>();
  g.target = j.at("target").get<std::string>();

  validate(g);
  return g;
}

void validate(const AttackGraph& g) {
  if (g.nodes.empty()) throw ValidationError("graph has no nodes");
  std::set<std::string> ids;
  for (const auto& n : g.nodes) {
    if (n.id.empty()) throw ValidationError("empty node id");
    if (!ids.insert(n.id).second) throw ValidationError("duplicate node id \"" + n.id + "\"");
  }
  if (!ids.count(g.start)) throw ValidationError("start node \"" + g.start + "\" not declared");
  if (!ids.count(g.target)) throw ValidationError("target node \"" + g.target + "\" not declared");
  if (g.start == g.target) throw ValidationError("start and target must differ");

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : g.edges) {
    if (!ids.count(e.first))
      throw ValidationError("edge references undeclared node \"" + e.first + "\"");
    if (!ids.count(e.second))
      throw ValidationError("edge references undeclared node \"" + e.second + "\"");
    if (e.first == e.second) throw ValidationError("self-loop on \"" + e.first + "\"");
    if (!seen.insert(e).second)
      throw ValidationError("duplicate edge " + e.first + " -> " + e.second);
  }

  // The graph is only a usable game playground when the target is reachable.
  std::set<std::string> reached{g.start};
  std::vector<std::string> frontier{g.start};
  while (!frontier.empty()) {
    std::string u = frontier.back();
    frontier.pop_back();
    for (const auto& [a, b] : g.edges)
      if (a == u && reached.insert(b).second) frontier.push_back(b);
  }
  if (!reached.count(g.target))
    throw ValidationError("no path from start \"" + g.start + "\" to target \"" + g.target +
                          "\" (degenerate playground)");
}

std::string serialize(const AttackGraph& g) {
  json j;
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"id", n.id},
                     {"label", n.label},
                     {"kind", n.kind == NodeKind::Condition ? "condition" : "exploit"}});
  }
  j["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  j["start"] = g.start;
  j["target"] = g.target;
  return j.dump(2);
}

PathEnumeration enumerate_paths(const AttackGraph& g, std::size_t max_paths) {
  validate(g);
  if (max_paths == 0) throw ValidationError("max_paths must be positive");

  // Successor lists sorted ascending make the DFS emit paths in lexicographic
  // order of their node sequences.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& n : g.nodes) adj[n.id] = g.successors(n.id);

  PathEnumeration out;
  std::vector<std::string> path{g.start};
  std::set<std::string> on_path{g.start};

  std::function<bool(const std::string&)> dfs = [&](const std::string& u) -> bool {
    if (u == g.target) {
      if (out.paths.size() == max_paths) {
        out.truncated = true;
        return false;
      }
      out.paths.push_back(AttackPath{path});
      return true;
    }
    for (const auto& v : adj[u]) {
      if (on_path.count(v)) continue;
      path.push_back(v);
      on_path.insert(v);
      const bool keep_going = dfs(v);
      path.pop_back();
      on_path.erase(v);
      if (!keep_going) return false;
    }
    return true;
  };
  dfs(g.start);
  return out;
}

std::optional<std::size_t> node_depth_on_path(const AttackPath& p, const std::string& id) {
  for (std::size_t i = 0; i < p.nodes.size(); ++i)
    if (p.nodes[i] == id) return i;
  return std::nullopt;
}

}  // namespace secgame
