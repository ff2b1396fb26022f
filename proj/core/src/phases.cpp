#include "secgame/phases.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <json.hpp>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

using nlohmann::json;

const PhaseNode* find_node(const PhaseTree& t, const std::string& id) {
  for (const auto& n : t.nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::vector<std::string> children_of(const PhaseNode& n) {
  std::vector<std::string> kids;
  for (const auto& row : n.cells)
    for (const auto& cell : row)
      if (cell.continuation && std::find(kids.begin(), kids.end(), *cell.continuation) == kids.end())
        kids.push_back(*cell.continuation);
  return kids;
}

}  // namespace

PhaseTree parse_phase_tree(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw SyntaxError("malformed JSON");
  if (!j.is_object() || !j.contains("nodes") || !j.at("nodes").is_array())
    throw SyntaxError("phase tree JSON must contain a \"nodes\" array");

  PhaseTree t;
  for (const auto& nj : j.at("nodes")) {
    PhaseNode n;
    if (!nj.contains("id") || !nj.at("id").is_string())
      throw SyntaxError("phase node needs a string \"id\"");
    n.id = nj.at("id").get<std::string>();
    if (nj.contains("role")) {
      const std::string role = nj.at("role").get<std::string>();
      if (role == "max")
        n.row_role = RowRole::Max;
      else if (role == "min")
        n.row_role = RowRole::Min;
      else
        throw SyntaxError("phase node role must be \"max\" or \"min\"");
    }
    if (!nj.contains("H") || !nj.at("H").is_array() || nj.at("H").empty())
      throw SyntaxError("phase node \"" + n.id + "\" needs a non-empty matrix \"H\"");
    for (const auto& rowj : nj.at("H")) {
      if (!rowj.is_array() || rowj.empty())
        throw SyntaxError("phase node \"" + n.id + "\" has an empty matrix row");
      std::vector<PhaseCell> row;
      for (const auto& cj : rowj) {
        PhaseCell cell;
        if (cj.is_number()) {
          cell.value = cj.get<double>();
        } else if (cj.is_object() && cj.contains("continuation") &&
                   cj.at("continuation").is_string()) {
          cell.continuation = cj.at("continuation").get<std::string>();
        } else {
          throw SyntaxError("phase matrix cells must be numbers or {\"continuation\": id}");
        }
        row.push_back(std::move(cell));
      }
      n.cells.push_back(std::move(row));
    }
    const std::size_t width = n.cells.front().size();
    for (const auto& row : n.cells)
      if (row.size() != width)
        throw SyntaxError("phase node \"" + n.id + "\" has ragged matrix rows");
    if (nj.contains("rows"))
      for (const auto& s : nj.at("rows")) n.row_labels.push_back(s.get<std::string>());
    if (nj.contains("cols"))
      for (const auto& s : nj.at("cols")) n.col_labels.push_back(s.get<std::string>());
    t.nodes.push_back(std::move(n));
  }
  t.root_id = phase_tree_root(t);
  return t;
}

void validate(const PhaseTree& t) { phase_tree_root(t); }

std::string phase_tree_root(const PhaseTree& t) {
  if (t.nodes.empty()) throw ValidationError("phase tree has no nodes");
  std::set<std::string> ids;
  for (const auto& n : t.nodes)
    if (!ids.insert(n.id).second)
      throw ValidationError("duplicate phase node id \"" + n.id + "\"");

  std::map<std::string, int> parents;
  for (const auto& n : t.nodes) {
    for (const auto& child : children_of(n)) {
      if (!ids.count(child))
        throw ValidationError("continuation references unknown node \"" + child + "\"");
      if (child == n.id)
        throw ValidationError("node \"" + n.id + "\" references itself");
      ++parents[child];
      if (parents[child] > 1)
        throw ValidationError("node \"" + child + "\" has more than one parent");
    }
  }

  std::vector<std::string> roots;
  for (const auto& n : t.nodes)
    if (!parents.count(n.id)) roots.push_back(n.id);
  if (roots.size() != 1)
    throw ValidationError("phase tree must have exactly one root, found " +
                          std::to_string(roots.size()));

  // Reachability doubles as the acyclicity check: unique parents + a single
  // root only leave room for cycles detached from the root.
  std::set<std::string> seen;
  std::function<void(const std::string&)> walk = [&](const std::string& id) {
    if (!seen.insert(id).second) return;
    for (const auto& c : children_of(*find_node(t, id))) walk(c);
  };
  walk(roots.front());
  if (seen.size() != t.nodes.size())
    throw ValidationError("phase tree contains nodes unreachable from the root (cycle)");
  return roots.front();
}

PhaseSolution compose_phases(const PhaseTree& t) {
  const std::string root = phase_tree_root(t);
  PhaseSolution out;

  std::function<double(const std::string&, std::string)> solve_node =
      [&](const std::string& id, std::string path) -> double {
    path += path.empty() ? id : "/" + id;
    const PhaseNode& n = *find_node(t, id);

    ZeroSumGame g;
    g.row_role = n.row_role;
    g.row_labels = n.row_labels;
    g.col_labels = n.col_labels;
    g.payoff = Matrix(n.cells.size(), n.cells.front().size());
    for (std::size_t i = 0; i < n.cells.size(); ++i) {
      for (std::size_t j = 0; j < n.cells[i].size(); ++j) {
        const PhaseCell& cell = n.cells[i][j];
        g.payoff(i, j) = cell.continuation ? solve_node(*cell.continuation, path) : cell.value;
      }
    }
    try {
      Equilibrium eq = solve_zero_sum(g);
      out.equilibria[id] = eq;
      out.solve_order.push_back(id);
      return eq.value;
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " (at phase node " + path + ")");
    }
  };

  out.root_value = solve_node(root, "");
  return out;
}

}  // namespace secgame
