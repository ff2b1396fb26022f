#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace secgame {

enum class NodeKind { Condition, Exploit };

struct AttackNode {
  std::string id;
  std::string label;
  NodeKind kind = NodeKind::Exploit;
};

/// Directed graph of condition/exploit nodes with a designated start and
/// target. Immutable after construction; enumeration is a pure function.
/// Node identity is the string id; labels are opaque names.
struct AttackGraph {
  std::vector<AttackNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string start;
  std::string target;

  bool has_node(const std::string& id) const;
  const AttackNode& node(const std::string& id) const;
  /// Successor ids in ascending order (fixes the path enumeration order).
  std::vector<std::string> successors(const std::string& id) const;
  std::vector<std::string> node_ids_sorted() const;
};

/// Simple start-to-target path; consecutive nodes are graph edges.
struct AttackPath {
  std::vector<std::string> nodes;
};

struct PathEnumeration {
  std::vector<AttackPath> paths;  // lexicographic by node sequence
  bool truncated = false;         // hit max_paths before finishing
};

/// Parses and validates the JSON graph schema:
///   {"nodes":[{"id","label","kind"}...], "edges":[["u","v"]...],
///    "start":"id", "target":"id"}
/// Throws SyntaxError on malformed input, ValidationError on invariant
/// violations (unknown edge endpoint, missing start/target, self-loop,
/// duplicate edge, no start-to-target path).
AttackGraph parse_attack_graph(const std::string& text);
std::string serialize(const AttackGraph& g);
void validate(const AttackGraph& g);

/// All simple start-to-target paths in lexicographic order, truncated at
/// max_paths (reported via the flag, not an error). Cycles in the graph are
/// fine; only simple paths are returned.
PathEnumeration enumerate_paths(const AttackGraph& g, std::size_t max_paths);

/// 0-based index of the node on the path, or std::nullopt.
std::optional<std::size_t> node_depth_on_path(const AttackPath& p, const std::string& id);

}  // namespace secgame
