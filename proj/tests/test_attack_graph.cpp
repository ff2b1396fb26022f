#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "secgame/attack_graph.hpp"
#include "secgame/errors.hpp"
#include "test_util.hpp"

using namespace secgame;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string kDataDir = SECGAME_TEST_DATA_DIR;

}  // namespace

TEST_CASE("smallest legal graph: two nodes, one edge, one path") {
  const char* text = R"({"nodes":[{"id":"A","label":"A","kind":"condition"},
                                  {"id":"B","label":"B","kind":"condition"}],
                         "edges":[["A","B"]], "start":"A", "target":"B"})";
  AttackGraph g = parse_attack_graph(text);
  auto en = enumerate_paths(g, 100);
  REQUIRE(en.paths.size() == 1);
  CHECK(en.paths[0].nodes == std::vector<std::string>{"A", "B"});
  CHECK_FALSE(en.truncated);
}

TEST_CASE("the ten-node playground yields exactly the eight tabulated paths") {
  AttackGraph g = parse_attack_graph(read_file(kDataDir + "/fig_attack_graph.json"));
  REQUIRE(g.nodes.size() == 10);
  auto en = enumerate_paths(g, 100);
  REQUIRE_FALSE(en.truncated);
  REQUIRE(en.paths.size() == 8);

  // The eight tabulated attack paths, as id sequences, in lexicographic
  // order. Labels: n01 execute(0), n02 ftp_rhosts(0,1), n03 rsh(0,1),
  // n04 ftp_rhosts(1,2), n05 rsh(0,2), n06 sshd_bof(0,1), n07 local_bof(2),
  // n08 ftp_rhosts(0,2), n09 rsh(1,2), n10 full_access(2).
  using P = std::vector<std::string>;
  const std::vector<P> expected = {
      {"n01", "n02", "n03", "n04", "n09", "n07", "n10"},
      {"n01", "n02", "n03", "n09", "n07", "n10"},
      {"n01", "n03", "n04", "n09", "n07", "n10"},
      {"n01", "n03", "n09", "n07", "n10"},
      {"n01", "n05", "n07", "n10"},
      {"n01", "n06", "n04", "n09", "n07", "n10"},
      {"n01", "n06", "n09", "n07", "n10"},
      {"n01", "n08", "n05", "n07", "n10"},
  };
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(en.paths[i].nodes == expected[i]);

  // Label-level check against the published table: the shortest row reads
  // execute(0) -> rsh(0,2) -> local_bof(2) -> full_access(2).
  std::vector<std::string> shortest_labels;
  for (const auto& id : en.paths[4].nodes) shortest_labels.push_back(g.node(id).label);
  CHECK(shortest_labels == std::vector<std::string>{"execute(0)", "rsh(0,2)", "local_bof(2)",
                                                    "full_access(2)"});

  // Every path must funnel through the local buffer-overflow node right
  // before the target.
  for (const auto& p : en.paths) {
    REQUIRE(p.nodes.size() >= 2);
    CHECK(p.nodes[p.nodes.size() - 2] == "n07");
  }
}

TEST_CASE("parse failures") {
  CHECK_THROWS_AS(parse_attack_graph("not json"), SyntaxError);
  CHECK_THROWS_AS(parse_attack_graph("{}"), SyntaxError);
  const char* unknown_edge = R"({"nodes":[{"id":"A"},{"id":"B"}],
      "edges":[["A","Z"]], "start":"A", "target":"B"})";
  CHECK_THROWS_AS(parse_attack_graph(unknown_edge), ValidationError);
  const char* no_path = R"({"nodes":[{"id":"A"},{"id":"B"},{"id":"C"}],
      "edges":[["B","C"]], "start":"A", "target":"C"})";
  CHECK_THROWS_AS(parse_attack_graph(no_path), ValidationError);
  const char* self_loop = R"({"nodes":[{"id":"A"},{"id":"B"}],
      "edges":[["A","A"],["A","B"]], "start":"A", "target":"B"})";
  CHECK_THROWS_AS(parse_attack_graph(self_loop), ValidationError);
  const char* dup_edge = R"({"nodes":[{"id":"A"},{"id":"B"}],
      "edges":[["A","B"],["A","B"]], "start":"A", "target":"B"})";
  CHECK_THROWS_AS(parse_attack_graph(dup_edge), ValidationError);
  const char* same_start_target = R"({"nodes":[{"id":"A"}],
      "edges":[], "start":"A", "target":"A"})";
  CHECK_THROWS_AS(parse_attack_graph(same_start_target), ValidationError);
  const char* bad_kind = R"({"nodes":[{"id":"A","kind":"magic"},{"id":"B"}],
      "edges":[["A","B"]], "start":"A", "target":"B"})";
  CHECK_THROWS_AS(parse_attack_graph(bad_kind), SyntaxError);
}

TEST_CASE("chain and diamond enumeration") {
  const char* chain = R"({"nodes":[{"id":"A"},{"id":"B"},{"id":"C"}],
      "edges":[["A","B"],["B","C"]], "start":"A", "target":"C"})";
  auto en = enumerate_paths(parse_attack_graph(chain), 10);
  REQUIRE(en.paths.size() == 1);
  CHECK(en.paths[0].nodes == std::vector<std::string>{"A", "B", "C"});

  const char* diamond = R"({"nodes":[{"id":"A"},{"id":"B"},{"id":"C"},{"id":"D"}],
      "edges":[["A","B"],["A","C"],["B","D"],["C","D"]], "start":"A", "target":"D"})";
  auto en2 = enumerate_paths(parse_attack_graph(diamond), 10);
  REQUIRE(en2.paths.size() == 2);
  CHECK(en2.paths[0].nodes == std::vector<std::string>{"A", "B", "D"});
  CHECK(en2.paths[1].nodes == std::vector<std::string>{"A", "C", "D"});

  SUBCASE("truncation raises the flag, not an error") {
    auto cut = enumerate_paths(parse_attack_graph(diamond), 1);
    CHECK(cut.paths.size() == 1);
    CHECK(cut.truncated);
  }
}

TEST_CASE("cycles are allowed; only simple paths are enumerated") {
  const char* cyclic = R"({"nodes":[{"id":"A"},{"id":"B"},{"id":"C"}],
      "edges":[["A","B"],["B","A"],["B","C"],["C","B"]], "start":"A", "target":"C"})";
  auto en = enumerate_paths(parse_attack_graph(cyclic), 100);
  REQUIRE(en.paths.size() == 1);
  CHECK(en.paths[0].nodes == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("node_depth_on_path") {
  AttackPath p{{"A", "B", "C"}};
  CHECK(node_depth_on_path(p, "B") == 1);
  CHECK_FALSE(node_depth_on_path(p, "Z").has_value());

  // Table row 3 (execute(0) -> ftp_rhosts(0,2) -> rsh(0,2) -> local_bof(2)
  // -> full_access(2)) lists the local buffer overflow fourth (index 3).
  AttackGraph g = parse_attack_graph(read_file(kDataDir + "/fig_attack_graph.json"));
  auto en = enumerate_paths(g, 100);
  const std::vector<std::string> row3 = {"n01", "n08", "n05", "n07", "n10"};
  bool found = false;
  for (const auto& path : en.paths) {
    if (path.nodes == row3) {
      found = true;
      CHECK(node_depth_on_path(path, "n07") == 3);
    }
  }
  CHECK(found);
}

TEST_CASE("property: enumeration matches an independent BFS count on random DAGs") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 50; ++k) {
    AttackGraph g = oracle::random_dag(rng, 3 + static_cast<int>(rng() % 3),
                                       1 + static_cast<int>(rng() % 3));
    auto en = enumerate_paths(g, 100000);
    REQUIRE_FALSE(en.truncated);
    auto ref = oracle::all_simple_paths_bfs(g);
    REQUIRE(en.paths.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(en.paths[i].nodes == ref[i]);  // lexicographic order agrees
      // Path invariants: endpoints, simplicity, declared edges.
      const auto& nodes = en.paths[i].nodes;
      CHECK(nodes.front() == g.start);
      CHECK(nodes.back() == g.target);
      std::set<std::string> uniq(nodes.begin(), nodes.end());
      CHECK(uniq.size() == nodes.size());
      for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
        const auto edge = std::make_pair(nodes[e], nodes[e + 1]);
        CHECK(std::find(g.edges.begin(), g.edges.end(), edge) != g.edges.end());
      }
    }
  }
}

TEST_CASE("serialize/parse round trip preserves node and edge sets") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 20; ++k) {
    AttackGraph g = oracle::random_dag(rng);
    AttackGraph back = parse_attack_graph(serialize(g));
    auto ids = [](const AttackGraph& x) {
      std::set<std::string> s;
      for (const auto& n : x.nodes) s.insert(n.id);
      return s;
    };
    auto edges = [](const AttackGraph& x) {
      return std::set<std::pair<std::string, std::string>>(x.edges.begin(), x.edges.end());
    };
    CHECK(ids(g) == ids(back));
    CHECK(edges(g) == edges(back));
    CHECK(g.start == back.start);
    CHECK(g.target == back.target);
  }
}
