#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "secgame/bimatrix.hpp"
#include "secgame/errors.hpp"
#include "secgame/game.hpp"
#include "secgame/phases.hpp"
#include "secgame/zero_sum.hpp"
#include "test_util.hpp"

using namespace secgame;

namespace {

ZeroSumGame rowmax(Matrix h) {
  ZeroSumGame g;
  g.payoff = std::move(h);
  g.row_role = RowRole::Max;
  return g;
}

// Independent closed-form 2x2 zero-sum solver (row maximizer) used as the
// hand oracle for small games.
struct TwoByTwo {
  double value;
  double p;  // row prob of first row
  double q;  // col prob of first column
};

TwoByTwo solve_2x2_reference(const Matrix& h) {
  // Pure saddle first.
  auto saddles = oracle::pure_saddles_rowmax(h);
  if (!saddles.empty()) {
    auto [i, j] = saddles.front();
    return {h(i, j), i == 0 ? 1.0 : 0.0, j == 0 ? 1.0 : 0.0};
  }
  const double a = h(0, 0), b = h(0, 1), c = h(1, 0), d = h(1, 1);
  const double denom = a - b - c + d;
  const double p = (d - c) / denom;
  const double q = (d - b) / denom;
  return {(a * d - b * c) / denom, p, q};
}

}  // namespace

TEST_CASE("matching pennies solves to the symmetric mixed saddle") {
  auto g = rowmax(Matrix{{1, -1}, {-1, 1}});
  Equilibrium eq = solve_zero_sum(g);
  CHECK(eq.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(eq.row_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(eq.col_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(is_valid_mixed_strategy(eq.row_strategy));
  CHECK(is_valid_mixed_strategy(eq.col_strategy));
}

TEST_CASE("2x2 game [[3,1],[0,2]] matches the closed form") {
  auto g = rowmax(Matrix{{3, 1}, {0, 2}});
  Equilibrium eq = solve_zero_sum(g);
  auto ref = solve_2x2_reference(g.payoff);
  CHECK(eq.value == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(ref.value == doctest::Approx(1.5));
  CHECK(eq.row_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(eq.col_strategy[0] == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("random 2x2 games agree with the closed-form oracle") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    auto g = rowmax(oracle::random_matrix(2, 2, rng));
    Equilibrium eq = solve_zero_sum(g);
    auto ref = solve_2x2_reference(g.payoff);
    CHECK(eq.value == doctest::Approx(ref.value).epsilon(1e-8));
  }
}

TEST_CASE("pure saddles are found exactly on random 10x10 matrices") {
  std::mt19937_64 rng(11);
  int with_saddle = 0;
  for (int k = 0; k < 60; ++k) {
    Matrix h = oracle::random_matrix(10, 10, rng);
    if (k % 2 == 0) {
      // Plant a saddle: row i* at least v everywhere, column j* at most v.
      const std::size_t si = rng() % 10, sj = rng() % 10;
      const double v = h(si, sj);
      for (std::size_t c = 0; c < 10; ++c) h(si, c) = std::max(h(si, c), v);
      for (std::size_t r = 0; r < 10; ++r) h(r, sj) = std::min(h(r, sj), v);
      h(si, sj) = v;
    }
    auto saddles = oracle::pure_saddles_rowmax(h);
    if (saddles.empty()) continue;
    ++with_saddle;
    Equilibrium eq = solve_zero_sum(rowmax(h));
    CHECK(eq.value == doctest::Approx(h(saddles[0].first, saddles[0].second)).epsilon(1e-8));
  }
  CHECK(with_saddle >= 30);
}

TEST_CASE("LP duality: row and column programs give the same value") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    const std::size_t m = 2 + rng() % 9;
    const std::size_t n = 2 + rng() % 9;
    Matrix h = oracle::random_matrix(m, n, rng);
    const double v1 = solve_zero_sum(rowmax(h)).value;
    // Independent second route: the transposed game with negated payoffs has
    // value -v.
    Matrix neg = h.transposed();
    for (std::size_t i = 0; i < neg.rows(); ++i)
      for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
    const double v2 = -solve_zero_sum(rowmax(neg)).value;
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-8));
  }
}

TEST_CASE("shift and scale invariance of the saddle point") {
  std::mt19937_64 rng(17);
  Matrix h = oracle::random_matrix(6, 5, rng);
  Equilibrium base = solve_zero_sum(rowmax(h));

  const double c = 3.75;
  Matrix shifted = h;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) shifted(i, j) += c;
  Equilibrium sh = solve_zero_sum(rowmax(shifted));
  CHECK(sh.value == doctest::Approx(base.value + c).epsilon(1e-8));
  for (std::size_t i = 0; i < h.rows(); ++i)
    CHECK(sh.row_strategy[i] == doctest::Approx(base.row_strategy[i]).epsilon(1e-8));

  const double s = 2.5;
  Matrix scaled = h;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) scaled(i, j) *= s;
  Equilibrium sc = solve_zero_sum(rowmax(scaled));
  CHECK(sc.value == doctest::Approx(base.value * s).epsilon(1e-8));
  for (std::size_t i = 0; i < h.rows(); ++i)
    CHECK(sc.row_strategy[i] == doctest::Approx(base.row_strategy[i]).epsilon(1e-7));
}

TEST_CASE("min-role games flip the orientation consistently") {
  // Defender rows minimize the entry; the solved profile must satisfy the
  // minimizer-side saddle inequalities.
  ZeroSumGame g;
  g.payoff = Matrix{{0.3, 0.9}, {0.7, 0.1}};
  g.row_role = RowRole::Min;
  Equilibrium eq = solve_zero_sum(g);
  auto rep = verify_equilibrium(g, eq, 1e-8);
  CHECK(rep.accepted);
  // Same game from the maximizer's seat (transpose) has the same value.
  Equilibrium tr = solve_zero_sum(rowmax(Matrix(g.payoff).transposed()));
  CHECK(eq.value == doctest::Approx(tr.value).epsilon(1e-9));
}

TEST_CASE("verify_equilibrium reports deviation gains") {
  auto g = rowmax(Matrix{{1, -1}, {-1, 1}});
  Equilibrium eq = solve_zero_sum(g);
  auto rep = verify_equilibrium(g, eq, 1e-8);
  CHECK(rep.accepted);
  CHECK(rep.row_gain == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.col_gain == doctest::Approx(0.0).epsilon(1e-9));

  Equilibrium skew = eq;
  skew.row_strategy = {0.6, 0.4};
  skew.value = expected_payoff(g.payoff, skew.row_strategy, skew.col_strategy);
  auto rep2 = verify_equilibrium(g, skew, 1e-8);
  CHECK_FALSE(rep2.accepted);
  CHECK(rep2.col_gain == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("solver output always passes the deviation check on random games") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 40; ++k) {
    auto g = rowmax(oracle::random_matrix(8, 8, rng));
    Equilibrium eq = solve_zero_sum(g);
    auto rep = verify_equilibrium(g, eq, 1e-8);
    CHECK(rep.accepted);
  }
}

TEST_CASE("exchangeability") {
  SUBCASE("all-zero game: any pure pair") {
    auto g = rowmax(Matrix{{0, 0}, {0, 0}});
    Equilibrium a{{1, 0}, {1, 0}, 0.0, 0};
    Equilibrium b{{0, 1}, {0, 1}, 0.0, 0};
    CHECK(check_exchangeability(g, a, b, 1e-9));
  }
  SUBCASE("identical equilibria") {
    auto g = rowmax(Matrix{{1, -1}, {-1, 1}});
    Equilibrium eq = solve_zero_sum(g);
    CHECK(check_exchangeability(g, eq, eq, 1e-9));
  }
  SUBCASE("degenerate game with two pure saddles") {
    auto g = rowmax(Matrix{{1, 1}, {1, 1}, {0, 2}});
    auto saddles = oracle::pure_saddles_rowmax(g.payoff);
    REQUIRE(saddles.size() >= 2);
    auto pure_eq = [&](std::size_t i, std::size_t j) {
      Equilibrium e;
      e.row_strategy.assign(g.rows(), 0.0);
      e.col_strategy.assign(g.cols(), 0.0);
      e.row_strategy[i] = 1.0;
      e.col_strategy[j] = 1.0;
      e.value = g.payoff(i, j);
      return e;
    };
    for (std::size_t x = 0; x < saddles.size(); ++x)
      for (std::size_t y = x + 1; y < saddles.size(); ++y)
        CHECK(check_exchangeability(g, pure_eq(saddles[x].first, saddles[x].second),
                                    pure_eq(saddles[y].first, saddles[y].second), 1e-9));
  }
  SUBCASE("non-equilibrium pair is rejected") {
    auto g = rowmax(Matrix{{1, -1}, {-1, 1}});
    Equilibrium eq = solve_zero_sum(g);
    Equilibrium off{{1, 0}, {1, 0}, 1.0, 0};
    CHECK_FALSE(check_exchangeability(g, eq, off, 1e-9));
  }
}

TEST_CASE("size/role validation") {
  ZeroSumGame g;
  CHECK_THROWS_AS(solve_zero_sum(g), ValidationError);
  g.payoff = Matrix{{1.0, std::numeric_limits<double>::infinity()}};
  CHECK_THROWS_AS(solve_zero_sum(g), ValidationError);
}

// ---------------------------------------------------------------------------
// Bimatrix games.

TEST_CASE("prisoner's dilemma has the unique defect/defect equilibrium") {
  BimatrixGame g;
  g.row_payoff = Matrix{{-1, -3}, {0, -2}};
  g.col_payoff = Matrix{{-1, 0}, {-3, -2}};
  auto sol = solve_bimatrix(g);
  REQUIRE(sol.equilibria.size() == 1);
  CHECK(sol.equilibria[0].row_strategy[1] == doctest::Approx(1.0));
  CHECK(sol.equilibria[0].col_strategy[1] == doctest::Approx(1.0));
}

TEST_CASE("matching pennies as bimatrix has the unique mixed equilibrium") {
  BimatrixGame g;
  g.row_payoff = Matrix{{1, -1}, {-1, 1}};
  g.col_payoff = Matrix{{-1, 1}, {1, -1}};
  auto sol = solve_bimatrix(g);
  REQUIRE(sol.equilibria.size() == 1);
  CHECK(sol.equilibria[0].row_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.equilibria[0].col_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("battle of the sexes: two pure plus the known mixed equilibrium") {
  BimatrixGame g;
  g.row_payoff = Matrix{{2, 0}, {0, 1}};
  g.col_payoff = Matrix{{1, 0}, {0, 2}};
  auto sol = solve_bimatrix(g);
  REQUIRE(sol.equilibria.size() == 3);
  int pure = 0, mixed = 0;
  for (const auto& eq : sol.equilibria) {
    auto rep = verify_equilibrium(g, eq, 1e-7);
    CHECK(rep.accepted);
    const bool is_pure = std::abs(eq.row_strategy[0]) < 1e-9 || eq.row_strategy[0] > 1 - 1e-9;
    if (is_pure) {
      ++pure;
    } else {
      ++mixed;
      CHECK(eq.row_strategy[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
      CHECK(eq.col_strategy[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
    }
  }
  CHECK(pure == 2);
  CHECK(mixed == 1);
}

TEST_CASE("every returned bimatrix equilibrium passes the deviation verifier") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 30; ++k) {
    BimatrixGame g;
    g.row_payoff = oracle::random_matrix(3, 3, rng);
    g.col_payoff = oracle::random_matrix(3, 3, rng);
    auto sol = solve_bimatrix(g);
    CHECK(!sol.equilibria.empty());
    for (const auto& eq : sol.equilibria) CHECK(verify_equilibrium(g, eq, 1e-7).accepted);
    if (sol.degenerate_supports == 0) CHECK(sol.equilibria.size() % 2 == 1);
  }
}

TEST_CASE("bimatrix size limit") {
  BimatrixGame g;
  g.row_payoff = Matrix(13, 2, 0.0);
  g.col_payoff = Matrix(13, 2, 0.0);
  CHECK_THROWS_AS(solve_bimatrix(g), SizeLimitError);
}

// ---------------------------------------------------------------------------
// Phase composition.

TEST_CASE("single-leaf tree reduces to solve_zero_sum bit for bit") {
  PhaseTree t;
  PhaseNode leaf;
  leaf.id = "G1";
  leaf.cells = {{{1, {}}, {-1, {}}}, {{-1, {}}, {1, {}}}};
  t.nodes.push_back(leaf);

  auto sol = compose_phases(t);
  ZeroSumGame direct;
  direct.payoff = Matrix{{1, -1}, {-1, 1}};
  Equilibrium eq = solve_zero_sum(direct);
  CHECK(sol.root_value == eq.value);
  CHECK(sol.equilibria.at("G1").row_strategy == eq.row_strategy);
  CHECK(sol.equilibria.at("G1").col_strategy == eq.col_strategy);
}

TEST_CASE("1x1 continuation root passes the child's value through") {
  PhaseTree t;
  PhaseNode root;
  root.id = "G1";
  root.cells = {{{0.0, "G2"}}};
  PhaseNode child;
  child.id = "G2";
  child.cells = {{{1, {}}, {-1, {}}}, {{-1, {}}, {1, {}}}};
  t.nodes = {root, child};

  auto sol = compose_phases(t);
  CHECK(sol.root_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.solve_order.front() == "G2");  // leaves first
}

TEST_CASE("three-phase chain equals manual backward induction") {
  // G3 = [[3,1],[0,2]], G2 = [[G3,0],[1,2]], G1 = [[G2,0],[0,3]].
  PhaseTree t;
  PhaseNode g1, g2, g3;
  g3.id = "G3";
  g3.cells = {{{3, {}}, {1, {}}}, {{0, {}}, {2, {}}}};
  g2.id = "G2";
  g2.cells = {{{0.0, "G3"}, {0, {}}}, {{1, {}}, {2, {}}}};
  g1.id = "G1";
  g1.cells = {{{0.0, "G2"}, {0, {}}}, {{0, {}}, {3, {}}}};
  t.nodes = {g1, g2, g3};

  auto sol = compose_phases(t);

  const double v3 = solve_2x2_reference(Matrix{{3, 1}, {0, 2}}).value;
  const double v2 = solve_2x2_reference(Matrix{{v3, 0}, {1, 2}}).value;
  const double v1 = solve_2x2_reference(Matrix{{v2, 0}, {0, 3}}).value;
  CHECK(v3 == doctest::Approx(1.5));
  CHECK(sol.equilibria.at("G3").value == doctest::Approx(v3).epsilon(1e-10));
  CHECK(sol.equilibria.at("G2").value == doctest::Approx(v2).epsilon(1e-10));
  CHECK(sol.root_value == doctest::Approx(v1).epsilon(1e-8));
}

TEST_CASE("phase tree validation") {
  SUBCASE("missing child") {
    PhaseNode root;
    root.id = "G1";
    root.cells = {{{0.0, "nope"}}};
    PhaseTree t;
    t.nodes = {root};
    CHECK_THROWS_AS(compose_phases(t), ValidationError);
  }
  SUBCASE("two parents for one child") {
    PhaseNode a, b, c;
    a.id = "A";
    a.cells = {{{0.0, "C"}, {0.0, "B"}}};
    b.id = "B";
    b.cells = {{{0.0, "C"}}};
    c.id = "C";
    c.cells = {{{1.0, {}}}};
    PhaseTree t;
    t.nodes = {a, b, c};
    CHECK_THROWS_AS(compose_phases(t), ValidationError);
  }
  SUBCASE("json round trip") {
    const char* text = R"({"nodes":[
      {"id":"G1","role":"max","H":[[{"continuation":"G2"},0],[0,3]]},
      {"id":"G2","H":[[1,-1],[-1,1]]}]})";
    PhaseTree t = parse_phase_tree(text);
    CHECK(t.root_id == "G1");
    auto sol = compose_phases(t);
    CHECK(sol.equilibria.count("G2") == 1);
  }
}
