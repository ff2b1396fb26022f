#pragma once

#include "secgame/game.hpp"
#include "secgame/zero_sum.hpp"

namespace secgame {

struct BimatrixSolution {
  std::vector<BimatrixEquilibrium> equilibria;  // lexicographic by support
  int degenerate_supports = 0;  // singular indifference systems skipped
  bool degenerate() const { return degenerate_supports > 0; }
};

/// All Nash equilibria found by equal-size support enumeration: for every
/// support pair the indifference system is solved, nonnegativity and absence
/// of profitable outside deviations are checked, and duplicates within 1e-7
/// (strategy sup-norm) are merged. Dimensions are capped at 12x12.
BimatrixSolution solve_bimatrix(const BimatrixGame& g);

/// Best pure-deviation gain per player against the profile.
DeviationReport verify_equilibrium(const BimatrixGame& g, const BimatrixEquilibrium& eq,
                                   double tol);

}  // namespace secgame
