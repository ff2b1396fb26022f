#pragma once

#include "secgame/game.hpp"

namespace secgame {

/// Best pure-deviation improvement available to each player against the
/// profile under test. An equilibrium is accepted when both gains are <= tol.
struct DeviationReport {
  double row_gain = 0.0;
  double col_gain = 0.0;
  double tolerance = 0.0;
  bool accepted = false;
};

/// Mixed saddle point of a finite zero-sum game, solved as the standard
/// primal/dual linear-program pair with a dense simplex (Bland's rule,
/// entries shifted positive beforehand, shift subtracted from the value).
/// The returned profile is verified: both deviation gains <= 1e-8, else
/// NumericalError.
Equilibrium solve_zero_sum(const ZeroSumGame& g);

DeviationReport verify_equilibrium(const ZeroSumGame& g, const Equilibrium& eq, double tol);

/// True iff the cross-paired profiles (x1 of a, x2 of b) and (x1 of b, x2 of
/// a) are both saddle points at tol and their values agree within tol.
bool check_exchangeability(const ZeroSumGame& g, const Equilibrium& a, const Equilibrium& b,
                           double tol);

}  // namespace secgame
