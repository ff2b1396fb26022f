#pragma once

#include <cstdint>
#include <string>

namespace secgame {

/// Renewal move strategy for one FlipIt player. Periodic strategies get a
/// uniform-random phase per run; exponential strategies renew with rate
/// `param` moves per time unit.
struct FlipStrategy {
  enum class Kind { Periodic, Exponential };
  Kind kind = Kind::Periodic;
  double param = 1.0;      // period (Periodic) or rate (Exponential)
  double move_cost = 0.0;  // cost per move

  /// Mean time between moves.
  double characteristic_period() const;
};

/// "periodic:1.0", "exp:0.5", optional ":cost=0.1" suffix.
FlipStrategy parse_flip_strategy(const std::string& text);
std::string to_string(const FlipStrategy& s);

struct FlipResult {
  double fraction[2] = {0.0, 0.0};     // control fractions, sum to 1 exactly
  double benefit[2] = {0.0, 0.0};      // fraction - move_cost * move_rate
  std::uint64_t moves[2] = {0, 0};     // total moves within the horizon
  double horizon = 0.0;
  int samples = 1;                     // replications aggregated
  double stderr_fraction[2] = {0.0, 0.0};
};

/// One deterministic event-driven run: ownership switches to the mover at
/// each move time; player 1 owns the resource at time 0 and wins simultaneous
/// moves. Identical inputs and seed give bit-identical results.
FlipResult simulate_flipit(const FlipStrategy& p1, const FlipStrategy& p2, double horizon,
                           std::uint64_t seed);

/// Mean fractions/benefits over `reps` independent runs (seeds seed, seed+1,
/// ...), with standard errors of the means.
FlipResult simulate_flipit_reps(const FlipStrategy& p1, const FlipStrategy& p2, double horizon,
                                std::uint64_t seed, int reps);

}  // namespace secgame
