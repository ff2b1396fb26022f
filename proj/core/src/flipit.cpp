#include "secgame/flipit.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

// Uniform double in [0,1) from the raw engine output; bit-stable across
// platforms, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class MoveStream {
 public:
  MoveStream(const FlipStrategy& s, std::mt19937_64& rng) : strategy_(s) {
    if (s.kind == FlipStrategy::Kind::Periodic) {
      next_ = uniform01(rng) * s.param;  // uniform-random phase
    } else {
      next_ = exponential_gap(rng);
    }
  }

  double peek() const { return next_; }

  void advance(std::mt19937_64& rng) {
    if (strategy_.kind == FlipStrategy::Kind::Periodic)
      next_ += strategy_.param;
    else
      next_ += exponential_gap(rng);
  }

 private:
  double exponential_gap(std::mt19937_64& rng) {
    double u = uniform01(rng);
    if (u <= 0.0) u = 0x1.0p-53;
    return -std::log(u) / strategy_.param;
  }

  FlipStrategy strategy_;
  double next_ = 0.0;
};

void validate(const FlipStrategy& s) {
  if (!(s.param > 0.0)) throw ValidationError("strategy period/rate must be positive");
  if (s.move_cost < 0.0) throw ValidationError("move cost must be nonnegative");
}

}  // namespace

double FlipStrategy::characteristic_period() const {
  return kind == Kind::Periodic ? param : 1.0 / param;
}

FlipStrategy parse_flip_strategy(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3)
    throw SyntaxError("strategy must look like periodic:1.0[:cost=0.1] or exp:0.5[:cost=0.2]");

  FlipStrategy s;
  if (parts[0] == "periodic")
    s.kind = FlipStrategy::Kind::Periodic;
  else if (parts[0] == "exp" || parts[0] == "exponential")
    s.kind = FlipStrategy::Kind::Exponential;
  else
    throw SyntaxError("unknown strategy kind \"" + parts[0] + "\"");
  try {
    s.param = std::stod(parts[1]);
  } catch (const std::exception&) {
    throw SyntaxError("strategy parameter \"" + parts[1] + "\" is not a number");
  }
  if (parts.size() == 3) {
    if (parts[2].rfind("cost=", 0) != 0)
      throw SyntaxError("third strategy field must be cost=<value>");
    try {
      s.move_cost = std::stod(parts[2].substr(5));
    } catch (const std::exception&) {
      throw SyntaxError("strategy cost \"" + parts[2] + "\" is not a number");
    }
  }
  validate(s);
  return s;
}

std::string to_string(const FlipStrategy& s) {
  std::ostringstream os;
  os << (s.kind == FlipStrategy::Kind::Periodic ? "periodic" : "exp") << ":" << s.param
     << ":cost=" << s.move_cost;
  return os.str();
}

FlipResult simulate_flipit(const FlipStrategy& p1, const FlipStrategy& p2, double horizon,
                           std::uint64_t seed) {
  validate(p1);
  validate(p2);
  if (!(horizon > 0.0)) throw ValidationError("horizon must be positive");

  std::mt19937_64 rng(seed);
  MoveStream s1(p1, rng);
  MoveStream s2(p2, rng);

  FlipResult r;
  r.horizon = horizon;
  int owner = 0;  // player 1 holds the resource at time 0
  double last = 0.0;
  double owned0 = 0.0;  // player 1's total holding time

  while (true) {
    const double t1 = s1.peek();
    const double t2 = s2.peek();
    const double t = std::min(t1, t2);
    if (t >= horizon) break;
    if (owner == 0) owned0 += t - last;
    last = t;
    if (t1 <= t2) {  // defender wins simultaneous moves
      owner = 0;
      ++r.moves[0];
      s1.advance(rng);
      if (t2 == t1) {  // both moved; the late mover still pays
        owner = 0;
        ++r.moves[1];
        s2.advance(rng);
      }
    } else {
      owner = 1;
      ++r.moves[1];
      s2.advance(rng);
    }
  }
  if (owner == 0) owned0 += horizon - last;

  r.fraction[0] = owned0 / horizon;
  r.fraction[1] = 1.0 - r.fraction[0];  // exact partition of the horizon
  const double rate1 = static_cast<double>(r.moves[0]) / horizon;
  const double rate2 = static_cast<double>(r.moves[1]) / horizon;
  r.benefit[0] = r.fraction[0] - p1.move_cost * rate1;
  r.benefit[1] = r.fraction[1] - p2.move_cost * rate2;
  return r;
}

FlipResult simulate_flipit_reps(const FlipStrategy& p1, const FlipStrategy& p2, double horizon,
                                std::uint64_t seed, int reps) {
  if (reps < 1) throw ValidationError("need at least one replication");
  FlipResult agg;
  agg.horizon = horizon;
  agg.samples = reps;
  double sum_f0 = 0.0, sumsq_f0 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const FlipResult r = simulate_flipit(p1, p2, horizon, seed + static_cast<std::uint64_t>(i));
    sum_f0 += r.fraction[0];
    sumsq_f0 += r.fraction[0] * r.fraction[0];
    agg.benefit[0] += r.benefit[0];
    agg.benefit[1] += r.benefit[1];
    agg.moves[0] += r.moves[0];
    agg.moves[1] += r.moves[1];
  }
  agg.fraction[0] = sum_f0 / reps;
  agg.fraction[1] = 1.0 - agg.fraction[0];
  agg.benefit[0] /= reps;
  agg.benefit[1] /= reps;
  if (reps > 1) {
    const double var = std::max(0.0, (sumsq_f0 - sum_f0 * sum_f0 / reps) / (reps - 1));
    agg.stderr_fraction[0] = std::sqrt(var / reps);
    agg.stderr_fraction[1] = agg.stderr_fraction[0];
  }
  return agg;
}

}  // namespace secgame
