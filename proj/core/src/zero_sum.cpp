#include "secgame/zero_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kVerifyTol = 1e-8;

struct SaddlePoint {
  std::vector<double> row_min;  // strategy of the row player minimizing H
  std::vector<double> col_max;  // strategy of the column player maximizing H
  double value = 0.0;
  int iterations = 0;
};

void clean_strategy(std::vector<double>& s) {
  double sum = 0.0;
  for (double& v : s) {
    if (v < 0.0 && v > -1e-9) v = 0.0;
    sum += v;
  }
  if (sum > 0.0)
    for (double& v : s) v /= sum;
}

// Saddle point of H with the ROW player MINIMIZING x1' H x2 (the column
// player maximizes).
//
// After shifting H positive (H' = H + c), the minimizing row player's
// program is
//   maximize sum(y)  s.t.  H'^T y <= 1,  y >= 0
// (one constraint per column), whose optimum gives value v' = 1/sum(y) and
// x1 = v' * y; the dual prices on the column constraints normalize to the
// maximizing column player's strategy. Bland's rule (lowest eligible index
// for both the entering and the leaving variable) makes the walk cycle-free
// and the returned basis deterministic.
SaddlePoint solve_row_min(const Matrix& h) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  const double shift = std::max(0.0, 1.0 - h.min());

  // Tableau: n constraint rows, columns = m structural + n slacks + rhs.
  const std::size_t width = m + n + 1;
  std::vector<std::vector<double>> t(n, std::vector<double>(width, 0.0));
  std::vector<std::size_t> basis(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) t[j][i] = h(i, j) + shift;
    t[j][m + j] = 1.0;
    t[j][width - 1] = 1.0;
    basis[j] = m + j;
  }

  auto objective_coeff = [m](std::size_t var) { return var < m ? 1.0 : 0.0; };

  const int budget = 10000 + 50 * static_cast<int>(m + n);
  int iterations = 0;
  while (true) {
    if (++iterations > budget)
      throw NumericalError("simplex did not reach optimality within iteration budget");

    // Reduced costs d_j = c_j - c_B . column_j; Bland: smallest improving j.
    std::size_t entering = width;  // sentinel
    for (std::size_t j = 0; j + 1 < width; ++j) {
      double d = objective_coeff(j);
      for (std::size_t r = 0; r < n; ++r) d -= objective_coeff(basis[r]) * t[r][j];
      if (d > kPivotTol) {
        entering = j;
        break;
      }
    }
    if (entering == width) {
      --iterations;
      break;  // optimal
    }

    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r)
      if (t[r][entering] > kPivotTol)
        best_ratio = std::min(best_ratio, t[r][width - 1] / t[r][entering]);
    if (best_ratio == std::numeric_limits<double>::infinity())
      throw NumericalError("simplex detected an unbounded program on a finite game");
    std::size_t leaving = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (t[r][entering] <= kPivotTol) continue;
      const double ratio = t[r][width - 1] / t[r][entering];
      if (ratio <= best_ratio + kPivotTol && (leaving == n || basis[r] < basis[leaving]))
        leaving = r;
    }

    const double pivot = t[leaving][entering];
    for (std::size_t j = 0; j < width; ++j) t[leaving][j] /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == leaving) continue;
      const double factor = t[r][entering];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) t[r][j] -= factor * t[leaving][j];
    }
    basis[leaving] = entering;
  }

  std::vector<double> y(m, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    if (basis[r] < m) y[basis[r]] = t[r][width - 1];
  double obj = 0.0;
  for (double v : y) obj += v;
  if (obj <= 0.0) throw NumericalError("degenerate simplex optimum (zero objective)");

  // Dual prices: z_j on the slack columns.
  std::vector<double> u(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double z = 0.0;
    for (std::size_t r = 0; r < n; ++r) z += objective_coeff(basis[r]) * t[r][m + j];
    u[j] = z;
  }

  SaddlePoint sp;
  sp.value = 1.0 / obj - shift;
  sp.iterations = iterations;
  sp.row_min.assign(y.begin(), y.end());
  clean_strategy(sp.row_min);
  sp.col_max = u;
  clean_strategy(sp.col_max);
  return sp;
}

}  // namespace

bool is_valid_mixed_strategy(const MixedStrategy& s) {
  if (s.empty()) return false;
  double sum = 0.0;
  for (double v : s) {
    if (!(v >= -1e-12) || !std::isfinite(v)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= 1e-9;
}

void validate(const ZeroSumGame& g) {
  if (g.rows() == 0 || g.cols() == 0)
    throw ValidationError("zero-sum game needs at least one row and one column");
  for (double v : g.payoff.data())
    if (!std::isfinite(v)) throw ValidationError("zero-sum game has a non-finite entry");
  if (!g.row_labels.empty() && g.row_labels.size() != g.rows())
    throw ValidationError("row label count does not match matrix");
  if (!g.col_labels.empty() && g.col_labels.size() != g.cols())
    throw ValidationError("column label count does not match matrix");
}

void validate(const BimatrixGame& g) {
  if (g.rows() == 0 || g.cols() == 0)
    throw ValidationError("bimatrix game needs at least one row and one column");
  if (g.row_payoff.rows() != g.col_payoff.rows() || g.row_payoff.cols() != g.col_payoff.cols())
    throw ValidationError("payoff matrices F and G must have the same shape");
  for (double v : g.row_payoff.data())
    if (!std::isfinite(v)) throw ValidationError("payoff matrix F has a non-finite entry");
  for (double v : g.col_payoff.data())
    if (!std::isfinite(v)) throw ValidationError("payoff matrix G has a non-finite entry");
}

double expected_payoff(const Matrix& m, const MixedStrategy& row, const MixedStrategy& col) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (row[i] == 0.0) continue;
    double inner = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) inner += m(i, j) * col[j];
    acc += row[i] * inner;
  }
  return acc;
}

Equilibrium solve_zero_sum(const ZeroSumGame& g) {
  validate(g);
  Equilibrium eq;
  if (g.row_role == RowRole::Min) {
    SaddlePoint sp = solve_row_min(g.payoff);
    eq.row_strategy = std::move(sp.row_min);
    eq.col_strategy = std::move(sp.col_max);
    eq.value = sp.value;
    eq.iterations = sp.iterations;
  } else {
    // Row player maximizes H: in the transposed game the original column
    // player is the minimizing row player, and the scalar x1' H x2 is
    // unchanged.
    SaddlePoint sp = solve_row_min(Matrix(g.payoff).transposed());
    eq.row_strategy = std::move(sp.col_max);
    eq.col_strategy = std::move(sp.row_min);
    eq.value = sp.value;
    eq.iterations = sp.iterations;
  }
  eq.value = expected_payoff(g.payoff, eq.row_strategy, eq.col_strategy);
  DeviationReport rep = verify_equilibrium(g, eq, kVerifyTol);
  if (!rep.accepted)
    throw NumericalError("zero-sum solution failed saddle verification");
  return eq;
}

DeviationReport verify_equilibrium(const ZeroSumGame& g, const Equilibrium& eq, double tol) {
  const Matrix& h = g.payoff;
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  const double v = expected_payoff(h, eq.row_strategy, eq.col_strategy);

  double best_row = -std::numeric_limits<double>::infinity();
  double worst_row = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double payoff = 0.0;
    for (std::size_t j = 0; j < n; ++j) payoff += h(i, j) * eq.col_strategy[j];
    best_row = std::max(best_row, payoff);
    worst_row = std::min(worst_row, payoff);
  }
  double best_col = -std::numeric_limits<double>::infinity();
  double worst_col = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double payoff = 0.0;
    for (std::size_t i = 0; i < m; ++i) payoff += h(i, j) * eq.row_strategy[i];
    best_col = std::max(best_col, payoff);
    worst_col = std::min(worst_col, payoff);
  }

  DeviationReport rep;
  rep.tolerance = tol;
  if (g.row_role == RowRole::Max) {
    rep.row_gain = best_row - v;   // row wants H large
    rep.col_gain = v - worst_col;  // column wants H small
  } else {
    rep.row_gain = v - worst_row;  // row wants H small
    rep.col_gain = best_col - v;   // column wants H large
  }
  rep.accepted = rep.row_gain <= tol && rep.col_gain <= tol;
  return rep;
}

bool check_exchangeability(const ZeroSumGame& g, const Equilibrium& a, const Equilibrium& b,
                           double tol) {
  Equilibrium ab{a.row_strategy, b.col_strategy, 0.0, 0};
  Equilibrium ba{b.row_strategy, a.col_strategy, 0.0, 0};
  ab.value = expected_payoff(g.payoff, ab.row_strategy, ab.col_strategy);
  ba.value = expected_payoff(g.payoff, ba.row_strategy, ba.col_strategy);
  if (!verify_equilibrium(g, ab, tol).accepted) return false;
  if (!verify_equilibrium(g, ba, tol).accepted) return false;
  return std::abs(ab.value - ba.value) <= tol && std::abs(ab.value - a.value) <= tol;
}

}  // namespace secgame
