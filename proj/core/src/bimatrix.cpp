#include "secgame/bimatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

constexpr std::size_t kMaxDim = 12;
constexpr double kSingularTol = 1e-12;
constexpr double kFeasTol = 1e-9;
constexpr double kMergeTol = 1e-7;

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < kSingularTol) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return true;
}

// Opponent strategy making every action in `support` indifferent under
// `payoff` (viewed along `axis`: 0 = support over rows using F, solve for the
// column strategy; 1 = support over columns using G, solve for rows).
// Returns {strategy over the opponent support, common payoff u}.
bool solve_indifference(const Matrix& payoff, const std::vector<std::size_t>& own_support,
                        const std::vector<std::size_t>& opp_support, int axis,
                        std::vector<double>& opp_probs, double& u) {
  const std::size_t k = own_support.size();
  // Unknowns: opp_probs (k) + u; equations: k indifference + normalization.
  std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> b(k + 1, 0.0);
  for (std::size_t e = 0; e < k; ++e) {
    for (std::size_t v = 0; v < k; ++v) {
      const double entry = axis == 0 ? payoff(own_support[e], opp_support[v])
                                     : payoff(opp_support[v], own_support[e]);
      a[e][v] = entry;
    }
    a[e][k] = -1.0;  // ... - u = 0
  }
  for (std::size_t v = 0; v < k; ++v) a[k][v] = 1.0;
  b[k] = 1.0;

  std::vector<double> x;
  if (!solve_linear(std::move(a), std::move(b), x)) return false;
  opp_probs.assign(x.begin(), x.begin() + k);
  u = x[k];
  return true;
}

void next_combination_done(std::vector<std::size_t>& idx, std::size_t n, bool& done) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (idx[i] + (k - i) < n) {  // idx[i] can grow
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return;
    }
  }
  done = true;
}

bool close_profiles(const BimatrixEquilibrium& a, const BimatrixEquilibrium& b) {
  for (std::size_t i = 0; i < a.row_strategy.size(); ++i)
    if (std::abs(a.row_strategy[i] - b.row_strategy[i]) > kMergeTol) return false;
  for (std::size_t j = 0; j < a.col_strategy.size(); ++j)
    if (std::abs(a.col_strategy[j] - b.col_strategy[j]) > kMergeTol) return false;
  return true;
}

}  // namespace

BimatrixSolution solve_bimatrix(const BimatrixGame& g) {
  validate(g);
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  if (m > kMaxDim || n > kMaxDim)
    throw SizeLimitError("bimatrix support enumeration is capped at 12x12");

  BimatrixSolution out;
  const std::size_t kmax = std::min(m, n);
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::size_t> s1(k);
    for (std::size_t i = 0; i < k; ++i) s1[i] = i;
    bool d1 = false;
    while (!d1) {
      std::vector<std::size_t> s2(k);
      for (std::size_t i = 0; i < k; ++i) s2[i] = i;
      bool d2 = false;
      while (!d2) {
        std::vector<double> col_probs, row_probs;
        double u = 0.0, w = 0.0;
        const bool ok_col = solve_indifference(g.row_payoff, s1, s2, 0, col_probs, u);
        const bool ok_row = solve_indifference(g.col_payoff, s2, s1, 1, row_probs, w);
        if (!ok_col || !ok_row) {
          ++out.degenerate_supports;
          next_combination_done(s2, n, d2);
          continue;
        }

        bool feasible = true;
        for (double p : col_probs)
          if (p < -kFeasTol) feasible = false;
        for (double p : row_probs)
          if (p < -kFeasTol) feasible = false;

        if (feasible) {
          BimatrixEquilibrium eq;
          eq.row_strategy.assign(m, 0.0);
          eq.col_strategy.assign(n, 0.0);
          for (std::size_t i = 0; i < k; ++i)
            eq.row_strategy[s1[i]] = std::max(0.0, row_probs[i]);
          for (std::size_t j = 0; j < k; ++j)
            eq.col_strategy[s2[j]] = std::max(0.0, col_probs[j]);

          // No profitable deviation outside the supports.
          for (std::size_t i = 0; i < m && feasible; ++i) {
            double payoff = 0.0;
            for (std::size_t j = 0; j < n; ++j) payoff += g.row_payoff(i, j) * eq.col_strategy[j];
            if (payoff > u + kFeasTol) feasible = false;
          }
          for (std::size_t j = 0; j < n && feasible; ++j) {
            double payoff = 0.0;
            for (std::size_t i = 0; i < m; ++i) payoff += g.col_payoff(i, j) * eq.row_strategy[i];
            if (payoff > w + kFeasTol) feasible = false;
          }

          if (feasible) {
            eq.row_value = expected_payoff(g.row_payoff, eq.row_strategy, eq.col_strategy);
            eq.col_value = expected_payoff(g.col_payoff, eq.row_strategy, eq.col_strategy);
            bool duplicate = false;
            for (const auto& seen : out.equilibria)
              if (close_profiles(seen, eq)) {
                duplicate = true;
                break;
              }
            if (!duplicate) out.equilibria.push_back(std::move(eq));
          }
        }
        next_combination_done(s2, n, d2);
      }
      next_combination_done(s1, m, d1);
    }
  }
  return out;
}

DeviationReport verify_equilibrium(const BimatrixGame& g, const BimatrixEquilibrium& eq,
                                   double tol) {
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  double best_row = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double payoff = 0.0;
    for (std::size_t j = 0; j < n; ++j) payoff += g.row_payoff(i, j) * eq.col_strategy[j];
    best_row = std::max(best_row, payoff);
  }
  double best_col = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double payoff = 0.0;
    for (std::size_t i = 0; i < m; ++i) payoff += g.col_payoff(i, j) * eq.row_strategy[i];
    best_col = std::max(best_col, payoff);
  }
  DeviationReport rep;
  rep.tolerance = tol;
  rep.row_gain = best_row - expected_payoff(g.row_payoff, eq.row_strategy, eq.col_strategy);
  rep.col_gain = best_col - expected_payoff(g.col_payoff, eq.row_strategy, eq.col_strategy);
  rep.accepted = rep.row_gain <= tol && rep.col_gain <= tol;
  return rep;
}

}  // namespace secgame
