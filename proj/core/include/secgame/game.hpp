#pragma once

#include <string>
#include <vector>

#include "secgame/matrix.hpp"

namespace secgame {

/// Probability vector over an ordered action set. Entries may dip to -1e-12
/// from floating-point cleanup; the sum must be 1 within 1e-9.
using MixedStrategy = std::vector<double>;

bool is_valid_mixed_strategy(const MixedStrategy& s);

/// Objective of the row player. The single matrix H is always the quantity
/// the matrix measures; the flag declares whether the row player wants it
/// large or small (the column player wants the opposite).
enum class RowRole { Max, Min };

struct ZeroSumGame {
  Matrix payoff;  // m x n
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  RowRole row_role = RowRole::Max;

  std::size_t rows() const { return payoff.rows(); }
  std::size_t cols() const { return payoff.cols(); }
};

struct BimatrixGame {
  Matrix row_payoff;  // F, payoff to the row player
  Matrix col_payoff;  // G, payoff to the column player
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  std::size_t rows() const { return row_payoff.rows(); }
  std::size_t cols() const { return row_payoff.cols(); }
};

struct Equilibrium {
  MixedStrategy row_strategy;
  MixedStrategy col_strategy;
  double value = 0.0;      // x1' H x2 at the equilibrium
  int iterations = 0;      // simplex pivots spent
};

struct BimatrixEquilibrium {
  MixedStrategy row_strategy;
  MixedStrategy col_strategy;
  double row_value = 0.0;  // x1' F x2
  double col_value = 0.0;  // x1' G x2
};

/// Validates shapes and finite entries; throws ValidationError.
void validate(const ZeroSumGame& g);
void validate(const BimatrixGame& g);

/// JSON (and CSV for the single-matrix form) codecs for the on-disk game
/// formats: {"rows":[...],"cols":[...],"H":[[...]]} with optional
/// "role":"max"|"min", and {"F":[[...]],"G":[[...]]} for bimatrix games.
ZeroSumGame parse_zero_sum_json(const std::string& text);
ZeroSumGame parse_zero_sum_csv(const std::string& text);
BimatrixGame parse_bimatrix_json(const std::string& text);
std::string serialize(const ZeroSumGame& g);
std::string serialize(const BimatrixGame& g);

double expected_payoff(const Matrix& m, const MixedStrategy& row, const MixedStrategy& col);

}  // namespace secgame
