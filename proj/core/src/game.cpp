#include "secgame/game.hpp"

#include <sstream>

#include <json.hpp>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

using nlohmann::json;

json parse_json_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SyntaxError("malformed JSON");
  return j;
}

Matrix matrix_from_json(const json& rows, const char* name) {
  if (!rows.is_array() || rows.empty())
    throw SyntaxError(std::string(name) + " must be a non-empty array of rows");
  const std::size_t n = rows[0].is_array() ? rows[0].size() : 0;
  if (n == 0) throw SyntaxError(std::string(name) + " rows must be non-empty arrays");
  Matrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw SyntaxError(std::string(name) + " rows have inconsistent lengths");
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number())
        throw SyntaxError(std::string(name) + " entries must be numbers");
      m(i, j) = rows[i][j].get<double>();
    }
  }
  return m;
}

std::vector<std::string> labels_from_json(const json& j, const char* key, std::size_t expected) {
  std::vector<std::string> out;
  if (!j.contains(key)) {
    out.reserve(expected);
    for (std::size_t i = 0; i < expected; ++i)
      out.push_back(std::string(key[0] == 'r' ? "r" : "c") + std::to_string(i + 1));
    return out;
  }
  for (const auto& v : j.at(key)) {
    if (!v.is_string()) throw SyntaxError(std::string(key) + " must hold strings");
    out.push_back(v.get<std::string>());
  }
  if (out.size() != expected)
    throw ValidationError(std::string(key) + " count does not match the matrix shape");
  return out;
}

}  // namespace

ZeroSumGame parse_zero_sum_json(const std::string& text) {
  json j = parse_json_or_throw(text);
  if (!j.is_object() || !j.contains("H"))
    throw SyntaxError("zero-sum game JSON must contain \"H\"");
  ZeroSumGame g;
  g.payoff = matrix_from_json(j.at("H"), "H");
  g.row_labels = labels_from_json(j, "rows", g.payoff.rows());
  g.col_labels = labels_from_json(j, "cols", g.payoff.cols());
  if (j.contains("role")) {
    const std::string role = j.at("role").get<std::string>();
    if (role == "max")
      g.row_role = RowRole::Max;
    else if (role == "min")
      g.row_role = RowRole::Min;
    else
      throw SyntaxError("role must be \"max\" or \"min\", got \"" + role + "\"");
  }
  validate(g);
  return g;
}

// CSV form: a header row of column labels (first cell names the row axis and
// is ignored), then one line per row: label, v1, v2, ...
ZeroSumGame parse_zero_sum_csv(const std::string& text) {
  std::vector<std::vector<std::string>> cells;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    cells.push_back(std::move(row));
  }
  if (cells.size() < 2) throw SyntaxError("CSV needs a header row and at least one data row");
  const std::size_t n = cells[0].size() - 1;
  if (cells[0].size() < 2) throw SyntaxError("CSV header needs at least one column label");

  ZeroSumGame g;
  g.col_labels.assign(cells[0].begin() + 1, cells[0].end());
  g.payoff = Matrix(cells.size() - 1, n);
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].size() != n + 1)
      throw SyntaxError("CSV row " + std::to_string(i + 1) + " has the wrong cell count");
    g.row_labels.push_back(cells[i][0]);
    for (std::size_t j = 0; j < n; ++j) {
      try {
        std::size_t pos = 0;
        g.payoff(i - 1, j) = std::stod(cells[i][j + 1], &pos);
        if (pos != cells[i][j + 1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw SyntaxError("CSV cell \"" + cells[i][j + 1] + "\" is not a number");
      }
    }
  }
  validate(g);
  return g;
}

BimatrixGame parse_bimatrix_json(const std::string& text) {
  json j = parse_json_or_throw(text);
  if (!j.is_object() || !j.contains("F") || !j.contains("G"))
    throw SyntaxError("bimatrix game JSON must contain \"F\" and \"G\"");
  BimatrixGame g;
  g.row_payoff = matrix_from_json(j.at("F"), "F");
  g.col_payoff = matrix_from_json(j.at("G"), "G");
  g.row_labels = labels_from_json(j, "rows", g.row_payoff.rows());
  g.col_labels = labels_from_json(j, "cols", g.row_payoff.cols());
  validate(g);
  return g;
}

namespace {
json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}
}  // namespace

std::string serialize(const ZeroSumGame& g) {
  json j;
  j["rows"] = g.row_labels;
  j["cols"] = g.col_labels;
  j["H"] = matrix_to_json(g.payoff);
  j["role"] = g.row_role == RowRole::Max ? "max" : "min";
  return j.dump(2);
}

std::string serialize(const BimatrixGame& g) {
  json j;
  j["rows"] = g.row_labels;
  j["cols"] = g.col_labels;
  j["F"] = matrix_to_json(g.row_payoff);
  j["G"] = matrix_to_json(g.col_payoff);
  return j.dump(2);
}

}  // namespace secgame
