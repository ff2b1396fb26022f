#pragma once

#include <map>
#include <string>

namespace secgame {

/// Parsed vector string: metric token -> categorical value token. The scheme
/// is "CVSS" (3.0/3.1 grammar) or "RVSS" (adds refined attack-vector
/// categories plus the Age and Safety metric families).
struct ScoreVector {
  std::string scheme = "CVSS";
  std::string version = "3.1";
  std::map<std::string, std::string> metrics;

  bool has(const std::string& metric) const { return metrics.count(metric) != 0; }
  /// Value of the metric, or `fallback` when absent or explicitly "X".
  std::string get(const std::string& metric, const std::string& fallback) const;
};

struct ScoreTriple {
  double base = 0.0;
  double temporal = 0.0;
  double environmental = 0.0;
};

/// Safety (H) acts on the impact subscore: the subscore is multiplied and
/// floored, so a physically hazardous flaw scores even when the classical
/// C/I/A impact is empty.
struct SafetyWeight {
  double multiplier = 1.0;
  double floor = 0.0;
};

/// RVSS numeric calibration, supplied as data. `identity()` reduces RVSS to
/// plain CVSS exactly; `defaults()` is the calibration shipped with the tool.
struct RvssWeights {
  std::map<std::string, double> attack_vector;      // value token -> weight
  std::map<std::string, SafetyWeight> safety;       // H/MH value -> effect
  std::map<std::string, double> age;                // Y/MY value -> temporal multiplier
  std::map<std::string, double> safety_requirement; // HR value -> env scaling

  static RvssWeights identity();
  static RvssWeights defaults();
};

RvssWeights parse_rvss_weights(const std::string& json_text);
std::string serialize(const RvssWeights& w);

/// Parses "CVSS:3.x/METRIC:VALUE/..." or "RVSS:1.0/...". Unknown metrics,
/// unknown values and duplicates are SyntaxError with the offending token.
ScoreVector parse_vector(const std::string& s);

/// Canonical vector string (metrics in specification order).
std::string to_string(const ScoreVector& v);

/// CVSS v3.1 base score (round-up to one decimal). MissingMetricError when a
/// base metric is absent.
double cvss_base(const ScoreVector& v);

/// (base, temporal, environmental); absent temporal/environmental metrics
/// behave as Not Defined.
ScoreTriple cvss_scores(const ScoreVector& v);

/// CVSS pipeline with RVSS attack-vector weights, the Safety impact
/// multiplier/floor, and the Age temporal multiplier, all taken from the
/// weight configuration. Scores are clamped to [0,10] and round-up quantized.
ScoreTriple rvss_score(const ScoreVector& v, const RvssWeights& weights);

}  // namespace secgame
