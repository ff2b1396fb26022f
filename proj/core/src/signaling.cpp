#include "secgame/signaling.hpp"

#include <cmath>

#include <json.hpp>

#include "secgame/errors.hpp"
#include "secgame/game.hpp"
#include "secgame/zero_sum.hpp"

namespace secgame {
namespace {

using nlohmann::json;

constexpr double kTieTol = 1e-9;
constexpr long kEnumLimit = 1000000;

// Is `action` a receiver best response to SOME belief over types after
// `message`? Feasibility of "action weakly beats every alternative" over the
// belief simplex equals nonnegativity of the value of the zero-sum game whose
// rows are types (the belief picker, maximizing) and whose columns are the
// alternatives, with entries U_R(t,m,action) - U_R(t,m,alt).
std::optional<std::vector<double>> supporting_belief(const SignalingGame& g, int message,
                                                     int action) {
  const int nt = static_cast<int>(g.types.size());
  const int na = static_cast<int>(g.actions.size());
  if (na == 1) return std::vector<double>(nt, 1.0 / nt);

  ZeroSumGame game;
  game.row_role = RowRole::Max;
  game.payoff = Matrix(nt, na - 1);
  int col = 0;
  for (int alt = 0; alt < na; ++alt) {
    if (alt == action) continue;
    for (int t = 0; t < nt; ++t)
      game.payoff(t, col) = g.ur(t, message, action) - g.ur(t, message, alt);
    ++col;
  }
  Equilibrium eq = solve_zero_sum(game);
  if (eq.value < -kTieTol) return std::nullopt;
  return eq.row_strategy;
}

}  // namespace

void validate(const SignalingGame& g) {
  const std::size_t nt = g.types.size();
  const std::size_t nm = g.messages.size();
  const std::size_t na = g.actions.size();
  if (nt == 0 || nm == 0 || na == 0)
    throw ValidationError("types, messages and actions must be nonempty");
  if (g.prior.size() != nt) throw ValidationError("prior length must match the type count");
  double sum = 0.0;
  for (double p : g.prior) {
    if (p < 0.0) throw ValidationError("prior entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("prior must sum to 1");

  for (const auto* table : {&g.u_sender, &g.u_receiver}) {
    if (table->size() != nt) throw ValidationError("payoff table incomplete over types");
    for (const auto& per_type : *table) {
      if (per_type.size() != nm) throw ValidationError("payoff table incomplete over messages");
      for (const auto& per_msg : per_type) {
        if (per_msg.size() != na) throw ValidationError("payoff table incomplete over actions");
        for (double v : per_msg)
          if (!std::isfinite(v)) throw ValidationError("payoff table has a non-finite entry");
      }
    }
  }
}

SignalingGame parse_signaling_game(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw SyntaxError("malformed JSON");
  for (const char* key : {"types", "messages", "actions", "prior", "U_S", "U_R"})
    if (!j.contains(key)) throw SyntaxError(std::string("game file misses \"") + key + "\"");

  SignalingGame g;
  for (const auto& v : j.at("types")) g.types.push_back(v.get<std::string>());
  for (const auto& v : j.at("messages")) g.messages.push_back(v.get<std::string>());
  for (const auto& v : j.at("actions")) g.actions.push_back(v.get<std::string>());
  for (const auto& v : j.at("prior")) g.prior.push_back(v.get<double>());

  auto read_table = [&](const json& tj, const char* name) {
    std::vector<std::vector<std::vector<double>>> table;
    for (const auto& t : g.types) {
      if (!tj.contains(t))
        throw SyntaxError(std::string(name) + " misses type \"" + t + "\"");
      std::vector<std::vector<double>> per_type;
      for (const auto& m : g.messages) {
        if (!tj.at(t).contains(m))
          throw SyntaxError(std::string(name) + " misses message \"" + m + "\"");
        std::vector<double> per_msg;
        for (const auto& a : g.actions) {
          if (!tj.at(t).at(m).contains(a))
            throw SyntaxError(std::string(name) + " misses action \"" + a + "\"");
          per_msg.push_back(tj.at(t).at(m).at(a).get<double>());
        }
        per_type.push_back(std::move(per_msg));
      }
      table.push_back(std::move(per_type));
    }
    return table;
  };
  g.u_sender = read_table(j.at("U_S"), "U_S");
  g.u_receiver = read_table(j.at("U_R"), "U_R");
  validate(g);
  return g;
}

const char* to_string(PbneKind k) {
  switch (k) {
    case PbneKind::Pooling: return "pooling";
    case PbneKind::Separating: return "separating";
    default: return "partial";
  }
}

std::optional<std::vector<double>> receiver_posterior(const SignalingGame& g,
                                                      const std::vector<int>& sender_policy,
                                                      int message) {
  const int nt = static_cast<int>(g.types.size());
  double mass = 0.0;
  std::vector<double> post(nt, 0.0);
  for (int t = 0; t < nt; ++t) {
    if (sender_policy[t] == message) {
      post[t] = g.prior[t];
      mass += g.prior[t];
    }
  }
  if (mass <= 0.0) return std::nullopt;
  for (double& p : post) p /= mass;
  return post;
}

PbneKind classify(const Pbne& e) {
  const std::size_t nt = e.sender_policy.size();
  bool constant = true;
  for (std::size_t t = 1; t < nt; ++t)
    if (e.sender_policy[t] != e.sender_policy[0]) constant = false;
  if (constant) return PbneKind::Pooling;
  bool injective = true;
  for (std::size_t a = 0; a < nt && injective; ++a)
    for (std::size_t b = a + 1; b < nt; ++b)
      if (e.sender_policy[a] == e.sender_policy[b]) {
        injective = false;
        break;
      }
  return injective ? PbneKind::Separating : PbneKind::Partial;
}

std::vector<Pbne> find_pbne(const SignalingGame& g) {
  validate(g);
  const int nt = static_cast<int>(g.types.size());
  const int nm = static_cast<int>(g.messages.size());
  const int na = static_cast<int>(g.actions.size());

  double profiles = 1.0;
  for (int t = 0; t < nt; ++t) profiles *= nm;
  for (int m = 0; m < nm; ++m) profiles *= na;
  if (profiles > static_cast<double>(kEnumLimit))
    throw SizeLimitError("pure-profile space exceeds the enumeration bound");

  std::vector<Pbne> found;
  std::vector<int> sender(nt, 0);
  while (true) {
    // Posteriors (and on-path flags) depend only on the sender policy.
    std::vector<std::optional<std::vector<double>>> posterior(nm);
    for (int m = 0; m < nm; ++m) posterior[m] = receiver_posterior(g, sender, m);

    std::vector<int> receiver(nm, 0);
    while (true) {
      bool ok = true;

      // (a) On-path sequential rationality under the Bayes posterior.
      for (int m = 0; m < nm && ok; ++m) {
        if (!posterior[m]) continue;
        double chosen = 0.0, best = -1e300;
        for (int a = 0; a < na; ++a) {
          double u = 0.0;
          for (int t = 0; t < nt; ++t) u += (*posterior[m])[t] * g.ur(t, m, a);
          if (a == receiver[m]) chosen = u;
          best = std::max(best, u);
        }
        if (chosen < best - kTieTol) ok = false;
      }

      // (c) Sender optimality given the receiver policy.
      for (int t = 0; t < nt && ok; ++t) {
        const double chosen = g.us(t, sender[t], receiver[sender[t]]);
        for (int m = 0; m < nm; ++m)
          if (g.us(t, m, receiver[m]) > chosen + kTieTol) {
            ok = false;
            break;
          }
      }

      // (b) Off-path actions need some supporting belief; record witnesses.
      std::vector<std::vector<double>> beliefs(nm);
      for (int m = 0; m < nm && ok; ++m) {
        if (posterior[m]) {
          beliefs[m] = *posterior[m];
          continue;
        }
        auto witness = supporting_belief(g, m, receiver[m]);
        if (!witness)
          ok = false;
        else
          beliefs[m] = *witness;
      }

      if (ok) {
        Pbne e;
        e.sender_policy = sender;
        e.receiver_policy = receiver;
        e.beliefs = std::move(beliefs);
        e.on_path.resize(nm);
        for (int m = 0; m < nm; ++m) e.on_path[m] = posterior[m].has_value();
        e.kind = classify(e);
        found.push_back(std::move(e));
      }

      int i = nm - 1;
      while (i >= 0 && receiver[i] == na - 1) receiver[i--] = 0;
      if (i < 0) break;
      ++receiver[i];
    }

    int t = nt - 1;
    while (t >= 0 && sender[t] == nm - 1) sender[t--] = 0;
    if (t < 0) break;
    ++sender[t];
  }
  return found;
}

}  // namespace secgame
