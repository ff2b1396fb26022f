#pragma once

#include <optional>
#include <string>
#include <vector>

namespace secgame {

/// Finite sender-receiver game of incomplete information. Payoff tables are
/// indexed [type][message][action].
struct SignalingGame {
  std::vector<std::string> types;
  std::vector<std::string> messages;
  std::vector<std::string> actions;
  std::vector<double> prior;  // over types
  std::vector<std::vector<std::vector<double>>> u_sender;
  std::vector<std::vector<std::vector<double>>> u_receiver;

  double us(int t, int m, int a) const { return u_sender[t][m][a]; }
  double ur(int t, int m, int a) const { return u_receiver[t][m][a]; }
};

void validate(const SignalingGame& g);
SignalingGame parse_signaling_game(const std::string& json_text);

enum class PbneKind { Pooling, Separating, Partial };

/// Pure-strategy perfect Bayesian Nash equilibrium with one witnessing
/// belief system: Bayes posteriors on path, supportable beliefs off path.
struct Pbne {
  std::vector<int> sender_policy;                // type index -> message index
  std::vector<int> receiver_policy;              // message index -> action index
  std::vector<std::vector<double>> beliefs;      // message -> distribution over types
  std::vector<bool> on_path;                     // per message
  PbneKind kind = PbneKind::Partial;
};

const char* to_string(PbneKind k);

/// Bayes posterior over types given an on-path message, or nullopt when the
/// message has prior probability zero under the policy.
std::optional<std::vector<double>> receiver_posterior(const SignalingGame& g,
                                                      const std::vector<int>& sender_policy,
                                                      int message);

PbneKind classify(const Pbne& e);

/// Every pure PBNE, in lexicographic order over (sender, receiver) policies:
/// on-path receiver actions maximize expected payoff under the Bayes
/// posterior; off-path actions must be a best response to SOME belief over
/// types (exact feasibility via a small zero-sum solve, no grid); each sender
/// type's message maximizes its payoff against the receiver policy.
std::vector<Pbne> find_pbne(const SignalingGame& g);

}  // namespace secgame
