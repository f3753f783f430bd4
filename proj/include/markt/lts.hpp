#pragma once

#include "markt/term.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace markt {

using StateId = std::size_t;
using EdgeId = std::size_t;

inline constexpr std::size_t kDefaultStateCap = 10'000;

/// One multitransition. `derivation` records the proof that produced it:
/// 'L'/'R' for the choice rules, 'U' for a constant unfolding. Two edges
/// of the same source never share a derivation.
struct Edge {
  StateId source;
  ActionName action;
  Rational rate;
  std::string derivation;
  StateId target;
};

/// Labeled multitransition system. Also used for interaction systems,
/// in which case `terms` is empty and `labels` name the configurations.
class Lts {
 public:
  StateId add_state(std::string label, TermPtr term = nullptr);
  EdgeId add_edge(Edge e);

  std::size_t num_states() const { return labels_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }
  const std::vector<EdgeId>& outgoing(StateId s) const { return out_[s]; }
  const std::string& label(StateId s) const { return labels_[s]; }
  /// Term of a process state; null for interaction configurations.
  const TermPtr& term(StateId s) const { return terms_[s]; }

  StateId initial() const { return initial_; }
  void set_initial(StateId s) { initial_ = s; }

  /// Sum of all outgoing rates; cached on edge insertion.
  const Rational& total_rate(StateId s) const { return total_[s]; }

  bool has_invisible_edges() const;

 private:
  std::vector<std::string> labels_;
  std::vector<TermPtr> terms_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<Rational> total_;
  StateId initial_ = 0;
};

/// Explores every state reachable from `term`. State identity is the
/// printed form of the term after outermost constant unfolding.
/// Throws CapExceeded when more than `cap` states are found.
Lts derive_lts(const TermPtr& term, const DefEnv& env, std::size_t cap = kDefaultStateCap);

/// Sum of rates of `a`-edges from `state` into `targets` (all states when
/// absent). Zero for an empty multiset.
Rational rate(const Lts& lts, StateId state, const ActionName& a,
              const std::optional<std::set<StateId>>& targets = std::nullopt);

/// Sum of `rate(state, a, all)` over every name `a`.
Rational rate_total(const Lts& lts, StateId state);

struct CtmcTransition {
  StateId source;
  StateId target;
  Rational rate;
};

/// Underlying CTMC: names dropped, parallel edges collapsed by summing.
struct Ctmc {
  std::size_t num_states = 0;
  StateId initial = 0;
  std::vector<CtmcTransition> transitions;  // sorted by (source, target)
};

Ctmc to_ctmc(const Lts& lts);

}  // namespace markt
