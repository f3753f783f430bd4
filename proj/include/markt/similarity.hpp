#pragma once

#include "markt/canonical_test.hpp"
#include "markt/computation.hpp"
#include "markt/interaction.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace markt {

/// One canonical time bound together with the successful computations it
/// was built from (indices into the computation set).
struct ThetaEntry {
  Theta theta;
  std::vector<std::size_t> members;
};

/// Canonical bound sequences: for every nonempty set X of successful
/// computations of one length, the stepwise maximum of their times.
/// Entries are distinct and sorted.
struct ThetaSet {
  std::vector<ThetaEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  bool contains(const Theta& theta) const;
};

/// Builds the canonical set level by level: a node holding computations S
/// at step i branches on every bound k taken from {time(c)[i] | c in S}
/// and keeps the computations within k. Leaves whose bound equals the
/// stepwise maximum of their computations are the canonical sequences.
ThetaSet theta_canonical(const ComputationSet& successful);

ThetaSet theta_canonical(const Lts& process, const CanonicalTest& t, std::size_t max_len,
                         std::size_t cap = kDefaultStateCap);

/// prob(SC^{|theta|}_{<=theta}): probability of the successful computations
/// of length |theta| whose stepwise times stay within theta.
Rational prob_within(const ComputationSet& successful, const Theta& theta);

enum class Execution { serial, parallel };

struct CheckOptions {
  std::size_t cap = kDefaultStateCap;
  /// Longest computation explored. Defaults to |T| for tau-free systems
  /// and |T| + tau_budget otherwise.
  std::optional<std::size_t> max_len;
  std::size_t tau_budget = 3;
  Execution execution = Execution::parallel;
};

struct SimilarityParams {
  Rational precision{1};
  Rational recall{1};
  EpsilonSpec epsilon;
  Rational nu{0};
};

/// A failing test, the test it was compared against (behavioural checks
/// only), the bound sequence and the two probabilities.
struct Witness {
  std::string test;
  std::optional<std::string> matched;
  Theta theta;
  Rational prob_left;
  Rational prob_right;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct SimilarityVerdict {
  bool holds = true;
  std::vector<Witness> witnesses;
  /// (T, T') pairs chosen by the behavioural and unified checks.
  std::vector<std::pair<std::string, std::string>> matches;
  std::optional<Rational> minimal_epsilon;
  std::optional<Rational> minimal_nu;
  std::vector<std::string> warnings;

  friend bool operator==(const SimilarityVerdict&, const SimilarityVerdict&) = default;
};

/// Successful computations of one process under one test.
struct SideData {
  SuccessfulComputations successful;
  ThetaSet theta;
  std::size_t max_len = 0;
  bool invisible_moves = false;
};

/// Two processes and a finite suite, with the successful computations of
/// every (process, test) pair computed once up front.
class Comparison {
 public:
  Comparison(Lts left, Lts right, Suite suite, CheckOptions options = {});

  const Lts& left() const { return left_; }
  const Lts& right() const { return right_; }
  const Suite& suite() const { return suite_; }
  const CheckOptions& options() const { return options_; }

  const SideData& left_data(std::size_t test) const { return left_data_[test]; }
  const SideData& right_data(std::size_t test) const { return right_data_[test]; }

  /// Completeness warnings raised while exploring (tau moves present).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Lts left_;
  Lts right_;
  Suite suite_;
  CheckOptions options_;
  std::vector<SideData> left_data_;
  std::vector<SideData> right_data_;
  std::vector<std::string> warnings_;
};

/// Markovian testing equivalence over the suite, decided on the canonical
/// bound sequences of both processes.
SimilarityVerdict check_mt_equiv(const Comparison& cmp);

/// Right is slow eps-similar to left, comparing against C<=theta+eps.
/// Not monotone in eps.
SimilarityVerdict check_slow_simple(const Comparison& cmp, const EpsilonSpec& eps);

/// Right is slow eps-similar to left: right's computations may be at most
/// eps slower than a matching computation of left.
SimilarityVerdict check_slow(const Comparison& cmp, const EpsilonSpec& eps);

/// Right is fast eps-similar to left.
SimilarityVerdict check_fast(const Comparison& cmp, const EpsilonSpec& eps);

/// Temporal eps-similarity; `two_sided` tolerates a computation that is
/// slower at some steps and faster at others.
SimilarityVerdict check_temporal(const Comparison& cmp, const EpsilonSpec& eps, bool two_sided);

/// |prob_left - prob_right| <= nu for every test and bound sequence.
/// minimal_nu holds the largest difference observed.
SimilarityVerdict check_prob(const Comparison& cmp, const Rational& nu);

/// For every test T some test T' of the suite reaches the precision and
/// recall floors and gives right the same success probability (untimed)
/// or the same probability under every canonical bound (timed).
SimilarityVerdict check_behavioral(const Comparison& cmp, const Rational& p, const Rational& r,
                                   bool timed);

/// Precision, recall, two-sided temporal band and probability threshold
/// together.
SimilarityVerdict check_unified(const Comparison& cmp, const SimilarityParams& params);

enum class TimeRelation { slow_simple, slow, fast, temporal, temporal_pm };

/// Smallest eps among 0 and the pairwise stepwise time differences of the
/// two processes' successful computations for which the relation holds.
std::optional<Rational> min_epsilon(const Comparison& cmp, TimeRelation relation);

SimilarityVerdict check_time_relation(const Comparison& cmp, TimeRelation relation,
                                      const EpsilonSpec& eps);

/// Transitive bound for slow similarity: P2 within eps1 of P1 and P3
/// within eps2 of P2 puts P3 within eps1 + eps2 of P1.
Rational compose_epsilon(const Rational& eps1, const Rational& eps2);
EpsilonSpec compose_epsilon(const EpsilonSpec& eps1, const EpsilonSpec& eps2);

}  // namespace markt
