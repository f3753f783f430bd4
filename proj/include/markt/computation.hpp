#pragma once

#include "markt/lts.hpp"

#include <variant>
#include <vector>

namespace markt {

/// Finite path through an Lts with its trace, probability and stepwise
/// average duration cached at construction.
class Computation {
 public:
  /// The empty computation at `start`: trace and time empty, prob 1.
  explicit Computation(StateId start) : start_(start), end_(start), probability_(1) {}

  /// Appends an edge leaving the current end state.
  /// Throws std::invalid_argument if the edge is not chained.
  Computation extended(const Lts& lts, EdgeId e) const;

  StateId start() const { return start_; }
  StateId end() const { return end_; }
  std::size_t length() const { return edges_.size(); }
  const std::vector<EdgeId>& edges() const { return edges_; }
  const std::vector<ActionName>& trace() const { return trace_; }
  const Rational& probability() const { return probability_; }
  const std::vector<Rational>& times() const { return times_; }

  /// Equal iff the same edge sequence (derivations included).
  friend bool operator==(const Computation& a, const Computation& b) {
    return a.start_ == b.start_ && a.edges_ == b.edges_;
  }

 private:
  StateId start_;
  StateId end_;
  std::vector<EdgeId> edges_;
  std::vector<ActionName> trace_;
  Rational probability_;
  std::vector<Rational> times_;
};

/// Multiset of computations. Distinct proofs of the same step are distinct
/// edges, so every multiplicity is carried by a separate element.
using ComputationSet = std::vector<Computation>;

/// Sequence of per-step average-time bounds; entries are positive.
using Theta = std::vector<Rational>;

/// Tolerance, either one value for every step or one per step. A vector
/// shorter than the computation is padded with its last entry.
class EpsilonSpec {
 public:
  EpsilonSpec() : values_{Rational(0)} {}
  EpsilonSpec(Rational scalar);  // NOLINT(google-explicit-constructor)
  EpsilonSpec(long scalar) : EpsilonSpec(Rational(scalar)) {}  // NOLINT(google-explicit-constructor)
  explicit EpsilonSpec(std::vector<Rational> per_step);

  const Rational& at(std::size_t step) const;
  bool is_scalar() const { return values_.size() == 1; }
  const std::vector<Rational>& values() const { return values_; }
  bool is_zero() const;

 private:
  std::vector<Rational> values_;
};

/// Every path of length at most `max_len` from `from`, shortest first,
/// then in edge order.
ComputationSet enumerate(const Lts& lts, StateId from, std::size_t max_len);

inline const Rational& prob(const Computation& c) { return c.probability(); }
inline const std::vector<Rational>& time(const Computation& c) { return c.times(); }
inline const std::vector<ActionName>& trace(const Computation& c) { return c.trace(); }

/// True when no member is a proper prefix of another member.
bool pairwise_independent(const ComputationSet& set);

/// Sum of member probabilities. Throws std::invalid_argument when the
/// members are not pairwise independent.
Rational prob_set(const ComputationSet& set);

// Predicates shared by the filters below and by the similarity engine.

/// |c| <= |theta| and time(c)[i] <= theta[i] (+ eps[i]) for every step.
bool fits(const Computation& c, const Theta& theta);
bool fits(const Computation& c, const Theta& theta, const EpsilonSpec& eps);

enum class Band { one_sided, two_sided };

/// |c| <= |ref| and, for every step of c,
///   one_sided: time(ref)[i] <= time(c)[i] <= time(ref)[i] + eps[i]
///   two_sided: time(ref)[i] - eps[i] <= time(c)[i] <= time(ref)[i] + eps[i]
bool tracks(const std::vector<Rational>& times, const std::vector<Rational>& ref_times,
            const EpsilonSpec& eps, Band band);

/// C<=theta
ComputationSet filter_le_theta(const ComputationSet& c, const Theta& theta);
/// C^l
ComputationSet filter_len(const ComputationSet& c, std::size_t length);
/// C<=theta+eps
ComputationSet filter_slow_simple(const ComputationSet& c, const Theta& theta, const EpsilonSpec& eps);
/// C<=theta+eps,ref: C<=theta plus members that are at most eps slower than
/// some member of ref<=theta.
ComputationSet filter_slow_ref(const ComputationSet& c, const Theta& theta, const EpsilonSpec& eps,
                               const ComputationSet& ref);
/// C<=theta(+/-)eps,ref: as filter_slow_ref with a two-sided band.
ComputationSet filter_pm_ref(const ComputationSet& c, const Theta& theta, const EpsilonSpec& eps,
                             const ComputationSet& ref);

}  // namespace markt
