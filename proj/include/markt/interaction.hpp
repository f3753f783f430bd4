#pragma once

#include "markt/canonical_test.hpp"
#include "markt/computation.hpp"
#include "markt/lts.hpp"

#include <compare>
#include <set>
#include <vector>

namespace markt {

/// Position inside a canonical test: a step (0-based) or one of the two
/// absorbing outcomes.
struct TestPosition {
  enum class Kind { step, success, failure };
  Kind kind = Kind::step;
  std::size_t step = 0;

  static TestPosition at(std::size_t i) { return {Kind::step, i}; }
  static TestPosition success() { return {Kind::success, 0}; }
  static TestPosition failure() { return {Kind::failure, 0}; }

  friend auto operator<=>(const TestPosition&, const TestPosition&) = default;
};

/// Sum of weights of the test's `a`-branches at `pos` (0 or 1 here).
Rational weight(const CanonicalTest& t, TestPosition pos, const ActionName& a);

struct Configuration {
  StateId process;
  TestPosition test;

  bool successful() const { return test.kind == TestPosition::Kind::success; }
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// P || T. Tau moves of P are autonomous; visible moves synchronise with a
/// test branch of the same name at rate lambda * w / weight(T, a).
/// Success and failure configurations have no outgoing edges.
struct InteractionLts {
  Lts system;
  std::vector<Configuration> configurations;  // indexed by StateId of `system`
};

InteractionLts interaction_lts(const Lts& process, const CanonicalTest& t,
                               std::size_t cap = kDefaultStateCap);

/// Computations of P || T that end in a successful configuration, with at
/// most `max_len` steps. They stop at the first success, so the set is
/// pairwise independent.
struct SuccessfulComputations {
  InteractionLts interaction;
  ComputationSet computations;
};

SuccessfulComputations successful_computations(const Lts& process, const CanonicalTest& t,
                                               std::size_t max_len,
                                               std::size_t cap = kDefaultStateCap);

enum class BranchKind { success, failure };

/// enabled(T, i, s) / enabled(T, i, f) for 1-based step i; empty past |T|.
std::set<ActionName> enabled(const CanonicalTest& t, std::size_t i, BranchKind kind);

Rational precision(const CanonicalTest& t, const CanonicalTest& t_prime);
Rational recall(const CanonicalTest& t, const CanonicalTest& t_prime);

/// Bound on an inferred precision or recall value.
struct Bound {
  enum class Kind { eq, lt, le, ge };
  Kind kind;
  Rational value;

  bool admits(const Rational& v) const;
  friend bool operator==(const Bound&, const Bound&) = default;
};

struct PrecRecBounds {
  Bound precision;
  Bound recall;
};

/// Inferred bounds on prec(T1,T3) and rec(T1,T3) from the values for
/// (T1,T2) and (T2,T3). The row is selected by which inputs equal 1.
/// Throws std::invalid_argument on inputs outside [0,1].
PrecRecBounds compose_prec_rec(const Rational& prec12, const Rational& rec12,
                               const Rational& prec23, const Rational& rec23);

}  // namespace markt
