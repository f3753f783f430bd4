#pragma once

#include "markt/term.hpp"

#include <set>
#include <string>
#include <vector>

namespace markt {

/// One level of a canonical reactive test: the action that continues
/// towards success and the actions that lead to failure in one step.
/// All branches carry weight 1.
struct TestStep {
  ActionName success_action;
  std::set<ActionName> fail_actions;

  friend bool operator==(const TestStep&, const TestStep&) = default;
};

class CanonicalTest {
 public:
  /// Throws ValidationError if the steps violate the canonical shape.
  explicit CanonicalTest(std::vector<TestStep> steps);

  const std::vector<TestStep>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }

  /// Success trace, one action per step.
  std::vector<ActionName> success_trace() const;

  friend bool operator==(const CanonicalTest&, const CanonicalTest&) = default;

 private:
  std::vector<TestStep> steps_;
};

/// Renders in the test DSL, e.g. "<a1>.(<a2>.s + <c>.f) + <b>.f".
std::string to_string(const CanonicalTest& t);

struct NamedTest {
  std::string name;
  CanonicalTest test;
};

using Suite = std::vector<NamedTest>;

}  // namespace markt
