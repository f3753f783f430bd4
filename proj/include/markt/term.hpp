#pragma once

#include "markt/rational.hpp"

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <variant>

namespace markt {

/// Name of an action. The reserved name "tau" is the invisible action.
class ActionName {
 public:
  static constexpr const char* kTau = "tau";

  ActionName() = default;
  explicit ActionName(std::string name);

  const std::string& str() const { return name_; }
  bool visible() const { return name_ != kTau; }

  friend auto operator<=>(const ActionName&, const ActionName&) = default;
  friend bool operator==(const ActionName&, const ActionName&) = default;

 private:
  std::string name_;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Process term AST: nil, rated prefix, binary choice, constant.
class Term {
 public:
  struct Nil {};
  struct Prefix {
    ActionName action;
    Rational rate;
    TermPtr next;
  };
  struct Choice {
    TermPtr left;
    TermPtr right;
  };
  struct Const {
    std::string name;
  };
  using Node = std::variant<Nil, Prefix, Choice, Const>;

  explicit Term(Node node) : node_(std::move(node)) {}

  const Node& node() const { return node_; }

  template <class T>
  const T* as() const { return std::get_if<T>(&node_); }

 private:
  Node node_;
};

TermPtr make_nil();
TermPtr make_prefix(ActionName action, Rational rate, TermPtr next);
TermPtr make_choice(TermPtr left, TermPtr right);
TermPtr make_const(std::string name);

/// Structural equality; constants compare by name, never unfolded.
bool structurally_equal(const Term& a, const Term& b);

/// Prints a term in the input DSL. The output parses back to a
/// structurally equal term, so it doubles as a canonical key.
std::string to_string(const Term& t);

/// Constant definitions `A = P;`.
class DefEnv {
 public:
  void define(const std::string& name, TermPtr body);
  bool contains(const std::string& name) const { return bindings_.count(name) != 0; }
  const TermPtr& lookup(const std::string& name) const;
  const std::map<std::string, TermPtr>& bindings() const { return bindings_; }

 private:
  std::map<std::string, TermPtr> bindings_;
};

/// Checks that every constant reachable from the environment (and from
/// `term`, if given) is bound, every rate is positive, and no cycle of
/// constants passes only through unguarded positions.
/// Throws ValidationError.
void validate(const DefEnv& env, const Term* term = nullptr);

/// Replaces an outermost constant by its body until the head is not a
/// constant. Inner constants stay folded.
TermPtr unfold_head(TermPtr t, const DefEnv& env);

}  // namespace markt
