#include "markt/interaction.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <stdexcept>

#include "markt/error.hpp"

namespace markt {

Rational weight(const CanonicalTest& t, TestPosition pos, const ActionName& a) {
  if (pos.kind != TestPosition::Kind::step || pos.step >= t.length()) return 0;
  const TestStep& st = t.steps()[pos.step];
  Rational w = 0;
  if (st.success_action == a) w += 1;
  if (st.fail_actions.count(a)) w += 1;
  return w;
}

namespace {

std::string position_label(TestPosition p) {
  switch (p.kind) {
    case TestPosition::Kind::success: return "s";
    case TestPosition::Kind::failure: return "f";
    case TestPosition::Kind::step: break;
  }
  return "T" + std::to_string(p.step + 1);
}

}  // namespace

InteractionLts interaction_lts(const Lts& process, const CanonicalTest& t, std::size_t cap) {
  InteractionLts out;
  std::map<Configuration, StateId> index;
  std::deque<StateId> frontier;

  auto intern = [&](Configuration c) {
    auto [it, inserted] = index.try_emplace(c, out.configurations.size());
    if (inserted) {
      if (out.configurations.size() >= cap) throw CapExceeded(cap);
      out.system.add_state("(" + process.label(c.process) + ") || " + position_label(c.test));
      out.configurations.push_back(c);
      frontier.push_back(it->second);
    }
    return it->second;
  };

  out.system.set_initial(intern({process.initial(), TestPosition::at(0)}));
  while (!frontier.empty()) {
    StateId s = frontier.front();
    frontier.pop_front();
    const Configuration conf = out.configurations[s];
    if (conf.test.kind != TestPosition::Kind::step) continue;  // absorbing
    const TestStep& step = t.steps()[conf.test.step];
    for (EdgeId id : process.outgoing(conf.process)) {
      const Edge& e = process.edge(id);
      if (!e.action.visible()) {
        StateId target = intern({e.target, conf.test});
        out.system.add_edge({s, e.action, e.rate, e.derivation + "/tau", target});
        continue;
      }
      Rational w = weight(t, conf.test, e.action);
      if (w == 0) continue;  // blocked by the test
      Rational r = e.rate * Rational(1) / w;
      if (e.action == step.success_action) {
        TestPosition next =
            conf.test.step + 1 == t.length() ? TestPosition::success() : TestPosition::at(conf.test.step + 1);
        StateId target = intern({e.target, next});
        out.system.add_edge({s, e.action, r, e.derivation + "/s", target});
      }
      if (step.fail_actions.count(e.action)) {
        StateId target = intern({e.target, TestPosition::failure()});
        out.system.add_edge({s, e.action, r, e.derivation + "/f", target});
      }
    }
  }
  return out;
}

SuccessfulComputations successful_computations(const Lts& process, const CanonicalTest& t, std::size_t max_len,
                                               std::size_t cap) {
  SuccessfulComputations out{interaction_lts(process, t, cap), {}};
  const Lts& sys = out.interaction.system;
  const auto& confs = out.interaction.configurations;
  std::vector<Computation> level{Computation(sys.initial())};
  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<Computation> next;
    for (const auto& c : level) {
      for (EdgeId e : sys.outgoing(c.end())) {
        Computation ext = c.extended(sys, e);
        if (confs[ext.end()].successful())
          out.computations.push_back(std::move(ext));
        else if (!sys.outgoing(ext.end()).empty())
          next.push_back(std::move(ext));
      }
    }
    level = std::move(next);
  }
  return out;
}

std::set<ActionName> enabled(const CanonicalTest& t, std::size_t i, BranchKind kind) {
  if (i == 0) throw std::invalid_argument("enabled: steps are numbered from 1");
  if (i > t.length()) return {};
  const TestStep& st = t.steps()[i - 1];
  if (kind == BranchKind::success) return {st.success_action};
  return st.fail_actions;
}

namespace {

// Fraction of the enabled actions of `base` at step i that `other` enables
// in the same role.
Rational step_overlap(const CanonicalTest& base, const CanonicalTest& other, std::size_t i) {
  auto s = enabled(base, i, BranchKind::success);
  auto f = enabled(base, i, BranchKind::failure);
  auto s2 = enabled(other, i, BranchKind::success);
  auto f2 = enabled(other, i, BranchKind::failure);
  std::set<ActionName> common;
  std::set_intersection(s.begin(), s.end(), s2.begin(), s2.end(), std::inserter(common, common.end()));
  std::set_intersection(f.begin(), f.end(), f2.begin(), f2.end(), std::inserter(common, common.end()));
  return ratio(static_cast<long>(common.size()), static_cast<long>(s.size() + f.size()));
}

Rational average_overlap(const CanonicalTest& base, const CanonicalTest& other) {
  Rational sum = 0;
  for (std::size_t i = 1; i <= base.length(); ++i) sum += step_overlap(base, other, i);
  return sum / static_cast<long>(base.length());
}

}  // namespace

Rational precision(const CanonicalTest& t, const CanonicalTest& t_prime) { return average_overlap(t_prime, t); }

Rational recall(const CanonicalTest& t, const CanonicalTest& t_prime) { return average_overlap(t, t_prime); }

bool Bound::admits(const Rational& v) const {
  switch (kind) {
    case Kind::eq: return v == value;
    case Kind::lt: return v < value;
    case Kind::le: return v <= value;
    case Kind::ge: return v >= value;
  }
  return false;
}

PrecRecBounds compose_prec_rec(const Rational& prec12, const Rational& rec12, const Rational& prec23,
                               const Rational& rec23) {
  for (const Rational* v : {&prec12, &rec12, &prec23, &rec23})
    if (*v < 0 || *v > 1) throw std::invalid_argument("compose_prec_rec: inputs must lie in [0,1]");

  // z = prec12, w = rec12, x = prec23, y = rec23; `one` is the constant 1.
  enum Src { one, z, w, x, y };
  using K = Bound::Kind;
  struct Cell {
    K kind;
    Src src;
  };
  struct Row {
    Cell prec, rec;
  };
  // Indexed by (prec12==1, rec12==1, prec23==1, rec23==1) read as a binary number.
  static constexpr std::array<Row, 16> table{{
      {{K::le, one}, {K::le, one}},  // z w x y
      {{K::lt, one}, {K::ge, w}},    // z w x 1
      {{K::le, one}, {K::le, w}},    // z w 1 y
      {{K::eq, z}, {K::eq, w}},      // z w 1 1
      {{K::le, x}, {K::le, one}},    // z 1 x y
      {{K::lt, x}, {K::eq, one}},    // z 1 x 1
      {{K::le, one}, {K::le, one}},  // z 1 1 y
      {{K::eq, z}, {K::eq, one}},    // z 1 1 1
      {{K::ge, x}, {K::le, one}},    // 1 w x y
      {{K::ge, x}, {K::ge, w}},      // 1 w x 1
      {{K::eq, one}, {K::lt, w}},    // 1 w 1 y
      {{K::eq, one}, {K::eq, w}},    // 1 w 1 1
      {{K::eq, x}, {K::eq, y}},      // 1 1 x y
      {{K::eq, x}, {K::eq, one}},    // 1 1 x 1
      {{K::eq, one}, {K::eq, y}},    // 1 1 1 y
      {{K::eq, one}, {K::eq, one}},  // 1 1 1 1
  }};

  std::size_t row = (prec12 == 1 ? 8u : 0u) | (rec12 == 1 ? 4u : 0u) | (prec23 == 1 ? 2u : 0u) | (rec23 == 1 ? 1u : 0u);
  auto value = [&](Src s) -> Rational {
    switch (s) {
      case one: return 1;
      case z: return prec12;
      case w: return rec12;
      case x: return prec23;
      case y: return rec23;
    }
    return 0;
  };
  const Row& r = table[row];
  return {{r.prec.kind, value(r.prec.src)}, {r.rec.kind, value(r.rec.src)}};
}

}  // namespace markt
