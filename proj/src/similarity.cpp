#include "markt/similarity.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace markt {

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

namespace {

SideData side_data(const Lts& process, const CanonicalTest& t, const CheckOptions& options) {
  SideData d;
  d.invisible_moves = process.has_invisible_edges();
  if (options.max_len)
    d.max_len = std::max(*options.max_len, t.length());
  else
    d.max_len = t.length() + (d.invisible_moves ? options.tau_budget : 0);
  d.successful = successful_computations(process, t, d.max_len, options.cap);
  d.theta = theta_canonical(d.successful.computations);
  return d;
}

}  // namespace

Comparison::Comparison(Lts left, Lts right, Suite suite, CheckOptions options)
    : left_(std::move(left)), right_(std::move(right)), suite_(std::move(suite)), options_(options) {
  left_data_.resize(suite_.size());
  right_data_.resize(suite_.size());
  detail::for_each_index(suite_.size(), options_.execution, [&](std::size_t i) {
    left_data_[i] = side_data(left_, suite_[i].test, options_);
    right_data_[i] = side_data(right_, suite_[i].test, options_);
  });
  if (left_.has_invisible_edges() || right_.has_invisible_edges()) {
    warnings_.push_back(
        "tau moves present: successful computations explored up to " +
        (options_.max_len ? std::to_string(*options_.max_len) + " steps"
                          : "|T| + " + std::to_string(options_.tau_budget) + " steps") +
        "; verdicts are complete only for tau-free processes");
  }
}

// ---------------------------------------------------------------------------
// Per-test evaluation
// ---------------------------------------------------------------------------

namespace {

enum class Rel { mt_equiv, slow_simple, slow, fast, temporal, temporal_pm, prob, unified };

// Successful computations of one length on one side.
struct Group {
  std::vector<const std::vector<Rational>*> times;
  std::vector<Rational> probs;
};

std::map<std::size_t, Group> group_by_length(const SideData& d) {
  std::map<std::size_t, Group> out;
  for (const auto& c : d.successful.computations) {
    auto& g = out[c.length()];
    g.times.push_back(&c.times());
    g.probs.push_back(c.probability());
  }
  return out;
}

struct Failure {
  Theta theta;
  Rational left;
  Rational right;
};

struct TestOutcome {
  bool holds = true;
  std::optional<Failure> failure;
  Rational max_diff = 0;
};

// Membership of each computation in C<=theta (fit) and, for the first
// relaxation of slowness, in C<=theta+eps (fit_eps, right side only).
struct Membership {
  std::vector<char> left_fit;
  std::vector<char> right_fit;
  std::vector<char> right_fit_eps;

  friend auto operator<=>(const Membership&, const Membership&) = default;
};

class PairEval {
 public:
  PairEval(const SideData& left, const SideData& right, Rel rel, const EpsilonSpec& eps, const Rational& nu)
      : left_(left), right_(right), rel_(rel), eps_(eps), nu_(nu),
        left_groups_(group_by_length(left)), right_groups_(group_by_length(right)) {}

  // Bounds drawn from the canonical sets of both sides.
  TestOutcome canonical() const {
    std::vector<Theta> thetas;
    for (const auto& e : left_.theta.entries) thetas.push_back(e.theta);
    for (const auto& e : right_.theta.entries) thetas.push_back(e.theta);
    std::sort(thetas.begin(), thetas.end(), [](const Theta& a, const Theta& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

    TestOutcome out;
    for (const auto& theta : thetas) {
      const Group& lg = group(left_groups_, theta.size());
      const Group& rg = group(right_groups_, theta.size());
      Membership m;
      for (auto* t : lg.times) m.left_fit.push_back(within(*t, theta, false));
      for (auto* t : rg.times) {
        m.right_fit.push_back(within(*t, theta, false));
        m.right_fit_eps.push_back(within(*t, theta, true));
      }
      if (record(out, theta, evaluate(lg, rg, m)) && rel_ != Rel::prob) return out;
    }
    return out;
  }

  // Every bound sequence, up to equivalence: per step the verdict can only
  // change where theta[i] crosses a stepwise time (or a time minus eps[i]),
  // so one representative per interval between those breakpoints suffices.
  TestOutcome grid() const {
    std::set<std::size_t> lengths;
    for (const auto& [l, _] : left_groups_) lengths.insert(l);
    for (const auto& [l, _] : right_groups_) lengths.insert(l);

    TestOutcome out;
    for (std::size_t length : lengths) {
      if (length == 0) continue;
      const Group& lg = group(left_groups_, length);
      const Group& rg = group(right_groups_, length);

      struct Node {
        Membership m;
        Theta prefix;
      };
      std::vector<Node> level{{{std::vector<char>(lg.times.size(), 1), std::vector<char>(rg.times.size(), 1),
                                std::vector<char>(rg.times.size(), 1)},
                               {}}};
      for (std::size_t step = 0; step < length; ++step) {
        auto reps = representatives(lg, rg, step);
        std::vector<Node> next;
        std::set<Membership> seen;
        for (const auto& node : level) {
          for (const auto& v : reps) {
            Node child{node.m, node.prefix};
            child.prefix.push_back(v);
            for (std::size_t j = 0; j < lg.times.size(); ++j)
              child.m.left_fit[j] = child.m.left_fit[j] && (*lg.times[j])[step] <= v;
            for (std::size_t k = 0; k < rg.times.size(); ++k) {
              child.m.right_fit[k] = child.m.right_fit[k] && (*rg.times[k])[step] <= v;
              child.m.right_fit_eps[k] = child.m.right_fit_eps[k] && (*rg.times[k])[step] <= v + eps_.at(step);
            }
            // Equal membership means equal subtrees from here on.
            if (seen.insert(child.m).second) next.push_back(std::move(child));
          }
        }
        level = std::move(next);
      }
      for (const auto& leaf : level)
        if (record(out, leaf.prefix, evaluate(lg, rg, leaf.m)) && rel_ != Rel::prob) return out;
    }
    return out;
  }

 private:
  static const Group& group(const std::map<std::size_t, Group>& groups, std::size_t length) {
    static const Group empty;
    auto it = groups.find(length);
    return it == groups.end() ? empty : it->second;
  }

  bool within(const std::vector<Rational>& times, const Theta& theta, bool shifted) const {
    if (times.size() > theta.size()) return false;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (shifted ? times[i] > theta[i] + eps_.at(i) : times[i] > theta[i]) return false;
    }
    return true;
  }

  std::vector<Rational> representatives(const Group& lg, const Group& rg, std::size_t step) const {
    std::vector<Rational> points;
    for (auto* t : lg.times) points.push_back((*t)[step]);
    for (auto* t : rg.times) {
      points.push_back((*t)[step]);
      if (rel_ == Rel::slow_simple) {
        Rational shifted = (*t)[step] - eps_.at(step);
        if (shifted > 0) points.push_back(shifted);
      }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Rational> reps;
    if (points.empty()) return {Rational(1)};
    reps.push_back(points.front() / 2);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) reps.push_back((points[i] + points[i + 1]) / 2);
    reps.push_back(points.back());
    return reps;
  }

  Band band() const { return rel_ == Rel::temporal_pm || rel_ == Rel::unified ? Band::two_sided : Band::one_sided; }

  // Sum over `self` of members that fit, or that track a fitting member of
  // `other` within the band.
  Rational admitted(const Group& self, const std::vector<char>& self_fit, const Group& other,
                    const std::vector<char>& other_fit) const {
    Rational sum = 0;
    for (std::size_t j = 0; j < self.times.size(); ++j) {
      bool in = self_fit[j];
      for (std::size_t k = 0; !in && k < other.times.size(); ++k)
        in = other_fit[k] && tracks(*self.times[j], *other.times[k], eps_, band());
      if (in) sum += self.probs[j];
    }
    return sum;
  }

  static Rational plain(const Group& g, const std::vector<char>& fit) {
    Rational sum = 0;
    for (std::size_t j = 0; j < g.probs.size(); ++j)
      if (fit[j]) sum += g.probs[j];
    return sum;
  }

  std::pair<Rational, Rational> evaluate(const Group& lg, const Group& rg, const Membership& m) const {
    switch (rel_) {
      case Rel::mt_equiv:
      case Rel::prob:
        return {plain(lg, m.left_fit), plain(rg, m.right_fit)};
      case Rel::slow_simple:
        return {plain(lg, m.left_fit), plain(rg, m.right_fit_eps)};
      case Rel::slow:
        return {plain(lg, m.left_fit), admitted(rg, m.right_fit, lg, m.left_fit)};
      case Rel::fast:
        return {admitted(lg, m.left_fit, rg, m.right_fit), plain(rg, m.right_fit)};
      case Rel::temporal:
      case Rel::temporal_pm:
      case Rel::unified:
        return {admitted(lg, m.left_fit, rg, m.right_fit), admitted(rg, m.right_fit, lg, m.left_fit)};
    }
    return {};
  }

  // Returns true when this bound violates the relation.
  bool record(TestOutcome& out, const Theta& theta, const std::pair<Rational, Rational>& probs) const {
    Rational diff = abs(probs.first - probs.second);
    if (diff > out.max_diff) out.max_diff = diff;
    bool ok = (rel_ == Rel::prob || rel_ == Rel::unified) ? diff <= nu_ : diff == 0;
    if (!ok && out.holds) {
      out.holds = false;
      out.failure = Failure{theta, probs.first, probs.second};
    }
    return !ok;
  }

  const SideData& left_;
  const SideData& right_;
  Rel rel_;
  EpsilonSpec eps_;
  Rational nu_;
  std::map<std::size_t, Group> left_groups_;
  std::map<std::size_t, Group> right_groups_;
};

SimilarityVerdict base_verdict(const Comparison& cmp) {
  SimilarityVerdict v;
  v.warnings = cmp.warnings();
  return v;
}

// Same test on both sides; `use_grid` selects all bounds instead of the
// canonical ones.
SimilarityVerdict per_test_check(const Comparison& cmp, Rel rel, const EpsilonSpec& eps, const Rational& nu,
                                 bool use_grid) {
  const std::size_t n = cmp.suite().size();
  std::vector<TestOutcome> outcomes(n);
  detail::for_each_index(n, cmp.options().execution, [&](std::size_t i) {
    PairEval eval(cmp.left_data(i), cmp.right_data(i), rel, eps, nu);
    outcomes[i] = use_grid ? eval.grid() : eval.canonical();
  });

  SimilarityVerdict v = base_verdict(cmp);
  Rational max_diff = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = outcomes[i];
    max_diff = std::max(max_diff, o.max_diff);
    if (o.holds) continue;
    v.holds = false;
    v.witnesses.push_back({cmp.suite()[i].name, std::nullopt, o.failure->theta, o.failure->left, o.failure->right});
  }
  if (rel == Rel::prob) v.minimal_nu = max_diff;
  return v;
}

struct MatchOutcome {
  std::optional<std::size_t> matched;
  std::optional<Witness> witness;
  bool length_mismatch_skipped = false;
};

// For every test T pick the first T' meeting the floors whose comparison
// `accepts` holds.
template <class Accept>
SimilarityVerdict per_test_match(const Comparison& cmp, const Rational& p, const Rational& r, bool same_length,
                                 Accept&& accepts) {
  const auto& suite = cmp.suite();
  const std::size_t n = suite.size();
  std::vector<MatchOutcome> outcomes(n);
  detail::for_each_index(n, cmp.options().execution, [&](std::size_t i) {
    auto& out = outcomes[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& t = suite[i].test;
      const auto& tp = suite[j].test;
      if (precision(t, tp) < p || recall(t, tp) < r) continue;
      if (same_length && t.length() != tp.length()) {
        out.length_mismatch_skipped = true;
        continue;
      }
      auto [ok, witness] = accepts(i, j);
      if (ok) {
        out.matched = j;
        return;
      }
      if (j == i) out.witness = witness;
    }
  });

  SimilarityVerdict v = base_verdict(cmp);
  bool skipped = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = outcomes[i];
    skipped = skipped || o.length_mismatch_skipped;
    if (o.matched) {
      v.matches.emplace_back(suite[i].name, suite[*o.matched].name);
      continue;
    }
    v.holds = false;
    // T itself always meets the floors, so its attempt is the witness.
    Witness w = o.witness.value_or(Witness{});
    w.test = suite[i].name;
    w.matched = std::nullopt;
    v.witnesses.push_back(std::move(w));
  }
  if (skipped)
    v.warnings.push_back("timed comparison requires |T| = |T'|; candidate tests of other lengths were skipped");
  return v;
}

Rel to_rel(TimeRelation r, bool& use_grid) {
  use_grid = true;
  switch (r) {
    case TimeRelation::slow_simple: return Rel::slow_simple;
    case TimeRelation::slow: return Rel::slow;
    case TimeRelation::fast: return Rel::fast;
    case TimeRelation::temporal: return Rel::temporal;
    case TimeRelation::temporal_pm: return Rel::temporal_pm;
  }
  return Rel::slow;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public checks
// ---------------------------------------------------------------------------

SimilarityVerdict check_mt_equiv(const Comparison& cmp) {
  return per_test_check(cmp, Rel::mt_equiv, EpsilonSpec{}, Rational(0), false);
}

SimilarityVerdict check_time_relation(const Comparison& cmp, TimeRelation relation, const EpsilonSpec& eps) {
  bool use_grid = true;
  Rel rel = to_rel(relation, use_grid);
  return per_test_check(cmp, rel, eps, Rational(0), use_grid);
}

SimilarityVerdict check_slow_simple(const Comparison& cmp, const EpsilonSpec& eps) {
  return check_time_relation(cmp, TimeRelation::slow_simple, eps);
}

SimilarityVerdict check_slow(const Comparison& cmp, const EpsilonSpec& eps) {
  return check_time_relation(cmp, TimeRelation::slow, eps);
}

SimilarityVerdict check_fast(const Comparison& cmp, const EpsilonSpec& eps) {
  return check_time_relation(cmp, TimeRelation::fast, eps);
}

SimilarityVerdict check_temporal(const Comparison& cmp, const EpsilonSpec& eps, bool two_sided) {
  return check_time_relation(cmp, two_sided ? TimeRelation::temporal_pm : TimeRelation::temporal, eps);
}

SimilarityVerdict check_prob(const Comparison& cmp, const Rational& nu) {
  if (nu < 0) throw std::invalid_argument("probability threshold must be nonnegative");
  return per_test_check(cmp, Rel::prob, EpsilonSpec{}, nu, true);
}

SimilarityVerdict check_behavioral(const Comparison& cmp, const Rational& p, const Rational& r, bool timed) {
  if (p < 0 || p > 1 || r < 0 || r > 1) throw std::invalid_argument("precision and recall floors must lie in [0,1]");
  if (timed) {
    return per_test_match(cmp, p, r, true, [&](std::size_t i, std::size_t j) {
      PairEval eval(cmp.left_data(i), cmp.right_data(j), Rel::mt_equiv, EpsilonSpec{}, Rational(0));
      TestOutcome o = eval.canonical();
      Witness w;
      if (o.failure) w = {"", std::nullopt, o.failure->theta, o.failure->left, o.failure->right};
      return std::pair{o.holds, w};
    });
  }
  return per_test_match(cmp, p, r, false, [&](std::size_t i, std::size_t j) {
    Rational left = prob_set(cmp.left_data(i).successful.computations);
    Rational right = prob_set(cmp.right_data(j).successful.computations);
    return std::pair{left == right, Witness{"", std::nullopt, {}, left, right}};
  });
}

SimilarityVerdict check_unified(const Comparison& cmp, const SimilarityParams& params) {
  const auto& [p, r, eps, nu] = params;
  if (p < 0 || p > 1 || r < 0 || r > 1) throw std::invalid_argument("precision and recall floors must lie in [0,1]");
  if (nu < 0) throw std::invalid_argument("probability threshold must be nonnegative");
  return per_test_match(cmp, p, r, true, [&](std::size_t i, std::size_t j) {
    PairEval eval(cmp.left_data(i), cmp.right_data(j), Rel::unified, eps, nu);
    TestOutcome o = eval.canonical();
    Witness w;
    if (o.failure) w = {"", std::nullopt, o.failure->theta, o.failure->left, o.failure->right};
    return std::pair{o.holds, w};
  });
}

std::optional<Rational> min_epsilon(const Comparison& cmp, TimeRelation relation) {
  std::set<Rational> candidates{Rational(0)};
  for (std::size_t i = 0; i < cmp.suite().size(); ++i) {
    for (const auto& a : cmp.left_data(i).successful.computations)
      for (const auto& b : cmp.right_data(i).successful.computations) {
        if (a.length() != b.length()) continue;
        for (std::size_t k = 0; k < a.length(); ++k) candidates.insert(abs(a.times()[k] - b.times()[k]));
      }
  }
  for (const auto& eps : candidates)
    if (check_time_relation(cmp, relation, EpsilonSpec(eps)).holds) return eps;
  return std::nullopt;
}

Rational compose_epsilon(const Rational& eps1, const Rational& eps2) {
  if (eps1 < 0 || eps2 < 0) throw std::invalid_argument("negative tolerance");
  return eps1 + eps2;
}

EpsilonSpec compose_epsilon(const EpsilonSpec& eps1, const EpsilonSpec& eps2) {
  if (eps1.is_scalar() && eps2.is_scalar()) return EpsilonSpec(eps1.at(0) + eps2.at(0));
  std::size_t n = std::max(eps1.values().size(), eps2.values().size());
  std::vector<Rational> sum;
  for (std::size_t i = 0; i < n; ++i) sum.push_back(eps1.at(i) + eps2.at(i));
  return EpsilonSpec(std::move(sum));
}

}  // namespace markt
