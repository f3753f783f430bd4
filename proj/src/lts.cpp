#include "markt/lts.hpp"

#include "markt/error.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace markt {

StateId Lts::add_state(std::string label, TermPtr term) {
  labels_.push_back(std::move(label));
  terms_.push_back(std::move(term));
  out_.emplace_back();
  total_.emplace_back(0);
  return labels_.size() - 1;
}

EdgeId Lts::add_edge(Edge e) {
  total_[e.source] += e.rate;
  out_[e.source].push_back(edges_.size());
  edges_.push_back(std::move(e));
  return edges_.size() - 1;
}

bool Lts::has_invisible_edges() const {
  for (const auto& e : edges_)
    if (!e.action.visible()) return true;
  return false;
}

namespace {

struct Move {
  ActionName action;
  Rational rate;
  std::string derivation;
  TermPtr target;
};

// One move per proof tree of a transition out of `t`.
void moves(const TermPtr& t, const DefEnv& env, std::string& path, std::vector<Move>& out, std::size_t depth) {
  if (depth > env.bindings().size() + 1024) throw ValidationError("unguarded recursion during derivation");
  if (auto* p = t->as<Term::Prefix>()) {
    out.push_back({p->action, p->rate, path, p->next});
  } else if (auto* c = t->as<Term::Choice>()) {
    path.push_back('L');
    moves(c->left, env, path, out, depth + 1);
    path.back() = 'R';
    moves(c->right, env, path, out, depth + 1);
    path.pop_back();
  } else if (auto* k = t->as<Term::Const>()) {
    path.push_back('U');
    moves(env.lookup(k->name), env, path, out, depth + 1);
    path.pop_back();
  }
}

}  // namespace

Lts derive_lts(const TermPtr& term, const DefEnv& env, std::size_t cap) {
  Lts lts;
  std::unordered_map<std::string, StateId> index;
  std::deque<StateId> frontier;

  auto intern = [&](TermPtr t) {
    t = unfold_head(std::move(t), env);
    auto key = to_string(*t);
    auto [it, inserted] = index.try_emplace(key, lts.num_states());
    if (inserted) {
      if (lts.num_states() >= cap) throw CapExceeded(cap);
      lts.add_state(key, std::move(t));
      frontier.push_back(it->second);
    }
    return it->second;
  };

  lts.set_initial(intern(term));
  while (!frontier.empty()) {
    StateId s = frontier.front();
    frontier.pop_front();
    std::vector<Move> ms;
    std::string path;
    moves(lts.term(s), env, path, ms, 0);
    for (auto& m : ms) {
      StateId target = intern(m.target);
      lts.add_edge({s, std::move(m.action), std::move(m.rate), std::move(m.derivation), target});
    }
  }
  return lts;
}

Rational rate(const Lts& lts, StateId state, const ActionName& a, const std::optional<std::set<StateId>>& targets) {
  Rational sum = 0;
  for (EdgeId id : lts.outgoing(state)) {
    const Edge& e = lts.edge(id);
    if (e.action != a) continue;
    if (targets && !targets->count(e.target)) continue;
    sum += e.rate;
  }
  return sum;
}

Rational rate_total(const Lts& lts, StateId state) {
  std::set<ActionName> names;
  for (EdgeId id : lts.outgoing(state)) names.insert(lts.edge(id).action);
  Rational sum = 0;
  for (const auto& a : names) sum += rate(lts, state, a);
  return sum;
}

Ctmc to_ctmc(const Lts& lts) {
  std::map<std::pair<StateId, StateId>, Rational> collapsed;
  for (const auto& e : lts.edges()) collapsed[{e.source, e.target}] += e.rate;
  Ctmc ctmc;
  ctmc.num_states = lts.num_states();
  ctmc.initial = lts.initial();
  for (auto& [pair, r] : collapsed) ctmc.transitions.push_back({pair.first, pair.second, r});
  return ctmc;
}

}  // namespace markt
