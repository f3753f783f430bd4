#include "markt/term.hpp"

#include "markt/error.hpp"

#include <set>
#include <stdexcept>
#include <vector>

namespace markt {

ActionName::ActionName(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw std::invalid_argument("empty action name");
}

TermPtr make_nil() {
  static const TermPtr nil = std::make_shared<const Term>(Term::Nil{});
  return nil;
}

TermPtr make_prefix(ActionName action, Rational rate, TermPtr next) {
  return std::make_shared<const Term>(Term::Prefix{std::move(action), std::move(rate), std::move(next)});
}

TermPtr make_choice(TermPtr left, TermPtr right) {
  return std::make_shared<const Term>(Term::Choice{std::move(left), std::move(right)});
}

TermPtr make_const(std::string name) { return std::make_shared<const Term>(Term::Const{std::move(name)}); }

bool structurally_equal(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.node().index() != b.node().index()) return false;
  if (a.as<Term::Nil>()) return true;
  if (auto* pa = a.as<Term::Prefix>()) {
    auto* pb = b.as<Term::Prefix>();
    return pa->action == pb->action && pa->rate == pb->rate && structurally_equal(*pa->next, *pb->next);
  }
  if (auto* ca = a.as<Term::Choice>()) {
    auto* cb = b.as<Term::Choice>();
    return structurally_equal(*ca->left, *cb->left) && structurally_equal(*ca->right, *cb->right);
  }
  return a.as<Term::Const>()->name == b.as<Term::Const>()->name;
}

namespace {

void print(const Term& t, std::string& out) {
  if (t.as<Term::Nil>()) {
    out += '0';
  } else if (auto* p = t.as<Term::Prefix>()) {
    out += '<';
    out += p->action.str();
    out += ',';
    out += p->rate.get_str();
    out += ">.";
    bool paren = p->next->as<Term::Choice>() != nullptr;
    if (paren) out += '(';
    print(*p->next, out);
    if (paren) out += ')';
  } else if (auto* c = t.as<Term::Choice>()) {
    // "+" is right-associative, so only a choice on the left needs parentheses.
    bool paren = c->left->as<Term::Choice>() != nullptr;
    if (paren) out += '(';
    print(*c->left, out);
    if (paren) out += ')';
    out += " + ";
    print(*c->right, out);
  } else {
    out += t.as<Term::Const>()->name;
  }
}

// Constants occurring outside any prefix.
void unguarded_constants(const Term& t, std::set<std::string>& out) {
  if (auto* c = t.as<Term::Choice>()) {
    unguarded_constants(*c->left, out);
    unguarded_constants(*c->right, out);
  } else if (auto* k = t.as<Term::Const>()) {
    out.insert(k->name);
  }
}

void check_closed(const Term& t, const DefEnv& env, const std::string& where) {
  if (auto* p = t.as<Term::Prefix>()) {
    if (p->rate <= 0) throw ValidationError("non-positive rate " + p->rate.get_str() + where);
    check_closed(*p->next, env, where);
  } else if (auto* c = t.as<Term::Choice>()) {
    check_closed(*c->left, env, where);
    check_closed(*c->right, env, where);
  } else if (auto* k = t.as<Term::Const>()) {
    if (!env.contains(k->name)) throw ValidationError("unbound constant '" + k->name + "'" + where);
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

void DefEnv::define(const std::string& name, TermPtr body) {
  if (!bindings_.emplace(name, std::move(body)).second)
    throw ValidationError("constant '" + name + "' defined twice");
}

const TermPtr& DefEnv::lookup(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) throw ValidationError("unbound constant '" + name + "'");
  return it->second;
}

void validate(const DefEnv& env, const Term* term) {
  for (const auto& [name, body] : env.bindings()) check_closed(*body, env, " in definition of '" + name + "'");
  if (term) check_closed(*term, env, "");

  // Unguarded dependency graph; a cycle means some constant can be unfolded
  // forever without passing a prefix.
  std::map<std::string, std::set<std::string>> deps;
  for (const auto& [name, body] : env.bindings()) unguarded_constants(*body, deps[name]);

  enum class Mark { none, active, done };
  std::map<std::string, Mark> mark;
  std::vector<std::string> path;
  auto visit = [&](auto&& self, const std::string& n) -> void {
    auto& m = mark[n];
    if (m == Mark::done) return;
    if (m == Mark::active) {
      std::string cycle;
      bool on = false;
      for (const auto& p : path) {
        if (p == n) on = true;
        if (on) cycle += p + " -> ";
      }
      throw ValidationError("unguarded recursion: " + cycle + n);
    }
    m = Mark::active;
    path.push_back(n);
    for (const auto& d : deps[n]) self(self, d);
    path.pop_back();
    mark[n] = Mark::done;
  };
  for (const auto& [name, _] : env.bindings()) visit(visit, name);
}

TermPtr unfold_head(TermPtr t, const DefEnv& env) {
  // Guardedness makes this terminate; the bound catches unvalidated input.
  for (std::size_t i = 0; i <= env.bindings().size(); ++i) {
    auto* k = t->as<Term::Const>();
    if (!k) return t;
    t = env.lookup(k->name);
  }
  throw ValidationError("unguarded recursion while unfolding constants");
}

}  // namespace markt
