#include "markt/error.hpp"
#include "markt/lts.hpp"
#include "markt/parser.hpp"
#include "support/helpers.hpp"
#include "support/random_terms.hpp"

#include <doctest.h>

using namespace markt;
using namespace markt::testsupport;

TEST_CASE("rationals parse exactly") {
  CHECK(parse_rational("3/8") == ratio(3, 8));
  CHECK(parse_rational("2.5") == ratio(5, 2));
  CHECK(parse_rational(".25") == ratio(1, 4));
  CHECK(parse_rational("-1/2", true) == ratio(-1, 2));
  CHECK_THROWS_AS(parse_rational("-1/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(to_fraction_string(Rational(2)) == "2/1");
  CHECK(to_string(Rational(2)) == "2");
  CHECK(parse_rational_list("3/8, 3/8") == std::vector<Rational>{ratio(3, 8), ratio(3, 8)});
}

TEST_CASE("process parsing") {
  DefEnv env;
  SUBCASE("single prefix") {
    auto t = parse_process("<a,1>.0", env);
    auto* p = t->as<Term::Prefix>();
    REQUIRE(p);
    CHECK(p->action.str() == "a");
    CHECK(p->rate == 1);
    CHECK(std::holds_alternative<Term::Nil>(p->next->node()));
  }
  SUBCASE("nested chain") {
    auto t = parse_process("<g,2>.<a,2>.0", env);
    auto* g = t->as<Term::Prefix>();
    REQUIRE(g);
    CHECK(g->rate == 2);
    CHECK(g->next->as<Term::Prefix>()->action.str() == "a");
  }
  SUBCASE("duplicate summands are kept") {
    auto t = parse_process("<a,1>.0 + <a,1>.0", env);
    auto* c = t->as<Term::Choice>();
    REQUIRE(c);
    CHECK(structurally_equal(*c->left, *c->right));
  }
  SUBCASE("plus is right-associative and prefix binds tighter") {
    auto t = parse_process("<a,1>.0 + <b,1>.0 + <c,1>.0", env);
    CHECK(std::holds_alternative<Term::Prefix>(t->as<Term::Choice>()->left->node()));
    CHECK(std::holds_alternative<Term::Choice>(t->as<Term::Choice>()->right->node()));
  }
  SUBCASE("decimal and fraction rates") {
    CHECK(parse_process("<a,0.5>.0", env)->as<Term::Prefix>()->rate == ratio(1, 2));
    CHECK(parse_process("<a,3/4>.0", env)->as<Term::Prefix>()->rate == ratio(3, 4));
  }
}

TEST_CASE("process parse errors") {
  DefEnv env;
  CHECK_THROWS_AS(parse_process("<a,1>.", env), ParseError);
  CHECK_THROWS_AS(parse_process("<a,0>.0", env), ParseError);
  CHECK_THROWS_AS(parse_process("<a,1>.X", env), ValidationError);
  CHECK_THROWS_AS(parse_process("<a,1> 0", env), ParseError);
  try {
    parse_process("<a,1>.0 +\n  <b,1>.", env);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position().line == 2);
  }
}

TEST_CASE("models and recursion") {
  auto m = parse_model("# loop\nA = <a,1>.B;\nB = <b,2>.A + <c,1>.0;\nmain = A;\n");
  Lts lts = derive_lts(m.main, m.env);
  CHECK(lts.num_states() == 3);
  CHECK(rate_total(lts, lts.initial()) == 1);

  CHECK_THROWS_AS(parse_model("A = B;\nB = A;\nmain = A;"), ValidationError);
  CHECK_THROWS_AS(parse_model("A = <a,1>.0;"), ValidationError);
  CHECK_THROWS_AS(parse_model("main = <a,1>.Z;"), ValidationError);
  CHECK_NOTHROW(parse_model("A = <a,1>.A + B;\nB = <b,1>.A;\nmain = A;"));
}

TEST_CASE("state cap") {
  // a counter that never returns to a known term needs a growing term, which
  // the calculus cannot express; a cap below the state count still trips.
  auto m = parse_model("main = <a,1>.<a,1>.<a,1>.<a,1>.0;");
  CHECK_THROWS_AS(derive_lts(m.main, m.env, 3), CapExceeded);
  CHECK_NOTHROW(derive_lts(m.main, m.env, 5));
}

TEST_CASE("test parsing") {
  SUBCASE("one step") {
    auto t = parse_test("<a>.s + <b>.f");
    REQUIRE(t.length() == 1);
    CHECK(t.steps()[0].success_action.str() == "a");
    CHECK(t.steps()[0].fail_actions == std::set<ActionName>{ActionName("b")});
  }
  SUBCASE("two steps") {
    auto t = parse_test("<a1>.<a2>.s + <b>.f");
    REQUIRE(t.length() == 2);
    CHECK(t.steps()[0].success_action.str() == "a1");
    CHECK(t.steps()[0].fail_actions.size() == 1);
    CHECK(t.steps()[1].success_action.str() == "a2");
    CHECK(t.steps()[1].fail_actions.empty());
  }
  SUBCASE("nested failure branches") {
    auto t = parse_test("<a1>.(<a2>.s + <c>.f) + <b>.f");
    CHECK(t.steps()[1].fail_actions == std::set<ActionName>{ActionName("c")});
    CHECK(to_string(t) == "<a1>.(<a2>.s + <c>.f) + <b>.f");
    CHECK(parse_test(to_string(t)) == t);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_test("<tau>.s"), ValidationError);
    CHECK_THROWS_AS(parse_test("<a>.s + <a>.f"), ValidationError);
    CHECK_THROWS_AS(parse_test("<a>.s + <b>.s"), ValidationError);
    CHECK_THROWS_AS(parse_test("<a>.f"), ValidationError);
    CHECK_THROWS(parse_test("s"));
    CHECK_THROWS_AS(parse_test("<a>.s +"), ParseError);
  }
}

TEST_CASE("derive_lts") {
  SUBCASE("nil") {
    Lts l = lts_of("0");
    CHECK(l.num_states() == 1);
    CHECK(l.edges().empty());
  }
  SUBCASE("duplicate summands give parallel edges") {
    Lts l = lts_of("<a,1>.0 + <a,1>.0");
    CHECK(l.num_states() == 2);
    REQUIRE(l.edges().size() == 2);
    CHECK(l.edges()[0].target == l.edges()[1].target);
    CHECK(l.edges()[0].derivation != l.edges()[1].derivation);
  }
  SUBCASE("two-branch example") {
    Lts l = lts_of(swapped_pair_left("1", "2", "4"));
    CHECK(l.num_states() == 6);
    CHECK(l.outgoing(l.initial()).size() == 2);
    CHECK(rate(l, l.initial(), ActionName("g")) == 2);
  }
}

TEST_CASE("rates") {
  Lts nil = lts_of("0");
  CHECK(rate(nil, nil.initial(), ActionName("a")) == 0);
  CHECK(rate_total(nil, nil.initial()) == 0);

  Lts dup = lts_of("<a,1>.0 + <a,1>.0");
  StateId end = dup.edges()[0].target;
  CHECK(rate(dup, dup.initial(), ActionName("a"), std::set<StateId>{end}) == 2);
  CHECK(rate(dup, dup.initial(), ActionName("a"), std::set<StateId>{dup.initial()}) == 0);
  CHECK(rate_total(dup, dup.initial()) == 2);
  CHECK(rate_total(lts_of("<a,1>.0 + <b,3>.0"), 0) == 4);
}

TEST_CASE("to_ctmc") {
  Ctmc c = to_ctmc(lts_of("<a,1>.0 + <b,3>.0"));
  REQUIRE(c.transitions.size() == 1);
  CHECK(c.transitions[0].rate == 4);

  Ctmc d = to_ctmc(lts_of("<a,1>.0 + <a,1>.0"));
  REQUIRE(d.transitions.size() == 1);
  CHECK(d.transitions[0].rate == 2);

  CHECK(to_ctmc(lts_of("0")).transitions.empty());
}

TEST_CASE("printing round-trips and the CTMC keeps exit rates on random terms") {
  TermGen gen(7);
  for (int n = 0; n < 100; ++n) {
    auto names = gen.alphabet(gen.pick(1, 4));
    std::string text = render(gen.sum(gen.pick(1, 4), names));
    DefEnv env;
    auto t = parse_process(text, env);
    auto again = parse_process(to_string(*t), env);
    CHECK(structurally_equal(*t, *again));
    CHECK(to_string(*again) == to_string(*t));

    Lts l = derive_lts(t, env);
    Ctmc c = to_ctmc(l);
    std::vector<Rational> out(l.num_states());
    for (const auto& tr : c.transitions) out[tr.source] += tr.rate;
    for (StateId s = 0; s < l.num_states(); ++s) {
      Rational sum = 0;
      for (EdgeId id : l.outgoing(s)) sum += l.edge(id).rate;
      CHECK(rate_total(l, s) == sum);
      CHECK(out[s] == sum);
    }
  }
}

TEST_CASE("multiplicity law: duplicating a summand doubles its contribution") {
  for (const char* r : {"1", "2", "1/3", "5/2", "7"}) {
    Rational lambda = parse_rational(r);
    std::string once = std::string("<a,") + r + ">.0 + <b,1>.0";
    std::string twice = std::string("<a,") + r + ">.0 + <a," + r + ">.0 + <b,1>.0";
    CHECK(rate_total(lts_of(twice), 0) - rate_total(lts_of(once), 0) == lambda);
    CHECK(rate(lts_of(twice), 0, ActionName("a")) == 2 * lambda);
  }
}
