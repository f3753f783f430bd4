#include "markt/parser.hpp"

#include "markt/error.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace markt {

namespace {

enum class Tok { lt, gt, comma, dot, plus, lparen, rparen, equals, semicolon, ident, number, end };

const char* describe(Tok t) {
  switch (t) {
    case Tok::lt: return "'<'";
    case Tok::gt: return "'>'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::plus: return "'+'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::equals: return "'='";
    case Tok::semicolon: return "';'";
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::end: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos start = pos;
    auto single = [&](Tok k) {
      out.push_back({k, std::string(1, c), start});
      advance(1);
    };
    switch (c) {
      case '<': single(Tok::lt); continue;
      case '>': single(Tok::gt); continue;
      case ',': single(Tok::comma); continue;
      case '.': single(Tok::dot); continue;
      case '+': single(Tok::plus); continue;
      case '(': single(Tok::lparen); continue;
      case ')': single(Tok::rparen); continue;
      case '=': single(Tok::equals); continue;
      case ';': single(Tok::semicolon); continue;
      default: break;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < src.size() && digit(src[j])) ++j;
      if (j + 1 < src.size() && (src[j] == '.' || src[j] == '/') && digit(src[j + 1])) {
        ++j;
        while (j < src.size() && digit(src[j])) ++j;
      }
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::end, "", pos});
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[at_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }

  const Token& expect(Tok k) {
    if (!at(k))
      throw ParseError(std::string("expected ") + describe(k) + ", found " +
                           (peek().kind == Tok::end ? std::string(describe(Tok::end)) : "'" + peek().text + "'"),
                       peek().pos);
    return next();
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

// ---- processes ----

TermPtr parse_sum(Cursor& cur);

TermPtr parse_prefixed(Cursor& cur) {
  const Token& t = cur.peek();
  if (t.kind == Tok::number) {
    if (t.text != "0") throw ParseError("expected '0' or a prefix, found '" + t.text + "'", t.pos);
    cur.next();
    return make_nil();
  }
  if (t.kind == Tok::ident) return make_const(cur.next().text);
  if (cur.accept(Tok::lparen)) {
    auto inner = parse_sum(cur);
    cur.expect(Tok::rparen);
    return inner;
  }
  if (cur.accept(Tok::lt)) {
    const Token& name = cur.expect(Tok::ident);
    cur.expect(Tok::comma);
    const Token& rate_tok = cur.expect(Tok::number);
    Rational rate = parse_rational(rate_tok.text);
    if (rate <= 0) throw ParseError("non-positive rate " + rate_tok.text, rate_tok.pos);
    cur.expect(Tok::gt);
    cur.expect(Tok::dot);
    auto next = parse_prefixed(cur);
    return make_prefix(ActionName(name.text), rate, next);
  }
  throw ParseError("expected a process, found " +
                       (t.kind == Tok::end ? std::string(describe(Tok::end)) : "'" + t.text + "'"),
                   t.pos);
}

TermPtr parse_sum(Cursor& cur) {
  auto left = parse_prefixed(cur);
  if (cur.accept(Tok::plus)) return make_choice(left, parse_sum(cur));
  return left;
}

// ---- tests ----

struct TestNode {
  enum class Kind { success, failure, prefix, sum } kind;
  std::string action;
  SourcePos pos;
  std::vector<std::unique_ptr<TestNode>> children;
};

std::unique_ptr<TestNode> parse_test_sum(Cursor& cur);

std::unique_ptr<TestNode> parse_test_prefixed(Cursor& cur) {
  auto node = std::make_unique<TestNode>();
  const Token& t = cur.peek();
  node->pos = t.pos;
  if (t.kind == Tok::ident && (t.text == "s" || t.text == "f")) {
    node->kind = t.text == "s" ? TestNode::Kind::success : TestNode::Kind::failure;
    cur.next();
    return node;
  }
  if (cur.accept(Tok::lparen)) {
    auto inner = parse_test_sum(cur);
    cur.expect(Tok::rparen);
    return inner;
  }
  if (cur.accept(Tok::lt)) {
    node->kind = TestNode::Kind::prefix;
    node->action = cur.expect(Tok::ident).text;
    cur.expect(Tok::gt);
    cur.expect(Tok::dot);
    node->children.push_back(parse_test_prefixed(cur));
    return node;
  }
  throw ParseError("expected 's', 'f' or '<action>' in a test, found " +
                       (t.kind == Tok::end ? std::string(describe(Tok::end)) : "'" + t.text + "'"),
                   t.pos);
}

std::unique_ptr<TestNode> parse_test_sum(Cursor& cur) {
  auto first = parse_test_prefixed(cur);
  if (!cur.at(Tok::plus)) return first;
  auto sum = std::make_unique<TestNode>();
  sum->kind = TestNode::Kind::sum;
  sum->pos = first->pos;
  sum->children.push_back(std::move(first));
  while (cur.accept(Tok::plus)) {
    auto rest = parse_test_prefixed(cur);
    sum->children.push_back(std::move(rest));
  }
  return sum;
}

void flatten(const TestNode& n, std::vector<const TestNode*>& out) {
  if (n.kind == TestNode::Kind::sum) {
    for (const auto& c : n.children) flatten(*c, out);
  } else {
    out.push_back(&n);
  }
}

void to_steps(const TestNode& node, std::vector<TestStep>& steps) {
  std::vector<const TestNode*> branches;
  flatten(node, branches);
  std::optional<TestStep> step;
  std::set<std::string> seen;
  const TestNode* continuation = nullptr;
  std::set<ActionName> fails;
  for (const auto* b : branches) {
    if (b->kind != TestNode::Kind::prefix)
      throw ValidationError("non-canonical test at " + std::to_string(b->pos.line) + ":" +
                            std::to_string(b->pos.column) + ": every branch must start with an action");
    if (b->action == ActionName::kTau)
      throw ValidationError("tau is not allowed in a test (" + std::to_string(b->pos.line) + ":" +
                            std::to_string(b->pos.column) + ")");
    if (!seen.insert(b->action).second)
      throw ValidationError("duplicate action '" + b->action + "' within one test step");
    const TestNode& child = *b->children.front();
    if (child.kind == TestNode::Kind::failure) {
      fails.insert(ActionName(b->action));
      continue;
    }
    if (step)
      throw ValidationError("non-canonical test: two success branches ('" + step->success_action.str() + "' and '" +
                            b->action + "') at one step");
    step = TestStep{ActionName(b->action), {}};
    continuation = &child;
  }
  if (!step) throw ValidationError("non-canonical test: a step has no branch leading to success");
  step->fail_actions = std::move(fails);
  steps.push_back(std::move(*step));
  if (continuation->kind != TestNode::Kind::success) to_steps(*continuation, steps);
}

}  // namespace

TermPtr parse_process(std::string_view text, const DefEnv& env) {
  Cursor cur(tokenize(text));
  auto term = parse_sum(cur);
  cur.expect(Tok::end);
  validate(env, term.get());
  return term;
}

Model parse_model(std::string_view text) {
  Cursor cur(tokenize(text));
  Model m;
  while (!cur.at(Tok::end)) {
    const Token& name = cur.expect(Tok::ident);
    SourcePos where = name.pos;
    std::string ident = name.text;
    cur.expect(Tok::equals);
    auto body = parse_sum(cur);
    cur.expect(Tok::semicolon);
    if (m.env.contains(ident)) throw ParseError("constant '" + ident + "' defined twice", where);
    m.env.define(ident, body);
  }
  if (!m.env.contains("main")) throw ValidationError("model has no 'main' definition");
  validate(m.env);
  m.main = m.env.lookup("main");
  return m;
}

CanonicalTest parse_test(std::string_view text) {
  Cursor cur(tokenize(text));
  auto root = parse_test_sum(cur);
  cur.expect(Tok::end);
  std::vector<TestStep> steps;
  if (root->kind == TestNode::Kind::success || root->kind == TestNode::Kind::failure)
    throw ValidationError("a canonical test needs at least one step");
  to_steps(*root, steps);
  return CanonicalTest(std::move(steps));
}

}  // namespace markt
