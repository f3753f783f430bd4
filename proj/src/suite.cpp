#include "markt/suite.hpp"

#include "markt/error.hpp"
#include "markt/parser.hpp"

#include <algorithm>
#include <cctype>

namespace markt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

ActionName visible_name(std::string_view s) {
  if (!is_ident(s)) throw ValidationError("invalid action name '" + std::string(s) + "'");
  ActionName a{std::string(s)};
  if (!a.visible()) throw ValidationError("tau cannot appear in a test");
  return a;
}

bool starts_with_word(std::string_view line, std::string_view word) {
  return line.size() > word.size() && line.substr(0, word.size()) == word &&
         std::isspace(static_cast<unsigned char>(line[word.size()]));
}

// Rebases a parse error reported inside one line of a suite file.
[[noreturn]] void rethrow_at(const ParseError& e, std::size_t line, std::size_t offset) {
  std::string msg = e.what();
  auto colon = msg.find(": ");
  if (colon != std::string::npos) msg = msg.substr(colon + 2);
  throw ParseError(msg, {line, e.position().column + offset});
}

}  // namespace

std::set<ActionName> parse_alphabet(std::string_view text) {
  std::set<ActionName> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) continue;
    out.insert(visible_name(item));
  }
  if (out.empty()) throw ValidationError("empty alphabet");
  return out;
}

TracePattern parse_pattern(std::string_view text, std::set<ActionName> alphabet) {
  TracePattern p;
  text = trim(text);
  if (text.empty()) throw ValidationError("empty trace pattern");
  for (auto item : split(text, '.')) {
    if (item == "*")
      p.items.push_back(std::nullopt);
    else
      p.items.push_back(visible_name(item));
  }
  for (const auto& a : alphabet)
    if (!a.visible()) throw ValidationError("tau cannot appear in a test alphabet");
  bool wildcard = false;
  for (const auto& i : p.items) wildcard = wildcard || !i;
  if (wildcard && alphabet.empty()) throw ValidationError("pattern has wildcards but the alphabet is empty");
  p.alphabet = std::move(alphabet);
  return p;
}

Suite gen_suite(const TracePattern& pattern, FailSets fail_sets) {
  std::vector<std::vector<ActionName>> traces{{}};
  for (const auto& item : pattern.items) {
    std::vector<std::vector<ActionName>> next;
    for (const auto& prefix : traces) {
      if (item) {
        next.push_back(prefix);
        next.back().push_back(*item);
        continue;
      }
      for (const auto& a : pattern.alphabet) {
        next.push_back(prefix);
        next.back().push_back(a);
      }
    }
    traces = std::move(next);
  }

  Suite suite;
  for (const auto& trace : traces) {
    std::vector<TestStep> steps;
    std::string name;
    for (const auto& a : trace) {
      TestStep step{a, {}};
      if (fail_sets == FailSets::maximal) {
        step.fail_actions = pattern.alphabet;
        step.fail_actions.erase(a);
      }
      steps.push_back(std::move(step));
      if (!name.empty()) name += '.';
      name += a.str();
    }
    suite.push_back({name, CanonicalTest(std::move(steps))});
  }
  return suite;
}

Suite parse_suite(std::string_view text, const std::set<ActionName>& default_alphabet, FailSets fail_sets) {
  Suite suite;
  std::set<ActionName> alphabet = default_alphabet;
  std::size_t unnamed = 0;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto hash = raw.find('#');
    std::string_view line = trim(raw.substr(0, hash));
    if (line.empty()) continue;

    if (starts_with_word(line, "alphabet")) {
      alphabet = parse_alphabet(line.substr(8));
      continue;
    }
    if (starts_with_word(line, "pattern")) {
      for (auto& t : gen_suite(parse_pattern(line.substr(7), alphabet), fail_sets)) suite.push_back(std::move(t));
      continue;
    }

    std::string name;
    std::string_view body = line;
    auto eq = line.find('=');
    if (eq != std::string_view::npos) {
      auto lhs = trim(line.substr(0, eq));
      if (!is_ident(lhs)) throw ParseError("expected a test name before '='", {line_no, 1});
      name = std::string(lhs);
      body = line.substr(eq + 1);
    } else {
      do name = "T" + std::to_string(++unnamed);
      while (std::any_of(suite.begin(), suite.end(), [&](const NamedTest& t) { return t.name == name; }));
    }
    for (const auto& t : suite)
      if (t.name == name) throw ValidationError("line " + std::to_string(line_no) + ": duplicate test name '" + name + "'");
    try {
      suite.push_back({name, parse_test(body)});
    } catch (const ParseError& e) {
      rethrow_at(e, line_no, static_cast<std::size_t>(body.data() - line.data()));
    }
  }
  if (suite.empty()) throw ValidationError("suite contains no tests");
  return suite;
}

}  // namespace markt
