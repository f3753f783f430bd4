#pragma once

#include "markt/lts.hpp"
#include "markt/parser.hpp"
#include "markt/similarity.hpp"
#include "markt/suite.hpp"

#include <string>
#include <vector>

namespace markt::testsupport {

inline Lts lts_of(const std::string& process) {
  DefEnv env;
  return derive_lts(parse_process(process, env), env);
}

inline Rational q(const char* text) { return parse_rational(text); }

inline Theta th(std::initializer_list<const char*> items) {
  Theta t;
  for (auto* s : items) t.push_back(parse_rational(s));
  return t;
}

inline Suite suite_of(const std::vector<std::string>& patterns, const std::string& alphabet,
                      FailSets fs = FailSets::maximal) {
  Suite s;
  for (const auto& p : patterns)
    for (auto& t : gen_suite(parse_pattern(p, parse_alphabet(alphabet)), fs)) s.push_back(std::move(t));
  return s;
}

inline Comparison compare(const std::string& p1, const std::string& p2, const std::vector<std::string>& patterns,
                          const std::string& alphabet, CheckOptions options = {}) {
  return Comparison(lts_of(p1), lts_of(p2), suite_of(patterns, alphabet), options);
}

// The worked examples, instantiated.
inline std::string swapped_pair_left(const std::string& g, const std::string& l, const std::string& m) {
  return "<g," + g + ">.<a," + l + ">.<b," + m + ">.0 + <g," + g + ">.<a," + m + ">.<d," + l + ">.0";
}
inline std::string swapped_pair_right(const std::string& g, const std::string& l, const std::string& m) {
  return "<g," + g + ">.<a," + l + ">.<d," + m + ">.0 + <g," + g + ">.<a," + m + ">.<b," + l + ">.0";
}

// gamma = 1, lambda = 2, delta = 1
inline const char* kTimedLeft = "<g,1>.<a,2>.<b,2>.0 + <g,1>.<a,2>.<d,2>.0";
inline const char* kFastRight = "<g,1>.<a,2>.<d,3>.0 + <g,1>.<a,3>.<b,2>.0";
inline const char* kSlowRight = "<g,1>.<a,2>.<d,1>.0 + <g,1>.<a,1>.<b,2>.0";
inline const char* kMixedRight = "<g,1>.<a,1>.<d,3>.0 + <g,1>.<a,3>.<b,1>.0";
inline const char* kUnifiedLeft = "<g,1>.<a,3>.<b,2>.0 + <g,1>.<a,2>.<d,2>.0";
inline const char* kUnifiedRight = "<g,1>.<a,2>.<d',2>.0 + <g,1>.<a,2>.<b,1>.0";

}  // namespace markt::testsupport
