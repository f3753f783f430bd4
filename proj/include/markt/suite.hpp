#pragma once

#include "markt/canonical_test.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace markt {

/// A success trace with wildcards, e.g. "g.a.*", instantiated over an
/// alphabet of visible names.
struct TracePattern {
  std::vector<std::optional<ActionName>> items;  // nullopt is "*"
  std::set<ActionName> alphabet;
};

TracePattern parse_pattern(std::string_view text, std::set<ActionName> alphabet);

enum class FailSets { maximal, minimal };

/// One test per instantiation of the wildcards. Failure branches at each
/// step are alphabet - {success action} (maximal) or empty (minimal).
/// Tests are named after their success trace, e.g. "g.a.b".
Suite gen_suite(const TracePattern& pattern, FailSets fail_sets = FailSets::maximal);

/// Suite file: one entry per line, `#` comments.
///   name = <test>          a named test in the test DSL
///   <test>                 an unnamed test (named T1, T2, ...)
///   alphabet a, b, c       alphabet for the pattern lines that follow
///   pattern g.a.*          tests generated from a trace pattern
/// `default_alphabet` is used for patterns before any alphabet line.
Suite parse_suite(std::string_view text, const std::set<ActionName>& default_alphabet = {},
                  FailSets fail_sets = FailSets::maximal);

std::set<ActionName> parse_alphabet(std::string_view text);

}  // namespace markt
