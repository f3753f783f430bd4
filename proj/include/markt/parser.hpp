#pragma once

#include "markt/canonical_test.hpp"
#include "markt/term.hpp"

#include <string_view>

namespace markt {

/// Parses a single process expression. Constants are resolved against
/// `env`; the result is validated (closed, guarded, positive rates).
///
///   process ::= sum
///   sum     ::= prefixed ("+" sum)?          right-associative
///   prefixed::= "0" | "<" name "," rate ">" "." prefixed | IDENT | "(" sum ")"
///   rate    ::= DECIMAL | INT "/" INT
TermPtr parse_process(std::string_view text, const DefEnv& env);

/// A model file: `IDENT = process;` definitions, one of them `main`.
struct Model {
  DefEnv env;
  TermPtr main;
};

/// Parses and validates a model. `#` starts a line comment.
Model parse_model(std::string_view text);

/// Parses a canonical test, e.g. "<a1>.<a2>.s + <b>.f". A step with its
/// own failure branches below the first level needs parentheses:
/// "<a1>.(<a2>.s + <c>.f) + <b>.f".
CanonicalTest parse_test(std::string_view text);

}  // namespace markt
