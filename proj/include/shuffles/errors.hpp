#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shuffles {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax error in the term grammar, with 1-based position info.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct EmptyShuffleError : ParseError {
  EmptyShuffleError(std::size_t line, std::size_t column)
      : ParseError("empty shuffle braces", line, column) {}
};

struct TypeMismatchError : Error {
  explicit TypeMismatchError(const std::string& what) : Error("type mismatch: " + what) {}
};

struct EmptyPaletteError : Error {
  EmptyPaletteError() : Error("palette must be nonempty") {}
};

struct SentinelMissingError : Error {
  SentinelMissingError() : Error("palette has no sentinel color") {}
};

struct PaletteMismatchError : Error {
  explicit PaletteMismatchError(const std::string& what) : Error("palette mismatch: " + what) {}
};

/// Raised only on a certified finite counterexample to a session precondition
/// (an endpoint or a provably non-dense color), never on mere search fatigue.
struct PreconditionViolationError : Error {
  explicit PreconditionViolationError(const std::string& what)
      : Error("precondition violation: " + what) {}
};

/// A bounded scan ran out of budget without certifying anything either way.
struct SearchBudgetExceededError : Error {
  explicit SearchBudgetExceededError(const std::string& what)
      : Error("search budget exceeded: " + what) {}
};

struct NotANodeError : Error {
  explicit NotANodeError(const std::string& what) : Error("not a tree node: " + what) {}
};

struct NotALeafError : Error {
  explicit NotALeafError(const std::string& what) : Error("not a frontier leaf: " + what) {}
};

struct NotInRError : Error {
  explicit NotInRError(const std::string& what) : Error("position not in the sentinel fiber: " + what) {}
};

struct RankNotFiniteError : Error {
  explicit RankNotFiniteError(const std::string& what) : Error("rank not finite: " + what) {}
};

struct AddressMismatchError : Error {
  explicit AddressMismatchError(const std::string& what) : Error("address mismatch: " + what) {}
};

struct OracleInconsistentError : Error {
  explicit OracleInconsistentError(const std::string& what)
      : Error("oracle inconsistent with computed stratum: " + what) {}
};

/// Stratum computation hit the depth budget before resolving.
struct UnresolvedError : Error {
  UnresolvedError(const std::string& what, std::size_t depth)
      : Error("unresolved at depth " + std::to_string(depth) + ": " + what), depth(depth) {}
  std::size_t depth;
};

struct InstanceSpecError : Error {
  explicit InstanceSpecError(const std::string& what) : Error("instance spec: " + what) {}
};

struct WitnessInvariantError : Error {
  explicit WitnessInvariantError(const std::string& what)
      : Error("witness invariant violated: " + what) {}
};

}  // namespace shuffles
