// Error types shared by all modules. Every failure that a caller can
// provoke with bad input gets its own type so tests can match on it.

#pragma once

#include <stdexcept>
#include <string>

namespace fsw {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonAssociative : Error {
  int a, b, c;
  NonAssociative(int a_, int b_, int c_, const std::string& detail)
      : Error("not associative: " + detail), a(a_), b(b_), c(c_) {}
};

struct GeneratorsNotGenerating : Error {
  explicit GeneratorsNotGenerating(const std::string& detail)
      : Error("generators do not generate: " + detail) {}
};

struct OrderNotStable : Error {
  explicit OrderNotStable(const std::string& detail)
      : Error("order not a stable partial order: " + detail) {}
};

struct ClosureBudgetExceeded : Error {
  std::size_t limit;
  explicit ClosureBudgetExceeded(std::size_t limit_)
      : Error("closure exceeded element budget " + std::to_string(limit_)),
        limit(limit_) {}
};

struct NotClosed : Error {
  int a, b;
  NotClosed(int a_, int b_, const std::string& detail)
      : Error("subset not closed: " + detail), a(a_), b(b_) {}
};

struct NotIdeal : Error {
  explicit NotIdeal(const std::string& detail)
      : Error("subset not a two-sided ideal: " + detail) {}
};

struct NotHomomorphism : Error {
  int a, b;
  NotHomomorphism(int a_, int b_, const std::string& detail)
      : Error("map is not a homomorphism: " + detail), a(a_), b(b_) {}
};

struct UnboundVariable : Error {
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable: " + name) {}
};

struct NoIdentity : Error {
  NoIdentity() : Error("term uses 1 but the semigroup has no identity") {}
};

struct NoZero : Error {
  NoZero() : Error("term uses 0 but the semigroup has no zero") {}
};

struct OrderMissing : Error {
  OrderMissing() : Error("inequality law needs a semigroup with an order") {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& detail)
      : Error("work budget exceeded: " + detail) {}
};

struct ParseError : Error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& detail)
      : Error("parse error at position " + std::to_string(pos) + ": " + detail),
        position(pos) {}
};

struct NotDeterministic : Error {
  explicit NotDeterministic(const std::string& detail)
      : Error("digraph is not deterministic: " + detail) {}
};

struct NotAPrefix : Error {
  explicit NotAPrefix(const std::string& detail)
      : Error("word is not a prefix of the required iterate: " + detail) {}
};

struct WitnessFailed : Error {
  std::string stage;
  WitnessFailed(const std::string& stage_, const std::string& detail)
      : Error("witness check failed at stage '" + stage_ + "': " + detail),
        stage(stage_) {}
};

struct NotStabilized : Error {
  std::size_t limit;
  explicit NotStabilized(std::size_t limit_)
      : Error("images did not stabilize within " + std::to_string(limit_) +
              " terms"),
        limit(limit_) {}
};

struct IoError : Error {
  explicit IoError(const std::string& detail) : Error("io: " + detail) {}
};

}  // namespace fsw
