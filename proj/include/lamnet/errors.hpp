#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "lamnet/stats.hpp"

namespace lamnet {

// Root of every error thrown by the library. Reduction failures carry the
// statistics accumulated up to the point of failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  std::optional<Stats> stats;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line;
  std::size_t column;
};

class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(std::uint64_t fuel);

  std::uint64_t fuel;
};

class DuplicateSymbol : public Error {
 public:
  explicit DuplicateSymbol(const std::string& symbol);
};

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(const std::string& symbol);
};

class OverlappingRule : public Error {
 public:
  using Error::Error;
};

// An active pair for which no rule (or no guard) matches.
class NoRule : public Error {
 public:
  NoRule(std::string left, std::string right);

  std::string left;
  std::string right;
};

// An equation t = x where x occurs in t.
class Deadlocked : public Error {
 public:
  explicit Deadlocked(const std::string& equation);
};

// Only amb equations with no agent on either principal port remain.
class Stuck : public Error {
 public:
  explicit Stuck(std::size_t pending);

  std::size_t pending;
};

class LinearityViolation : public Error {
 public:
  LinearityViolation(std::string name, std::size_t count);

  std::string name;
  std::size_t count;
};

class ArityMismatch : public Error {
 public:
  explicit ArityMismatch(const std::string& symbol);

  std::string symbol;
};

class LinearityError : public Error {
 public:
  LinearityError(std::string rule, std::string name);

  std::string rule;
  std::string name;
};

class NotNormal : public Error {
 public:
  explicit NotNormal(std::size_t equations);
};

class Garbage : public Error {
 public:
  explicit Garbage(const std::string& description);
};

}  // namespace lamnet
