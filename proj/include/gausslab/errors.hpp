#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gausslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
 public:
  explicit NotPrime(std::uint64_t p) : Error("not a prime: " + std::to_string(p)) {}
};

class FieldTooLarge : public Error {
 public:
  FieldTooLarge(std::uint64_t q, std::uint64_t q_max)
      : Error("field size " + std::to_string(q) + " exceeds q_max " + std::to_string(q_max)) {}
};

class NotADivisor : public Error {
 public:
  NotADivisor(std::uint64_t d, std::uint64_t k)
      : Error(std::to_string(d) + " does not divide " + std::to_string(k)) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in F_q") {}
};

class BadRange : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t needed, std::uint64_t budget)
      : Error("evaluation needs " + std::to_string(needed) + " character terms, budget is " +
              std::to_string(budget)) {}
};

class MassTooSmall : public Error {
 public:
  using Error::Error;
};

class UnknownCondition : public Error {
 public:
  explicit UnknownCondition(const std::string& id) : Error("unknown condition: " + id) {}
};

/// Invalid sweep configuration or command-line usage.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gausslab
