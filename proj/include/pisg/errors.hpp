#pragma once

#include <stdexcept>
#include <string>

namespace pisg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (JSON structure, rational literals, strategy files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A strategy or profile leaves a required state without an action, or names
// an action that does not exist.
class MissingAssignment : public Error {
 public:
  using Error::Error;
};

// A strategy file refers to states, players, or actions the instance lacks.
class StrategyMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionLimit : public Error {
 public:
  using Error::Error;
};

// Cesaro normalization found a row of W with zero (or unequal) sum.
class DegenerateRowSum : public Error {
 public:
  using Error::Error;
};

// Expected sojourn time along the chain vanished; impossible for data that
// satisfies the sojourn bounds.
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class IterationLimit : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::string count, std::string cap)
      : Error(count + " policies exceed the enumeration cap of " + cap),
        count_(std::move(count)) {}
  const std::string& count() const { return count_; }

 private:
  std::string count_;
};

}  // namespace pisg
