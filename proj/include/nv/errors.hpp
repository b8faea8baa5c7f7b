#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nv {

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArchitectureError : public Error {
 public:
  enum class Kind { WidthZero, DegreeBelowTwo, LengthMismatch };

  ArchitectureError(Kind kind, std::size_t index, const std::string& what)
      : Error(what), kind_(kind), index_(index) {}

  Kind kind() const noexcept { return kind_; }
  // Offending width index i (n_i), degree index i (d_i, 1-based) or the
  // length that was found, depending on kind().
  std::size_t index() const noexcept { return index_; }

 private:
  Kind kind_;
  std::size_t index_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotSingleOutput : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// The dehomogenizing coordinate vanished at a sample point; resample.
class PivotVanishes : public Error {
 public:
  explicit PivotVanishes(std::size_t output)
      : Error("pivot coefficient vanishes for output " + std::to_string(output)),
        output_(output) {}
  std::size_t output() const noexcept { return output_; }

 private:
  std::size_t output_;
};

class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

class AmbientTooLarge : public Error {
 public:
  using Error::Error;
};

class ProportionalPair : public Error {
 public:
  ProportionalPair(std::size_t i, std::size_t j)
      : Error("forms " + std::to_string(i) + " and " + std::to_string(j) +
              " are proportional"),
        first_(i),
        second_(j) {}
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nv
