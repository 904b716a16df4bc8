#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfide {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (Gamma at x <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed call: wrong shapes, empty ranges, zero node counts.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: non-convergence, non-finite coefficient values.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A trajectory produced a non-finite state.
class ExplosionError : public NumericError {
 public:
  ExplosionError(std::size_t step, double previous_norm);

  std::size_t step() const noexcept { return step_; }
  double previous_norm() const noexcept { return previous_norm_; }

 private:
  std::size_t step_;
  double previous_norm_;
};

// One or more Monte-Carlo paths exploded; carries the failing path indices.
class PathFailures : public NumericError {
 public:
  PathFailures(std::vector<std::uint64_t> indices, const std::string& first_message);

  const std::vector<std::uint64_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::uint64_t> indices_;
};

}  // namespace sfide
