#include "sfide/errors.hpp"

#include <sstream>
#include <utility>

namespace sfide {

namespace {

std::string explosion_message(std::size_t step, double previous_norm) {
  std::ostringstream os;
  os << "trajectory exploded at step " << step << " (|Y_{n-1}| = " << previous_norm << ")";
  return os.str();
}

std::string failures_message(const std::vector<std::uint64_t>& indices, const std::string& first) {
  std::ostringstream os;
  os << indices.size() << " path(s) failed: [";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i != 0) os << ", ";
    if (i == 16) {
      os << "...";
      break;
    }
    os << indices[i];
  }
  os << "]; first error: " << first;
  return os.str();
}

}  // namespace

ExplosionError::ExplosionError(std::size_t step, double previous_norm)
    : NumericError(explosion_message(step, previous_norm)), step_(step), previous_norm_(previous_norm) {}

PathFailures::PathFailures(std::vector<std::uint64_t> indices, const std::string& first_message)
    : NumericError(failures_message(indices, first_message)), indices_(std::move(indices)) {}

}  // namespace sfide
