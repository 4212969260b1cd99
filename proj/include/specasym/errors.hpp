#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace specasym {

/// Malformed arguments, files or spectrum descriptions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical target could not be met (tolerance, budget, conditioning).
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what,
                            double achieved = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), achieved_(achieved) {}

  /// Best bound or diagnostic reached before giving up.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class IllConditioned : public NumericalFailure {
 public:
  explicit IllConditioned(double condition)
      : NumericalFailure("ill-conditioned basis; shrink exponent set or widen grid (condition estimate " +
                             std::to_string(condition) + ")",
                         condition) {}
};

}  // namespace specasym
