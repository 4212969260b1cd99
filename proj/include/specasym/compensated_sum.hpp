#pragma once

#include <cmath>

namespace specasym {

/*!
  Neumaier-compensated accumulator built on the TwoSum error-free
  transformation. Terms are added in caller order, so results are
  reproducible for a fixed summation order.

  Works with any type providing +, - and abs (double, long double,
  boost::multiprecision floats).
*/
template <typename Real>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Real initial) : sum_(initial) {}

  void add(const Real& value) {
    using std::abs;
    const Real t = sum_ + value;
    if (abs(sum_) >= abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(const Real& value) {
    add(value);
    return *this;
  }

  Real value() const { return sum_ + compensation_; }

 private:
  Real sum_{0};
  Real compensation_{0};
};

}  // namespace specasym
