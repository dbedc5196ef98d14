#pragma once

#include <optional>
#include <vector>

#include "lassornet/errors.hpp"

namespace lassornet {

inline constexpr double kPi = 3.14159265358979323846;

// A time of day on the 24-hour circle, always reduced into [0, 24).
class CircTime {
 public:
  CircTime() = default;
  explicit CircTime(double hours);
  double hours() const { return hours_; }

  friend bool operator==(CircTime a, CircTime b) {
    return a.hours_ == b.hours_;
  }

 private:
  double hours_ = 0.0;
};

// (sin, cos) encoding of a time on the circle.  Pairs produced by encode()
// lie on the unit circle; predicted pairs need not.
struct CircPair {
  double t1 = 0.0;  // sine component
  double t2 = 1.0;  // cosine component
};

// [sin(pi t / 12), cos(pi t / 12)]
CircPair encode(CircTime t);

// (12/pi) * (atan2(t1, t2) mod 2pi).  Throws ZeroVectorError on (0, 0):
// the phase of the zero vector is undefined.
CircTime decode(const CircPair& p);

// Shortest distance around the circle, in [0, 12].
double circ_error(CircTime truth, CircTime pred);

// Median absolute error.  Even counts take the mean of the two middle
// order statistics.  Throws EmptyInputError.
double mae(const std::vector<double>& errors);

// 1 - (1/12) * integral over [0, 12] of the fraction of errors exceeding
// the threshold; for nonnegative bounded errors this integral equals the
// mean, so the closed form is 1 - mean(errors)/12.  Errors must lie in
// [0, 12].  Throws EmptyInputError / OutOfRangeError.
double auc(const std::vector<double>& errors);

}  // namespace lassornet
