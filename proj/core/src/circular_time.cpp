#include "lassornet/circular_time.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lassornet {

CircTime::CircTime(double hours) {
  double r = std::fmod(hours, 24.0);
  if (r < 0.0) r += 24.0;
  // fmod of a tiny negative can round up to exactly 24 after the shift
  if (r >= 24.0) r -= 24.0;
  hours_ = r;
}

CircPair encode(CircTime t) {
  const double a = kPi * t.hours() / 12.0;
  return {std::sin(a), std::cos(a)};
}

CircTime decode(const CircPair& p) {
  if (p.t1 == 0.0 && p.t2 == 0.0) {
    throw ZeroVectorError("decode: zero pair has undefined phase");
  }
  double a = std::atan2(p.t1, p.t2);
  if (a < 0.0) a += 2.0 * kPi;
  return CircTime(12.0 * a / kPi);
}

double circ_error(CircTime truth, CircTime pred) {
  const double d = std::fabs(truth.hours() - pred.hours());  // in [0, 24)
  return std::min(d, 24.0 - d);
}

double mae(const std::vector<double>& errors) {
  if (errors.empty()) throw EmptyInputError("mae: empty error list");
  std::vector<double> sorted = errors;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double auc(const std::vector<double>& errors) {
  if (errors.empty()) throw EmptyInputError("auc: empty error list");
  double sum = 0.0;
  for (const double e : errors) {
    if (!(e >= 0.0 && e <= 12.0)) {
      throw OutOfRangeError("auc: error outside [0, 12]");
    }
    sum += e;
  }
  return 1.0 - sum / static_cast<double>(errors.size()) / 12.0;
}

}  // namespace lassornet
