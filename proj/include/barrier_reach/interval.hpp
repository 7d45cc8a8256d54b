#pragma once

#include <stdexcept>
#include <vector>

namespace barrier_reach {

/// Closed interval [lo, hi] with conservative outward widening.
///
/// Every arithmetic operation widens its result by one unit in the last
/// place per endpoint (plus a few extra for library elementary functions),
/// so the returned interval always contains the exact real-arithmetic
/// image of its operands. This trades a sliver of tightness for soundness
/// without touching the FPU rounding mode.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double point) : lo(point), hi(point) {}
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw std::invalid_argument("Interval: lo > hi");
  }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
};

/// One interval per state dimension; a box in interval form.
using IntervalVector = std::vector<Interval>;

/// Move endpoints outward by `steps` ulps.
Interval widen_ulps(const Interval& v, int steps = 1);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);  // exact, no widening

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);  // requires lo >= 0
Interval exp(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval atan2(const Interval& y, const Interval& x);

// Scalar counterparts so templated evaluators can use unqualified calls.
inline double sqr(double x) { return x * x; }

}  // namespace barrier_reach
