#include "barrier_reach/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace barrier_reach {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kHalfPi = 0.5 * kPi;

// Largest argument magnitude for which double-precision reduction of
// multiples of pi stays well below kReductionSlack.
constexpr double kMaxTrigArg = 1.0e6;
constexpr double kReductionSlack = 1.0e-9;

double step_down(double x, int n) {
  for (int i = 0; i < n; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double step_up(double x, int n) {
  for (int i = 0; i < n; ++i) x = std::nextafter(x, kInf);
  return x;
}

Interval widened(double lo, double hi, int steps = 1) {
  Interval r;
  r.lo = step_down(lo, steps);
  r.hi = step_up(hi, steps);
  return r;
}

// True when [a.lo, a.hi] (inflated by the reduction slack) contains a
// point offset + 2*pi*k for some integer k.
bool contains_periodic(const Interval& a, double offset) {
  const double lo = a.lo - kReductionSlack;
  const double hi = a.hi + kReductionSlack;
  const double kmin = std::ceil((lo - offset) / kTwoPi);
  const double kmax = std::floor((hi - offset) / kTwoPi);
  return kmin <= kmax;
}

}  // namespace

Interval widen_ulps(const Interval& v, int steps) {
  return widened(v.lo, v.hi, steps);
}

Interval operator+(const Interval& a, const Interval& b) {
  return widened(a.lo + b.lo, a.hi + b.hi);
}

Interval operator-(const Interval& a, const Interval& b) {
  return widened(a.lo - b.hi, a.hi - b.lo);
}

Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return widened(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Interval operator-(const Interval& a) {
  Interval r;
  r.lo = -a.hi;
  r.hi = -a.lo;
  return r;
}

Interval sqr(const Interval& a) {
  const double s1 = a.lo * a.lo;
  const double s2 = a.hi * a.hi;
  double lo = std::min(s1, s2);
  const double hi = std::max(s1, s2);
  if (a.lo <= 0.0 && 0.0 <= a.hi) lo = 0.0;
  Interval r = widened(lo, hi);
  r.lo = std::max(r.lo, 0.0);
  return r;
}

Interval sqrt(const Interval& a) {
  if (a.lo < 0.0) throw std::domain_error("sqrt: negative lower endpoint");
  Interval r = widened(std::sqrt(a.lo), std::sqrt(a.hi), 2);
  r.lo = std::max(r.lo, 0.0);
  return r;
}

Interval exp(const Interval& a) {
  return widened(std::exp(a.lo), std::exp(a.hi), 3);
}

Interval sin(const Interval& a) {
  if (!(std::abs(a.lo) <= kMaxTrigArg) || !(std::abs(a.hi) <= kMaxTrigArg) ||
      a.width() >= kTwoPi) {
    return Interval(-1.0, 1.0);
  }
  const double slo = std::sin(a.lo);
  const double shi = std::sin(a.hi);
  double lo = std::min(slo, shi);
  double hi = std::max(slo, shi);
  if (contains_periodic(a, kHalfPi)) hi = 1.0;
  if (contains_periodic(a, -kHalfPi)) lo = -1.0;
  Interval r = widened(lo, hi, 3);
  r.lo = std::max(r.lo, -1.0);
  r.hi = std::min(r.hi, 1.0);
  return r;
}

Interval cos(const Interval& a) {
  if (!(std::abs(a.lo) <= kMaxTrigArg) || !(std::abs(a.hi) <= kMaxTrigArg) ||
      a.width() >= kTwoPi) {
    return Interval(-1.0, 1.0);
  }
  const double clo = std::cos(a.lo);
  const double chi = std::cos(a.hi);
  double lo = std::min(clo, chi);
  double hi = std::max(clo, chi);
  if (contains_periodic(a, 0.0)) hi = 1.0;
  if (contains_periodic(a, kPi)) lo = -1.0;
  Interval r = widened(lo, hi, 3);
  r.lo = std::max(r.lo, -1.0);
  r.hi = std::min(r.hi, 1.0);
  return r;
}

Interval atan2(const Interval& y, const Interval& x) {
  const double pi_hi = step_up(kPi, 1);
  // The branch cut (nonpositive x axis) and the origin both force the
  // full range; anywhere else the extrema sit at box corners.
  if (x.lo <= 0.0 && y.lo <= 0.0 && y.hi >= 0.0) {
    return Interval(-pi_hi, pi_hi);
  }
  const double c1 = std::atan2(y.lo, x.lo);
  const double c2 = std::atan2(y.lo, x.hi);
  const double c3 = std::atan2(y.hi, x.lo);
  const double c4 = std::atan2(y.hi, x.hi);
  Interval r = widened(std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4}), 3);
  r.lo = std::max(r.lo, -pi_hi);
  r.hi = std::min(r.hi, pi_hi);
  return r;
}

}  // namespace barrier_reach
