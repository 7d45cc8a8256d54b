#include <doctest.h>

#include <cmath>

#include "barrier_reach/interval.hpp"
#include "barrier_reach/rng.hpp"

using namespace barrier_reach;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool encloses(const Interval& v, double lo, double hi, double slack = 1e-12) {
  return v.lo <= lo && v.hi >= hi && v.lo >= lo - slack && v.hi <= hi + slack;
}

Interval random_interval(Rng& rng, double lo, double hi) {
  const double a = rng.uniform(lo, hi);
  const double b = rng.uniform(lo, hi);
  return Interval(std::min(a, b), std::max(a, b));
}

Interval random_subinterval(Rng& rng, const Interval& outer) {
  const double a = rng.uniform(outer.lo, outer.hi);
  const double b = rng.uniform(outer.lo, outer.hi);
  return Interval(std::min(a, b), std::max(a, b));
}

}  // namespace

TEST_SUITE_BEGIN("interval");

TEST_CASE("addition encloses endpoint sums") {
  CHECK(encloses(Interval(0, 1) + Interval(2, 3), 2.0, 4.0));
  CHECK(encloses(Interval(-1, 1) + Interval(0, 0), -1.0, 1.0));
}

TEST_CASE("addition is sound against a higher-precision oracle") {
  const Interval r = Interval(0.1, 0.2) + Interval(0.3, 0.4);
  const long double exact_lo = 0.1L + 0.3L;
  const long double exact_hi = 0.2L + 0.4L;
  CHECK(static_cast<long double>(r.lo) <= exact_lo);
  CHECK(static_cast<long double>(r.hi) >= exact_hi);
  CHECK(r.lo > 0.39);
  CHECK(r.hi < 0.61);
}

TEST_CASE("multiplication covers endpoint extremes") {
  CHECK(encloses(Interval(1, 2) * Interval(-1, 1), -2.0, 2.0));
  const Interval z = Interval(0, 0) * Interval(-5, 5);
  CHECK(z.contains(0.0));
  CHECK(std::abs(z.lo) < 1e-300);
  CHECK(std::abs(z.hi) < 1e-300);
}

TEST_CASE("multiplication of negative operands") {
  // Oracle: enumerate the four endpoint products.
  const double products[] = {-2.0 * -3.0, -2.0 * -2.0, -1.0 * -3.0, -1.0 * -2.0};
  double lo = products[0], hi = products[0];
  for (double p : products) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  CHECK(lo == 2.0);
  CHECK(hi == 6.0);
  CHECK(encloses(Interval(-2, -1) * Interval(-3, -2), lo, hi));
}

TEST_CASE("sin handles monotone quadrants and interior extrema") {
  const Interval s = sin(Interval(0.0, kPi / 2));
  CHECK(s.lo <= 0.0);
  CHECK(s.lo >= -1e-12);
  CHECK(s.hi == 1.0);

  const Interval c = cos(Interval(0.0, kPi));
  CHECK(c.lo == -1.0);
  CHECK(c.hi == 1.0);

  const Interval far = sin(Interval(2e6, 2e6 + 1));
  CHECK(far.lo == -1.0);
  CHECK(far.hi == 1.0);
}

TEST_CASE("exp encloses the scalar endpoints") {
  const Interval e = exp(Interval(0.0, 1.0));
  CHECK(static_cast<long double>(e.lo) <= std::exp(0.0L));
  CHECK(static_cast<long double>(e.hi) >= std::exp(1.0L));
  CHECK(e.lo > 0.999999999);
  CHECK(e.hi < 2.718281829);
}

TEST_CASE("sqrt rejects negative domains") {
  CHECK_THROWS_AS((void)sqrt(Interval(-1.0, 1.0)), std::domain_error);
  const Interval r = sqrt(Interval(4.0, 9.0));
  CHECK(encloses(r, 2.0, 3.0));
}

TEST_CASE("atan2 covers quadrants and the branch cut") {
  const Interval q = atan2(Interval(1, 2), Interval(1, 2));
  CHECK(q.lo > 0.0);
  CHECK(q.hi < kPi / 2);
  CHECK(q.contains(std::atan2(1.5, 1.5)));

  const Interval cut = atan2(Interval(-1, 1), Interval(-2, -1));
  CHECK(cut.lo <= -3.0);
  CHECK(cut.hi >= 3.0);
}

TEST_CASE("inclusion monotonicity under random nesting") {
  Rng rng(42);
  for (int iter = 0; iter < 2000; ++iter) {
    const Interval a_outer = random_interval(rng, -10.0, 10.0);
    const Interval b_outer = random_interval(rng, -10.0, 10.0);
    const Interval a = random_subinterval(rng, a_outer);
    const Interval b = random_subinterval(rng, b_outer);
    CHECK((a_outer + b_outer).contains(a + b));
    CHECK((a_outer - b_outer).contains(a - b));
    CHECK((a_outer * b_outer).contains(a * b));
    CHECK(sqr(a_outer).contains(sqr(a)));
    CHECK(sin(a_outer).contains(sin(a)));
    CHECK(cos(a_outer).contains(cos(a)));
  }
}

TEST_CASE("containment fuzz: exact scalar results stay inside") {
  Rng rng(7);
  for (int iter = 0; iter < 100000; ++iter) {
    const Interval a = random_interval(rng, -8.0, 8.0);
    const Interval b = random_interval(rng, -8.0, 8.0);
    const double x = rng.uniform(a.lo, a.hi);
    const double y = rng.uniform(b.lo, b.hi);
    CHECK((a + b).contains(x + y));
    CHECK((a - b).contains(x - y));
    CHECK((a * b).contains(x * y));
    CHECK(sqr(a).contains(x * x));
    CHECK(sin(a).contains(std::sin(x)));
    CHECK(cos(a).contains(std::cos(x)));
    CHECK(exp(a).contains(std::exp(x)));
  }
}

TEST_CASE("degenerate intervals reproduce scalar arithmetic") {
  Rng rng(99);
  for (int iter = 0; iter < 1000; ++iter) {
    const double x = rng.uniform(-5.0, 5.0);
    const double y = rng.uniform(-5.0, 5.0);
    const Interval sum = Interval(x) + Interval(y);
    CHECK(sum.contains(x + y));
    CHECK(sum.width() <= 8.0 * std::abs(x + y) * 1e-16 + 1e-300);
    const Interval prod = Interval(x) * Interval(y);
    CHECK(prod.contains(x * y));
    CHECK(prod.width() <= 8.0 * std::abs(x * y) * 1e-16 + 1e-300);
  }
}

TEST_CASE("negation is exact") {
  const Interval v(-2.5, 1.25);
  const Interval n = -v;
  CHECK(n.lo == -1.25);
  CHECK(n.hi == 2.5);
}

TEST_CASE("invalid interval construction throws") {
  CHECK_THROWS_AS(Interval(1.0, 0.0), std::invalid_argument);
}

TEST_SUITE_END();
