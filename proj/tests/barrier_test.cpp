#include <doctest.h>

#include <cmath>
#include <cstring>

#include "barrier_reach/barrier.hpp"
#include "barrier_reach/json_io.hpp"
#include "barrier_reach/rng.hpp"

using namespace barrier_reach;

namespace {

// x^2 + y^2 + c in the graded-lex order [1, x, y, x^2, xy, y^2].
QuadraticCertificate circle_cert(double constant) {
  Eigen::VectorXd a(6);
  a << constant, 0, 0, 1, 0, 1;
  return QuadraticCertificate(2, a);
}

QuadraticCertificate random_cert(Rng& rng, int dim) {
  Eigen::VectorXd a(QuadraticCertificate::coeff_count(dim));
  for (int i = 0; i < a.size(); ++i) a[i] = rng.uniform(-2.0, 2.0);
  return QuadraticCertificate(dim, a);
}

IntervalVector random_box(Rng& rng, int dim, double span) {
  IntervalVector box(dim);
  for (int i = 0; i < dim; ++i) {
    const double a = rng.uniform(-span, span);
    const double b = rng.uniform(-span, span);
    box[i] = Interval(std::min(a, b), std::max(a, b));
  }
  return box;
}

}  // namespace

TEST_SUITE_BEGIN("barrier");

TEST_CASE("evaluation in the documented monomial order") {
  const QuadraticCertificate cert = circle_cert(-1.0);
  CHECK(evaluate(cert, Eigen::Vector2d(0, 0)) == -1.0);
  CHECK(evaluate(cert, Eigen::Vector2d(1.1, 1.1)) ==
        doctest::Approx(1.42).epsilon(1e-12));

  const QuadraticCertificate zero(2, Eigen::VectorXd::Zero(6));
  CHECK(evaluate(zero, Eigen::Vector2d(3, -4)) == 0.0);

  CHECK_THROWS_AS(evaluate(cert, Eigen::Vector3d(0, 0, 0)),
                  std::invalid_argument);
}

TEST_CASE("coefficient count and ordering helpers") {
  CHECK(QuadraticCertificate::coeff_count(2) == 6);
  CHECK(QuadraticCertificate::coeff_count(3) == 10);
  CHECK(QuadraticCertificate::quad_index(3, 0, 0) == 4);
  CHECK(QuadraticCertificate::quad_index(3, 0, 2) == 6);
  CHECK(QuadraticCertificate::quad_index(3, 1, 1) == 7);
  CHECK(QuadraticCertificate::quad_index(3, 2, 2) == 9);
}

TEST_CASE("gradient of the standard quadratic") {
  const QuadraticCertificate cert = circle_cert(0.0);
  CHECK(gradient(cert, Eigen::Vector2d(1, 1)) == Eigen::Vector2d(2, 2));

  Eigen::VectorXd constant_only = Eigen::VectorXd::Zero(6);
  constant_only[0] = 5.0;
  CHECK(gradient(QuadraticCertificate(2, constant_only), Eigen::Vector2d(3, 7)) ==
        Eigen::Vector2d(0, 0));
}

TEST_CASE("gradient agrees with central finite differences") {
  Rng rng(41);
  const double h = 1e-5;
  for (int dim : {2, 3}) {
    for (int iter = 0; iter < 50; ++iter) {
      const QuadraticCertificate cert = random_cert(rng, dim);
      Eigen::VectorXd x(dim);
      for (int i = 0; i < dim; ++i) x[i] = rng.uniform(-2.0, 2.0);
      const Eigen::VectorXd g = gradient(cert, x);
      for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd hi = x, lo = x;
        hi[i] += h;
        lo[i] -= h;
        const double fd = (evaluate(cert, hi) - evaluate(cert, lo)) / (2 * h);
        CHECK(std::abs(fd - g[i]) <= 1e-6);
      }
    }
  }
}

TEST_CASE("Lie derivative of the circle certificate along the linear flow") {
  const SystemModel model = lin_real_model();
  const QuadraticCertificate cert = circle_cert(0.0);
  // Hand expansion: 2x(-x) + 2y(-2y) = -2x^2 - 4y^2 = -6 at (1,1).
  CHECK(lie_derivative(cert, model, Eigen::Vector2d(1, 1), std::nullopt) ==
        doctest::Approx(-6.0).epsilon(1e-14));

  SystemModel still;
  still.id = "still";
  still.n = 2;
  still.field = [](const Eigen::VectorXd&, const std::optional<ControlInput>&) {
    return Eigen::VectorXd(Eigen::Vector2d(0, 0));
  };
  CHECK(lie_derivative(cert, still, Eigen::Vector2d(0.3, -2), std::nullopt) ==
        0.0);
}

TEST_CASE("finite differences along the flow converge at first order") {
  const QuadraticCertificate cert = circle_cert(0.0);
  const SystemModel model = lin_real_model();
  const Eigen::Vector2d x(0.8, -0.5);
  const double lie = lie_derivative(cert, model, x, std::nullopt);
  double previous = -1.0;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const Eigen::Vector2d xh(x[0] * std::exp(-h), x[1] * std::exp(-2 * h));
    const double fd = (evaluate(cert, xh) - evaluate(cert, x)) / h;
    const double error = std::abs(fd - lie);
    if (previous > 0.0) CHECK(error < 0.2 * previous);
    previous = error;
  }
}

TEST_CASE("Lie derivative equals the coefficient-linear form") {
  Rng rng(43);
  const SystemModel model = lin_complex_model();
  for (int iter = 0; iter < 200; ++iter) {
    const QuadraticCertificate cert = random_cert(rng, 2);
    Eigen::Vector2d x(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Eigen::VectorXd psi =
        lie_monomials(2, x, model.field(x, std::nullopt));
    const double direct = lie_derivative(cert, model, x, std::nullopt);
    CHECK(std::abs(psi.dot(cert.coeffs()) - direct) <=
          1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("interval evaluation encloses the range near the origin") {
  const QuadraticCertificate cert = circle_cert(-1.0);
  const Interval range =
      interval_evaluate(cert, {Interval(-0.1, 0.1), Interval(-0.1, 0.1)});
  CHECK(range.lo <= -1.0);
  CHECK(range.hi >= -0.98);
  CHECK(range.hi < 0.0);

  const Interval point =
      interval_evaluate(cert, {Interval(0.3), Interval(0.4)});
  CHECK(point.contains(evaluate(cert, Eigen::Vector2d(0.3, 0.4))));
  CHECK(point.width() <= 1e-12);
}

TEST_CASE("interval Lie enclosure is negative on a decaying box") {
  const QuadraticCertificate cert = circle_cert(0.0);
  const SystemModel model = lin_real_model();
  const Interval lie = interval_lie(
      cert, model, {Interval(0.5, 1.0), Interval(0.5, 1.0)}, std::nullopt);
  // True range of -2x^2 - 4y^2 over the box is [-6, -1.5].
  CHECK(lie.lo <= -6.0);
  CHECK(lie.hi >= -6.0);
  CHECK(lie.hi < 0.0);
  CHECK(lie.hi <= -1.5 + 1e-9);
}

TEST_CASE("interval evaluation containment fuzz") {
  Rng rng(47);
  for (int iter = 0; iter < 10000; ++iter) {
    const int dim = 2 + (iter % 2);
    const QuadraticCertificate cert = random_cert(rng, dim);
    const IntervalVector box = random_box(rng, dim, 3.0);
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x[i] = rng.uniform(box[i].lo, box[i].hi);
    CHECK(interval_evaluate(cert, box).contains(evaluate(cert, x)));
  }
}

TEST_CASE("evaluation is linear in the coefficients") {
  Rng rng(53);
  for (int iter = 0; iter < 200; ++iter) {
    const QuadraticCertificate a = random_cert(rng, 2);
    const QuadraticCertificate b = random_cert(rng, 2);
    const QuadraticCertificate sum(2, a.coeffs() + b.coeffs());
    Eigen::Vector2d x(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const double lhs = evaluate(sum, x);
    const double rhs = evaluate(a, x) + evaluate(b, x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("shift substitution composes with point shifts") {
  Rng rng(59);
  for (int iter = 0; iter < 100; ++iter) {
    const int dim = 2 + (iter % 2);
    const QuadraticCertificate cert = random_cert(rng, dim);
    Eigen::VectorXd offset(dim), x(dim);
    for (int i = 0; i < dim; ++i) {
      offset[i] = rng.uniform(-2, 2);
      x[i] = rng.uniform(-3, 3);
    }
    const QuadraticCertificate shifted = substitute_shift(cert, offset);
    const double expected = evaluate(cert, Eigen::VectorXd(x - offset));
    CHECK(std::abs(evaluate(shifted, x) - expected) <=
          1e-11 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("axis negation flips odd monomials") {
  Rng rng(61);
  for (int iter = 0; iter < 100; ++iter) {
    const QuadraticCertificate cert = random_cert(rng, 3);
    const QuadraticCertificate flipped = negate_axes(cert, {1, 2});
    Eigen::Vector3d x(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Eigen::Vector3d mirrored(x[0], -x[1], -x[2]);
    CHECK(evaluate(flipped, x) == doctest::Approx(evaluate(cert, mirrored))
                                      .epsilon(1e-13));
  }
}

TEST_CASE("certificate JSON round trips bit-exactly") {
  Eigen::VectorXd a(6);
  a << -1.0 / 3.0, 0.1, 2e-17, 1.0, -0.7, 123456.789;
  const QuadraticCertificate cert(2, a);
  const nlohmann::json j = cert;
  const auto back = j.get<QuadraticCertificate>();
  REQUIRE(back.coeffs().size() == a.size());
  CHECK(std::memcmp(back.coeffs().data(), a.data(), sizeof(double) * a.size()) ==
        0);
}

TEST_SUITE_END();
