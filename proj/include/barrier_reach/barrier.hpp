#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "barrier_reach/dynamics.hpp"
#include "barrier_reach/interval.hpp"

namespace barrier_reach {

/// Degree-2 polynomial B(a, x) stored as its coefficient vector in graded
/// lexicographic order: [constant; x1..xn; x1^2, x1x2, .., x1xn, x2^2, ..].
/// The ordering is the wire contract for everything that exchanges
/// coefficients (network outputs, JSON, datasets).
class QuadraticCertificate {
 public:
  QuadraticCertificate() = default;
  QuadraticCertificate(int dim, Eigen::VectorXd coeffs);

  static int coeff_count(int dim) { return 1 + dim + dim * (dim + 1) / 2; }
  /// Index of the x_i * x_j coefficient, i <= j.
  static int quad_index(int dim, int i, int j);

  int dim() const { return dim_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }

 private:
  int dim_ = 0;
  Eigen::VectorXd coeffs_;
};

/// Monomial basis vector phi(x) with evaluate(cert, x) = a . phi(x).
Eigen::VectorXd monomials(int dim, const Eigen::VectorXd& x);

/// Lie basis psi(x) with lie_derivative(cert, ...) = a . psi(x), where
/// psi = sum_i f_i(x) * d phi / d x_i. Lets learners treat the Lie value
/// as a linear function of the coefficients.
Eigen::VectorXd lie_monomials(int dim, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& field_value);

double evaluate(const QuadraticCertificate& cert, const Eigen::VectorXd& x);
Eigen::VectorXd gradient(const QuadraticCertificate& cert,
                         const Eigen::VectorXd& x);
double lie_derivative(const QuadraticCertificate& cert,
                      const SystemModel& model, const Eigen::VectorXd& x,
                      const std::optional<ControlInput>& u);

/// Sound enclosure of the range of B over a box.
Interval interval_evaluate(const QuadraticCertificate& cert,
                           const IntervalVector& box);

/// Sound enclosure of the range of Bdot over a box; the field overload
/// avoids rebuilding the symbolic form on every call.
Interval interval_lie(const QuadraticCertificate& cert,
                      const std::vector<Expr>& field,
                      const IntervalVector& box);
Interval interval_lie(const QuadraticCertificate& cert,
                      const SystemModel& model, const IntervalVector& box,
                      const std::optional<ControlInput>& u);

/// Coefficients of x -> B(x - offset).
QuadraticCertificate substitute_shift(const QuadraticCertificate& cert,
                                      const Eigen::VectorXd& offset);

/// Coefficients of B after substituting x_k -> -x_k for each listed axis.
QuadraticCertificate negate_axes(const QuadraticCertificate& cert,
                                 const std::vector<int>& axes);

}  // namespace barrier_reach
