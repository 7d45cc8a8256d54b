#include "barrier_reach/barrier.hpp"

#include <cmath>
#include <stdexcept>

namespace barrier_reach {

QuadraticCertificate::QuadraticCertificate(int dim, Eigen::VectorXd coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  if (dim_ < 1 || coeffs_.size() != coeff_count(dim_)) {
    throw std::invalid_argument("QuadraticCertificate: wrong coefficient count");
  }
  if (!coeffs_.allFinite()) {
    throw std::invalid_argument("QuadraticCertificate: non-finite coefficient");
  }
}

int QuadraticCertificate::quad_index(int dim, int i, int j) {
  // Offset of row i in the upper-triangular enumeration (0,0),(0,1),...
  return 1 + dim + i * dim - i * (i - 1) / 2 + (j - i);
}

Eigen::VectorXd monomials(int dim, const Eigen::VectorXd& x) {
  if (x.size() != dim) throw std::invalid_argument("monomials: dimension mismatch");
  Eigen::VectorXd phi(QuadraticCertificate::coeff_count(dim));
  phi[0] = 1.0;
  for (int i = 0; i < dim; ++i) phi[1 + i] = x[i];
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      phi[QuadraticCertificate::quad_index(dim, i, j)] = x[i] * x[j];
    }
  }
  return phi;
}

Eigen::VectorXd lie_monomials(int dim, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& field_value) {
  Eigen::VectorXd psi =
      Eigen::VectorXd::Zero(QuadraticCertificate::coeff_count(dim));
  for (int i = 0; i < dim; ++i) {
    const double f = field_value[i];
    psi[1 + i] += f;
    psi[QuadraticCertificate::quad_index(dim, i, i)] += 2.0 * x[i] * f;
    for (int j = 0; j < dim; ++j) {
      if (j == i) continue;
      const int lo = std::min(i, j), hi = std::max(i, j);
      psi[QuadraticCertificate::quad_index(dim, lo, hi)] += x[j] * f;
    }
  }
  return psi;
}

double evaluate(const QuadraticCertificate& cert, const Eigen::VectorXd& x) {
  return cert.coeffs().dot(monomials(cert.dim(), x));
}

Eigen::VectorXd gradient(const QuadraticCertificate& cert,
                         const Eigen::VectorXd& x) {
  const int n = cert.dim();
  if (x.size() != n) throw std::invalid_argument("gradient: dimension mismatch");
  const Eigen::VectorXd& a = cert.coeffs();
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) {
    double gi = a[1 + i] + 2.0 * a[QuadraticCertificate::quad_index(n, i, i)] * x[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const int lo = std::min(i, j), hi = std::max(i, j);
      gi += a[QuadraticCertificate::quad_index(n, lo, hi)] * x[j];
    }
    g[i] = gi;
  }
  return g;
}

double lie_derivative(const QuadraticCertificate& cert, const SystemModel& model,
                      const Eigen::VectorXd& x,
                      const std::optional<ControlInput>& u) {
  if (x.size() != cert.dim() || cert.dim() != model.n) {
    throw std::invalid_argument("lie_derivative: dimension mismatch");
  }
  return gradient(cert, x).dot(model.field(x, u));
}

Interval interval_evaluate(const QuadraticCertificate& cert,
                           const IntervalVector& box) {
  const int n = cert.dim();
  if (static_cast<int>(box.size()) != n) {
    throw std::invalid_argument("interval_evaluate: dimension mismatch");
  }
  const Eigen::VectorXd& a = cert.coeffs();
  Interval acc(a[0]);
  for (int i = 0; i < n; ++i) {
    acc = acc + Interval(a[1 + i]) * box[i];
  }
  for (int i = 0; i < n; ++i) {
    acc = acc + Interval(a[QuadraticCertificate::quad_index(n, i, i)]) * sqr(box[i]);
    for (int j = i + 1; j < n; ++j) {
      acc = acc +
            Interval(a[QuadraticCertificate::quad_index(n, i, j)]) * (box[i] * box[j]);
    }
  }
  return acc;
}

namespace {

Interval interval_gradient_component(const QuadraticCertificate& cert,
                                     const IntervalVector& box, int i) {
  const int n = cert.dim();
  const Eigen::VectorXd& a = cert.coeffs();
  Interval gi(a[1 + i]);
  gi = gi + Interval(2.0 * a[QuadraticCertificate::quad_index(n, i, i)]) * box[i];
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const int lo = std::min(i, j), hi = std::max(i, j);
    gi = gi + Interval(a[QuadraticCertificate::quad_index(n, lo, hi)]) * box[j];
  }
  return gi;
}

}  // namespace

Interval interval_lie(const QuadraticCertificate& cert,
                      const std::vector<Expr>& field,
                      const IntervalVector& box) {
  const int n = cert.dim();
  if (static_cast<int>(box.size()) != n ||
      static_cast<int>(field.size()) != n) {
    throw std::invalid_argument("interval_lie: dimension mismatch");
  }
  Interval acc(0.0);
  for (int i = 0; i < n; ++i) {
    acc = acc + interval_gradient_component(cert, box, i) * field[i].eval(box);
  }
  return acc;
}

Interval interval_lie(const QuadraticCertificate& cert, const SystemModel& model,
                      const IntervalVector& box,
                      const std::optional<ControlInput>& u) {
  return interval_lie(cert, model.symbolic_form(u), box);
}

QuadraticCertificate substitute_shift(const QuadraticCertificate& cert,
                                      const Eigen::VectorXd& offset) {
  const int n = cert.dim();
  if (offset.size() != n) {
    throw std::invalid_argument("substitute_shift: dimension mismatch");
  }
  const Eigen::VectorXd& a = cert.coeffs();
  Eigen::VectorXd out = a;
  // B(x - o): expand (x_i - o_i)(x_j - o_j); quadratic terms are untouched.
  for (int i = 0; i < n; ++i) {
    out[0] -= a[1 + i] * offset[i];
    for (int j = i; j < n; ++j) {
      out[0] += a[QuadraticCertificate::quad_index(n, i, j)] * offset[i] * offset[j];
    }
  }
  for (int k = 0; k < n; ++k) {
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double aij = a[QuadraticCertificate::quad_index(n, i, j)];
        if (i == k) delta -= aij * offset[j];
        if (j == k) delta -= aij * offset[i];
      }
    }
    out[1 + k] += delta;
  }
  return QuadraticCertificate(n, std::move(out));
}

QuadraticCertificate negate_axes(const QuadraticCertificate& cert,
                                 const std::vector<int>& axes) {
  const int n = cert.dim();
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(n);
  for (int k : axes) {
    if (k < 0 || k >= n) throw std::invalid_argument("negate_axes: bad axis");
    sign[k] = -1.0;
  }
  Eigen::VectorXd out = cert.coeffs();
  for (int i = 0; i < n; ++i) out[1 + i] *= sign[i];
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      out[QuadraticCertificate::quad_index(n, i, j)] *= sign[i] * sign[j];
    }
  }
  return QuadraticCertificate(n, std::move(out));
}

}  // namespace barrier_reach
