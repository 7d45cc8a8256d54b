#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "barrier_reach/interval.hpp"

namespace barrier_reach {

/// Immutable scalar expression over state variables. Small enough to cover
/// the vector fields that get interval-evaluated: constants, variables,
/// ring operations and sin/cos.
class Expr {
 public:
  Expr() = default;

  static Expr constant(double c) { return make(Kind::Constant, c, 0, {}, {}); }
  static Expr variable(int index) {
    return make(Kind::Variable, 0.0, index, {}, {});
  }

  bool valid() const { return node_ != nullptr; }

  double eval(const Eigen::VectorXd& x) const { return eval_rec<double>(*node_, x); }
  Interval eval(const IntervalVector& x) const {
    return eval_rec<Interval>(*node_, x);
  }

  friend Expr operator+(const Expr& a, const Expr& b) {
    return make(Kind::Add, 0.0, 0, a.node_, b.node_);
  }
  friend Expr operator-(const Expr& a, const Expr& b) {
    return make(Kind::Sub, 0.0, 0, a.node_, b.node_);
  }
  friend Expr operator*(const Expr& a, const Expr& b) {
    return make(Kind::Mul, 0.0, 0, a.node_, b.node_);
  }
  friend Expr operator-(const Expr& a) {
    return make(Kind::Neg, 0.0, 0, a.node_, {});
  }
  friend Expr sin(const Expr& a) { return make(Kind::Sin, 0.0, 0, a.node_, {}); }
  friend Expr cos(const Expr& a) { return make(Kind::Cos, 0.0, 0, a.node_, {}); }

 private:
  enum class Kind { Constant, Variable, Add, Sub, Mul, Neg, Sin, Cos };

  struct Node {
    Kind kind;
    double value;
    int var;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };

  static Expr make(Kind kind, double value, int var,
                   std::shared_ptr<const Node> a,
                   std::shared_ptr<const Node> b) {
    Expr e;
    e.node_ = std::make_shared<const Node>(Node{kind, value, var, std::move(a),
                                                std::move(b)});
    return e;
  }

  template <class S, class Vec>
  static S eval_rec(const Node& n, const Vec& x) {
    using std::cos;
    using std::sin;
    switch (n.kind) {
      case Kind::Constant:
        return S(n.value);
      case Kind::Variable:
        if (n.var < 0 || n.var >= static_cast<int>(x.size())) {
          throw std::out_of_range("Expr: variable index out of range");
        }
        return S(x[n.var]);
      case Kind::Add:
        return eval_rec<S>(*n.a, x) + eval_rec<S>(*n.b, x);
      case Kind::Sub:
        return eval_rec<S>(*n.a, x) - eval_rec<S>(*n.b, x);
      case Kind::Mul:
        return eval_rec<S>(*n.a, x) * eval_rec<S>(*n.b, x);
      case Kind::Neg:
        return -eval_rec<S>(*n.a, x);
      case Kind::Sin:
        return sin(eval_rec<S>(*n.a, x));
      case Kind::Cos:
        return cos(eval_rec<S>(*n.a, x));
    }
    throw std::logic_error("Expr: bad node kind");
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace barrier_reach
