#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

#include "barrier_reach/barrier.hpp"
#include "barrier_reach/geometry.hpp"

namespace barrier_reach {

inline constexpr double kDefaultGamma = 1e-4;
inline constexpr long kOfflineBudget = 200000;
inline constexpr long kOnlineBudget = 20000;
/// Absolute tolerance on |B| when realizing a witness on the zero level set.
inline constexpr double kZeroBand = 1e-3;

enum class ConditionKind { InitCondition, UnsafeCondition, LieCondition };
enum class VerificationStatus { Valid, Counterexample, Unknown };

/// Unsafe region: either the complement of a working region (training
/// mode) or a list of box obstacles intersected with the working region
/// (planning mode).
using UnsafeSpec = std::variant<RegionComplement, std::vector<HyperBox>>;

struct VerificationProblem {
  SystemModel model;
  std::optional<ControlInput> control;
  QuadraticCertificate cert;
  HyperBox init;
  UnsafeSpec unsafe;
  OctagonRegion working;
  double gamma = kDefaultGamma;
  long budget = kOfflineBudget;
};

struct VerificationOutcome {
  VerificationStatus status = VerificationStatus::Unknown;
  std::optional<Eigen::VectorXd> witness;
  std::optional<ConditionKind> violated;
  long boxes_explored = 0;
};

/// Sound certification of the three barrier conditions by deterministic
/// interval branch-and-bound (bisect the widest dimension, FIFO order):
///   (i)   B <= 0 on the initial set,
///   (ii)  B > 0 on the unsafe region as specified,
///   (iii) Bdot <= -gamma wherever B can vanish inside the working region.
/// Valid is returned only when every condition is certified; a
/// Counterexample always carries a point whose direct evaluation violates
/// the named condition; Unknown means the box budget ran out first.
VerificationOutcome certify(const VerificationProblem& problem);

/// Search a box for a point that exactly violates the given condition.
/// Deterministic: centers, corners, a fixed pseudo-random batch, and (for
/// the Lie condition) bisection between samples of opposite B sign.
std::optional<Eigen::VectorXd> find_counterexample_point(
    const IntervalVector& box, ConditionKind condition,
    const VerificationProblem& problem);

/// Exact (floating-point) violation predicate used to vet witnesses.
bool violates_exactly(const Eigen::VectorXd& x, ConditionKind condition,
                      const VerificationProblem& problem);

}  // namespace barrier_reach
