#include "barrier_reach/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "barrier_reach/rng.hpp"

namespace barrier_reach {

namespace {

constexpr double kMinBoxWidth = 1e-9;
constexpr int kRandomProbes = 8;
constexpr std::uint64_t kProbeSeed = 0x9e3779b97f4a7c15ull;

struct SearchContext {
  const VerificationProblem& problem;
  std::vector<Expr> field;

  explicit SearchContext(const VerificationProblem& p)
      : problem(p), field(p.model.symbolic_form(p.control)) {}

  bool training_mode() const {
    return std::holds_alternative<RegionComplement>(problem.unsafe);
  }

  bool in_unsafe_region(const Eigen::VectorXd& x) const {
    if (training_mode()) {
      return complement_membership(x, std::get<RegionComplement>(problem.unsafe));
    }
    if (!octagon_membership(x, problem.working)) return false;
    for (const auto& obstacle : std::get<std::vector<HyperBox>>(problem.unsafe)) {
      if (box_membership(x, obstacle)) return true;
    }
    return false;
  }
};

bool violates(const SearchContext& ctx, const Eigen::VectorXd& x,
              ConditionKind condition) {
  const VerificationProblem& p = ctx.problem;
  switch (condition) {
    case ConditionKind::InitCondition:
      return box_membership(x, p.init) && evaluate(p.cert, x) > 0.0;
    case ConditionKind::UnsafeCondition:
      return ctx.in_unsafe_region(x) && evaluate(p.cert, x) <= 0.0;
    case ConditionKind::LieCondition: {
      if (!octagon_membership(x, p.working)) return false;
      if (std::abs(evaluate(p.cert, x)) > kZeroBand) return false;
      return lie_derivative(p.cert, p.model, x, p.control) >= -p.gamma;
    }
  }
  return false;
}

std::vector<Eigen::VectorXd> probe_points(const IntervalVector& box) {
  const int n = static_cast<int>(box.size());
  std::vector<Eigen::VectorXd> pts;
  Eigen::VectorXd center(n);
  for (int i = 0; i < n; ++i) center[i] = box[i].mid();
  pts.push_back(center);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = (mask >> i) & 1 ? box[i].hi : box[i].lo;
    pts.push_back(std::move(c));
  }
  Rng rng(kProbeSeed);
  for (int k = 0; k < kRandomProbes; ++k) {
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) q[i] = rng.uniform(box[i].lo, box[i].hi);
    pts.push_back(std::move(q));
  }
  return pts;
}

// Walk the segment [neg, pos] (B < 0 at neg, B > 0 at pos) down to the
// zero band, then test the Lie condition there.
std::optional<Eigen::VectorXd> bisect_zero_crossing(const SearchContext& ctx,
                                                    Eigen::VectorXd neg,
                                                    Eigen::VectorXd pos) {
  const VerificationProblem& p = ctx.problem;
  for (int iter = 0; iter < 80; ++iter) {
    Eigen::VectorXd mid = 0.5 * (neg + pos);
    const double value = evaluate(p.cert, mid);
    if (std::abs(value) <= kZeroBand) {
      if (violates(ctx, mid, ConditionKind::LieCondition)) return mid;
      return std::nullopt;
    }
    (value < 0.0 ? neg : pos) = std::move(mid);
  }
  return std::nullopt;
}

std::optional<Eigen::VectorXd> search_box(const SearchContext& ctx,
                                          const IntervalVector& box,
                                          ConditionKind condition) {
  const std::vector<Eigen::VectorXd> pts = probe_points(box);
  for (const auto& x : pts) {
    if (violates(ctx, x, condition)) return x;
  }
  if (condition != ConditionKind::LieCondition) return std::nullopt;

  const VerificationProblem& p = ctx.problem;
  std::optional<Eigen::VectorXd> negative, positive;
  for (const auto& x : pts) {
    const double value = evaluate(p.cert, x);
    if (value < 0.0 && !negative) negative = x;
    if (value > 0.0 && !positive) positive = x;
  }
  if (negative && positive) {
    return bisect_zero_crossing(ctx, *negative, *positive);
  }
  return std::nullopt;
}

int widest_dimension(const IntervalVector& box) {
  int best = 0;
  double w = box[0].width();
  for (int i = 1; i < static_cast<int>(box.size()); ++i) {
    if (box[i].width() > w) {
      w = box[i].width();
      best = i;
    }
  }
  return best;
}

enum class BoxVerdict { Satisfied, Undecided, Irrelevant };

class ConditionChecker {
 public:
  ConditionChecker(const SearchContext& ctx, ConditionKind condition)
      : ctx_(ctx), condition_(condition) {}

  BoxVerdict classify(const IntervalVector& box) const {
    const VerificationProblem& p = ctx_.problem;
    switch (condition_) {
      case ConditionKind::InitCondition: {
        const Interval b = interval_evaluate(p.cert, box);
        return b.hi <= 0.0 ? BoxVerdict::Satisfied : BoxVerdict::Undecided;
      }
      case ConditionKind::UnsafeCondition: {
        if (!ctx_.training_mode() &&
            octagon_interval_test(box, p.working) == BoxPosition::Outside) {
          return BoxVerdict::Irrelevant;
        }
        const Interval b = interval_evaluate(p.cert, box);
        return b.lo > 0.0 ? BoxVerdict::Satisfied : BoxVerdict::Undecided;
      }
      case ConditionKind::LieCondition: {
        if (octagon_interval_test(box, p.working) == BoxPosition::Outside) {
          return BoxVerdict::Irrelevant;
        }
        const Interval b = interval_evaluate(p.cert, box);
        if (b.lo > 0.0 || b.hi < 0.0) return BoxVerdict::Irrelevant;
        const Interval lie = interval_lie(p.cert, ctx_.field, box);
        return lie.hi <= -p.gamma ? BoxVerdict::Satisfied : BoxVerdict::Undecided;
      }
    }
    return BoxVerdict::Undecided;
  }

 private:
  const SearchContext& ctx_;
  ConditionKind condition_;
};

struct ConditionResult {
  enum class Kind { Certified, Counterexample, BudgetExhausted, Stalled };
  Kind kind = Kind::Certified;
  Eigen::VectorXd witness;
};

ConditionResult run_condition(const SearchContext& ctx, ConditionKind condition,
                              std::vector<IntervalVector> seeds,
                              long& boxes_explored) {
  const ConditionChecker checker(ctx, condition);
  std::deque<IntervalVector> queue(seeds.begin(), seeds.end());
  bool stalled = false;
  while (!queue.empty()) {
    if (boxes_explored >= ctx.problem.budget) {
      return {ConditionResult::Kind::BudgetExhausted, {}};
    }
    IntervalVector box = std::move(queue.front());
    queue.pop_front();
    ++boxes_explored;

    switch (checker.classify(box)) {
      case BoxVerdict::Satisfied:
      case BoxVerdict::Irrelevant:
        continue;
      case BoxVerdict::Undecided:
        break;
    }
    if (auto witness = search_box(ctx, box, condition)) {
      return {ConditionResult::Kind::Counterexample, *witness};
    }
    const int dim = widest_dimension(box);
    if (box[dim].width() < kMinBoxWidth) {
      // Cannot subdivide further and cannot decide: give up on this box
      // without certifying the condition.
      stalled = true;
      continue;
    }
    const double mid = box[dim].mid();
    IntervalVector left = box;
    IntervalVector right = std::move(box);
    left[dim].hi = mid;
    right[dim].lo = mid;
    queue.push_back(std::move(left));
    queue.push_back(std::move(right));
  }
  if (stalled) return {ConditionResult::Kind::Stalled, {}};
  return {ConditionResult::Kind::Certified, {}};
}

std::vector<IntervalVector> unsafe_seed_boxes(const VerificationProblem& p) {
  std::vector<IntervalVector> seeds;
  if (const auto* complement = std::get_if<RegionComplement>(&p.unsafe)) {
    for (const HyperBox& slab : complement_slabs(*complement)) {
      seeds.push_back(box_interval_hull(slab));
    }
    return seeds;
  }
  const HyperBox working_box = p.working.bounding_box();
  for (const HyperBox& obstacle : std::get<std::vector<HyperBox>>(p.unsafe)) {
    if (obstacle.dim() != p.model.n) {
      throw std::invalid_argument("certify: obstacle dimension mismatch");
    }
    if (auto clipped = box_intersection(obstacle, working_box)) {
      seeds.push_back(box_interval_hull(*clipped));
    }
  }
  return seeds;
}

void validate_problem(const VerificationProblem& p) {
  if (p.cert.dim() != p.model.n || p.init.dim() != p.model.n ||
      p.working.dim() != p.model.n) {
    throw std::invalid_argument("certify: dimension mismatch");
  }
  if (!(p.gamma > 0.0)) throw std::invalid_argument("certify: gamma <= 0");
  if (p.budget < 1) throw std::invalid_argument("certify: budget < 1");
  for (const auto& corner : p.init.corners()) {
    if (!octagon_membership(corner, p.working)) {
      throw std::invalid_argument("certify: init not contained in working region");
    }
  }
}

}  // namespace

bool violates_exactly(const Eigen::VectorXd& x, ConditionKind condition,
                      const VerificationProblem& problem) {
  SearchContext ctx(problem);
  return violates(ctx, x, condition);
}

std::optional<Eigen::VectorXd> find_counterexample_point(
    const IntervalVector& box, ConditionKind condition,
    const VerificationProblem& problem) {
  SearchContext ctx(problem);
  return search_box(ctx, box, condition);
}

VerificationOutcome certify(const VerificationProblem& problem) {
  validate_problem(problem);
  SearchContext ctx(problem);

  VerificationOutcome outcome;
  outcome.boxes_explored = 0;

  const std::array<ConditionKind, 3> order = {ConditionKind::InitCondition,
                                              ConditionKind::UnsafeCondition,
                                              ConditionKind::LieCondition};
  bool any_stalled = false;
  for (ConditionKind condition : order) {
    std::vector<IntervalVector> seeds;
    switch (condition) {
      case ConditionKind::InitCondition:
        seeds.push_back(box_interval_hull(problem.init));
        break;
      case ConditionKind::UnsafeCondition:
        seeds = unsafe_seed_boxes(problem);
        break;
      case ConditionKind::LieCondition:
        seeds.push_back(box_interval_hull(problem.working.bounding_box()));
        break;
    }
    const ConditionResult result =
        run_condition(ctx, condition, std::move(seeds), outcome.boxes_explored);
    switch (result.kind) {
      case ConditionResult::Kind::Certified:
        break;
      case ConditionResult::Kind::Counterexample:
        outcome.status = VerificationStatus::Counterexample;
        outcome.witness = result.witness;
        outcome.violated = condition;
        return outcome;
      case ConditionResult::Kind::BudgetExhausted:
        outcome.status = VerificationStatus::Unknown;
        return outcome;
      case ConditionResult::Kind::Stalled:
        any_stalled = true;
        break;
    }
  }
  outcome.status =
      any_stalled ? VerificationStatus::Unknown : VerificationStatus::Valid;
  return outcome;
}

}  // namespace barrier_reach
