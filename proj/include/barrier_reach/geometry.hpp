#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "barrier_reach/interval.hpp"

namespace barrier_reach {

/// Axis-aligned box; used for initial sets, obstacles and the global domain.
struct HyperBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  HyperBox() = default;
  HyperBox(Eigen::VectorXd lo, Eigen::VectorXd up);

  int dim() const { return static_cast<int>(lower.size()); }
  Eigen::VectorXd center() const { return 0.5 * (lower + upper); }
  Eigen::VectorXd half_widths() const { return 0.5 * (upper - lower); }
  std::vector<Eigen::VectorXd> corners() const;
};

/// One template direction of the generalized octagon: either a unit
/// direction +-e_i (j < 0) or a pairwise direction si*e_i + sj*e_j, i < j.
struct OctagonDirection {
  int i = 0;
  int j = -1;
  double si = 1.0;
  double sj = 0.0;

  double dot(const Eigen::VectorXd& x) const {
    return j < 0 ? si * x[i] : si * x[i] + sj * x[j];
  }
  Interval dot(const IntervalVector& box) const {
    const Interval a = si > 0 ? box[i] : -box[i];
    if (j < 0) return a;
    return a + (sj > 0 ? box[j] : -box[j]);
  }
  std::string name() const;
};

/// Generalized octagon {x : d.x <= s_d for every template direction d}.
/// Templates are +-e_i plus all pairwise +-e_i +- e_j (i < j), giving
/// 2n + 2n(n-1) directions in a fixed canonical order.
class OctagonRegion {
 public:
  OctagonRegion() = default;
  OctagonRegion(int dim, Eigen::VectorXd offsets);

  static int direction_count(int dim) { return 2 * dim * dim; }
  static OctagonDirection direction_at(int dim, int k);
  static int opposite_index(int dim, int k);

  int dim() const { return dim_; }
  const Eigen::VectorXd& offsets() const { return offsets_; }
  double offset(int k) const { return offsets_[k]; }
  double half_extent(int k) const {
    return 0.5 * (offsets_[k] + offsets_[opposite_index(dim_, k)]);
  }
  HyperBox bounding_box() const;

 private:
  int dim_ = 0;
  Eigen::VectorXd offsets_;
};

/// X_u = domain \ inner, with exact membership semantics.
struct RegionComplement {
  OctagonRegion inner;
  HyperBox domain;
};

enum class BoxPosition { Inside, Outside, Straddles };

/// Tightest octagon containing every input point (equals the octagonal
/// over-approximation of their convex hull).
OctagonRegion octagon_hull(const std::vector<Eigen::VectorXd>& points);

/// Grow each support offset by eps times the half-extent along its
/// direction; bloat(r, 0) is the identity.
OctagonRegion bloat(const OctagonRegion& region, double eps);

/// Clip an octagon to a box of the same dimension.
OctagonRegion intersect(const OctagonRegion& region, const HyperBox& box);

bool box_membership(const Eigen::VectorXd& x, const HyperBox& b);
bool octagon_membership(const Eigen::VectorXd& x, const OctagonRegion& o);
bool complement_membership(const Eigen::VectorXd& x, const RegionComplement& c);

IntervalVector box_interval_hull(const HyperBox& b);

/// Conservative position of an interval box relative to an octagon:
/// Inside iff every constraint is certified satisfied over the whole box,
/// Outside iff some constraint is certified violated everywhere.
BoxPosition octagon_interval_test(const IntervalVector& box,
                                  const OctagonRegion& o);

/// Decompose domain \ bounding_box(inner) into at most 2n axis-aligned
/// slabs. Used by the verifier to run box-based checks over a complement.
std::vector<HyperBox> complement_slabs(const RegionComplement& c);

std::optional<HyperBox> box_intersection(const HyperBox& a, const HyperBox& b);

HyperBox interval_vector_to_box(const IntervalVector& box);

}  // namespace barrier_reach
