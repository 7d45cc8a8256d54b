#include "barrier_reach/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace barrier_reach {

HyperBox::HyperBox(Eigen::VectorXd lo, Eigen::VectorXd up)
    : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.size() != upper.size() || lower.size() < 1) {
    throw std::invalid_argument("HyperBox: dimension mismatch");
  }
  for (int i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw std::invalid_argument("HyperBox: lower > upper");
    }
  }
}

std::vector<Eigen::VectorXd> HyperBox::corners() const {
  const int n = dim();
  std::vector<Eigen::VectorXd> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) {
      c[i] = (mask >> i) & 1 ? upper[i] : lower[i];
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string OctagonDirection::name() const {
  auto part = [](double s, int idx) {
    return std::string(s > 0 ? "+" : "-") + "x" + std::to_string(idx);
  };
  std::string s = part(si, i);
  if (j >= 0) s += part(sj, j);
  return s;
}

OctagonDirection OctagonRegion::direction_at(int dim, int k) {
  OctagonDirection d;
  if (k < 2 * dim) {
    d.i = k / 2;
    d.si = (k % 2 == 0) ? 1.0 : -1.0;
    return d;
  }
  int t = k - 2 * dim;
  int pair = t / 4;
  const int combo = t % 4;
  for (int i = 0; i < dim; ++i) {
    const int count = dim - 1 - i;
    if (pair < count) {
      d.i = i;
      d.j = i + 1 + pair;
      break;
    }
    pair -= count;
  }
  d.si = (combo < 2) ? 1.0 : -1.0;
  d.sj = (combo % 2 == 0) ? 1.0 : -1.0;
  return d;
}

int OctagonRegion::opposite_index(int dim, int k) {
  if (k < 2 * dim) return k ^ 1;
  const int t = k - 2 * dim;
  const int pair = t / 4;
  const int combo = t % 4;
  return 2 * dim + 4 * pair + (3 - combo);
}

OctagonRegion::OctagonRegion(int dim, Eigen::VectorXd offsets)
    : dim_(dim), offsets_(std::move(offsets)) {
  if (dim_ < 1 || offsets_.size() != direction_count(dim_)) {
    throw std::invalid_argument("OctagonRegion: wrong offset count");
  }
  for (int k = 0; k < offsets_.size(); ++k) {
    if (!std::isfinite(offsets_[k])) {
      throw std::invalid_argument("OctagonRegion: non-finite offset");
    }
    if (offsets_[k] + offsets_[opposite_index(dim_, k)] < 0.0) {
      throw std::invalid_argument("OctagonRegion: empty region");
    }
  }
}

HyperBox OctagonRegion::bounding_box() const {
  Eigen::VectorXd lo(dim_), up(dim_);
  for (int i = 0; i < dim_; ++i) {
    up[i] = offsets_[2 * i];
    lo[i] = -offsets_[2 * i + 1];
  }
  return HyperBox(lo, up);
}

OctagonRegion octagon_hull(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) throw std::invalid_argument("octagon_hull: no points");
  const int n = static_cast<int>(points.front().size());
  for (const auto& p : points) {
    if (p.size() != n) {
      throw std::invalid_argument("octagon_hull: dimension mismatch");
    }
  }
  const int m = OctagonRegion::direction_count(n);
  Eigen::VectorXd offsets =
      Eigen::VectorXd::Constant(m, -std::numeric_limits<double>::infinity());
  for (int k = 0; k < m; ++k) {
    const OctagonDirection d = OctagonRegion::direction_at(n, k);
    for (const auto& p : points) {
      offsets[k] = std::max(offsets[k], d.dot(p));
    }
  }
  return OctagonRegion(n, std::move(offsets));
}

OctagonRegion bloat(const OctagonRegion& region, double eps) {
  if (eps < 0.0) throw std::invalid_argument("bloat: negative factor");
  const int n = region.dim();
  Eigen::VectorXd offsets = region.offsets();
  for (int k = 0; k < offsets.size(); ++k) {
    offsets[k] += eps * region.half_extent(k);
  }
  return OctagonRegion(n, std::move(offsets));
}

OctagonRegion intersect(const OctagonRegion& region, const HyperBox& box) {
  if (region.dim() != box.dim()) {
    throw std::invalid_argument("intersect: dimension mismatch");
  }
  const int n = region.dim();
  Eigen::VectorXd offsets = region.offsets();
  for (int k = 0; k < offsets.size(); ++k) {
    const OctagonDirection d = OctagonRegion::direction_at(n, k);
    // Support of the box along d: pick the maximizing corner per component.
    double s = (d.si > 0 ? box.upper[d.i] : -box.lower[d.i]);
    if (d.j >= 0) s += (d.sj > 0 ? box.upper[d.j] : -box.lower[d.j]);
    offsets[k] = std::min(offsets[k], s);
  }
  return OctagonRegion(n, std::move(offsets));
}

bool box_membership(const Eigen::VectorXd& x, const HyperBox& b) {
  if (x.size() != b.dim()) {
    throw std::invalid_argument("box_membership: dimension mismatch");
  }
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] < b.lower[i] || x[i] > b.upper[i]) return false;
  }
  return true;
}

bool octagon_membership(const Eigen::VectorXd& x, const OctagonRegion& o) {
  if (x.size() != o.dim()) {
    throw std::invalid_argument("octagon_membership: dimension mismatch");
  }
  const int m = OctagonRegion::direction_count(o.dim());
  for (int k = 0; k < m; ++k) {
    if (OctagonRegion::direction_at(o.dim(), k).dot(x) > o.offset(k)) {
      return false;
    }
  }
  return true;
}

bool complement_membership(const Eigen::VectorXd& x, const RegionComplement& c) {
  return box_membership(x, c.domain) && !octagon_membership(x, c.inner);
}

IntervalVector box_interval_hull(const HyperBox& b) {
  IntervalVector out(b.dim());
  for (int i = 0; i < b.dim(); ++i) out[i] = Interval(b.lower[i], b.upper[i]);
  return out;
}

BoxPosition octagon_interval_test(const IntervalVector& box,
                                  const OctagonRegion& o) {
  if (static_cast<int>(box.size()) != o.dim()) {
    throw std::invalid_argument("octagon_interval_test: dimension mismatch");
  }
  const int m = OctagonRegion::direction_count(o.dim());
  bool all_inside = true;
  for (int k = 0; k < m; ++k) {
    const Interval v = OctagonRegion::direction_at(o.dim(), k).dot(box);
    if (v.lo > o.offset(k)) return BoxPosition::Outside;
    if (v.hi > o.offset(k)) all_inside = false;
  }
  return all_inside ? BoxPosition::Inside : BoxPosition::Straddles;
}

std::vector<HyperBox> complement_slabs(const RegionComplement& c) {
  const int n = c.domain.dim();
  const HyperBox inner_box = c.inner.bounding_box();
  std::vector<HyperBox> slabs;
  Eigen::VectorXd lo = c.domain.lower;
  Eigen::VectorXd up = c.domain.upper;
  for (int i = 0; i < n; ++i) {
    const double l = std::max(inner_box.lower[i], lo[i]);
    const double u = std::min(inner_box.upper[i], up[i]);
    if (l > u) {
      // Inner box misses the remaining domain entirely; whatever is left
      // is all complement.
      slabs.push_back(HyperBox(lo, up));
      return slabs;
    }
    if (lo[i] < l) {
      Eigen::VectorXd slab_up = up;
      slab_up[i] = l;
      slabs.push_back(HyperBox(lo, slab_up));
    }
    if (up[i] > u) {
      Eigen::VectorXd slab_lo = lo;
      slab_lo[i] = u;
      slabs.push_back(HyperBox(slab_lo, up));
    }
    lo[i] = l;
    up[i] = u;
  }
  return slabs;
}

std::optional<HyperBox> box_intersection(const HyperBox& a, const HyperBox& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("box_intersection: dimension mismatch");
  }
  Eigen::VectorXd lo(a.dim()), up(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    lo[i] = std::max(a.lower[i], b.lower[i]);
    up[i] = std::min(a.upper[i], b.upper[i]);
    if (lo[i] > up[i]) return std::nullopt;
  }
  return HyperBox(lo, up);
}

HyperBox interval_vector_to_box(const IntervalVector& box) {
  Eigen::VectorXd lo(box.size()), up(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    lo[i] = box[i].lo;
    up[i] = box[i].hi;
  }
  return HyperBox(lo, up);
}

}  // namespace barrier_reach
