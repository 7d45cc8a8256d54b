#include <doctest.h>

#include "barrier_reach/geometry.hpp"
#include "barrier_reach/json_io.hpp"
#include "barrier_reach/rng.hpp"

using namespace barrier_reach;

namespace {

double support_of(const OctagonRegion& region, const std::string& name) {
  for (int k = 0; k < region.offsets().size(); ++k) {
    if (OctagonRegion::direction_at(region.dim(), k).name() == name) {
      return region.offset(k);
    }
  }
  throw std::logic_error("unknown direction " + name);
}

std::vector<Eigen::VectorXd> random_cloud(Rng& rng, int count, int dim) {
  std::vector<Eigen::VectorXd> points;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd p(dim);
    for (int d = 0; d < dim; ++d) p[d] = rng.uniform(-3.0, 3.0);
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("octagon hull of the unit square") {
  std::vector<Eigen::VectorXd> pts = {
      Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
      Eigen::Vector2d(1, 1)};
  const OctagonRegion oct = octagon_hull(pts);
  CHECK(support_of(oct, "+x0") == 1.0);
  CHECK(support_of(oct, "-x0") == 0.0);
  CHECK(support_of(oct, "+x1") == 1.0);
  CHECK(support_of(oct, "-x1") == 0.0);
  CHECK(support_of(oct, "+x0+x1") == 2.0);
  CHECK(support_of(oct, "-x0-x1") == 0.0);
  CHECK(support_of(oct, "+x0-x1") == 1.0);
  CHECK(support_of(oct, "-x0+x1") == 1.0);
}

TEST_CASE("hull of a single point is that point") {
  const Eigen::Vector2d p(0.3, -1.2);
  const OctagonRegion oct = octagon_hull({p});
  for (int k = 0; k < oct.offsets().size(); ++k) {
    CHECK(oct.half_extent(k) == 0.0);
  }
  CHECK(octagon_membership(p, oct));
  CHECK_FALSE(octagon_membership(Eigen::Vector2d(0.3, -1.1999), oct));
  // Zero extent: bloating cannot grow a point.
  const OctagonRegion bloated = bloat(oct, 1.0);
  CHECK(bloated.offsets() == oct.offsets());
}

TEST_CASE("hull of diagonal segment pins the diagonal directions") {
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    pts.push_back(Eigen::Vector2d(t, t));
  }
  const OctagonRegion oct = octagon_hull(pts);
  CHECK(support_of(oct, "+x0-x1") == 0.0);
  CHECK(support_of(oct, "-x0+x1") == 0.0);
}

TEST_CASE("bloat grows each direction by eps times its half-extent") {
  std::vector<Eigen::VectorXd> pts = {
      Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
      Eigen::Vector2d(1, 1)};
  const OctagonRegion oct = octagon_hull(pts);
  const OctagonRegion grown = bloat(oct, 0.1);
  CHECK(support_of(grown, "+x0") == doctest::Approx(1.05).epsilon(1e-12));
  CHECK(support_of(grown, "-x0") == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(support_of(grown, "+x0+x1") == doctest::Approx(2.1).epsilon(1e-12));
  CHECK(support_of(grown, "-x0-x1") == doctest::Approx(0.1).epsilon(1e-12));

  const OctagonRegion same = bloat(oct, 0.0);
  CHECK(same.offsets() == oct.offsets());
  CHECK_THROWS_AS(bloat(oct, -0.1), std::invalid_argument);
}

TEST_CASE("membership predicates are exact and closed") {
  const HyperBox box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1));
  CHECK(box_membership(Eigen::Vector2d(0.5, 0.5), box));
  CHECK_FALSE(box_membership(Eigen::Vector2d(1.5, 0.5), box));
  CHECK(box_membership(Eigen::Vector2d(1.0, 0.5), box));  // face point
  CHECK_THROWS_AS(box_membership(Eigen::Vector3d(0, 0, 0), box),
                  std::invalid_argument);
}

TEST_CASE("interval test against an octagon") {
  std::vector<Eigen::VectorXd> pts = {
      Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
      Eigen::Vector2d(1, 1)};
  const OctagonRegion oct = octagon_hull(pts);
  CHECK(octagon_interval_test({Interval(0.1, 0.2), Interval(0.1, 0.2)}, oct) ==
        BoxPosition::Inside);
  CHECK(octagon_interval_test({Interval(2, 3), Interval(2, 3)}, oct) ==
        BoxPosition::Outside);
  CHECK(octagon_interval_test({Interval(0.5, 1.5), Interval(0, 0.5)}, oct) ==
        BoxPosition::Straddles);
}

TEST_CASE("interval test never contradicts corner membership") {
  Rng rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    const OctagonRegion oct = octagon_hull(random_cloud(rng, 6, 2));
    IntervalVector box(2);
    for (int d = 0; d < 2; ++d) {
      const double a = rng.uniform(-4.0, 4.0);
      const double b = rng.uniform(-4.0, 4.0);
      box[d] = Interval(std::min(a, b), std::max(a, b));
    }
    const BoxPosition pos = octagon_interval_test(box, oct);
    const HyperBox hb = interval_vector_to_box(box);
    bool all = true, any = false;
    for (const auto& corner : hb.corners()) {
      const bool member = octagon_membership(corner, oct);
      all = all && member;
      any = any || member;
    }
    if (pos == BoxPosition::Inside) CHECK(all);
    if (pos == BoxPosition::Outside) CHECK_FALSE(any);
  }
}

TEST_CASE("hull soundness: every input point is a member") {
  Rng rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    const int dim = 2 + (iter % 2);
    const auto cloud = random_cloud(rng, 40, dim);
    const OctagonRegion oct = octagon_hull(cloud);
    for (const auto& p : cloud) CHECK(octagon_membership(p, oct));
  }
}

TEST_CASE("bloat monotonicity on random samples") {
  Rng rng(31);
  for (int iter = 0; iter < 50; ++iter) {
    const auto cloud = random_cloud(rng, 20, 2);
    const OctagonRegion oct = octagon_hull(cloud);
    const OctagonRegion small = bloat(oct, 0.2);
    const OctagonRegion large = bloat(oct, 0.5);
    for (const auto& p : cloud) {
      CHECK(octagon_membership(p, small));
      CHECK(octagon_membership(p, large));
    }
    // Sample inside the smaller bloat; all members of the larger.
    const HyperBox bb = small.bounding_box();
    for (int s = 0; s < 50; ++s) {
      Eigen::Vector2d q(rng.uniform(bb.lower[0], bb.upper[0]),
                        rng.uniform(bb.lower[1], bb.upper[1]));
      if (octagon_membership(q, small)) CHECK(octagon_membership(q, large));
    }
  }
}

TEST_CASE("complement membership excludes the inner region") {
  Rng rng(17);
  const auto cloud = random_cloud(rng, 25, 2);
  const OctagonRegion inner = octagon_hull(cloud);
  const HyperBox domain(Eigen::Vector2d(-5, -5), Eigen::Vector2d(5, 5));
  const RegionComplement complement{inner, domain};
  for (int s = 0; s < 2000; ++s) {
    Eigen::Vector2d q(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
    const bool in_both =
        octagon_membership(q, inner) && complement_membership(q, complement);
    CHECK_FALSE(in_both);
  }
}

TEST_CASE("complement slabs cover the domain outside the inner box") {
  Rng rng(23);
  const auto cloud = random_cloud(rng, 25, 2);
  const OctagonRegion inner = octagon_hull(cloud);
  const HyperBox domain(Eigen::Vector2d(-5, -5), Eigen::Vector2d(5, 5));
  const auto slabs = complement_slabs(RegionComplement{inner, domain});
  CHECK(slabs.size() <= 4);
  const HyperBox inner_box = inner.bounding_box();
  for (int s = 0; s < 2000; ++s) {
    Eigen::Vector2d q(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
    if (box_membership(q, inner_box)) continue;
    bool covered = false;
    for (const auto& slab : slabs) covered = covered || box_membership(q, slab);
    CHECK(covered);
  }
}

TEST_CASE("box intersection clips or reports empty") {
  const HyperBox a(Eigen::Vector2d(0, 0), Eigen::Vector2d(2, 2));
  const HyperBox b(Eigen::Vector2d(1, 1), Eigen::Vector2d(3, 3));
  const auto ab = box_intersection(a, b);
  REQUIRE(ab.has_value());
  CHECK(ab->lower == Eigen::Vector2d(1, 1));
  CHECK(ab->upper == Eigen::Vector2d(2, 2));
  const HyperBox c(Eigen::Vector2d(5, 5), Eigen::Vector2d(6, 6));
  CHECK_FALSE(box_intersection(a, c).has_value());
}

TEST_CASE("geometry JSON round trips bit-exactly") {
  Rng rng(77);
  const auto cloud = random_cloud(rng, 10, 3);
  const OctagonRegion oct = octagon_hull(cloud);
  const nlohmann::json j = oct;
  const auto back = j.get<OctagonRegion>();
  CHECK(back.dim() == oct.dim());
  CHECK(back.offsets() == oct.offsets());

  const HyperBox box(Eigen::Vector2d(0.1, -0.3), Eigen::Vector2d(1.0 / 3.0, 7.7));
  const nlohmann::json jb = box;
  const auto box_back = jb.get<HyperBox>();
  CHECK(box_back.lower == box.lower);
  CHECK(box_back.upper == box.upper);
  CHECK(jb.at("lower").size() == 2);
}

TEST_CASE("empty octagon construction is rejected") {
  const int m = OctagonRegion::direction_count(2);
  Eigen::VectorXd offsets = Eigen::VectorXd::Constant(m, -1.0);
  CHECK_THROWS_AS(OctagonRegion(2, offsets), std::invalid_argument);
}

TEST_SUITE_END();
