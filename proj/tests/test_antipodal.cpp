#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.h"
#include "localizer/antipodal.h"

using namespace localizer;

namespace {

constexpr double kPi = std::numbers::pi;

Rtd rtd_of(const Workspace& w) { return build_rtd(w, build_visibility(w)); }

Vec2 glissette_point(double alpha, double d1, double d2, double phi) {
  double y = d2 * std::cos(phi + alpha);
  return {d1 * std::cos(phi) / std::sin(alpha) + y / std::tan(alpha), y};
}

}  // namespace

TEST_CASE("interval tree stabbing") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0, 10);
  std::vector<IntervalTree<int>::Entry> es;
  for (int i = 0; i < 300; ++i) {
    double a = U(rng), b = U(rng);
    es.push_back({std::min(a, b), std::max(a, b), i});
  }
  IntervalTree<int> t(es);
  CHECK(IntervalTree<int>().stab(1.0).empty());
  for (int k = 0; k < 200; ++k) {
    double x = k % 10 == 0 ? es[k].lo : U(rng);
    std::vector<int> got, want;
    for (const auto& e : t.stab(x)) got.push_back(e.value);
    for (const auto& e : es)
      if (e.lo <= x && x <= e.hi) want.push_back(e.value);
    std::sort(got.begin(), got.end());
    CHECK(got == want);
  }
}

TEST_CASE("antipodal stab matches linear scan") {
  for (const auto& w : {fixtures::unit_square(), fixtures::three_rooms(), fixtures::random_polygon(4, 10)}) {
    auto r = rtd_of(w);
    auto idx = build_antipodal_index(r.cells);
    for (double d : {0.05, 0.7, 1.0, 2.5, 9.0}) {
      std::vector<int> want;
      for (const auto& c : r.cells)
        if (min_opening(c) <= d && d <= max_opening(c)) want.push_back(c.id);
      CHECK(stab_cells(idx, d) == want);
    }
  }
}

TEST_CASE("glissette ellipse") {
  auto circle = glissette_ellipse(kPi / 2, 0.7, 0.7);
  CHECK(circle.a == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(circle.b == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(glissette_ellipse(kPi / 4, 1, 1).rotation == doctest::Approx(kPi / 8).epsilon(1e-12));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> A(0.1, kPi - 0.1), D(0.1, 3);
  for (int k = 0; k < 20; ++k) {
    double alpha = A(rng), d1 = D(rng), d2 = D(rng);
    auto e = glissette_ellipse(alpha, d1, d2);
    double worst = 0;
    for (int s = 0; s < 1000; ++s) worst = std::max(worst, std::abs(e.residual(glissette_point(alpha, d1, d2, 2 * kPi * s / 1000))));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("unit square parallel bands") {
  auto w = fixtures::unit_square();
  auto r = rtd_of(w);
  auto idx = build_antipodal_index(r.cells);
  auto res = query_antipodal(w, r.cells, idx, 0.5, 0.5);
  REQUIRE_FALSE(res.empty());
  bool found0 = false, found90 = false;
  for (const auto& m : res) {
    const auto* band = std::get_if<ParallelBand>(&m.curve);
    if (!band) continue;
    if (std::abs(band->theta - kPi / 2) < 1e-12) {
      found90 = true;
      CHECK(band->from.y == doctest::Approx(0.5));
      CHECK(band->to.y == doctest::Approx(0.5));
    }
    if (band->theta < 1e-12 || std::abs(band->theta - 2 * kPi) < 1e-12) {
      found0 = true;
      CHECK(band->from.x == doctest::Approx(0.5));
    }
  }
  CHECK(found0);
  CHECK(found90);
  CHECK_THROWS_AS(query_antipodal(w, r.cells, idx, 0.0, 1.0), NonPositiveMeasurement);
}

TEST_CASE("pose at theta on a slanted floor") {
  auto w = Workspace::from_rings({{{0, 0}, {1, 1}, {0, 1}}});
  auto r = rtd_of(w);
  bool seen = false;
  for (const auto& c : r.cells) {
    if (c.e_t != 1 || c.e_b != 0 || kPi / 2 < c.theta_begin || kPi / 2 > c.theta_end) continue;
    auto pose = pose_at_theta(w, c, 0.5, 0.5, kPi / 2);
    REQUIRE(std::holds_alternative<Vec2>(pose));
    CHECK(std::abs(std::get<Vec2>(pose).x) < 1e-9);
    CHECK(std::get<Vec2>(pose).y == doctest::Approx(0.5));
    CHECK(std::holds_alternative<std::monostate>(pose_at_theta(w, c, 0.5, 0.5, c.theta_end + 0.1)));
    seen = true;
  }
  CHECK(seen);
}

TEST_CASE("antipodal poses read both measurements") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<Workspace> ws{fixtures::triangle_345(), fixtures::random_polygon(7, 8), fixtures::square_with_hole(),
                            fixtures::three_rooms()};
  for (const auto& w : ws) {
    auto r = rtd_of(w);
    auto idx = build_antipodal_index(r.cells);
    for (int q = 0; q < 5; ++q) {
      double d1 = 0.1 + U(rng), d2 = 0.1 + U(rng);
      auto res = query_antipodal(w, r.cells, idx, d1, d2);
      for (const auto& m : res) {
        const auto* arc = std::get_if<EllipseArc>(&m.curve);
        if (!arc) continue;
        for (int s = 0; s < 5; ++s) {
          double th = arc->theta_begin + (arc->theta_end - arc->theta_begin) * U(rng);
          auto pose = pose_at_theta(w, r.cells[m.cell], d1, d2, th);
          REQUIRE(std::holds_alternative<Vec2>(pose));
          Vec2 p = std::get<Vec2>(pose);
          CHECK(std::abs(ray_cast_approx(w, p.x, p.y, th) - d1) <= 1e-7);
          CHECK(std::abs(ray_cast_approx(w, p.x, p.y, th + kPi) - d2) <= 1e-7);
          CHECK(std::abs(arc->ellipse.residual(p)) <= 1e-9);
        }
      }

      auto length = [](const std::vector<PairInterval>& v) {
        double s = 0;
        for (const auto& iv : v) s += iv.hi - iv.lo;
        return s;
      };
      double fwd = length(merge_by_pair(res));
      double rev = length(merge_by_pair(query_antipodal(w, r.cells, idx, d2, d1)));
      CHECK(fwd == doctest::Approx(rev).epsilon(1e-9));
    }
  }
}
