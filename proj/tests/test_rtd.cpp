#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.h"
#include "localizer/rtd.h"

using namespace localizer;

namespace {

Rtd rtd_of(const Workspace& w) { return build_rtd(w, build_visibility(w)); }

std::vector<Dir> sample_dirs(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-997, 997);
  std::vector<Dir> out;
  while (static_cast<int>(out.size()) < count) {
    Dir u{Scalar(d(rng)), Scalar(d(rng))};
    if (sgn(u.dx) == 0 && sgn(u.dy) == 0) continue;
    out.push_back(u);
  }
  return out;
}

std::vector<std::array<int, 4>> live_keys(const Rtd& r, const Dir& u) {
  std::vector<std::array<int, 4>> keys;
  for (const auto& c : r.cells)
    if (cell_contains(c, u)) keys.push_back({c.e_t, c.e_b, c.v_l, c.v_r});
  std::sort(keys.begin(), keys.end());
  return keys;
}

void check_partition(const Workspace& w, const Rtd& r, int dirs) {
  for (const Dir& u : sample_dirs(dirs, 11)) {
    Scalar total = 0;
    for (const auto& c : r.cells)
      if (cell_contains(c, u)) total += trapezoid_area(cross_section(w, c, u));
    CHECK(total == w.area());
    CHECK(live_keys(r, u) == decomposition_at(w, u));
  }
}

void check_bookkeeping(const Rtd& r) {
  for (const auto& e : r.events) {
    int want = e.kind == EventKind::TypeI ? 2 : 3;
    CHECK_MESSAGE(e.terminated == want, e.origin << "->" << e.target);
    CHECK_MESSAGE(e.created == want, e.origin << "->" << e.target);
  }
}

}  // namespace

TEST_CASE("rtd unit square") {
  auto w = fixtures::unit_square();
  auto r = rtd_of(w);
  check_partition(w, r, 50);
  check_bookkeeping(r);
  for (const auto& c : r.cells) CHECK(c.theta_begin < c.theta_end);
}

TEST_CASE("rtd triangle has at most two trapezoids per direction") {
  auto w = fixtures::triangle_345();
  auto r = rtd_of(w);
  check_partition(w, r, 50);
  check_bookkeeping(r);
  for (const Dir& u : sample_dirs(50, 5)) CHECK(live_keys(r, u).size() <= 2);
}

TEST_CASE("rtd square with hole") {
  auto w = fixtures::square_with_hole();
  auto r = rtd_of(w);
  check_partition(w, r, 50);
  check_bookkeeping(r);
}

TEST_CASE("rtd random polygons") {
  for (int s = 0; s < 10; ++s) {
    auto w = fixtures::random_polygon(200 + s, 4 + s % 9);
    auto r = rtd_of(w);
    check_partition(w, r, 20);
    check_bookkeeping(r);
  }
}

TEST_CASE("rtd degenerate fixtures") {
  for (auto w : {fixtures::three_rooms(), fixtures::spiky_triangle(8), fixtures::regular_polygon(8)}) {
    auto r = rtd_of(w);
    check_partition(w, r, 20);
    check_bookkeeping(r);
  }
}

TEST_CASE("regular polygon cell growth") {
  std::vector<size_t> counts;
  for (int n : {8, 16, 32}) counts.push_back(rtd_of(fixtures::regular_polygon(n)).cells.size());
  MESSAGE("cells " << counts[0] << " " << counts[1] << " " << counts[2]);
  double ratio = static_cast<double>(counts[2]) / counts[1];
  CHECK(ratio >= 3.4);
  CHECK(ratio <= 4.6);
}
