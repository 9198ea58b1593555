#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.h"
#include "localizer/antipodal_opt.h"

using namespace localizer;

namespace {

Rtd rtd_of(const Workspace& w) { return build_rtd(w, build_visibility(w)); }

int mismatches(const std::vector<PairInterval>& a, const std::vector<OptMatch>& b) {
  if (a.size() != b.size()) return static_cast<int>(std::max(a.size(), b.size()));
  int bad = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i].interval;
    if (x.e_t != y.e_t || x.e_b != y.e_b || std::abs(x.lo - y.lo) > 1e-9 || std::abs(x.hi - y.hi) > 1e-9) ++bad;
  }
  return bad;
}

}  // namespace

TEST_CASE("classify") {
  SideOpenings s{1, 2, 3, 4};
  CHECK(classify(s, 2.5) == CellClass::Full);
  CHECK(classify(s, 0.5) == CellClass::Empty);
  CHECK(classify(s, 4.5) == CellClass::Empty);
  CHECK(classify(s, 1.5) == CellClass::Partial);
  CHECK(classify(s, 3.5) == CellClass::Partial);
  CHECK_THROWS_AS(classify(s, 2.0), OnCriticalValue);
}

TEST_CASE("critical values") {
  RtdCell c;
  c.left = {{0, 1}, {1, 2}};
  c.right = {{0, 1}, {4, 3}};
  auto v = critical_values({c});
  REQUIRE(v.size() == 6);
  CHECK(v[0] == 0);
  CHECK(v[1] == 1);
  CHECK(v[4] == 4);
  CHECK(std::isinf(v[5]));
  CHECK(critical_values({}).size() == 2);

  auto w = fixtures::unit_square();
  auto r = rtd_of(w);
  auto d = critical_values(r.cells);
  CHECK(d.size() <= 4 * r.cells.size() + 2);
  for (size_t i = 1; i + 1 < d.size(); ++i) {
    bool realized = false;
    for (const auto& cell : r.cells) {
      auto s = side_openings(cell);
      for (double x : {s.left_min, s.left_max, s.right_min, s.right_max}) realized |= std::abs(x - d[i]) <= 1e-9;
    }
    CHECK(realized);
  }
}

TEST_CASE("opt index matches merged cell answers") {
  std::mt19937_64 rng(99);
  std::vector<Workspace> ws{fixtures::unit_square(), fixtures::square_with_hole(), fixtures::triangle_345(),
                            fixtures::three_rooms()};
  for (int k = 0; k < 4; ++k) ws.push_back(fixtures::random_polygon(100 + k, 7 + k));
  for (const auto& w : ws) {
    auto r = rtd_of(w);
    auto ai = build_antipodal_index(r.cells);
    auto oi = build_opt_index(w, r.cells);
    double diam = std::sqrt(diameter2(w).get_d());
    std::uniform_real_distribution<double> U(0.02, 0.6 * diam);
    for (int q = 0; q < 10; ++q) {
      double d1 = U(rng), d2 = U(rng);
      auto want = merge_by_pair(query_antipodal(w, r.cells, ai, d1, d2));
      auto got = query_opt(w, r.cells, oi, d1, d2);
      CHECK(mismatches(want, got) == 0);
    }
  }
}

TEST_CASE("opt endpoints are witnessed by vertices") {
  auto w = fixtures::random_polygon(5, 9);
  auto r = rtd_of(w);
  auto oi = build_opt_index(w, r.cells);
  for (const auto& m : oi.intervals) {
    double d = m.d_lo + (m.d_hi - m.d_lo) / 2;
    double lo = resolve_endpoint(w, r.cells, m.lo, d);
    double hi = resolve_endpoint(w, r.cells, m.hi, d);
    CHECK(lo <= hi + 1e-9);
  }
  const auto& m = oi.intervals.front();
  if (m.lo.endpoint.kind == Endpoint::Kind::Root)
    CHECK_THROWS_AS(resolve_endpoint(w, r.cells, m.lo, m.d_hi * 10 + 100), NoIncidence);
}

TEST_CASE("spiky triangle output stays small") {
  for (int n : {16, 32}) {
    auto w = fixtures::spiky_triangle(n);
    auto r = rtd_of(w);
    auto ai = build_antipodal_index(r.cells);
    auto oi = build_opt_index(w, r.cells);
    double d1 = 0.3, d2 = 0.3;
    auto cells = query_antipodal(w, r.cells, ai, d1, d2);
    int raw = 0;
    for (const auto& m : cells) raw += m.e_t == fixtures::kSpikyHypotenuse && m.e_b == fixtures::kSpikyBase;
    int merged = 0;
    for (const auto& o : query_opt(w, r.cells, oi, d1, d2))
      merged += o.interval.e_t == fixtures::kSpikyHypotenuse && o.interval.e_b == fixtures::kSpikyBase;
    MESSAGE("n=" << n << " raw=" << raw << " merged=" << merged);
    CHECK(raw >= n / 2);
    CHECK(merged <= 3);
  }
}
