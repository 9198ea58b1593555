#include "fixtures.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace localizer::fixtures {

namespace {

Point pt(const Scalar& x, const Scalar& y) { return {x, y}; }

Workspace box(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1) {
  return Workspace::from_rings({{pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)}});
}

}  // namespace

Scalar rationalize(double v, long denom) {
  Scalar q(static_cast<long>(std::llround(v * static_cast<double>(denom))), denom);
  q.canonicalize();
  return q;
}

Workspace unit_square() { return box(0, 0, 1, 1); }

Workspace square_with_hole() {
  Scalar a(2, 5), b(3, 5);
  return Workspace::from_rings({{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}, {pt(a, a), pt(a, b), pt(b, b), pt(b, a)}});
}

Workspace triangle_345() { return Workspace::from_rings({{pt(0, 0), pt(4, 0), pt(0, 3)}}); }

Workspace right_triangle() { return Workspace::from_rings({{pt(0, 0), pt(1, 0), pt(0, 1)}}); }

Workspace regular_polygon(int n) {
  std::vector<Point> ring(n);
  int half = n / 2;
  for (int k = 0; k < n; ++k) {
    bool mirrored = n % 2 == 0 && k >= half;
    int base = mirrored ? k - half : k;
    double phi = 2.0 * std::numbers::pi * (base + 0.25) / n;
    Scalar t = rationalize(std::tan(phi / 2), 1L << 20);
    if (mirrored) t = -1 / t;
    Scalar den = 1 + t * t;
    ring[k] = pt((1 - t * t) / den, 2 * t / den);
  }
  return Workspace::from_rings({ring});
}

Workspace three_rooms() {
  const int xy[][2] = {{0, 0},  {30, 0}, {30, 2}, {26, 2}, {26, 3}, {28, 3}, {28, 9}, {22, 9}, {22, 3}, {24, 3},
                       {24, 2}, {16, 2}, {16, 3}, {18, 3}, {18, 9}, {12, 9}, {12, 3}, {14, 3}, {14, 2}, {6, 2},
                       {6, 3},  {8, 3},  {8, 9},  {2, 9},  {2, 3},  {4, 3},  {4, 2},  {0, 2}};
  std::vector<Point> ring;
  for (auto& p : xy) ring.push_back(pt(p[0], p[1]));
  return Workspace::from_rings({ring});
}

Workspace spiky_triangle(int spikes) {
  std::vector<Point> ring{pt(0, 0), pt(20, 0), pt(0, 6)};
  const double cx = -3.0, cy = 3.0, span = 0.45;
  for (int i = spikes - 1; i >= 0; --i) {
    double psi = spikes == 1 ? 0.0 : -span + 2 * span * i / (spikes - 1);
    ring.push_back(pt(rationalize(cx + 5.0 * std::cos(psi)), rationalize(cy + 5.0 * std::sin(psi))));
    if (i > 0) {
      double mid = -span + 2 * span * (i - 0.5) / (spikes - 1);
      ring.push_back(pt(rationalize(cx + 3.5 * std::cos(mid)), rationalize(cy + 3.5 * std::sin(mid))));
    }
  }
  return Workspace::from_rings({ring});
}

Workspace random_polygon(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<double> ang(n);
    for (double& a : ang) a = unit(rng) * 2.0 * std::numbers::pi;
    std::sort(ang.begin(), ang.end());
    bool spread = true;
    for (int i = 0; i < n; ++i) {
      double gap = (i + 1 < n ? ang[i + 1] : ang[0] + 2.0 * std::numbers::pi) - ang[i];
      if (gap < 0.15 || gap > 2.5) spread = false;
    }
    if (!spread) continue;
    std::vector<Point> ring;
    for (double a : ang) {
      double r = 2.0 + 8.0 * unit(rng);
      ring.push_back(pt(rationalize(r * std::cos(a), 1000), rationalize(r * std::sin(a), 1000)));
    }
    try {
      Workspace w = Workspace::from_rings({ring});
      if (w.general_position()) return w;
    } catch (const InvalidPolygon&) {
    }
  }
}

}  // namespace localizer::fixtures
