#include "localizer/antipodal.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace localizer {

double Ellipse::residual(const Vec2& p) const {
  double c = std::cos(rotation), s = std::sin(rotation);
  double x = p.x - center.x, y = p.y - center.y;
  double u = x * c + y * s, v = x * s - y * c;
  return u * u / (a * a) + v * v / (b * b) - 1.0;
}

Ellipse glissette_ellipse(double alpha, double d1, double d2) {
  double r = d1 / d2;
  double s2a = std::sin(2 * alpha), c2a = std::cos(2 * alpha);
  double th = 0.5 * std::atan2(s2a, r + c2a);
  double s = std::sin(th), c = std::cos(th), ta = std::tan(alpha);
  double a2, b2;
  if (std::abs(s2a) > 1e-6 && std::abs(s) > 1e-9 && std::abs(c) > 1e-9) {
    a2 = d1 * d1 / (1 - s / (c * ta) * (1 + r));
    b2 = d1 * d1 / (1 + c / (s * ta) * (1 + r));
  } else {
    double cot = std::cos(alpha) / std::sin(alpha);
    double pxx = 1 / (d1 * d1);
    double pxy = -(1 + r) * cot / (d1 * d1);
    double pyy = (1 + r) * (1 + r) * cot * cot / (d1 * d1) + 1 / (d2 * d2);
    a2 = 1 / (pxx * c * c + 2 * pxy * c * s + pyy * s * s);
    b2 = 1 / (pxx * s * s - 2 * pxy * c * s + pyy * c * c);
  }
  return {{0.0, 0.0}, std::sqrt(a2), std::sqrt(b2), th};
}

Ellipse ellipse_params(const OneSidedEdge& ceiling, const OneSidedEdge& floor, double d1, double d2) {
  Dir f = dir_from(floor.source, floor.target);
  Dir t = dir_from(ceiling.source, ceiling.target);
  Scalar cr = cross(f, t);
  if (sgn(cr) == 0) throw ParallelSupportLines("ceiling and floor are parallel");
  double alpha = std::atan2(cr.get_d(), Scalar(dot(f, t)).get_d());
  if (alpha < 0) alpha += std::numbers::pi;
  Ellipse e = glissette_ellipse(alpha, d1, d2);
  Dir q = dir_from(floor.source, ceiling.source);
  Scalar k = Scalar(cross(q, t)) / cr;
  e.center = {Scalar(floor.source.x + k * f.dx).get_d(), Scalar(floor.source.y + k * f.dy).get_d()};
  e.rotation += std::atan2(f.dy.get_d(), f.dx.get_d());
  return e;
}

AntipodalIndex build_antipodal_index(const std::vector<RtdCell>& cells) {
  AntipodalIndex idx;
  std::vector<IntervalTree<int>::Entry> entries;
  for (const auto& c : cells) {
    idx.spans.push_back({min_opening(c), max_opening(c), c.id});
    entries.push_back({min_opening(c), max_opening(c), c.id});
  }
  idx.tree = IntervalTree<int>(std::move(entries));
  return idx;
}

std::vector<int> stab_cells(const AntipodalIndex& index, double d) {
  std::vector<int> out;
  index.tree.stab(d, [&](const IntervalTree<int>::Entry& e) { out.push_back(e.value); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AntipodalMatch> query_antipodal(const Workspace& w, const std::vector<RtdCell>& cells,
                                            const AntipodalIndex& index, double d1, double d2) {
  if (!(d1 > 0) || !(d2 > 0)) throw NonPositiveMeasurement("measurements must be positive");
  double d = d1 + d2;
  std::vector<AntipodalMatch> out;
  for (int id : stab_cells(index, d)) {
    const RtdCell& c = cells[id];
    CellGeometry g(w, c);
    for (const auto& iv : chord_set(g, c, d)) {
      AntipodalMatch m{c.id, c.e_t, c.e_b, iv, EllipseArc{}};
      if (c.parallel) {
        double th = iv.lo.theta;
        double ux = std::cos(th), uy = std::sin(th);
        Vec2 tl = g.wall_top(0, th), tr = g.wall_top(1, th);
        m.curve = ParallelBand{th, {tl.x - d1 * ux, tl.y - d1 * uy}, {tr.x - d1 * ux, tr.y - d1 * uy}};
      } else {
        m.curve = EllipseArc{ellipse_params(w.edge(c.e_t), w.edge(c.e_b), d1, d2), iv.lo.theta, iv.hi.theta, d1, d2};
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

PoseAt pose_at_theta(const Workspace& w, const RtdCell& c, double d1, double d2, double theta) {
  if (theta < c.theta_begin || theta > c.theta_end) return std::monostate{};
  auto inv = cell_opening_inverse(w, c, theta, d1 + d2);
  if (std::holds_alternative<NoX>(inv)) return std::monostate{};
  double ux = std::cos(theta), uy = std::sin(theta);
  auto back = [&](const Vec2& t) { return Vec2{t.x - d1 * ux, t.y - d1 * uy}; };
  if (std::holds_alternative<AllX>(inv)) {
    CellGeometry g(w, c);
    return PoseSegment{back(g.wall_top(0, theta)), back(g.wall_top(1, theta))};
  }
  OpeningProfile p = opening_profile(w, c);
  double x = std::get<double>(inv);
  return back(p.to_world({x, p.m_t.get_d() * x + p.b_t.get_d()}));
}

std::vector<PairInterval> normalize_pairs(std::vector<PairInterval> in) {
  std::sort(in.begin(), in.end(), [](const PairInterval& a, const PairInterval& b) {
    return std::tie(a.e_t, a.e_b, a.lo, a.hi) < std::tie(b.e_t, b.e_b, b.lo, b.hi);
  });
  std::vector<PairInterval> out;
  for (const auto& iv : in) {
    if (!out.empty() && out.back().e_t == iv.e_t && out.back().e_b == iv.e_b && iv.lo <= out.back().hi + eps()) {
      out.back().hi = std::max(out.back().hi, iv.hi);
      continue;
    }
    out.push_back(iv);
  }
  return out;
}

std::vector<PairInterval> merge_by_pair(const std::vector<AntipodalMatch>& matches) {
  std::vector<PairInterval> all;
  for (const auto& m : matches) all.push_back({m.e_t, m.e_b, m.range.lo.theta, m.range.hi.theta});
  return normalize_pairs(std::move(all));
}

}  // namespace localizer
