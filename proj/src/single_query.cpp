#include "localizer/single_query.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

namespace localizer {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPoly = bg::model::polygon<BPoint, false>;
using BMulti = bg::model::multi_polygon<BPoly>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SingleIndex build_single_index(const std::vector<RtdCell>& cells) {
  SingleIndex idx;
  idx.order.resize(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) idx.order[i] = cells[i].id;
  std::vector<double> mx(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) mx[cells[i].id] = max_opening(cells[i]);
  std::sort(idx.order.begin(), idx.order.end(), [&](int a, int b) {
    if (mx[a] != mx[b]) return mx[a] > mx[b];
    return a < b;
  });
  for (int id : idx.order) idx.max_opening.push_back(mx[id]);
  return idx;
}

std::vector<AngleRange> preimage_ranges(const Workspace& w, const RtdCell& c, double d) {
  CellGeometry g(w, c);
  auto set = unite(level_set(g, c, 0, d, true), level_set(g, c, 1, d, true));
  std::vector<AngleRange> out;
  for (const auto& iv : set) out.push_back({iv.lo.theta, iv.hi.theta});
  return out;
}

SingleResult query_single(const Workspace& w, const std::vector<RtdCell>& cells, const SingleIndex& index, double d) {
  if (!(d > 0)) throw NonPositiveMeasurement("measurement must be positive");
  SingleResult res;
  res.d = d;
  for (size_t i = 0; i < index.order.size(); ++i) {
    ++res.inspected;
    if (index.max_opening[i] < d) break;
    const RtdCell& c = cells[index.order[i]];
    res.cells.push_back({c.id, d, preimage_ranges(w, c, d)});
  }
  return res;
}

std::optional<std::pair<Vec2, Vec2>> preimage_segment(const CellGeometry& g, double d, double theta) {
  double fl = g.wall_opening(0, theta), fr = g.wall_opening(1, theta);
  if (fl < d && fr < d) return std::nullopt;
  double l0 = 0.0, l1 = 1.0;
  if (fl < d) l0 = (d - fl) / (fr - fl);
  if (fr < d) l1 = (d - fl) / (fr - fl);
  Vec2 tl = g.wall_top(0, theta), tr = g.wall_top(1, theta);
  double ux = std::cos(theta), uy = std::sin(theta);
  auto at = [&](double l) {
    return Vec2{tl.x + l * (tr.x - tl.x) - d * ux, tl.y + l * (tr.y - tl.y) - d * uy};
  };
  return std::pair{at(l0), at(l1)};
}

Vec2 curve_point(const WallCurve& c, double theta) {
  double ux = std::cos(theta), uy = std::sin(theta);
  if (const auto* arc = std::get_if<CircularArc>(&c)) return {arc->center.x - arc->radius * ux, arc->center.y - arc->radius * uy};
  const auto& k = std::get<ConchoidArc>(c);
  double t = (k.k - k.normal.x * k.pole.x - k.normal.y * k.pole.y) / (k.normal.x * ux + k.normal.y * uy);
  return {k.pole.x + (t - k.offset_d) * ux, k.pole.y + (t - k.offset_d) * uy};
}

PositionRegion project_region(const Workspace& w, const RtdCell& c, double d) {
  if (d > max_opening(c)) throw EmptyRegion("measurement exceeds the cell's max opening");
  CellGeometry g(w, c);
  PositionRegion r;
  r.cell = c.id;
  r.d = d;
  r.floor_normal = g.floor_normal();
  r.floor_offset = g.floor_offset();
  auto wall = [&](int side) -> WallCurve {
    if (g.vertex_on_ceiling(side)) return CircularArc{g.vertex(side), d};
    return ConchoidArc{g.vertex(side), g.ceiling_normal(), g.ceiling_offset(), d};
  };
  WallCurve left = wall(0), right = wall(1);
  Vec2 n = g.ceiling_normal();
  double tp = normalize_angle(std::atan2(n.y, n.x));
  for (const auto& range : preimage_ranges(w, c, d)) {
    double cut = -1.0;
    for (double cand : {tp, tp + kTwoPi})
      if (cand > range.begin && cand < range.end) cut = cand;
    if (cut < 0) {
      r.pieces.push_back({range.begin, range.end, left, right});
    } else {
      r.pieces.push_back({range.begin, cut, left, right});
      r.pieces.push_back({cut, range.end, left, right});
    }
  }
  return r;
}

double ConchoidImplicit::residual(double x, double y) const {
  double X = x - pole.x, Y = y - pole.y;
  double np = normal.x * X + normal.y * Y;
  return (np - a) * (np - a) * (X * X + Y * Y) - d * d * np * np;
}

double ConchoidImplicit::residual_slope_form(double x, double y) const {
  double X = x - pole.x, Y = y - pole.y;
  double q = slope * X - Y;
  double t = q + sign * std::abs(a) * std::sqrt(1 + slope * slope);
  return t * t * (X * X + Y * Y) - d * d * q * q;
}

ConchoidImplicit conchoid_implicit(const Point& pole, const Point& a, const Point& b, double d) {
  if (orientation(a, b, pole) == Orientation::Collinear) throw PoleOnDirectrix("pole lies on the directrix");
  ConchoidImplicit k;
  k.pole = {pole.x.get_d(), pole.y.get_d()};
  double dx = Scalar(b.x - a.x).get_d(), dy = Scalar(b.y - a.y).get_d();
  double len = std::hypot(dx, dy);
  k.normal = {dy / len, -dx / len};
  k.a = k.normal.x * (a.x.get_d() - k.pole.x) + k.normal.y * (a.y.get_d() - k.pole.y);
  k.d = d;
  k.has_slope = sgn(b.x - a.x) != 0;
  if (k.has_slope) {
    Scalar m = (b.y - a.y) / (b.x - a.x);
    k.slope = m.get_d();
    Scalar above = a.y + m * (pole.x - a.x) - pole.y;
    k.sign = sgn(above) > 0 ? 1 : -1;
  }
  return k;
}

namespace {

void sample_curve(const WallCurve& c, double t0, double t1, double deviation, int depth, std::vector<Vec2>& out) {
  Vec2 p0 = curve_point(c, t0), p1 = curve_point(c, t1);
  double tm = 0.5 * (t0 + t1);
  Vec2 pm = curve_point(c, tm);
  double ex = p1.x - p0.x, ey = p1.y - p0.y;
  double len = std::hypot(ex, ey);
  double dev = len > 0 ? std::abs(ex * (pm.y - p0.y) - ey * (pm.x - p0.x)) / len : std::hypot(pm.x - p0.x, pm.y - p0.y);
  if (depth >= 18 || dev <= deviation) {
    out.push_back(p1);
    return;
  }
  sample_curve(c, t0, tm, deviation, depth + 1, out);
  sample_curve(c, tm, t1, deviation, depth + 1, out);
}

std::vector<Vec2> flatten_curve(const WallCurve& c, double t0, double t1, double deviation) {
  std::vector<Vec2> out{curve_point(c, t0)};
  constexpr int kStart = 4;
  for (int i = 0; i < kStart; ++i)
    sample_curve(c, t0 + (t1 - t0) * i / kStart, t0 + (t1 - t0) * (i + 1) / kStart, deviation, 0, out);
  return out;
}

Ring clip(const Ring& in, const Vec2& n, double k) {
  Ring out;
  if (in.empty()) return out;
  auto val = [&](const Vec2& p) { return n.x * p.x + n.y * p.y - k; };
  for (size_t i = 0; i < in.size(); ++i) {
    const Vec2& a = in[i];
    const Vec2& b = in[(i + 1) % in.size()];
    double va = val(a), vb = val(b);
    if (va <= 0) out.push_back(a);
    if ((va < 0 && vb > 0) || (va > 0 && vb < 0)) {
      double t = va / (va - vb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

double ring_area(const Ring& r) {
  double s = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    const Vec2& a = r[i];
    const Vec2& b = r[(i + 1) % r.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return 0.5 * s;
}

BPoly to_boost(const Ring& r) {
  BPoly p;
  for (const Vec2& v : r) bg::append(p.outer(), BPoint(v.x, v.y));
  bg::correct(p);
  return p;
}

BMulti union_all(std::vector<BMulti> parts) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::vector<BMulti> next;
    for (size_t i = 0; i + 1 < parts.size(); i += 2) {
      BMulti u;
      bg::union_(parts[i], parts[i + 1], u);
      next.push_back(std::move(u));
    }
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return parts.front();
}

}  // namespace

std::vector<Ring> flatten_region(const PositionRegion& r, double deviation) {
  std::vector<Ring> out;
  for (const auto& piece : r.pieces) {
    Ring ring = flatten_curve(piece.left, piece.theta_begin, piece.theta_end, deviation);
    Ring back = flatten_curve(piece.right, piece.theta_begin, piece.theta_end, deviation);
    ring.insert(ring.end(), back.rbegin(), back.rend());
    ring = clip(ring, r.floor_normal, r.floor_offset);
    if (ring.size() >= 3 && std::abs(ring_area(ring)) > 0) out.push_back(std::move(ring));
  }
  return out;
}

PlanarRegion region_union(const std::vector<PositionRegion>& regions, double deviation) {
  std::vector<BMulti> parts;
  for (const auto& r : regions) {
    for (const Ring& ring : flatten_region(r, deviation)) {
      BPoly p = to_boost(ring);
      BMulti m;
      if (bg::is_valid(p)) {
        m.push_back(p);
      } else {
        bg::union_(BMulti{}, p, m);
      }
      if (!m.empty()) parts.push_back(std::move(m));
    }
  }
  BMulti u = union_all(std::move(parts));
  PlanarRegion out;
  for (const BPoly& p : u) {
    std::vector<Ring> poly;
    Ring outer;
    for (size_t i = 0; i + 1 < p.outer().size(); ++i) outer.push_back({p.outer()[i].x(), p.outer()[i].y()});
    poly.push_back(std::move(outer));
    for (const auto& in : p.inners()) {
      Ring hole;
      for (size_t i = 0; i + 1 < in.size(); ++i) hole.push_back({in[i].x(), in[i].y()});
      poly.push_back(std::move(hole));
    }
    out.polygons.push_back(std::move(poly));
  }
  return out;
}

double PlanarRegion::area() const {
  double s = 0;
  for (const auto& poly : polygons) {
    s += std::abs(ring_area(poly[0]));
    for (size_t i = 1; i < poly.size(); ++i) s -= std::abs(ring_area(poly[i]));
  }
  return s;
}

bool PlanarRegion::contains(const Vec2& p) const {
  auto inside = [&](const Ring& r) {
    bool in = false;
    for (size_t i = 0, j = r.size() - 1; i < r.size(); j = i++) {
      if ((r[i].y > p.y) != (r[j].y > p.y) &&
          p.x < (r[j].x - r[i].x) * (p.y - r[i].y) / (r[j].y - r[i].y) + r[i].x)
        in = !in;
    }
    return in;
  };
  for (const auto& poly : polygons) {
    if (!inside(poly[0])) continue;
    bool in_hole = false;
    for (size_t i = 1; i < poly.size(); ++i) in_hole |= inside(poly[i]);
    if (!in_hole) return true;
  }
  return false;
}

}  // namespace localizer
