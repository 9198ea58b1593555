#include "localizer/geom.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <tuple>

namespace localizer {

double eps() {
  static const double value = [] {
    if (const char* env = std::getenv("LOCALIZER_EPS")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0.0) return v;
    }
    return 1e-9;
  }();
  return value;
}

bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

Dir dir_from(const Point& from, const Point& to) { return {to.x - from.x, to.y - from.y}; }

Dir negate(const Dir& d) { return {-d.dx, -d.dy}; }

Scalar cross(const Dir& a, const Dir& b) { return a.dx * b.dy - a.dy * b.dx; }

Scalar dot(const Dir& a, const Dir& b) { return a.dx * b.dx + a.dy * b.dy; }

int sgn(const Scalar& v) {
  int s = ::sgn(v);
  return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

namespace {

int half(const Dir& d) {
  int sy = sgn(d.dy);
  if (sy > 0 || (sy == 0 && sgn(d.dx) > 0)) return 0;
  return 1;
}

int cross_sign(const Dir& a, const Dir& b) {
  mpq_class l = a.dx * b.dy;
  mpq_class r = a.dy * b.dx;
  return cmp(l, r) > 0 ? 1 : (cmp(l, r) < 0 ? -1 : 0);
}

}  // namespace

bool dir_equal(const Dir& a, const Dir& b) {
  return cross_sign(a, b) == 0 && sgn(dot(a, b)) > 0;
}

bool dir_less(const Dir& a, const Dir& b) {
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross_sign(a, b) > 0;
}

Dir dir_between(const Dir& a, const Dir& b) {
  int c = cross_sign(a, b);
  if (c > 0) return {a.dx + b.dx, a.dy + b.dy};
  return {-a.dy, a.dx};
}

bool ccw_strictly_between(const Dir& a, const Dir& b, const Dir& d) {
  int ab = cross_sign(a, b);
  if (ab > 0) return cross_sign(a, d) > 0 && cross_sign(d, b) > 0;
  if (ab < 0) return !(cross_sign(b, d) >= 0 && cross_sign(d, a) >= 0);
  if (sgn(dot(a, b)) < 0) return cross_sign(a, d) > 0;
  return !dir_equal(a, d);
}

double dir_angle(const Dir& d) { return normalize_angle(std::atan2(d.dy.get_d(), d.dx.get_d())); }

double normalize_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
  int s = cross_sign(dir_from(p, q), dir_from(p, r));
  return s > 0 ? Orientation::Left : (s < 0 ? Orientation::Right : Orientation::Collinear);
}

bool point_on_segment(const Point& p, const Point& a, const Point& b) {
  if (orientation(a, b, p) != Orientation::Collinear) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = static_cast<int>(orientation(a, b, c));
  int o2 = static_cast<int>(orientation(a, b, d));
  int o3 = static_cast<int>(orientation(c, d, a));
  int o4 = static_cast<int>(orientation(c, d, b));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return point_on_segment(c, a, b) || point_on_segment(d, a, b) || point_on_segment(a, c, d) ||
         point_on_segment(b, c, d);
}

namespace {

Scalar ring_area2(const std::vector<Point>& r) {
  Scalar s = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    const Point& a = r[i];
    const Point& b = r[(i + 1) % r.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return s;
}

bool inside_ring(const std::vector<Point>& r, const Point& p) {
  bool in = false;
  for (size_t i = 0; i < r.size(); ++i) {
    const Point& a = r[i];
    const Point& b = r[(i + 1) % r.size()];
    if ((a.y > p.y) != (b.y > p.y)) {
      Orientation o = orientation(a, b, p);
      bool upward = b.y > a.y;
      if ((upward && o == Orientation::Left) || (!upward && o == Orientation::Right)) in = !in;
    }
  }
  return in;
}

}  // namespace

Workspace Workspace::from_rings(std::vector<std::vector<Point>> rings) {
  if (rings.empty()) throw InvalidPolygon("workspace has no outer ring");
  for (size_t r = 0; r < rings.size(); ++r) {
    auto& ring = rings[r];
    if (ring.size() < 3) throw InvalidPolygon("ring " + std::to_string(r) + " has fewer than 3 vertices");
    for (auto& p : ring) {
      p.x.canonicalize();
      p.y.canonicalize();
    }
    for (size_t i = 0; i < ring.size(); ++i) {
      if (ring[i] == ring[(i + 1) % ring.size()])
        throw InvalidPolygon("ring " + std::to_string(r) + " repeats consecutive vertex " + std::to_string(i));
    }
    Scalar a2 = ring_area2(ring);
    if (sgn(a2) == 0) throw InvalidPolygon("ring " + std::to_string(r) + " has zero area");
    bool ccw = sgn(a2) > 0;
    if ((r == 0) != ccw) std::reverse(ring.begin(), ring.end());
  }

  struct Seg {
    size_t ring, idx;
    const Point* a;
    const Point* b;
  };
  std::vector<Seg> segs;
  for (size_t r = 0; r < rings.size(); ++r)
    for (size_t i = 0; i < rings[r].size(); ++i)
      segs.push_back({r, i, &rings[r][i], &rings[r][(i + 1) % rings[r].size()]});

  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      const Seg& s = segs[i];
      const Seg& t = segs[j];
      bool same_ring = s.ring == t.ring;
      size_t n = rings[s.ring].size();
      bool adjacent = same_ring && ((s.idx + 1) % n == t.idx || (t.idx + 1) % n == s.idx);
      if (adjacent) {
        const Point* shared = (s.idx + 1) % n == t.idx ? s.b : s.a;
        const Point* s_other = shared == s.a ? s.b : s.a;
        const Point* t_other = shared == t.a ? t.b : t.a;
        if (point_on_segment(*s_other, *t.a, *t.b) || point_on_segment(*t_other, *s.a, *s.b))
          throw InvalidPolygon("ring " + std::to_string(s.ring) + " folds back on itself");
        continue;
      }
      if (segments_intersect(*s.a, *s.b, *t.a, *t.b)) {
        if (same_ring)
          throw InvalidPolygon("ring " + std::to_string(s.ring) + " self-intersects");
        throw InvalidPolygon("rings " + std::to_string(s.ring) + " and " + std::to_string(t.ring) +
                             " intersect");
      }
    }
  }
  for (size_t r = 1; r < rings.size(); ++r) {
    if (!inside_ring(rings[0], rings[r][0]))
      throw InvalidPolygon("hole " + std::to_string(r) + " lies outside the outer ring");
    for (size_t q = 1; q < rings.size(); ++q)
      if (q != r && inside_ring(rings[q], rings[r][0]))
        throw InvalidPolygon("hole " + std::to_string(r) + " lies inside hole " + std::to_string(q));
  }

  Workspace w;
  for (size_t r = 0; r < rings.size(); ++r) {
    int start = w.size();
    int n = static_cast<int>(rings[r].size());
    w.ring_start_.push_back(start);
    for (int i = 0; i < n; ++i) {
      w.pts_.push_back(rings[r][i]);
      w.ax_.push_back(rings[r][i].x.get_d());
      w.ay_.push_back(rings[r][i].y.get_d());
      w.next_.push_back(start + (i + 1) % n);
      w.prev_.push_back(start + (i + n - 1) % n);
      w.ring_.push_back(static_cast<int>(r));
    }
  }

  int nv = w.size();
  for (int i = 0; i < nv && w.general_position_; ++i)
    for (int j = i + 1; j < nv && w.general_position_; ++j)
      for (int k = j + 1; k < nv; ++k)
        if (orientation(w.pts_[i], w.pts_[j], w.pts_[k]) == Orientation::Collinear) {
          w.general_position_ = false;
          break;
        }
  for (int i = 0; i < nv && w.general_position_; ++i)
    for (int j = i + 1; j < nv; ++j) {
      Dir a = dir_from(w.pts_[i], w.pts_[w.next_[i]]);
      Dir b = dir_from(w.pts_[j], w.pts_[w.next_[j]]);
      if (sgn(cross(a, b)) == 0) {
        w.general_position_ = false;
        break;
      }
    }
  return w;
}

std::vector<int> Workspace::ring(int r) const {
  std::vector<int> out;
  int start = ring_start_[r];
  int v = start;
  do {
    out.push_back(v);
    v = next_[v];
  } while (v != start);
  return out;
}

OneSidedEdge Workspace::edge(int e) const { return {pts_[e], pts_[next_[e]], Side::Left}; }

bool Workspace::is_boundary_pair(int u, int v) const { return next_[u] == v || next_[v] == u; }

Scalar Workspace::area() const {
  Scalar s = 0;
  for (int i = 0; i < size(); ++i) {
    const Point& a = pts_[i];
    const Point& b = pts_[next_[i]];
    s += a.x * b.y - a.y * b.x;
  }
  return s / 2;
}

Location point_in_workspace(const Workspace& w, const Point& p) {
  for (int e = 0; e < w.edge_count(); ++e)
    if (point_on_segment(p, w.vertex(e), w.vertex(w.next(e)))) return Location::Boundary;
  bool in = false;
  for (int e = 0; e < w.edge_count(); ++e) {
    const Point& a = w.vertex(e);
    const Point& b = w.vertex(w.next(e));
    if ((a.y > p.y) != (b.y > p.y)) {
      Orientation o = orientation(a, b, p);
      bool upward = b.y > a.y;
      if ((upward && o == Orientation::Left) || (!upward && o == Orientation::Right)) in = !in;
    }
  }
  return in ? Location::Interior : Location::Exterior;
}

RayHit ray_cast(const Workspace& w, const Point& p, const Dir& dir) {
  Location loc = point_in_workspace(w, p);
  if (loc == Location::Exterior) throw PointOutsideWorkspace("ray origin lies outside the workspace");

  struct Candidate {
    Scalar t;
    int edge;
    int vertex;
  };
  std::vector<Candidate> cands;
  for (int e = 0; e < w.edge_count(); ++e) {
    const Point& a = w.vertex(e);
    const Point& b = w.vertex(w.next(e));
    Dir ab = dir_from(a, b);
    Dir ap = dir_from(p, a);
    Scalar den = cross(dir, ab);
    if (sgn(den) == 0) {
      if (sgn(cross(ap, dir)) != 0) continue;
      for (int v : {e, w.next(e)}) {
        Dir pv = dir_from(p, w.vertex(v));
        Scalar t = dot(pv, dir) / dot(dir, dir);
        if (sgn(t) > 0) cands.push_back({t, -1, v});
      }
      continue;
    }
    Scalar t = cross(ap, ab) / den;
    Scalar s = cross(ap, dir) / den;
    if (sgn(t) <= 0 || sgn(s) < 0 || s > 1) continue;
    if (sgn(s) == 0)
      cands.push_back({t, -1, e});
    else if (s == 1)
      cands.push_back({t, -1, w.next(e)});
    else
      cands.push_back({t, e, -1});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.t != y.t) return x.t < y.t;
    return std::tie(x.edge, x.vertex) < std::tie(y.edge, y.vertex);
  });

  auto finish = [&](const Scalar& t, int edge, int vertex) {
    RayHit h;
    h.t = t;
    h.distance2 = t * t * dot(dir, dir);
    h.distance = std::sqrt(h.distance2.get_d());
    h.edge = edge;
    h.vertex = vertex;
    return h;
  };

  if (loc == Location::Boundary) {
    Point probe;
    if (cands.empty()) {
      probe = {p.x + dir.dx, p.y + dir.dy};
    } else {
      probe = {p.x + dir.dx * cands.front().t / 2, p.y + dir.dy * cands.front().t / 2};
    }
    if (point_in_workspace(w, probe) == Location::Exterior) {
      int on = 0;
      for (int e = 0; e < w.edge_count(); ++e)
        if (point_on_segment(p, w.vertex(e), w.vertex(w.next(e)))) {
          on = e;
          break;
        }
      return finish(Scalar(0), on, -1);
    }
  }

  for (const Candidate& c : cands) {
    if (c.edge >= 0) return finish(c.t, c.edge, -1);
    int v = c.vertex;
    const Point& q = w.vertex(v);
    int sp = sgn(cross(dir, dir_from(q, w.vertex(w.prev(v)))));
    int sn = sgn(cross(dir, dir_from(q, w.vertex(w.next(v)))));
    if (sp * sn > 0) continue;
    int edge;
    if (sp > 0)
      edge = w.prev(v);
    else if (sn > 0)
      edge = v;
    else
      edge = sp != 0 ? w.prev(v) : v;
    return finish(c.t, edge, v);
  }
  throw DegenerateWorkspace("ray escaped the workspace");
}

double ray_cast_approx(const Workspace& w, double px, double py, double theta) {
  double ux = std::cos(theta), uy = std::sin(theta);
  double best = std::numeric_limits<double>::infinity();
  for (int e = 0; e < w.edge_count(); ++e) {
    double ax = w.ax(e), ay = w.ay(e);
    double bx = w.ax(w.next(e)), by = w.ay(w.next(e));
    double ex = bx - ax, ey = by - ay;
    double den = ux * ey - uy * ex;
    if (den == 0.0) continue;
    double qx = ax - px, qy = ay - py;
    double t = (qx * ey - qy * ex) / den;
    double s = (qx * uy - qy * ux) / den;
    if (t > 0.0 && s >= 0.0 && s <= 1.0 && t < best) best = t;
  }
  return best;
}

Scalar diameter2(const Workspace& w) {
  Scalar best = 0;
  for (int i = 0; i < w.size(); ++i)
    for (int j = i + 1; j < w.size(); ++j) {
      Dir d = dir_from(w.vertex(i), w.vertex(j));
      Scalar l = dot(d, d);
      if (l > best) best = l;
    }
  return best;
}

Scalar parse_scalar(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
          s.end());
  if (s.empty()) throw Error("empty number");
  auto bad = [&] { return Error("malformed number '" + text + "'"); };
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw bad();
    if (sgn(q.get_den()) == 0) throw bad();
    q.canonicalize();
    return q;
  }
  size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false, seen_dot = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) --exponent;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      ++pos;
      if (pos >= s.size()) throw bad();
      size_t used = 0;
      long e = 0;
      try {
        e = std::stol(s.substr(pos), &used);
      } catch (...) {
        throw bad();
      }
      if (pos + used != s.size()) throw bad();
      exponent += e;
      pos = s.size();
      break;
    } else {
      throw bad();
    }
  }
  if (!seen_digit) throw bad();
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class q = exponent >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::string to_string(const Scalar& s) {
  Scalar c = s;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Scalar& s) { return s.get_d(); }

}  // namespace localizer
