#include "localizer/rtd.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace localizer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Dir& zero_dir() {
  static const Dir d{1, 0};
  return d;
}

bool dir_leq(const Dir& a, const Dir& b) { return !dir_less(b, a); }

using Key = std::array<int, 4>;

struct VertexState {
  int side_prev = 0, side_next = 0;
  int up = -1, down = -1;
};

struct HalfFace {
  int v, top, bottom;
  bool is_left;  // v is the left vertex of the face
};

int side_of(const Workspace& w, int v, int nb, const Dir& u) {
  return sgn(cross(u, dir_from(w.vertex(v), w.vertex(nb))));
}

int first_hit(const Workspace& w, int v, const Dir& u) {
  const Point& p = w.vertex(v);
  if (!ccw_strictly_between(dir_from(p, w.vertex(w.next(v))), dir_from(p, w.vertex(w.prev(v))), u)) return -1;
  int best = -1;
  Scalar best_t;
  bool at_end = false;
  for (int e = 0; e < w.edge_count(); ++e) {
    int a = w.edge_source(e), b = w.edge_target(e);
    if (a == v || b == v) continue;
    Dir ab = dir_from(w.vertex(a), w.vertex(b));
    Scalar den = cross(u, ab);
    if (sgn(den) == 0) continue;
    Dir pa = dir_from(p, w.vertex(a));
    Scalar t = cross(pa, ab) / den;
    if (sgn(t) <= 0) continue;
    Scalar s = cross(pa, u) / den;
    if (s < 0 || s > 1) continue;
    if (best < 0 || t < best_t) {
      best = e;
      best_t = t;
      at_end = s == 0 || s == 1;
    } else if (t == best_t) {
      at_end = true;
    }
  }
  if (best < 0 || at_end) throw DegenerateWorkspace("ray from vertex " + std::to_string(v) + " has no proper hit");
  return best;
}

VertexState state_at(const Workspace& w, int v, const Dir& u) {
  return {side_of(w, v, w.prev(v), u), side_of(w, v, w.next(v), u), first_hit(w, v, u), first_hit(w, v, negate(u))};
}

class FaceBuilder {
 public:
  explicit FaceBuilder(const Workspace& w) : w_(w), turn_(w.size()) {
    for (int v = 0; v < w.size(); ++v) {
      const Point& p = w.vertex(v);
      turn_[v] = sgn(cross(dir_from(p, w.vertex(w.prev(v))), dir_from(p, w.vertex(w.next(v)))));
    }
  }

  template <class LeftOf>
  std::vector<Key> faces(const std::vector<VertexState>& st, LeftOf left_of) const {
    std::vector<HalfFace> hs;
    for (int v = 0; v < w_.size(); ++v) half_faces(v, st[v], hs);
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(hs.size()); ++i) groups[{hs[i].top, hs[i].bottom}].push_back(i);

    std::vector<Key> out;
    for (auto& [tb, idx] : groups) {
      std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (hs[i].v != hs[j].v) return left_of(hs[i].v, hs[j].v);
        return hs[i].is_left < hs[j].is_left;
      });
      if (idx.size() % 2)
        throw DegenerateWorkspace("unmatched trapezoid wall between edges " + std::to_string(tb.first) + " and " +
                                  std::to_string(tb.second));
      for (size_t k = 0; k < idx.size(); k += 2) {
        const HalfFace& l = hs[idx[k]];
        const HalfFace& r = hs[idx[k + 1]];
        if (!l.is_left || r.is_left) throw DegenerateWorkspace("trapezoid walls out of order");
        out.push_back({tb.first, tb.second, l.v, r.v});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void half_faces(int v, const VertexState& s, std::vector<HalfFace>& out) const {
    int ep = w_.prev(v), en = v;
    if (s.side_prev == 0 || s.side_next == 0) throw DegenerateWorkspace("edge parallel to sweep direction");
    if (s.side_prev != s.side_next) {
      int le = s.side_prev > 0 ? ep : en;
      int re = s.side_prev > 0 ? en : ep;
      if (s.up >= 0 && s.down < 0) {
        out.push_back({v, s.up, le, false});
        out.push_back({v, s.up, re, true});
      } else if (s.down >= 0 && s.up < 0) {
        out.push_back({v, le, s.down, false});
        out.push_back({v, re, s.down, true});
      } else {
        throw DegenerateWorkspace("inconsistent wall at vertex " + std::to_string(v));
      }
      return;
    }
    bool on_left = s.side_prev > 0;
    bool prev_upper = on_left ? turn_[v] > 0 : turn_[v] < 0;
    int upper = prev_upper ? ep : en;
    int lower = prev_upper ? en : ep;
    if (s.up >= 0 && s.down >= 0) {
      out.push_back({v, s.up, s.down, on_left});
      out.push_back({v, s.up, upper, !on_left});
      out.push_back({v, lower, s.down, !on_left});
    } else if (s.up < 0 && s.down < 0) {
      out.push_back({v, upper, lower, !on_left});
    } else {
      throw DegenerateWorkspace("inconsistent wall at vertex " + std::to_string(v));
    }
  }

  const Workspace& w_;
  std::vector<int> turn_;
};

// c + e*eps with eps infinitesimal, ordered lexicographically.
struct Shift {
  Scalar c, e;

  Shift operator-(const Shift& o) const { return {c - o.c, e - o.e}; }
  Shift operator+(const Shift& o) const { return {c + o.c, e + o.e}; }
  Shift operator*(const Scalar& k) const { return {c * k, e * k}; }
  Shift operator/(const Scalar& k) const { return {c / k, e / k}; }
  int sign() const { return sgn(c) != 0 ? sgn(c) : sgn(e); }
  bool operator<(const Shift& o) const { return (*this - o).sign() < 0; }
};

struct RawCell {
  Key key;
  Dir begin, end;
  bool full_turn = false;
};

std::vector<Scalar> projections(const Workspace& w, const Dir& u) {
  std::vector<Scalar> out(w.size());
  for (int v = 0; v < w.size(); ++v) out[v] = u.dx * w.vertex(v).y - u.dy * w.vertex(v).x;
  return out;
}

}  // namespace

double SideProfile::min() const { return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end()); }
double SideProfile::max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }

std::vector<std::array<int, 4>> decomposition_at(const Workspace& w, const Dir& u) {
  std::vector<VertexState> st(w.size());
  for (int v = 0; v < w.size(); ++v) st[v] = state_at(w, v, u);
  auto proj = projections(w, u);
  FaceBuilder fb(w);
  return fb.faces(st, [&](int a, int b) { return proj[a] != proj[b] ? proj[a] > proj[b] : a < b; });
}

Rtd build_rtd(const Workspace& w, const VisibilityGraph& vg) {
  auto events = directed_events(w, vg);
  if (events.empty()) throw DegenerateWorkspace("no visibility events");
  std::vector<std::pair<size_t, size_t>> groups;
  for (size_t i = 0; i < events.size();) {
    size_t j = i;
    while (j < events.size() && dir_equal(events[i].direction, events[j].direction)) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  int m = static_cast<int>(groups.size());
  if (m < 2) throw DegenerateWorkspace("too few event directions");
  std::vector<Dir> phi(m), rep(m);
  for (int g = 0; g < m; ++g) phi[g] = events[groups[g].first].direction;
  for (int g = 0; g < m; ++g) rep[g] = dir_between(phi[g], phi[(g + 1) % m]);

  int n = w.size();
  FaceBuilder fb(w);
  std::vector<VertexState> st(n);
  for (int v = 0; v < n; ++v) st[v] = state_at(w, v, rep[m - 1]);
  std::vector<Key> faces;
  {
    auto proj = projections(w, rep[m - 1]);
    faces = fb.faces(st, [&](int a, int b) { return proj[a] > proj[b]; });
  }
  std::map<Key, Dir> live;
  for (const Key& k : faces) live[k] = zero_dir();

  Rtd out;
  std::vector<RawCell> raw;
  for (int g = 0; g < m; ++g) {
    const Dir& f = phi[g];
    const Dir& before = rep[(g + m - 1) % m];
    const Dir& after = rep[g];
    auto proj = projections(w, f);
    auto along = [&](int v) -> Scalar { return f.dx * w.vertex(v).x + f.dy * w.vertex(v).y; };
    std::map<int, Shift> offsets;
    auto offset = [&](int v) -> const Shift& {
      auto it = offsets.find(v);
      if (it != offsets.end()) return it->second;
      int sp = side_of(w, v, w.prev(v), f), sn = side_of(w, v, w.next(v), f);
      int side = sp == 0 ? sn : (sn == 0 || sn == sp ? sp : 0);
      Scalar t = along(v);
      Shift o = side == 0 ? Shift{1, 0} : Shift{Scalar(-side), Scalar(side) * t * t};
      return offsets[v] = o;
    };

    std::vector<std::pair<Shift, size_t>> order;
    for (size_t i = groups[g].first; i < groups[g].second; ++i) {
      int a = events[i].origin, b = events[i].target;
      order.emplace_back((offset(b) - offset(a)) / (along(b) - along(a)), i);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    std::set<std::pair<int, int>> done;
    Shift eta = order.front().first;
    eta.c -= 1;
    auto left_of = [&](int a, int b) {
      if (proj[a] != proj[b]) return proj[a] > proj[b];
      int s = (offset(a) - offset(b) - eta * (along(a) - along(b))).sign();
      if (s != 0) return s > 0;
      const Dir& r = done.count(std::minmax(a, b)) ? after : before;
      return sgn(cross(r, dir_from(w.vertex(b), w.vertex(a)))) > 0;
    };
    for (size_t j = 0; j < order.size(); ++j) {
      size_t i = order[j].second;
      if (j + 1 < order.size()) {
        eta = (order[j].first + order[j + 1].first) / 2;
      } else {
        eta = order[j].first;
        eta.c += 1;
      }
      int a = events[i].origin, b = events[i].target;
      st[a].up = first_hit(w, a, after);
      st[b].down = first_hit(w, b, negate(after));
      bool type1 = w.is_boundary_pair(a, b);
      if (type1) {
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
          if (w.next(x) == y) st[x].side_next = side_of(w, x, y, after);
          if (w.prev(x) == y) st[x].side_prev = side_of(w, x, y, after);
        }
      }
      done.insert(std::minmax(a, b));
      std::vector<Key> next_faces;
      try {
        next_faces = fb.faces(st, left_of);
      } catch (const DegenerateWorkspace& e) {
        throw DegenerateWorkspace(std::string(e.what()) + " at event " + std::to_string(a) + "->" + std::to_string(b));
      }

      std::vector<Key> gone, born;
      std::set_difference(faces.begin(), faces.end(), next_faces.begin(), next_faces.end(), std::back_inserter(gone));
      std::set_difference(next_faces.begin(), next_faces.end(), faces.begin(), faces.end(), std::back_inserter(born));
      for (const Key& k : gone) {
        auto it = live.find(k);
        if (!dir_equal(it->second, f)) raw.push_back({k, it->second, f, false});
        live.erase(it);
      }
      for (const Key& k : born) live[k] = f;
      faces = std::move(next_faces);

      SweepEvent ev;
      ev.kind = type1 ? EventKind::TypeI : EventKind::TypeII;
      ev.origin = a;
      ev.target = b;
      ev.direction = f;
      ev.terminated = static_cast<int>(gone.size());
      ev.created = static_cast<int>(born.size());
      out.events.push_back(ev);
    }
  }
  for (auto& [k, b] : live) raw.push_back({k, b, zero_dir(), true});

  std::sort(raw.begin(), raw.end(), [](const RawCell& x, const RawCell& y) {
    if (x.key != y.key) return x.key < y.key;
    return dir_less(x.begin, y.begin);
  });
  std::vector<RawCell> merged;
  for (const RawCell& r : raw) {
    if (!merged.empty() && merged.back().key == r.key && !merged.back().full_turn &&
        dir_equal(merged.back().end, r.begin)) {
      merged.back().end = r.end;
      merged.back().full_turn = r.full_turn;
    } else {
      merged.push_back(r);
    }
  }
  std::sort(merged.begin(), merged.end(), [](const RawCell& x, const RawCell& y) {
    if (dir_less(x.begin, y.begin)) return true;
    if (dir_less(y.begin, x.begin)) return false;
    return x.key < y.key;
  });

  out.cells.reserve(merged.size());
  for (const RawCell& r : merged) {
    RtdCell c;
    c.id = static_cast<int>(out.cells.size());
    c.e_t = r.key[0];
    c.e_b = r.key[1];
    c.v_l = r.key[2];
    c.v_r = r.key[3];
    c.begin = r.begin;
    c.end = r.end;
    c.end_full_turn = r.full_turn;
    c.theta_begin = dir_angle(r.begin);
    c.theta_end = r.full_turn ? kTwoPi : dir_angle(r.end);
    c.parallel = sgn(cross(dir_from(w.vertex(c.e_t), w.vertex(w.next(c.e_t))),
                           dir_from(w.vertex(c.e_b), w.vertex(w.next(c.e_b))))) == 0;
    compute_profiles(w, c);
    out.cells.push_back(std::move(c));
  }
  return out;
}

bool cell_contains(const RtdCell& c, const Dir& theta) {
  return dir_leq(c.begin, theta) && (c.end_full_turn || dir_less(theta, c.end));
}

bool cell_closure_contains(const RtdCell& c, const Dir& theta) {
  if (c.end_full_turn && dir_equal(theta, zero_dir())) return true;
  return dir_leq(c.begin, theta) && (c.end_full_turn || dir_leq(theta, c.end));
}

namespace {

Point wall_hit(const Point& p, const Dir& u, const Point& a, const Point& b) {
  Dir ab = dir_from(a, b);
  Scalar den = cross(u, ab);
  Dir ap = dir_from(a, p);
  if (sgn(den) == 0) {
    if (sgn(cross(ab, ap)) == 0) return p;
    throw AngleOutsideCell("wall parallel to support line");
  }
  Scalar t = cross(dir_from(p, a), ab) / den;
  return {p.x + t * u.dx, p.y + t * u.dy};
}

}  // namespace

Trapezoid cross_section(const Workspace& w, const RtdCell& c, const Dir& theta) {
  if (!cell_closure_contains(c, theta)) throw AngleOutsideCell("direction outside cell " + std::to_string(c.id));
  const Point& at = w.vertex(c.e_t);
  const Point& bt = w.vertex(w.next(c.e_t));
  const Point& ab = w.vertex(c.e_b);
  const Point& bb = w.vertex(w.next(c.e_b));
  const Point& pl = w.vertex(c.v_l);
  const Point& pr = w.vertex(c.v_r);
  return {wall_hit(pl, theta, at, bt), wall_hit(pr, theta, at, bt), wall_hit(pr, theta, ab, bb),
          wall_hit(pl, theta, ab, bb), theta};
}

Scalar trapezoid_area(const Trapezoid& t) {
  const Point* p[4] = {&t.top_left, &t.top_right, &t.bottom_right, &t.bottom_left};
  Scalar s = 0;
  for (int i = 0; i < 4; ++i) {
    const Point& a = *p[i];
    const Point& b = *p[(i + 1) % 4];
    s += a.x * b.y - a.y * b.x;
  }
  s /= 2;
  return abs(s);
}

bool trapezoid_contains(const Trapezoid& t, const Point& q) {
  const Point* p[4] = {&t.top_left, &t.top_right, &t.bottom_right, &t.bottom_left};
  bool pos = false, neg = false;
  for (int i = 0; i < 4; ++i) {
    const Point& a = *p[i];
    const Point& b = *p[(i + 1) % 4];
    if (a == b) continue;
    int o = static_cast<int>(orientation(a, b, q));
    if (o > 0) pos = true;
    if (o < 0) neg = true;
  }
  return !(pos && neg);
}

double OpeningProfile::frame_angle() const { return std::atan2(frame_s.get_d(), frame_c.get_d()); }

Vec2 OpeningProfile::to_local(const Vec2& p) const {
  double c = frame_c.get_d(), s = frame_s.get_d();
  return {c * p.x + s * p.y, -s * p.x + c * p.y};
}

Vec2 OpeningProfile::to_world(const Vec2& p) const {
  double c = frame_c.get_d(), s = frame_s.get_d();
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

OpeningProfile make_opening_profile(const OneSidedEdge& top, const OneSidedEdge& bottom) {
  Dir dt = dir_from(top.source, top.target);
  Dir db = dir_from(bottom.source, bottom.target);
  OpeningProfile p;
  p.vertical_t = sgn(dt.dx) == 0;
  p.vertical_b = sgn(db.dx) == 0;
  const std::pair<Scalar, Scalar> frames[] = {{1, 0}, {0, 1}, {Scalar(3, 5), Scalar(4, 5)}};
  for (const auto& [c, s] : frames) {
    if (sgn(c * dt.dx + s * dt.dy) != 0 && sgn(c * db.dx + s * db.dy) != 0) {
      p.frame_c = c;
      p.frame_s = s;
      break;
    }
  }
  const Scalar& c = p.frame_c;
  const Scalar& s = p.frame_s;
  auto line = [&](const OneSidedEdge& e, Scalar& m, Scalar& b) {
    Scalar ax = c * e.source.x + s * e.source.y, ay = -s * e.source.x + c * e.source.y;
    Scalar bx = c * e.target.x + s * e.target.y, by = -s * e.target.x + c * e.target.y;
    m = (by - ay) / (bx - ax);
    b = ay - m * ax;
  };
  line(top, p.m_t, p.b_t);
  line(bottom, p.m_b, p.b_b);
  return p;
}

OpeningProfile opening_profile(const Workspace& w, const RtdCell& c) {
  return make_opening_profile(w.edge(c.e_t), w.edge(c.e_b));
}

double opening(const OpeningProfile& p, double theta, double x) {
  double t = theta - p.frame_angle();
  double mt = p.m_t.get_d(), mb = p.m_b.get_d();
  return (x * (mt - mb) + p.b_t.get_d() - p.b_b.get_d()) / (std::sin(t) - mb * std::cos(t));
}

InverseResult opening_inverse(const OpeningProfile& p, double theta, double f) {
  double t = theta - p.frame_angle();
  double mb = p.m_b.get_d();
  double den = std::sin(t) - mb * std::cos(t);
  if (p.parallel()) {
    double o = (p.b_t.get_d() - p.b_b.get_d()) / den;
    if (std::abs(o - f) <= eps()) return AllX{};
    return NoX{};
  }
  return (f * den + p.b_b.get_d() - p.b_t.get_d()) / (p.m_t.get_d() - mb);
}

double wall_top_x(const OpeningProfile& p, double theta, const Vec2& q) {
  double t = theta - p.frame_angle();
  Vec2 l = p.to_local(q);
  double c = std::cos(t), s = std::sin(t);
  double mt = p.m_t.get_d();
  double k = (mt * l.x + p.b_t.get_d() - l.y) / (s - mt * c);
  return l.x + k * c;
}

CellGeometry::CellGeometry(const Workspace& w, const RtdCell& c) {
  auto line = [&](int e, double& nx, double& ny, double& k) {
    double ax = w.ax(e), ay = w.ay(e);
    double dx = w.ax(w.next(e)) - ax, dy = w.ay(w.next(e)) - ay;
    double len = std::hypot(dx, dy);
    nx = dy / len;
    ny = -dx / len;
    k = nx * ax + ny * ay;
  };
  line(c.e_t, nt_x_, nt_y_, kt_);
  line(c.e_b, nb_x_, nb_y_, kb_);
  vl_ = {w.ax(c.v_l), w.ay(c.v_l)};
  vr_ = {w.ax(c.v_r), w.ay(c.v_r)};
  auto on = [&](int v, int e) {
    return orientation(w.vertex(e), w.vertex(w.next(e)), w.vertex(v)) == Orientation::Collinear;
  };
  vl_on_t_ = on(c.v_l, c.e_t);
  vl_on_b_ = on(c.v_l, c.e_b);
  vr_on_t_ = on(c.v_r, c.e_t);
  vr_on_b_ = on(c.v_r, c.e_b);
  t0_ = c.theta_begin;
  t1_ = c.theta_end;
}

double CellGeometry::wall_opening(int side, double theta) const {
  Vec2 q = vertex(side);
  double ux = std::cos(theta), uy = std::sin(theta);
  double tt = vertex_on_ceiling(side) ? 0.0 : (kt_ - nt_x_ * q.x - nt_y_ * q.y) / (nt_x_ * ux + nt_y_ * uy);
  double tb = vertex_on_floor(side) ? 0.0 : (kb_ - nb_x_ * q.x - nb_y_ * q.y) / (nb_x_ * ux + nb_y_ * uy);
  return tt - tb;
}

double CellGeometry::wall_opening_derivative(int side, double theta) const {
  Vec2 q = vertex(side);
  double ux = std::cos(theta), uy = std::sin(theta);
  auto term = [&](double nx, double ny, double k) {
    double a = nx * ux + ny * uy;
    double da = -nx * uy + ny * ux;
    return -(k - nx * q.x - ny * q.y) * da / (a * a);
  };
  double dt = vertex_on_ceiling(side) ? 0.0 : term(nt_x_, nt_y_, kt_);
  double db = vertex_on_floor(side) ? 0.0 : term(nb_x_, nb_y_, kb_);
  return dt - db;
}

Vec2 CellGeometry::wall_top(int side, double theta) const {
  Vec2 q = vertex(side);
  if (vertex_on_ceiling(side)) return q;
  double ux = std::cos(theta), uy = std::sin(theta);
  double t = (kt_ - nt_x_ * q.x - nt_y_ * q.y) / (nt_x_ * ux + nt_y_ * uy);
  return {q.x + t * ux, q.y + t * uy};
}

Vec2 CellGeometry::wall_bottom(int side, double theta) const {
  Vec2 q = vertex(side);
  if (vertex_on_floor(side)) return q;
  double ux = std::cos(theta), uy = std::sin(theta);
  double t = (kb_ - nb_x_ * q.x - nb_y_ * q.y) / (nb_x_ * ux + nb_y_ * uy);
  return {q.x + t * ux, q.y + t * uy};
}

double CellGeometry::chord_from_top(const Vec2& top, double theta) const {
  double ux = std::cos(theta), uy = std::sin(theta);
  return -(kb_ - nb_x_ * top.x - nb_y_ * top.y) / (nb_x_ * ux + nb_y_ * uy);
}

double cell_opening(const Workspace& w, const RtdCell& c, double theta, double x) {
  double tol = eps();
  if (theta < c.theta_begin - tol || theta > c.theta_end + tol) throw OutOfDomain("angle outside cell");
  OpeningProfile p = opening_profile(w, c);
  double xl = wall_top_x(p, theta, {w.ax(c.v_l), w.ay(c.v_l)});
  double xr = wall_top_x(p, theta, {w.ax(c.v_r), w.ay(c.v_r)});
  double lo = std::min(xl, xr), hi = std::max(xl, xr);
  double slack = tol * std::max(1.0, std::abs(hi) + std::abs(lo));
  if (x < lo - slack || x > hi + slack) throw OutOfDomain("abscissa outside top segment");
  return opening(p, theta, x);
}

InverseResult cell_opening_inverse(const Workspace& w, const RtdCell& c, double theta, double f) {
  double tol = eps();
  if (theta < c.theta_begin - tol || theta > c.theta_end + tol) return NoX{};
  OpeningProfile p = opening_profile(w, c);
  InverseResult r = opening_inverse(p, theta, f);
  if (auto* x = std::get_if<double>(&r)) {
    double xl = wall_top_x(p, theta, {w.ax(c.v_l), w.ay(c.v_l)});
    double xr = wall_top_x(p, theta, {w.ax(c.v_r), w.ay(c.v_r)});
    double lo = std::min(xl, xr), hi = std::max(xl, xr);
    double slack = tol * std::max(1.0, std::abs(hi) + std::abs(lo));
    if (*x < lo - slack || *x > hi + slack) return NoX{};
    *x = std::clamp(*x, lo, hi);
  }
  return r;
}

SideProfile compute_side_profile(const CellGeometry& g, int side) {
  constexpr int kSamples = 64;
  double a = g.theta_begin(), b = g.theta_end();
  SideProfile p;
  p.breaks.push_back(a);
  auto sign = [](double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  double prev_t = a;
  int prev_s = sign(g.wall_opening_derivative(side, a));
  for (int i = 1; i <= kSamples; ++i) {
    double t = i == kSamples ? b : a + (b - a) * i / kSamples;
    int s = sign(g.wall_opening_derivative(side, t));
    if (s == 0) continue;
    if (prev_s != 0 && s != prev_s) {
      double lo = prev_t, hi = t;
      for (int it = 0; it < 200; ++it) {
        double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if (sign(g.wall_opening_derivative(side, mid)) == prev_s)
          lo = mid;
        else
          hi = mid;
      }
      double r = lo + (hi - lo) / 2;
      if (r > p.breaks.back() && r < b) p.breaks.push_back(r);
    }
    prev_s = s;
    prev_t = t;
  }
  p.breaks.push_back(b);
  for (double t : p.breaks) p.values.push_back(g.wall_opening(side, t));
  return p;
}

void compute_profiles(const Workspace& w, RtdCell& c) {
  CellGeometry g(w, c);
  c.left = compute_side_profile(g, 0);
  c.right = compute_side_profile(g, 1);
}

double max_opening(const RtdCell& c) { return std::max(c.left.max(), c.right.max()); }
double min_opening(const RtdCell& c) { return std::min(c.left.min(), c.right.min()); }

SideOpenings side_openings(const RtdCell& c) { return {c.left.min(), c.left.max(), c.right.min(), c.right.max()}; }

double profile_root(const CellGeometry& g, const RtdCell& c, int side, int piece, double d) {
  const SideProfile& p = side == 0 ? c.left : c.right;
  double a = p.breaks[piece], b = p.breaks[piece + 1];
  double fa = p.values[piece], fb = p.values[piece + 1];
  bool increasing = fb > fa;
  if (fa == d) return a;
  if (fb == d) return b;
  if (increasing ? d <= fa : d >= fa) return a;
  if (increasing ? d >= fb : d <= fb) return b;
  double lo = a, hi = b;
  for (int it = 0; it < 200; ++it) {
    double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    double v = g.wall_opening(side, mid);
    if ((v < d) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return lo + (hi - lo) / 2;
}

}  // namespace localizer
