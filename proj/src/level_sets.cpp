#include "localizer/level_sets.h"

#include <algorithm>

namespace localizer {

namespace {

Endpoint boundary(const RtdCell& c, const SideProfile& p, int side, int index) {
  Endpoint e;
  e.side = side;
  e.theta = p.breaks[index];
  if (index == 0) {
    e.kind = Endpoint::Kind::Begin;
    e.theta = c.theta_begin;
  } else if (index == p.pieces()) {
    e.kind = Endpoint::Kind::End;
    e.theta = c.theta_end;
  } else {
    e.kind = Endpoint::Kind::Break;
    e.piece = index;
  }
  return e;
}

}  // namespace

std::vector<ThetaInterval> level_set(const CellGeometry& g, const RtdCell& c, int side, double d, bool at_least) {
  const SideProfile& p = side == 0 ? c.left : c.right;
  auto inside = [&](double v) { return at_least ? v >= d : v <= d; };
  std::vector<ThetaInterval> out;
  auto add = [&](const Endpoint& lo, const Endpoint& hi) {
    if (!out.empty() && out.back().hi.theta == lo.theta) {
      out.back().hi = hi;
      return;
    }
    out.push_back({lo, hi});
  };
  for (int j = 0; j < p.pieces(); ++j) {
    double y0 = p.values[j], y1 = p.values[j + 1];
    bool in0 = inside(y0), in1 = inside(y1);
    Endpoint a = boundary(c, p, side, j), b = boundary(c, p, side, j + 1);
    if (in0 && in1) {
      add(a, b);
      continue;
    }
    if (!in0 && !in1) continue;
    Endpoint r;
    r.kind = Endpoint::Kind::Root;
    r.side = side;
    r.piece = j;
    r.theta = profile_root(g, c, side, j, d);
    if (in0)
      add(a, r);
    else
      add(r, b);
  }
  return out;
}

std::vector<ThetaInterval> intersect(const std::vector<ThetaInterval>& a, const std::vector<ThetaInterval>& b) {
  std::vector<ThetaInterval> out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Endpoint& lo = a[i].lo.theta >= b[j].lo.theta ? a[i].lo : b[j].lo;
    const Endpoint& hi = a[i].hi.theta <= b[j].hi.theta ? a[i].hi : b[j].hi;
    if (lo.theta <= hi.theta) out.push_back({lo, hi});
    if (a[i].hi.theta <= b[j].hi.theta)
      ++i;
    else
      ++j;
  }
  return out;
}

std::vector<ThetaInterval> unite(const std::vector<ThetaInterval>& a, const std::vector<ThetaInterval>& b) {
  std::vector<ThetaInterval> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end(), [](const ThetaInterval& x, const ThetaInterval& y) {
    if (x.lo.theta != y.lo.theta) return x.lo.theta < y.lo.theta;
    return x.hi.theta > y.hi.theta;
  });
  std::vector<ThetaInterval> out;
  for (const auto& iv : all) {
    if (!out.empty() && iv.lo.theta <= out.back().hi.theta) {
      if (iv.hi.theta > out.back().hi.theta) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

double resolve(const Endpoint& e, const CellGeometry& g, const RtdCell& c, double d) {
  switch (e.kind) {
    case Endpoint::Kind::Begin:
      return c.theta_begin;
    case Endpoint::Kind::End:
      return c.theta_end;
    case Endpoint::Kind::Break:
      return (e.side == 0 ? c.left : c.right).breaks[e.piece];
    case Endpoint::Kind::Root:
      return profile_root(g, c, e.side, e.piece, d);
  }
  return e.theta;
}

int wide_side(const CellGeometry& g, const RtdCell& c) {
  double mid = c.theta_begin + (c.theta_end - c.theta_begin) / 2;
  return g.wall_opening(1, mid) >= g.wall_opening(0, mid) ? 1 : 0;
}

std::vector<ThetaInterval> chord_set(const CellGeometry& g, const RtdCell& c, double d) {
  if (c.parallel) return intersect(level_set(g, c, 0, d, false), level_set(g, c, 0, d, true));
  int hi = wide_side(g, c);
  return intersect(level_set(g, c, 1 - hi, d, false), level_set(g, c, hi, d, true));
}

}  // namespace localizer
