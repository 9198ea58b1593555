#include "localizer/antipodal_opt.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace localizer {

CellClass classify(const SideOpenings& s, double d) {
  if (d == s.left_min || d == s.left_max || d == s.right_min || d == s.right_max)
    throw OnCriticalValue("measurement equals a side-opening extremum");
  if (d < std::min(s.left_min, s.right_min) || d > std::max(s.left_max, s.right_max)) return CellClass::Empty;
  if ((s.right_max < d && d < s.left_min) || (s.left_max < d && d < s.right_min)) return CellClass::Full;
  return CellClass::Partial;
}

CellClass classify(const RtdCell& c, double d) { return classify(side_openings(c), d); }

std::vector<double> critical_values(const std::vector<RtdCell>& cells) {
  std::vector<double> v;
  for (const auto& c : cells) {
    auto s = side_openings(c);
    v.insert(v.end(), {s.left_min, s.left_max, s.right_min, s.right_max});
  }
  std::sort(v.begin(), v.end());
  std::vector<double> out{0.0};
  for (double x : v)
    if (x - out.back() > eps()) out.push_back(x);
  out.push_back(std::numeric_limits<double>::infinity());
  return out;
}

std::vector<double> refined_values(const std::vector<RtdCell>& cells) {
  std::vector<double> v;
  for (const auto& c : cells) {
    v.insert(v.end(), c.left.values.begin(), c.left.values.end());
    v.insert(v.end(), c.right.values.begin(), c.right.values.end());
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

namespace {

auto end_key(const SymbolicEnd& e) {
  return std::make_tuple(e.cell, static_cast<int>(e.endpoint.kind), e.endpoint.side, e.endpoint.piece);
}

using RunKey = decltype(std::tuple_cat(end_key({}), end_key({})));

struct Run {
  SymbolicEnd lo, hi;
  RunKey key() const { return std::tuple_cat(end_key(lo), end_key(hi)); }
};

struct Piece {
  double lo, hi;
  SymbolicEnd a, b;
};

}  // namespace

void index_intervals(OptIndex& index) {
  std::vector<IntervalTree<int>::Entry> entries;
  for (size_t i = 0; i < index.intervals.size(); ++i)
    entries.push_back({index.intervals[i].d_lo, index.intervals[i].d_hi, static_cast<int>(i)});
  index.tree = IntervalTree<int>(std::move(entries));
}

OptIndex build_opt_index(const Workspace& w, const std::vector<RtdCell>& cells) {
  std::vector<CellGeometry> geo;
  geo.reserve(cells.size());
  for (const auto& c : cells) geo.emplace_back(w, c);

  std::map<std::pair<int, int>, std::vector<int>> pair_cells;
  for (const auto& c : cells) pair_cells[{c.e_t, c.e_b}].push_back(c.id);

  std::map<double, std::vector<int>> by_value;
  for (const auto& c : cells) {
    for (const auto* p : {&c.left, &c.right})
      for (double v : p->values) by_value[v].push_back(c.id);
  }
  struct Cluster {
    double lo, hi;
    std::set<int> cells;
  };
  std::vector<Cluster> clusters{{0.0, 0.0, {}}};
  for (const auto& [v, ids] : by_value) {
    if (v - clusters.back().hi > eps()) clusters.push_back({v, v, {}});
    clusters.back().hi = v;
    clusters.back().cells.insert(ids.begin(), ids.end());
  }

  std::vector<std::vector<ThetaInterval>> current(cells.size());
  std::map<std::pair<int, int>, std::map<RunKey, std::pair<Run, double>>> live;
  OptIndex index;

  auto runs_of = [&](const std::vector<int>& ids, double d) {
    std::vector<Piece> ps;
    for (int id : ids)
      for (const auto& iv : current[id])
        ps.push_back({resolve(iv.lo, geo[id], cells[id], d), resolve(iv.hi, geo[id], cells[id], d), {id, iv.lo},
                      {id, iv.hi}});
    std::sort(ps.begin(), ps.end(), [](const Piece& x, const Piece& y) {
      if (x.lo != y.lo) return x.lo < y.lo;
      if (x.hi != y.hi) return x.hi > y.hi;
      return x.a.cell < y.a.cell;
    });
    std::vector<Run> runs;
    double hi = 0;
    for (const auto& p : ps) {
      if (!runs.empty() && p.lo <= hi + eps()) {
        if (p.hi > hi) {
          hi = p.hi;
          runs.back().hi = p.b;
        }
        continue;
      }
      runs.push_back({p.a, p.b});
      hi = p.hi;
    }
    return runs;
  };

  auto close = [&](std::pair<int, int> pair, const Run& r, double d_lo, double d_hi) {
    index.intervals.push_back({pair.first, pair.second, r.lo, r.hi, d_lo, d_hi});
  };

  for (size_t i = clusters.size() - 1; i-- > 0;) {
    double crossing = clusters[i + 1].lo;
    double mid = clusters[i].hi + (crossing - clusters[i].hi) / 2;
    std::set<std::pair<int, int>> dirty;
    for (int id : clusters[i + 1].cells) {
      current[id] = chord_set(geo[id], cells[id], mid);
      dirty.insert({cells[id].e_t, cells[id].e_b});
    }
    for (const auto& pair : dirty) {
      auto& runs = live[pair];
      std::map<RunKey, Run> next;
      for (const Run& r : runs_of(pair_cells[pair], mid)) next.emplace(r.key(), r);
      for (auto it = runs.begin(); it != runs.end();) {
        if (next.count(it->first)) {
          ++it;
          continue;
        }
        close(pair, it->second.first, crossing, it->second.second);
        it = runs.erase(it);
      }
      for (const auto& [k, r] : next)
        if (!runs.count(k)) runs.emplace(k, std::pair{r, crossing});
    }
  }
  for (const auto& [pair, runs] : live)
    for (const auto& [k, r] : runs) close(pair, r.first, 0.0, r.second);

  std::sort(index.intervals.begin(), index.intervals.end(), [](const MaximalInterval& a, const MaximalInterval& b) {
    return std::make_tuple(a.e_t, a.e_b, a.d_hi, a.d_lo, Run{a.lo, a.hi}.key()) <
           std::make_tuple(b.e_t, b.e_b, b.d_hi, b.d_lo, Run{b.lo, b.hi}.key());
  });
  index_intervals(index);
  return index;
}

double resolve_endpoint(const Workspace& w, const std::vector<RtdCell>& cells, const SymbolicEnd& e, double d) {
  const RtdCell& c = cells.at(e.cell);
  if (e.endpoint.kind == Endpoint::Kind::Root) {
    const SideProfile& p = e.endpoint.side == 0 ? c.left : c.right;
    double fa = p.values[e.endpoint.piece], fb = p.values[e.endpoint.piece + 1];
    if (d < std::min(fa, fb) - eps() || d > std::max(fa, fb) + eps())
      throw NoIncidence("no length-d segment through the endpoint vertex");
  }
  return resolve(e.endpoint, CellGeometry(w, c), c, d);
}

std::vector<OptMatch> query_opt(const Workspace& w, const std::vector<RtdCell>& cells, const OptIndex& index,
                                double d1, double d2) {
  if (!(d1 > 0) || !(d2 > 0)) throw NonPositiveMeasurement("measurements must be positive");
  double d = d1 + d2;
  std::vector<OptMatch> found;
  index.tree.stab(d, [&](const IntervalTree<int>::Entry& e) {
    const MaximalInterval& m = index.intervals[e.value];
    if (!(d > m.d_lo && d <= m.d_hi)) return;
    OptMatch o;
    o.interval = {m.e_t, m.e_b, resolve_endpoint(w, cells, m.lo, d), resolve_endpoint(w, cells, m.hi, d)};
    o.lo_cell = m.lo.cell;
    o.hi_cell = m.hi.cell;
    found.push_back(o);
  });
  std::sort(found.begin(), found.end(), [](const OptMatch& a, const OptMatch& b) {
    return std::tie(a.interval.e_t, a.interval.e_b, a.interval.lo, a.interval.hi, a.lo_cell) <
           std::tie(b.interval.e_t, b.interval.e_b, b.interval.lo, b.interval.hi, b.lo_cell);
  });
  std::vector<OptMatch> out;
  for (const auto& o : found) {
    if (!out.empty()) {
      auto& last = out.back().interval;
      if (last.e_t == o.interval.e_t && last.e_b == o.interval.e_b && o.interval.lo <= last.hi + eps()) {
        if (o.interval.hi > last.hi) {
          last.hi = o.interval.hi;
          out.back().hi_cell = o.hi_cell;
        }
        continue;
      }
    }
    out.push_back(o);
  }
  for (auto& o : out) {
    const RtdCell& lc = cells[o.lo_cell];
    if (lc.parallel) {
      double th = o.interval.lo;
      double ux = std::cos(th), uy = std::sin(th);
      Vec2 a = CellGeometry(w, lc).wall_top(0, th), b = CellGeometry(w, cells[o.hi_cell]).wall_top(1, th);
      o.curve = ParallelBand{th, {a.x - d1 * ux, a.y - d1 * uy}, {b.x - d1 * ux, b.y - d1 * uy}};
    } else {
      o.curve = EllipseArc{ellipse_params(w.edge(lc.e_t), w.edge(lc.e_b), d1, d2), o.interval.lo, o.interval.hi, d1, d2};
    }
  }
  return out;
}

}  // namespace localizer
