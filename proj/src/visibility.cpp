#include "localizer/visibility.h"

#include <algorithm>
#include <map>
#include <set>

namespace localizer {

bool VisibilityGraph::contains(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

namespace {

int orient(const Point& a, const Point& b, const Point& c) { return static_cast<int>(orientation(a, b, c)); }

// Order of two non-crossing edges along rays from v that meet both.
struct CloserToViewer {
  const Workspace* w;
  const Point* v;

  bool operator()(int e1, int e2) const {
    if (e1 == e2) return false;
    const Point& a = w->vertex(w->edge_source(e1));
    const Point& b = w->vertex(w->edge_target(e1));
    const Point& c = w->vertex(w->edge_source(e2));
    const Point& d = w->vertex(w->edge_target(e2));
    int sv = orient(a, b, *v);
    int oc = orient(a, b, c), od = orient(a, b, d);
    if (!(oc == 0 && od == 0)) {
      if ((oc == 0 || oc == -sv) && (od == 0 || od == -sv)) return true;
      if ((oc == 0 || oc == sv) && (od == 0 || od == sv)) return false;
    }
    int sv2 = orient(c, d, *v);
    int pa = orient(c, d, a), pb = orient(c, d, b);
    if ((pa == 0 || pa == sv2) && (pb == 0 || pb == sv2)) return true;
    return false;
  }
};

bool enters_interior(const Workspace& w, int at, const Point& toward) {
  const Point& p = w.vertex(at);
  return ccw_strictly_between(dir_from(p, w.vertex(w.next(at))), dir_from(p, w.vertex(w.prev(at))),
                              dir_from(p, toward));
}

}  // namespace

std::vector<int> visible_from(const Workspace& w, int v) {
  const Point& pv = w.vertex(v);
  int n = w.size();

  std::vector<int> order;
  for (int u = 0; u < n; ++u)
    if (u != v) order.push_back(u);
  std::vector<Dir> dirs(n);
  std::vector<Scalar> dist2(n);
  for (int u : order) {
    dirs[u] = dir_from(pv, w.vertex(u));
    dist2[u] = dot(dirs[u], dirs[u]);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (dir_less(dirs[a], dirs[b])) return true;
    if (dir_less(dirs[b], dirs[a])) return false;
    if (dist2[a] != dist2[b]) return dist2[a] < dist2[b];
    return a < b;
  });

  CloserToViewer cmp{&w, &pv};
  std::set<int, CloserToViewer> status(cmp);
  std::map<int, std::set<int, CloserToViewer>::iterator> where;

  auto incident_to_v = [&](int e) { return w.edge_source(e) == v || w.edge_target(e) == v; };
  for (int e = 0; e < w.edge_count(); ++e) {
    if (incident_to_v(e)) continue;
    int a = w.edge_source(e), b = w.edge_target(e);
    int o = orient(pv, w.vertex(a), w.vertex(b));
    if (o == 0) continue;
    if (o < 0) std::swap(a, b);
    if (dir_less(dirs[b], dirs[a])) where[e] = status.insert(e).first;
  }

  std::vector<int> visible;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() && dir_equal(dirs[order[i]], dirs[order[j]])) ++j;

    int w0 = order[i];
    bool ok;
    if (w.is_boundary_pair(v, w0)) {
      ok = true;
    } else {
      ok = enters_interior(w, v, w.vertex(w0)) && enters_interior(w, w0, pv);
      if (ok) {
        for (int e : status) {
          if (w.edge_source(e) == w0 || w.edge_target(e) == w0) continue;
          if (segments_intersect(pv, w.vertex(w0), w.vertex(w.edge_source(e)), w.vertex(w.edge_target(e))))
            ok = false;
          break;
        }
      }
    }
    if (ok) visible.push_back(w0);
    for (size_t k = i + 1; k < j; ++k)
      if (w.is_boundary_pair(v, order[k])) visible.push_back(order[k]);

    std::vector<int> inserts;
    for (size_t k = i; k < j; ++k) {
      int u = order[k];
      for (int e : {w.prev(u), u}) {
        if (incident_to_v(e)) continue;
        int other = w.edge_source(e) == u ? w.edge_target(e) : w.edge_source(e);
        int o = orient(pv, w.vertex(u), w.vertex(other));
        if (o < 0) {
          auto it = where.find(e);
          if (it != where.end()) {
            status.erase(it->second);
            where.erase(it);
          }
        } else if (o > 0) {
          inserts.push_back(e);
        }
      }
    }
    for (int e : inserts)
      if (!where.count(e)) where[e] = status.insert(e).first;
    i = j;
  }
  std::sort(visible.begin(), visible.end());
  visible.erase(std::unique(visible.begin(), visible.end()), visible.end());
  return visible;
}

VisibilityGraph build_visibility(const Workspace& w) {
  int n = w.size();
  std::vector<std::vector<int>> per(n);
#pragma omp parallel for schedule(dynamic)
  for (int v = 0; v < n; ++v) per[v] = visible_from(w, v);

  VisibilityGraph g;
  g.vertex_count = n;
  for (int v = 0; v < n; ++v)
    for (int u : per[v])
      g.edges.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

std::vector<DirectedEvent> directed_events(const Workspace& w, const VisibilityGraph& vg) {
  std::vector<DirectedEvent> out;
  out.reserve(vg.edges.size() * 2);
  for (auto [u, v] : vg.edges) {
    out.push_back({u, v, dir_from(w.vertex(u), w.vertex(v))});
    out.push_back({v, u, dir_from(w.vertex(v), w.vertex(u))});
  }
  std::sort(out.begin(), out.end(), [](const DirectedEvent& a, const DirectedEvent& b) {
    if (dir_less(a.direction, b.direction)) return true;
    if (dir_less(b.direction, a.direction)) return false;
    return std::tie(a.origin, a.target) < std::tie(b.origin, b.target);
  });
  return out;
}

}  // namespace localizer
