#pragma once

#include <utility>
#include <vector>

#include "localizer/geom.h"

namespace localizer {

struct VisibilityGraph {
  int vertex_count = 0;
  /// Unordered pairs stored as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges;

  bool contains(int u, int v) const;
};

/// Vertices w for which the open segment vw lies in the interior of W,
/// computed by an angular sweep around v. Boundary neighbours are included.
std::vector<int> visible_from(const Workspace& w, int v);

VisibilityGraph build_visibility(const Workspace& w);

struct DirectedEvent {
  int origin = -1;
  int target = -1;
  Dir direction;
};

/// Two events per visibility edge, in counterclockwise order of direction
/// starting at +x; ties broken by (origin, target).
std::vector<DirectedEvent> directed_events(const Workspace& w, const VisibilityGraph& vg);

}  // namespace localizer
