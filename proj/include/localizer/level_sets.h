#pragma once

#include <vector>

#include "localizer/rtd.h"

namespace localizer {

/// Angle bound of a cell's level set, kept in symbolic form so it can be
/// re-resolved for another measurement.
struct Endpoint {
  enum class Kind { Begin, End, Break, Root };
  Kind kind = Kind::Begin;
  int side = -1;   ///< 0 = left wall, 1 = right wall (Break, Root)
  int piece = -1;  ///< monotone piece (Root) or break index (Break)
  double theta = 0.0;
};

struct ThetaInterval {
  Endpoint lo, hi;
};

/// {theta : f_side(theta) >= d} (at_least) or {f_side(theta) <= d} over the cell's closed range.
std::vector<ThetaInterval> level_set(const CellGeometry& g, const RtdCell& c, int side, double d, bool at_least);
std::vector<ThetaInterval> intersect(const std::vector<ThetaInterval>& a, const std::vector<ThetaInterval>& b);
std::vector<ThetaInterval> unite(const std::vector<ThetaInterval>& a, const std::vector<ThetaInterval>& b);

double resolve(const Endpoint& e, const CellGeometry& g, const RtdCell& c, double d);

/// Wall (0 or 1) with the larger opening; the difference keeps its sign inside a cell.
int wide_side(const CellGeometry& g, const RtdCell& c);

/// Angles where a chord of length d spans the cell: lo <= d <= hi.
std::vector<ThetaInterval> chord_set(const CellGeometry& g, const RtdCell& c, double d);

}  // namespace localizer
