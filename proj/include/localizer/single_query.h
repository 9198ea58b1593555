#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "localizer/level_sets.h"
#include "localizer/rtd.h"

namespace localizer {

struct EmptyRegion : Error {
  using Error::Error;
};
struct PoleOnDirectrix : Error {
  using Error::Error;
};

struct SingleIndex {
  std::vector<int> order;  ///< cell ids by decreasing max opening, ties by id
  std::vector<double> max_opening;
};

SingleIndex build_single_index(const std::vector<RtdCell>& cells);

struct AngleRange {
  double begin = 0.0, end = 0.0;
};

struct CellPreimage {
  int cell = -1;
  double d = 0.0;
  std::vector<AngleRange> ranges;  ///< angles where some pose in the cell reads d
};

struct SingleResult {
  double d = 0.0;
  std::vector<CellPreimage> cells;
  int inspected = 0;
};

SingleResult query_single(const Workspace& w, const std::vector<RtdCell>& cells, const SingleIndex& index, double d);

std::vector<AngleRange> preimage_ranges(const Workspace& w, const RtdCell& c, double d);

/// Positions reading d at this angle: a segment parallel to the ceiling, or nothing.
std::optional<std::pair<Vec2, Vec2>> preimage_segment(const CellGeometry& g, double d, double theta);

struct CircularArc {
  Vec2 center;
  double radius = 0.0;
};

/// Points at distance `offset_d` back toward the pole from the directrix n.p = k along rays from the pole.
struct ConchoidArc {
  Vec2 pole;
  Vec2 normal;
  double k = 0.0;
  double offset_d = 0.0;
};

using WallCurve = std::variant<CircularArc, ConchoidArc>;

Vec2 curve_point(const WallCurve& c, double theta);

struct RegionPiece {
  double theta_begin = 0.0, theta_end = 0.0;
  WallCurve left, right;
};

struct PositionRegion {
  int cell = -1;
  double d = 0.0;
  std::vector<RegionPiece> pieces;
  Vec2 floor_normal;  ///< kept side: floor_normal . p <= floor_offset
  double floor_offset = 0.0;
};

/// Throws EmptyRegion when d exceeds the cell's max opening.
PositionRegion project_region(const Workspace& w, const RtdCell& c, double d);

/// Conchoid of a pole and a directrix at offset d:
/// (n.P - a)^2 |P|^2 = d^2 (n.P)^2 with P measured from the pole.
struct ConchoidImplicit {
  Vec2 pole;
  Vec2 normal;  ///< unit normal of the directrix
  double a = 0.0;  ///< signed distance from the pole to the directrix along normal
  double d = 0.0;
  bool has_slope = false;
  double slope = 0.0;
  int sign = 1;  ///< +1 when the directrix is above the pole

  double residual(double x, double y) const;
  /// Same curve in slope form: (m X - Y + sign a sqrt(1+m^2))^2 |P|^2 = d^2 (m X - Y)^2.
  double residual_slope_form(double x, double y) const;
};

ConchoidImplicit conchoid_implicit(const Point& pole, const Point& a, const Point& b, double d);

using Ring = std::vector<Vec2>;

struct PlanarRegion {
  /// Polygons as outer ring followed by holes, counterclockwise outer rings.
  std::vector<std::vector<Ring>> polygons;

  double area() const;
  bool contains(const Vec2& p) const;
};

/// One polygonal ring per region piece, clipped to the floor half-plane.
std::vector<Ring> flatten_region(const PositionRegion& r, double deviation);
PlanarRegion region_union(const std::vector<PositionRegion>& regions, double deviation);

}  // namespace localizer
