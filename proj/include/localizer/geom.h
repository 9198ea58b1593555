#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace localizer {

using Scalar = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidPolygon : Error {
  using Error::Error;
};
struct PointOutsideWorkspace : Error {
  using Error::Error;
};
struct DegenerateWorkspace : Error {
  using Error::Error;
};
struct NonPositiveMeasurement : Error {
  using Error::Error;
};
struct AngleOutsideCell : Error {
  using Error::Error;
};
struct OutOfDomain : Error {
  using Error::Error;
};

/// Tolerance for floating-point comparisons; LOCALIZER_EPS overrides the default 1e-9.
double eps();

struct Point {
  Scalar x, y;
};

bool operator==(const Point& a, const Point& b);
inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }

/// Exact direction vector; ordered counterclockwise starting at +x.
struct Dir {
  Scalar dx, dy;
};

Dir dir_from(const Point& from, const Point& to);
Dir negate(const Dir& d);
Scalar cross(const Dir& a, const Dir& b);
Scalar dot(const Dir& a, const Dir& b);
int sgn(const Scalar& v);

/// Same direction (positive multiples of each other).
bool dir_equal(const Dir& a, const Dir& b);
/// Strict counterclockwise order from the positive x-axis.
bool dir_less(const Dir& a, const Dir& b);
/// A direction strictly inside the counterclockwise arc from a to b (a != b).
Dir dir_between(const Dir& a, const Dir& b);
/// True if d lies strictly inside the counterclockwise wedge from a to b.
bool ccw_strictly_between(const Dir& a, const Dir& b, const Dir& d);
double dir_angle(const Dir& d);

struct ApproxAngle {
  double radians = 0.0;
};

/// Normalize to [0, 2pi).
double normalize_angle(double a);

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };
Orientation orientation(const Point& p, const Point& q, const Point& r);

enum class Side { Left, Right };

/// Boundary edge with the workspace interior on one side.
struct OneSidedEdge {
  Point source, target;
  Side interior = Side::Left;
};

bool point_on_segment(const Point& p, const Point& a, const Point& b);
/// Closed segments ab and cd share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// Polygon with holes. Vertices are numbered ring by ring; edge i joins
/// vertex i to next(i) and has the interior on its left.
class Workspace {
 public:
  Workspace() = default;
  /// First ring is the outer boundary, the rest are holes. Orientation is
  /// normalized; throws InvalidPolygon when the rings are not a valid domain.
  static Workspace from_rings(std::vector<std::vector<Point>> rings);

  int size() const { return static_cast<int>(pts_.size()); }
  int edge_count() const { return size(); }
  const Point& vertex(int v) const { return pts_[v]; }
  const std::vector<Point>& vertices() const { return pts_; }
  int next(int v) const { return next_[v]; }
  int prev(int v) const { return prev_[v]; }
  int ring_of(int v) const { return ring_[v]; }
  int ring_count() const { return static_cast<int>(ring_start_.size()); }
  std::vector<int> ring(int r) const;
  OneSidedEdge edge(int e) const;
  /// Endpoints of edge e as vertex ids.
  int edge_source(int e) const { return e; }
  int edge_target(int e) const { return next_[e]; }
  bool is_boundary_pair(int u, int v) const;
  bool general_position() const { return general_position_; }
  Scalar area() const;
  double ax(int v) const { return ax_[v]; }
  double ay(int v) const { return ay_[v]; }

 private:
  std::vector<Point> pts_;
  std::vector<double> ax_, ay_;
  std::vector<int> next_, prev_, ring_, ring_start_;
  bool general_position_ = true;
};

enum class Location { Interior, Boundary, Exterior };
Location point_in_workspace(const Workspace& w, const Point& p);

struct RayHit {
  Scalar t;          ///< hit = p + t * dir
  Scalar distance2;  ///< exact squared distance
  double distance = 0.0;
  int edge = -1;
  int vertex = -1;  ///< set when the ray stops at a vertex
};

/// First boundary point along the ray. Throws PointOutsideWorkspace.
RayHit ray_cast(const Workspace& w, const Point& p, const Dir& dir);

/// Floating-point ray cast for dense sampling; returns +inf when nothing is hit.
double ray_cast_approx(const Workspace& w, double px, double py, double theta);

/// Squared diameter (largest squared vertex distance).
Scalar diameter2(const Workspace& w);

Scalar parse_scalar(const std::string& s);
std::string to_string(const Scalar& s);
double to_double(const Scalar& s);

}  // namespace localizer
