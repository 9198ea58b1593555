#pragma once

#include <array>
#include <tuple>
#include <variant>
#include <vector>

#include "localizer/geom.h"
#include "localizer/visibility.h"

namespace localizer {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

/// Opening values sampled at the ends of monotone pieces of a wall profile.
struct SideProfile {
  std::vector<double> breaks;
  std::vector<double> values;

  double min() const;
  double max() const;
  int pieces() const { return static_cast<int>(breaks.size()) - 1; }
};

struct RtdCell {
  int id = -1;
  int e_t = -1, e_b = -1;  ///< ceiling and floor edge ids
  int v_l = -1, v_r = -1;  ///< limiting vertices
  Dir begin, end;          ///< half-open [begin, end)
  bool end_full_turn = false;
  double theta_begin = 0.0, theta_end = 0.0;
  bool parallel = false;  ///< ceiling and floor support lines are parallel
  SideProfile left, right;

  auto key() const { return std::tie(e_t, e_b, v_l, v_r); }
};

enum class EventKind { TypeI, TypeII };

struct SweepEvent {
  EventKind kind = EventKind::TypeII;
  int origin = -1, target = -1;
  Dir direction;
  int terminated = 0, created = 0;
};

struct Rtd {
  std::vector<RtdCell> cells;
  std::vector<SweepEvent> events;
};

/// Rotational trapezoidal decomposition. Cells are cut at direction 0.
/// Throws DegenerateWorkspace when the sweep state cannot be resolved.
Rtd build_rtd(const Workspace& w, const VisibilityGraph& vg);

/// Trapezoid keys (e_t, e_b, v_l, v_r) of the decomposition at a direction
/// that is not parallel to any visibility edge.
std::vector<std::array<int, 4>> decomposition_at(const Workspace& w, const Dir& u);

bool cell_contains(const RtdCell& c, const Dir& theta);
bool cell_closure_contains(const RtdCell& c, const Dir& theta);

struct Trapezoid {
  Point top_left, top_right, bottom_right, bottom_left;
  Dir theta;
};

/// Exact cross-section of a cell at a direction in the closure of its range.
Trapezoid cross_section(const Workspace& w, const RtdCell& c, const Dir& theta);
Scalar trapezoid_area(const Trapezoid& t);
/// Closed containment.
bool trapezoid_contains(const Trapezoid& t, const Point& p);

/// Ceiling/floor lines in a frame where neither is vertical:
/// local = (c x + s y, -s x + c y).
struct OpeningProfile {
  Scalar frame_c = 1, frame_s = 0;
  bool vertical_t = false, vertical_b = false;
  Scalar m_t, b_t, m_b, b_b;

  double frame_angle() const;
  bool parallel() const { return m_t == m_b; }
  Vec2 to_local(const Vec2& p) const;
  Vec2 to_world(const Vec2& p) const;
};

OpeningProfile make_opening_profile(const OneSidedEdge& top, const OneSidedEdge& bottom);
OpeningProfile opening_profile(const Workspace& w, const RtdCell& c);

/// Opening at world angle theta from the ceiling point with local abscissa x.
double opening(const OpeningProfile& p, double theta, double x);

struct AllX {};
struct NoX {};
using InverseResult = std::variant<double, AllX, NoX>;

/// Local abscissa where the opening equals f.
InverseResult opening_inverse(const OpeningProfile& p, double theta, double f);

/// Local abscissa of the ceiling point on the wall through vertex q.
double wall_top_x(const OpeningProfile& p, double theta, const Vec2& q);

/// Double-precision view of a cell used by the opening evaluations.
class CellGeometry {
 public:
  CellGeometry(const Workspace& w, const RtdCell& c);

  /// Chord length along the wall through v_l (side 0) or v_r (side 1).
  double wall_opening(int side, double theta) const;
  double wall_opening_derivative(int side, double theta) const;
  Vec2 wall_top(int side, double theta) const;
  Vec2 wall_bottom(int side, double theta) const;
  /// Length of the chord from a ceiling point back to the floor.
  double chord_from_top(const Vec2& top, double theta) const;
  Vec2 vertex(int side) const { return side == 0 ? vl_ : vr_; }
  bool vertex_on_ceiling(int side) const { return side == 0 ? vl_on_t_ : vr_on_t_; }
  bool vertex_on_floor(int side) const { return side == 0 ? vl_on_b_ : vr_on_b_; }
  Vec2 ceiling_normal() const { return {nt_x_, nt_y_}; }
  double ceiling_offset() const { return kt_; }
  Vec2 floor_normal() const { return {nb_x_, nb_y_}; }
  double floor_offset() const { return kb_; }
  double theta_begin() const { return t0_; }
  double theta_end() const { return t1_; }

 private:
  double nt_x_, nt_y_, kt_, nb_x_, nb_y_, kb_;
  Vec2 vl_, vr_;
  bool vl_on_t_, vl_on_b_, vr_on_t_, vr_on_b_;
  double t0_, t1_;
};

/// Opening at (theta, x) for a cell, x a local abscissa between the two
/// top corners. Throws OutOfDomain.
double cell_opening(const Workspace& w, const RtdCell& c, double theta, double x);
/// Inverse restricted to the top segment of the cell; out of range is NoX.
InverseResult cell_opening_inverse(const Workspace& w, const RtdCell& c, double theta, double f);

SideProfile compute_side_profile(const CellGeometry& g, int side);
void compute_profiles(const Workspace& w, RtdCell& c);

double max_opening(const RtdCell& c);
double min_opening(const RtdCell& c);

struct SideOpenings {
  double left_min, left_max, right_min, right_max;
};
SideOpenings side_openings(const RtdCell& c);

/// Root of wall_opening(side, theta) = d on monotone piece `piece`, by
/// bisection; clamps to the piece ends when d is outside the piece range.
double profile_root(const CellGeometry& g, const RtdCell& c, int side, int piece, double d);

}  // namespace localizer
