#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "localizer/interval_tree.h"
#include "localizer/level_sets.h"
#include "localizer/rtd.h"

namespace localizer {

struct ParallelSupportLines : Error {
  using Error::Error;
};

/// Rotated ellipse ((X c + Y s)^2 / a^2 + (X s - Y c)^2 / b^2 = 1 with
/// X, Y relative to center and c, s the cosine and sine of rotation.
struct Ellipse {
  Vec2 center;
  double a = 0.0, b = 0.0;
  double rotation = 0.0;

  double residual(const Vec2& p) const;
};

/// Glissette of a segment of length d1 + d2 sliding on the x-axis and on the
/// line through the origin at angle alpha; the traced point is d1 from the
/// endpoint on the second line. Centered at the origin.
Ellipse glissette_ellipse(double alpha, double d1, double d2);

/// Same curve for a cell's support lines, in world coordinates.
Ellipse ellipse_params(const OneSidedEdge& ceiling, const OneSidedEdge& floor, double d1, double d2);

struct EllipseArc {
  Ellipse ellipse;
  double theta_begin = 0.0, theta_end = 0.0;
  double d1 = 0.0, d2 = 0.0;
};

/// Parallel ceiling and floor: the chord of length d1 + d2 occurs only at theta,
/// where every pose on the segment reads the pair.
struct ParallelBand {
  double theta = 0.0;
  Vec2 from, to;
};

struct AntipodalMatch {
  int cell = -1;
  int e_t = -1, e_b = -1;
  ThetaInterval range;
  std::variant<EllipseArc, ParallelBand> curve;
};

struct AntipodalIndex {
  struct Span {
    double lo, hi;
    int cell;
  };
  std::vector<Span> spans;  ///< [min_opening, max_opening] per cell, by cell id
  IntervalTree<int> tree;
};

AntipodalIndex build_antipodal_index(const std::vector<RtdCell>& cells);

/// Cell ids whose opening range contains d, sorted.
std::vector<int> stab_cells(const AntipodalIndex& index, double d);

/// Throws NonPositiveMeasurement. Ordered by cell id, then angle.
std::vector<AntipodalMatch> query_antipodal(const Workspace& w, const std::vector<RtdCell>& cells,
                                            const AntipodalIndex& index, double d1, double d2);

using PoseSegment = std::pair<Vec2, Vec2>;
using PoseAt = std::variant<std::monostate, Vec2, PoseSegment>;

PoseAt pose_at_theta(const Workspace& w, const RtdCell& c, double d1, double d2, double theta);

/// Maximal angle interval of one (ceiling, floor) edge pair.
struct PairInterval {
  int e_t = -1, e_b = -1;
  double lo = 0.0, hi = 0.0;
};

/// Union per edge pair, joining intervals whose ends are within eps; never
/// joins across the zero angle. Sorted by (e_t, e_b, lo).
std::vector<PairInterval> normalize_pairs(std::vector<PairInterval> in);

std::vector<PairInterval> merge_by_pair(const std::vector<AntipodalMatch>& matches);

}  // namespace localizer
