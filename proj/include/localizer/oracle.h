#pragma once

#include <vector>

#include "localizer/geom.h"

namespace localizer {

/// Bounding-box grid of nx x ny cell centres and nt angles over [0, 2pi).
struct GridSpec {
  int nx = 200, ny = 200, nt = 720;
  double eps_grid = 0.0;  ///< 0 means twice the diagonal pitch
};

struct Grid {
  double x0 = 0, y0 = 0, dx = 0, dy = 0;
  std::vector<double> xs, ys;  ///< interior sample positions
  std::vector<double> thetas;
  double eps_grid = 0;
};

Grid make_grid(const Workspace& w, const GridSpec& spec);

struct GridPose {
  double x, y, theta;
  double h, h_back;  ///< forward reading and the reading at theta + pi (antipodal only)
};

enum class Exec { Serial, Parallel };

/// Grid poses with |h - d| <= eps_grid, ordered by (sample, angle).
std::vector<GridPose> oracle_single(const Workspace& w, double d, const Grid& grid, Exec exec = Exec::Parallel);
/// One pass over the grid for several measurements.
std::vector<std::vector<GridPose>> oracle_single_many(const Workspace& w, const std::vector<double>& ds,
                                                      const Grid& grid, Exec exec = Exec::Parallel);
std::vector<GridPose> oracle_antipodal(const Workspace& w, double d1, double d2, const Grid& grid,
                                       Exec exec = Exec::Parallel);

struct AngleInterval {
  double lo, hi;
};

/// Sampled angles where an interior chord of length d runs from edge e1
/// (hit going forward) to edge e2 (hit going backward); runs of positive
/// samples become intervals. Parallel edge pairs report nothing.
std::vector<AngleInterval> oracle_pair_intervals(const Workspace& w, int e1, int e2, double d, int samples);

struct OracleReport {
  size_t matched = 0;
  std::vector<GridPose> unmatched;        ///< oracle poses missing from the answer
  std::vector<GridPose> false_positives;  ///< answer samples the oracle rejects

  bool pass() const { return unmatched.empty() && false_positives.empty(); }
};

}  // namespace localizer
