#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "localizer/antipodal.h"

namespace localizer {

struct OnCriticalValue : Error {
  using Error::Error;
};
struct InconsistentSweep : Error {
  using Error::Error;
};
struct NoIncidence : Error {
  using Error::Error;
};

enum class CellClass { Empty, Full, Partial };

/// Throws OnCriticalValue when d equals one of the four side extrema.
CellClass classify(const SideOpenings& s, double d);
CellClass classify(const RtdCell& c, double d);

/// 0, every side-opening extremum (deduplicated within eps), +inf.
std::vector<double> critical_values(const std::vector<RtdCell>& cells);

/// Values where some cell's symbolic level-set structure can change: every
/// monotone-piece end value of every wall profile. Sorted, exact duplicates removed.
std::vector<double> refined_values(const std::vector<RtdCell>& cells);

struct SymbolicEnd {
  int cell = -1;
  Endpoint endpoint;
};

/// Maximal angle interval of an edge pair, live for d in (d_lo, d_hi].
struct MaximalInterval {
  int e_t = -1, e_b = -1;
  SymbolicEnd lo, hi;
  double d_lo = 0.0, d_hi = 0.0;
};

struct OptIndex {
  std::vector<MaximalInterval> intervals;  ///< sorted by (e_t, e_b, d_hi, d_lo, endpoints)
  IntervalTree<int> tree;                  ///< keyed by [d_lo, d_hi]
};

OptIndex build_opt_index(const Workspace& w, const std::vector<RtdCell>& cells);
/// Rebuilds the tree from `intervals`.
void index_intervals(OptIndex& index);

/// Throws NoIncidence when no length-d segment realizes the endpoint.
double resolve_endpoint(const Workspace& w, const std::vector<RtdCell>& cells, const SymbolicEnd& e, double d);

struct OptMatch {
  PairInterval interval;
  int lo_cell = -1, hi_cell = -1;
  std::variant<EllipseArc, ParallelBand> curve;
};

/// Throws NonPositiveMeasurement. Sorted by (e_t, e_b, lo).
std::vector<OptMatch> query_opt(const Workspace& w, const std::vector<RtdCell>& cells, const OptIndex& index,
                                double d1, double d2);

}  // namespace localizer
