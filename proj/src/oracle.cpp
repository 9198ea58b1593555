#include "localizer/oracle.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace localizer {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Grid make_grid(const Workspace& w, const GridSpec& spec) {
  double x0 = w.ax(0), x1 = x0, y0 = w.ay(0), y1 = y0;
  for (int v = 0; v < w.size(); ++v) {
    x0 = std::min(x0, w.ax(v));
    x1 = std::max(x1, w.ax(v));
    y0 = std::min(y0, w.ay(v));
    y1 = std::max(y1, w.ay(v));
  }
  Grid g;
  g.x0 = x0;
  g.y0 = y0;
  g.dx = (x1 - x0) / spec.nx;
  g.dy = (y1 - y0) / spec.ny;
  g.eps_grid = spec.eps_grid > 0 ? spec.eps_grid : 2 * std::hypot(g.dx, g.dy);
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) {
      double x = x0 + (i + 0.5) * g.dx, y = y0 + (j + 0.5) * g.dy;
      if (point_in_workspace(w, {Scalar(x), Scalar(y)}) != Location::Interior) continue;
      g.xs.push_back(x);
      g.ys.push_back(y);
    }
  for (int k = 0; k < spec.nt; ++k) g.thetas.push_back(kTwoPi * k / spec.nt);
  return g;
}

std::vector<std::vector<GridPose>> oracle_single_many(const Workspace& w, const std::vector<double>& ds,
                                                      const Grid& grid, Exec exec) {
  int n = static_cast<int>(grid.xs.size());
  std::vector<std::vector<std::vector<GridPose>>> per(n, std::vector<std::vector<GridPose>>(ds.size()));
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
  for (int i = 0; i < n; ++i) {
    for (double th : grid.thetas) {
      double h = ray_cast_approx(w, grid.xs[i], grid.ys[i], th);
      for (size_t k = 0; k < ds.size(); ++k)
        if (std::abs(h - ds[k]) <= grid.eps_grid) per[i][k].push_back({grid.xs[i], grid.ys[i], th, h, 0.0});
    }
  }
  std::vector<std::vector<GridPose>> out(ds.size());
  for (int i = 0; i < n; ++i)
    for (size_t k = 0; k < ds.size(); ++k) out[k].insert(out[k].end(), per[i][k].begin(), per[i][k].end());
  return out;
}

std::vector<GridPose> oracle_single(const Workspace& w, double d, const Grid& grid, Exec exec) {
  return oracle_single_many(w, {d}, grid, exec).front();
}

std::vector<GridPose> oracle_antipodal(const Workspace& w, double d1, double d2, const Grid& grid, Exec exec) {
  int n = static_cast<int>(grid.xs.size());
  std::vector<std::vector<GridPose>> per(n);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
  for (int i = 0; i < n; ++i) {
    for (double th : grid.thetas) {
      double h = ray_cast_approx(w, grid.xs[i], grid.ys[i], th);
      if (std::abs(h - d1) > grid.eps_grid) continue;
      double hb = ray_cast_approx(w, grid.xs[i], grid.ys[i], th + std::numbers::pi);
      if (std::abs(hb - d2) <= grid.eps_grid) per[i].push_back({grid.xs[i], grid.ys[i], th, h, hb});
    }
  }
  std::vector<GridPose> out;
  for (const auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<AngleInterval> oracle_pair_intervals(const Workspace& w, int e1, int e2, double d, int samples) {
  double ax = w.ax(e1), ay = w.ay(e1), bx = w.ax(w.next(e1)), by = w.ay(w.next(e1));
  double cx = w.ax(e2), cy = w.ay(e2), fx = w.ax(w.next(e2)), fy = w.ay(w.next(e2));
  double ex = bx - ax, ey = by - ay, gx = fx - cx, gy = fy - cy;
  std::vector<AngleInterval> out;
  if (ex * gy - ey * gx == 0.0) return out;
  bool open = false;
  for (int k = 0; k < samples; ++k) {
    double th = kTwoPi * k / samples;
    double ux = std::cos(th), uy = std::sin(th);
    // a + s e - d u = c + r g
    double rx = cx - ax + d * ux, ry = cy - ay + d * uy;
    double den = ex * gy - ey * gx;
    double s = (rx * gy - ry * gx) / den;
    double r = (rx * ey - ry * ex) / den;
    bool ok = false;
    if (s >= 0 && s <= 1 && r >= 0 && r <= 1) {
      double tx = ax + s * ex, ty = ay + s * ey;
      double mx = tx - 0.5 * d * ux, my = ty - 0.5 * d * uy;
      double tol = 1e-9 * (1 + d);
      ok = point_in_workspace(w, {Scalar(mx), Scalar(my)}) == Location::Interior &&
           std::abs(ray_cast_approx(w, mx, my, th) - 0.5 * d) <= tol &&
           std::abs(ray_cast_approx(w, mx, my, th + std::numbers::pi) - 0.5 * d) <= tol;
    }
    if (ok && !open) {
      out.push_back({th, th});
      open = true;
    } else if (ok) {
      out.back().hi = th;
    } else {
      open = false;
    }
  }
  return out;
}

}  // namespace localizer
