#pragma once

#include <Eigen/Dense>

#include "gridmtd/random.hpp"

#include <functional>
#include <limits>

namespace gridmtd {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct PatternSearchOptions {
  double initial_step = 0.25;     // relative to the box half-width
  double step_tolerance = 1e-4;   // stop when the relative step falls below
  int max_evaluations = 200000;
};

struct LocalResult {
  Eigen::VectorXd x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  bool converged = false;
};

/// Coordinate pattern (compass) search on a box. Steps are per-coordinate
/// multiples of the box half-width; the mesh halves whenever no axis move
/// improves. Suited to the non-smooth spectral-norm objectives used here.
inline LocalResult pattern_search(const Objective& f, const Eigen::VectorXd& lb,
                                  const Eigen::VectorXd& ub,
                                  Eigen::VectorXd x,
                                  const PatternSearchOptions& opt = {}) {
  const int dim = static_cast<int>(x.size());
  const Eigen::VectorXd half = 0.5 * (ub - lb);
  x = x.cwiseMax(lb).cwiseMin(ub);

  LocalResult res;
  res.value = f(x);
  res.evaluations = 1;
  double step = opt.initial_step;
  while (step >= opt.step_tolerance && res.evaluations < opt.max_evaluations) {
    bool improved = false;
    for (int i = 0; i < dim; ++i) {
      if (half[i] == 0.0) continue;
      for (double sign : {+1.0, -1.0}) {
        Eigen::VectorXd trial = x;
        trial[i] = std::clamp(x[i] + sign * step * half[i], lb[i], ub[i]);
        if (trial[i] == x[i]) continue;
        const double v = f(trial);
        ++res.evaluations;
        if (v < res.value - 1e-14) {
          res.value = v;
          x = trial;
          improved = true;
          break;  // keep sweeping remaining axes at this mesh
        }
      }
      if (res.evaluations >= opt.max_evaluations) break;
    }
    if (!improved) step *= 0.5;
  }
  res.x = x;
  res.converged = step < opt.step_tolerance;
  return res;
}

/// Multistart wrapper: one run from each start point, lowest value wins;
/// ties break toward the earliest start so results are deterministic.
inline LocalResult multistart_pattern_search(
    const Objective& f, const Eigen::VectorXd& lb, const Eigen::VectorXd& ub,
    const std::vector<Eigen::VectorXd>& starts,
    const PatternSearchOptions& opt = {}) {
  LocalResult best;
  int total_evals = 0;
  for (const auto& x0 : starts) {
    LocalResult r = pattern_search(f, lb, ub, x0, opt);
    total_evals += r.evaluations;
    if (r.value < best.value) best = r;
  }
  best.evaluations = total_evals;
  return best;
}

/// Deterministic start points: the origin, both box corners, and uniform
/// random interior points derived from the seed.
inline std::vector<Eigen::VectorXd> default_starts(const Eigen::VectorXd& lb,
                                                   const Eigen::VectorXd& ub,
                                                   int count,
                                                   std::uint64_t seed) {
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Zero(lb.size()).cwiseMax(lb).cwiseMin(ub));
  starts.push_back(ub);
  starts.push_back(lb);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = static_cast<int>(starts.size()); s < count; ++s) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(s));
    Eigen::VectorXd x(lb.size());
    for (int i = 0; i < x.size(); ++i)
      x[i] = lb[i] + (ub[i] - lb[i]) * unit(rng);
    starts.push_back(x);
  }
  starts.resize(static_cast<size_t>(std::max(count, 1)));
  return starts;
}

}  // namespace gridmtd
