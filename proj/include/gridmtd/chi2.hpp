#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>

namespace gridmtd {

/// Chi-square detector: false-positive rate, degrees of freedom and the
/// matching residual threshold tau_chi(alpha).
struct DetectorSpec {
  double alpha = 0.05;
  int dof = 1;
  double threshold = 0.0;
};

/// Upper-tail mass of the central chi-square distribution.
inline double chi2_tail(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

/// Threshold with upper-tail central chi-square mass exactly alpha.
inline double chi2_threshold(double alpha, int dof) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha");
  if (dof < 1) throw std::invalid_argument("dof");
  return 2.0 * boost::math::gamma_q_inv(0.5 * dof, alpha);
}

inline DetectorSpec make_detector(double alpha, int dof) {
  return DetectorSpec{alpha, dof, chi2_threshold(alpha, dof)};
}

/// Upper-tail mass of the non-central chi-square(dof, lambda) above x,
/// i.e. the detection probability f(lambda) for threshold x.
///
/// Poisson mixture of central chi-square tails, summed outward from the
/// modal Poisson index so large lambda does not underflow; truncated near
/// machine precision so the lost tail mass stays far below 1e-12.
inline double noncentral_chi2_tail(double x, double dof, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lambda < 0");
  if (lambda == 0.0) return chi2_tail(x, dof);
  const double half = 0.5 * lambda;
  const auto term = [&](long j) {
    const double logw = j * std::log(half) - half - std::lgamma(j + 1.0);
    return std::exp(logw) * chi2_tail(x, dof + 2.0 * j);
  };
  const long j0 = static_cast<long>(half);
  double sum = term(j0);
  constexpr double rel_tol = 1e-16;
  for (long j = j0 + 1;; ++j) {
    const double t = term(j);
    sum += t;
    if (t < rel_tol * sum) break;
  }
  for (long j = j0 - 1; j >= 0; --j) {
    const double t = term(j);
    sum += t;
    if (t < rel_tol * sum) break;
  }
  return std::min(sum, 1.0);
}

/// Detection probability of a residual with non-centrality lambda.
inline double detection_prob(double lambda, const DetectorSpec& d) {
  return noncentral_chi2_tail(d.threshold, d.dof, lambda);
}

/// Smallest lambda with f(lambda) >= beta (critical non-centrality).
/// Returns 0 when beta <= alpha: the central distribution already fires
/// at rate alpha.
inline double critical_lambda(double beta, const DetectorSpec& d,
                              double tol = 1e-6) {
  if (beta <= d.alpha) return 0.0;
  if (!(beta < 1.0)) throw std::invalid_argument("beta must be < 1");
  double lo = 0.0, hi = 1.0;
  while (detection_prob(hi, d) < beta) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("critical_lambda diverged");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (detection_prob(mid, d) >= beta ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace gridmtd
