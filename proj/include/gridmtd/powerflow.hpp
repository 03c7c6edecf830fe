#pragma once

#include <Eigen/Dense>

#include "gridmtd/chi2.hpp"
#include "gridmtd/grid.hpp"
#include "gridmtd/random.hpp"

#include <cmath>
#include <stdexcept>

namespace gridmtd {

/// Polar state: per-bus voltage magnitude and angle (rad), ref angle 0.
struct StateVector {
  VectorXd v;
  VectorXd theta;

  static StateVector flat(const GridCase& c) {
    StateVector s{VectorXd::Ones(c.n_bus()), VectorXd::Zero(c.n_bus())};
    s.v[c.ref_bus] = c.ref_vm;
    return s;
  }
};

/// Stacked measurement [P_inj; Q_inj; P_flow; Q_flow] with diagonal
/// noise covariance R (variances).
struct MeasurementVector {
  VectorXd z;
  VectorXd R;  // diagonal of the covariance

  int size() const { return static_cast<int>(z.size()); }
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Measurement count: injections at every bus plus from-side flows.
inline int measurement_count(const GridCase& c) {
  return 2 * c.n_bus() + 2 * c.n_branch();
}

inline VectorXd isotropic_variance(const GridCase& c, double sigma) {
  return VectorXd::Constant(measurement_count(c), sigma * sigma);
}

namespace detail {

// Per-branch terms shared by h(.) and its Jacobian.
struct FlowTerms {
  double gk, bk, vf, vt, c, s;
  int f, t;
};

inline FlowTerms flow_terms(const GridCase& grid, const Admittance& y,
                            const StateVector& st, int k) {
  FlowTerms ft;
  ft.f = grid.branches[k].from_bus;
  ft.t = grid.branches[k].to_bus;
  ft.gk = y.g[k];
  ft.bk = y.b[k];
  ft.vf = st.v[ft.f];
  ft.vt = st.v[ft.t];
  const double d = st.theta[ft.f] - st.theta[ft.t];
  ft.c = std::cos(d);
  ft.s = std::sin(d);
  return ft;
}

}  // namespace detail

/// Noiseless h(state): bus injections and from-side branch flows under
/// the series-only branch model.
inline VectorXd measurement_function(const StateVector& st,
                                     const GridCase& grid,
                                     const MtdStrategy& strategy) {
  const Admittance y = branch_admittance(grid, strategy);
  const int nb = grid.n_bus(), m = grid.n_branch();
  VectorXd z = VectorXd::Zero(measurement_count(grid));
  for (int k = 0; k < m; ++k) {
    const auto ft = detail::flow_terms(grid, y, st, k);
    const double pf =
        ft.gk * ft.vf * ft.vf - ft.vf * ft.vt * (ft.gk * ft.c + ft.bk * ft.s);
    const double qf =
        -ft.bk * ft.vf * ft.vf - ft.vf * ft.vt * (ft.gk * ft.s - ft.bk * ft.c);
    const double pt =
        ft.gk * ft.vt * ft.vt - ft.vf * ft.vt * (ft.gk * ft.c - ft.bk * ft.s);
    const double qt =
        -ft.bk * ft.vt * ft.vt + ft.vf * ft.vt * (ft.gk * ft.s + ft.bk * ft.c);
    z[ft.f] += pf;
    z[ft.t] += pt;
    z[nb + ft.f] += qf;
    z[nb + ft.t] += qt;
    z[2 * nb + k] = pf;
    z[2 * nb + m + k] = qf;
  }
  return z;
}

/// Analytic Jacobian of measurement_function w.r.t. the 2n free states
/// [theta_nonref; v_nonref]; reference bus angle and magnitude are held.
inline MatrixXd measurement_jacobian(const StateVector& st,
                                     const GridCase& grid,
                                     const MtdStrategy& strategy) {
  const Admittance y = branch_admittance(grid, strategy);
  const int nb = grid.n_bus(), m = grid.n_branch();
  const int n = nb - 1;
  // column index of each bus's theta / v (or -1 for the reference)
  std::vector<int> col(nb, -1);
  for (int b = 0, cidx = 0; b < nb; ++b)
    if (b != grid.ref_bus) col[b] = cidx++;

  MatrixXd H = MatrixXd::Zero(measurement_count(grid), 2 * n);
  auto add = [&](int row, int bus, double dth, double dv) {
    if (col[bus] < 0) return;
    H(row, col[bus]) += dth;
    H(row, n + col[bus]) += dv;
  };

  for (int k = 0; k < m; ++k) {
    const auto ft = detail::flow_terms(grid, y, st, k);
    const double gc_bs = ft.gk * ft.c + ft.bk * ft.s;
    const double gs_bc = ft.gk * ft.s - ft.bk * ft.c;
    // from-side flow partials
    const double dpf_dthf = ft.vf * ft.vt * gs_bc;
    const double dpf_dvf = 2.0 * ft.gk * ft.vf - ft.vt * gc_bs;
    const double dpf_dvt = -ft.vf * gc_bs;
    const double dqf_dthf = -ft.vf * ft.vt * gc_bs;
    const double dqf_dvf = -2.0 * ft.bk * ft.vf - ft.vt * gs_bc;
    const double dqf_dvt = -ft.vf * gs_bc;
    // to-side flow partials (angle difference flips sign)
    const double gc_bs_t = ft.gk * ft.c - ft.bk * ft.s;   // cos(-d),sin(-d)
    const double gs_bc_t = -ft.gk * ft.s - ft.bk * ft.c;  // g s' - b c'
    const double dpt_dtht = ft.vf * ft.vt * gs_bc_t;
    const double dpt_dvt = 2.0 * ft.gk * ft.vt - ft.vf * gc_bs_t;
    const double dpt_dvf = -ft.vt * gc_bs_t;
    const double dqt_dtht = -ft.vf * ft.vt * gc_bs_t;
    const double dqt_dvt = -2.0 * ft.bk * ft.vt - ft.vf * gs_bc_t;
    const double dqt_dvf = -ft.vt * gs_bc_t;

    const int rp_f = ft.f, rq_f = nb + ft.f;
    const int rp_t = ft.t, rq_t = nb + ft.t;
    const int rpf = 2 * nb + k, rqf = 2 * nb + m + k;

    // injections accumulate both flow sides
    add(rp_f, ft.f, dpf_dthf, dpf_dvf);
    add(rp_f, ft.t, -dpf_dthf, dpf_dvt);
    add(rq_f, ft.f, dqf_dthf, dqf_dvf);
    add(rq_f, ft.t, -dqf_dthf, dqf_dvt);
    add(rp_t, ft.t, dpt_dtht, dpt_dvt);
    add(rp_t, ft.f, -dpt_dtht, dpt_dvf);
    add(rq_t, ft.t, dqt_dtht, dqt_dvt);
    add(rq_t, ft.f, -dqt_dtht, dqt_dvf);
    // from-side flow channels
    add(rpf, ft.f, dpf_dthf, dpf_dvf);
    add(rpf, ft.t, -dpf_dthf, dpf_dvt);
    add(rqf, ft.f, dqf_dthf, dqf_dvf);
    add(rqf, ft.t, -dqf_dthf, dqf_dvt);
  }
  return H;
}

/// Newton-Raphson power flow for the given net injections. All non-ref
/// buses are PQ; the reference bus is the slack at ref_vm / 0 rad.
inline StateVector solve_powerflow(const GridCase& grid,
                                   const MtdStrategy& strategy,
                                   const VectorXd& load_p,
                                   const VectorXd& load_q,
                                   int max_iterations = 20,
                                   double tol = 1e-8) {
  const int nb = grid.n_bus(), n = nb - 1;
  StateVector st = StateVector::flat(grid);
  std::vector<int> row(nb, -1);
  for (int b = 0, idx = 0; b < nb; ++b)
    if (b != grid.ref_bus) row[b] = idx++;

  for (int it = 0; it < max_iterations; ++it) {
    const VectorXd z = measurement_function(st, grid, strategy);
    VectorXd mis(2 * n);
    for (int b = 0; b < nb; ++b) {
      if (row[b] < 0) continue;
      mis[row[b]] = z[b] - load_p[b];
      mis[n + row[b]] = z[nb + b] - load_q[b];
    }
    if (mis.lpNorm<Eigen::Infinity>() < tol) return st;

    const MatrixXd H = measurement_jacobian(st, grid, strategy);
    MatrixXd J(2 * n, 2 * n);
    for (int b = 0; b < nb; ++b) {
      if (row[b] < 0) continue;
      J.row(row[b]) = H.row(b);
      J.row(n + row[b]) = H.row(nb + b);
    }
    const VectorXd dx = J.partialPivLu().solve(-mis);
    if (!dx.allFinite()) throw SolverError("power flow: singular Jacobian");
    for (int b = 0; b < nb; ++b) {
      if (row[b] < 0) continue;
      st.theta[b] += dx[row[b]];
      st.v[b] += dx[n + row[b]];
    }
  }
  throw SolverError("power flow: no convergence after " +
                    std::to_string(max_iterations) + " iterations");
}

inline StateVector solve_powerflow(const GridCase& grid,
                                   const MtdStrategy& strategy) {
  return solve_powerflow(grid, strategy, grid.load_p, grid.load_q);
}

/// z = h(state) + e with e ~ N(0, R); reproducible under the seed.
inline MeasurementVector simulate_measurements(const StateVector& st,
                                               const GridCase& grid,
                                               const MtdStrategy& strategy,
                                               const VectorXd& R,
                                               std::uint64_t seed) {
  MeasurementVector mv{measurement_function(st, grid, strategy), R};
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < mv.size(); ++i)
    mv.z[i] += std::sqrt(R[i]) * gauss(rng);
  return mv;
}

/// Gauss-Newton WLS state estimate. Reference v and theta are fixed so
/// exactly 2n states are estimated.
inline StateVector wls_estimate(const MeasurementVector& meas,
                                const GridCase& grid,
                                const MtdStrategy& strategy,
                                const StateVector& init,
                                int max_iterations = 50, double tol = 1e-8) {
  const int nb = grid.n_bus(), n = nb - 1;
  if (meas.size() < 2 * n) throw SolverError("wls: unobservable system");
  StateVector st = init;
  const VectorXd w = meas.R.cwiseSqrt().cwiseInverse();
  std::vector<int> col(nb, -1);
  for (int b = 0, idx = 0; b < nb; ++b)
    if (b != grid.ref_bus) col[b] = idx++;

  for (int it = 0; it < max_iterations; ++it) {
    const VectorXd r = meas.z - measurement_function(st, grid, strategy);
    const MatrixXd H = measurement_jacobian(st, grid, strategy);
    const MatrixXd Hw = w.asDiagonal() * H;
    const VectorXd rw = w.asDiagonal() * r;
    Eigen::ColPivHouseholderQR<MatrixXd> qr(Hw);
    if (qr.rank() < 2 * n) throw SolverError("wls: rank-deficient gain");
    const VectorXd dx = qr.solve(rw);
    for (int b = 0; b < nb; ++b) {
      if (col[b] < 0) continue;
      st.theta[b] += dx[col[b]];
      st.v[b] += dx[n + col[b]];
    }
    if (dx.lpNorm<Eigen::Infinity>() < tol) return st;
  }
  throw SolverError("wls: no convergence");
}

inline StateVector wls_estimate(const MeasurementVector& meas,
                                const GridCase& grid,
                                const MtdStrategy& strategy) {
  return wls_estimate(meas, grid, strategy, StateVector::flat(grid));
}

/// gamma = || R^{-1/2} (z - h(estimate)) ||_2^2
inline double residual_norm(const MeasurementVector& meas,
                            const StateVector& estimate, const GridCase& grid,
                            const MtdStrategy& strategy) {
  const VectorXd r = meas.z - measurement_function(estimate, grid, strategy);
  return (meas.R.cwiseSqrt().cwiseInverse().asDiagonal() * r).squaredNorm();
}

/// Degrees of freedom of the WLS residual in the paper's convention.
inline int residual_dof(const GridCase& c) {
  return measurement_count(c) - 2 * c.n_state();
}

}  // namespace gridmtd
