#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "gridmtd/chi2.hpp"
#include "gridmtd/grid.hpp"
#include "gridmtd/powerflow.hpp"

#include <cmath>
#include <stdexcept>

namespace gridmtd {

/// Relative threshold used when counting the numerical rank.
inline constexpr double kRankEps = 1e-8;
/// A cosine this close to 1 counts as a zero principal angle.
inline constexpr double kIntersectionEps = 1e-8;

/// Branch-flow Jacobian dP_flow/dtheta (m x n) of the simplified AC
/// model at the given operating state.
inline MatrixXd branch_flow_jacobian(const GridCase& grid,
                                     const MtdStrategy& strategy,
                                     const StateVector& state) {
  const Admittance y = branch_admittance(grid, strategy);
  const IncidenceSet inc = incidence(grid);
  const int m = grid.n_branch();
  MatrixXd J(m, grid.n_state());
  for (int k = 0; k < m; ++k) {
    const int f = grid.branches[k].from_bus, t = grid.branches[k].to_bus;
    const double d = state.theta[f] - state.theta[t];
    const double w =
        state.v[f] * state.v[t] * (y.g[k] * std::sin(d) - y.b[k] * std::cos(d));
    J.row(k) = w * inc.A_r.row(k);
  }
  return J;
}

/// Noise normalization J_N = R^{-1/2} J for the flow-measurement block.
inline MatrixXd normalize(const MatrixXd& J, const VectorXd& R_flow) {
  if (R_flow.size() != J.rows()) throw std::invalid_argument("R size");
  if ((R_flow.array() <= 0.0).any()) throw std::invalid_argument("R <= 0");
  return R_flow.cwiseSqrt().cwiseInverse().asDiagonal() * J;
}

namespace detail {

inline MatrixXd orthonormal_basis(const MatrixXd& J) {
  Eigen::JacobiSVD<MatrixXd> svd(J, Eigen::ComputeThinU);
  const double smax = svd.singularValues()[0];
  if (smax <= 0.0 || svd.singularValues().minCoeff() <= kRankEps * smax)
    throw std::invalid_argument("Jacobian is rank deficient");
  return svd.matrixU();
}

}  // namespace detail

/// Noise-normalized pre/post-MTD Jacobians with their projectors.
struct JacobianPair {
  MatrixXd J_N;
  MatrixXd J_N_post;
  MatrixXd P_N;       // projector onto Col(J_N)
  MatrixXd P_N_post;  // projector onto Col(J_N_post)
  MatrixXd S_N_post;  // I - P_N_post

  int m() const { return static_cast<int>(J_N.rows()); }
  int n() const { return static_cast<int>(J_N.cols()); }

  static JacobianPair from_jacobians(const MatrixXd& J_N,
                                     const MatrixXd& J_N_post) {
    JacobianPair p;
    p.J_N = J_N;
    p.J_N_post = J_N_post;
    const MatrixXd U = detail::orthonormal_basis(J_N);
    const MatrixXd V = detail::orthonormal_basis(J_N_post);
    p.P_N = U * U.transpose();
    p.P_N_post = V * V.transpose();
    p.S_N_post = MatrixXd::Identity(p.m(), p.m()) - p.P_N_post;
    return p;
  }
};

/// Builds the normalized pair at an operating state. R_flow is the
/// diagonal noise covariance of the active-flow channels.
inline JacobianPair make_jacobian_pair(const GridCase& grid,
                                       const MtdStrategy& strategy,
                                       const StateVector& state,
                                       const VectorXd& R_flow) {
  const MatrixXd J = branch_flow_jacobian(grid, MtdStrategy::none(grid.n_branch()), state);
  const MatrixXd Jp = branch_flow_jacobian(grid, strategy, state);
  return JacobianPair::from_jacobians(normalize(J, R_flow),
                                      normalize(Jp, R_flow));
}

/// Principal angles/vectors between Col(J_N) and Col(J_N_post) via the
/// truncated SVD of P_N * P_N_post.
struct PrincipalDecomposition {
  VectorXd angles;  // ascending, rad
  MatrixXd U;       // m x n principal vectors of J_N
  MatrixXd V;       // m x n principal vectors of J_N_post
  int k = 0;        // angles equal to zero (intersection dimension)
  int r = 0;        // angles strictly inside (0, pi/2)
  int l = 0;        // right angles
};

inline PrincipalDecomposition principal_decomposition(
    const JacobianPair& pair) {
  const int n = pair.n();
  Eigen::JacobiSVD<MatrixXd> svd(pair.P_N * pair.P_N_post,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  PrincipalDecomposition out;
  out.U = svd.matrixU().leftCols(n);
  out.V = svd.matrixV().leftCols(n);
  out.angles.resize(n);
  for (int i = 0; i < n; ++i) {
    const double c = std::clamp(svd.singularValues()[i], 0.0, 1.0);
    out.angles[i] = std::acos(c);
    if (c > 1.0 - kIntersectionEps)
      ++out.k;
    else if (c > kIntersectionEps)
      ++out.r;
    else
      ++out.l;
  }
  return out;
}

/// Numerical rank of the composite matrix [J_N, J_N_post].
inline int composite_rank(const JacobianPair& pair) {
  MatrixXd comp(pair.m(), 2 * pair.n());
  comp << pair.J_N, pair.J_N_post;
  Eigen::JacobiSVD<MatrixXd> svd(comp);
  const double cut = kRankEps * svd.singularValues()[0];
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cut) ++rank;
  return rank;
}

/// Non-centrality of an attack under the post-MTD detector:
/// lambda = || S_N_post a_N ||^2.
inline double noncentrality(const JacobianPair& pair, const VectorXd& a_N) {
  return (pair.S_N_post * a_N).squaredNorm();
}

/// Output of Algorithm "weakest point": the first detectable principal
/// direction and the worst-case detection rate at a given strength.
struct WeakestPointReport {
  VectorXd u_weak;    // u_{k+1}, unit
  double theta_weak;  // theta_{k+1}
  MatrixXd U1;        // intersection basis (m x k); empty when complete
  int k = 0;          // intersection dimension 2n - rank([J_N, J_N_post])
  int rank = 0;
  double f_min = 0.0;  // worst-case detection rate at |a|
  PrincipalDecomposition decomp;
};

/// Locates u_{k+1} and the worst-case detection rate f(|a|^2 sin^2 theta_{k+1}).
/// `attack_norm` is |a| in the normalized measurement space.
inline WeakestPointReport weakest_point(const JacobianPair& pair,
                                        double attack_norm,
                                        const DetectorSpec& detector) {
  WeakestPointReport rep;
  rep.decomp = principal_decomposition(pair);
  rep.rank = composite_rank(pair);
  rep.k = 2 * pair.n() - rep.rank;
  if (rep.k < 0 || rep.k >= pair.n())
    throw std::runtime_error("degenerate intersection dimension");
  rep.u_weak = rep.decomp.U.col(rep.k);
  rep.theta_weak = rep.decomp.angles[rep.k];
  rep.U1 = rep.decomp.U.leftCols(rep.k);  // empty when rank == 2n
  const double s = std::sin(rep.theta_weak);
  rep.f_min = detection_prob(attack_norm * attack_norm * s * s, detector);
  return rep;
}

}  // namespace gridmtd
