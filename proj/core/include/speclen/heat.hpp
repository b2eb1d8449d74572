#pragma once

#include <Eigen/Dense>

#include "speclen/errors.hpp"
#include "speclen/lattice.hpp"
#include "speclen/manifolds.hpp"

namespace speclen {

// Heat trace Theta(t) = sum over the torus spectrum of m(lambda) e^{-lambda t}.
// Direct spectral sum for t >= t_switch, theta-transformed lattice sum
//   vol (4 pi t)^{-d/2} sum_{v in Lambda} e^{-|v|^2/(4t)}
// below it; both branches agree at the switch point.
class HeatTrace {
 public:
  explicit HeatTrace(FlatTorus torus);

  double operator()(double t) const;
  double spectral_branch(double t) const;
  double theta_branch(double t) const;
  double t_switch() const { return t_switch_; }
  const FlatTorus& torus() const { return torus_; }

 private:
  FlatTorus torus_;
  double t_switch_;
};

double heat_trace(const FlatTorus& torus, double t);

// K(t,x,x) = heat_trace(t)/vol, x-independent on flat tori; the spectral-sum
// route through real eigenfunctions is evaluated at random points and checked
// against the constant within 1e-10 (on the spectral branch).
double heat_diag_torus(const FlatTorus& torus, double t,
                       const Eigen::VectorXd& x);

// Sum of squares of the mass-orthonormal eigenfunctions in one eigenvalue
// cluster of a discrete manifold.
Eigen::VectorXd sigma_lambda_discrete(const DiscreteManifold& manifold,
                                      int cluster_index);

struct MellinCheck {
  double lhs;           // Gamma(s) zeta_T(s)
  double rhs;           // int_0^inf t^{s-1} (Theta(t) - 1) dt
  double relative_gap;
};

// Mellin identity behind the residue computation, with the zeta side from
// the Ewald continuation and the integral side by adaptive quadrature
// (t = tau^2 near zero, u = 1/t at infinity).
MellinCheck mellin_check(const FlatTorus& torus, double s);

}  // namespace speclen
