#pragma once

#include "speclen/dirichlet.hpp"
#include "speclen/manifolds.hpp"
#include "speclen/testfn.hpp"

namespace speclen {

// Closed forms for circle zeta families, transcribed as printed:
//   zeta_{S_r,a0}(s)    = 2 r^{2s+1} (int_0^{2pi} a0 dtheta) zeta(2s)
//   zeta_{S_r,a1,a2}(s) = 2 r^{2s-1} (int_0^{2pi} a1 d^2(a2) dtheta) zeta(2s)
double circle_zeta_paper(const CircleManifold& circle, const FourierPoly& a0,
                         double s);
double circle_zeta2_paper(const CircleManifold& circle, const FourierPoly& a1,
                          const FourierPoly& a2, double s);

// Same families with eigenfunctions orthonormalized in L^2(S_r, r dtheta):
//   zeta_{S_r,a0}(s)    = r^{2s}   (1/pi) (int a0 dtheta)       zeta(2s)
//   zeta_{S_r,a1,a2}(s) = r^{2s-2} (1/pi) (int a1' a2' dtheta)  zeta(2s)
// The normalization oracle for the closed forms above; the two conventions
// differ by one power of r in each family and all ratio-level quantities
// are normalization-independent up to that exponent shift.
double circle_zeta_first_principles(const CircleManifold& circle,
                                    const FourierPoly& a0, double s);
double circle_zeta2_first_principles(const CircleManifold& circle,
                                     const FourierPoly& a1,
                                     const FourierPoly& a2, double s);

// zeta_{T,a0}(s) = (vol^{-1} int a0 dmu) zeta_T(s).
double torus_zeta_family(const FlatTorus& torus, const TrigPoly& a0, double s);

// zeta_{T,a1,a2}(s) = (vol^{-1} int grad(a1)^T grad(a2) dmu) zeta_T(s).
double torus_zeta2_family(const FlatTorus& torus, const TrigPoly& a1,
                          const TrigPoly& a2, double s);

// Truncated expansion of zeta_{T,a0} with coefficients computed from
// explicit squared eigenfunctions, cluster by cluster; the independent
// spectral-sum route for the closed form above.
DirichletSeries torus_zeta_series(const FlatTorus& torus, const TrigPoly& a0,
                                  double dual_norm_bound);

}  // namespace speclen
