#pragma once

#include <vector>

#include "speclen/errors.hpp"
#include "speclen/lattice.hpp"

namespace speclen {

// One eigenvalue cluster of a generalized Dirichlet series: `coefficient` is
// summed over the eigenspace (only the grouped value is basis-independent),
// `multiplicity` is the eigenspace dimension.
struct DirichletTerm {
  double eigenvalue;
  double coefficient;
  long multiplicity = 1;
};

// Truncated generalized Dirichlet series sum c * lambda^{-s}, with enough
// metadata to bound the omitted tail: every eigenvalue <= cutoff is
// represented, and the omitted per-eigenfunction coefficients are bounded
// by coeff_bound in absolute value.
class DirichletSeries {
 public:
  DirichletSeries(std::vector<DirichletTerm> terms, int dim, double cutoff,
                  double coeff_bound);

  struct Evaluation {
    double value;
    double tail_bound;
  };

  // value = sum over stored terms; tail_bound from the crude Weyl-law
  // density inferred from the stored eigenfunction count at the cutoff.
  Evaluation evaluate(double s, double margin = 0.25) const;

  const std::vector<DirichletTerm>& terms() const { return terms_; }
  int dim() const { return dim_; }
  double cutoff() const { return cutoff_; }
  double coeff_bound() const { return coeff_bound_; }

 private:
  std::vector<DirichletTerm> terms_;
  int dim_;
  double cutoff_;
  double coeff_bound_;
};

// Epstein zeta Z_L(s) = sum over nonzero v in L of ||v||^{-2s}, continued to
// all real s != d/2 via the incomplete-gamma (Ewald) representation with the
// Mellin split fixed at t = 1. Relative error <= 1e-10.
double epstein_zeta(const Lattice& lattice, double s);

// Spectral zeta of the flat torus R^d/L: (4 pi^2)^{-s} Z_{dual(L)}(s).
double torus_full_zeta(const Lattice& lattice, double s);

// Residue of zeta_{T,a0} at s = d/2: integral_a0 / (Gamma(d/2) (4 pi)^{d/2}).
double residue_closed_form(const Lattice& lattice, double integral_a0);

// Residue of zeta_T at s = d/2 read off the explicit pole term of the Ewald
// representation (the t < 1 piece), with every factor computed numerically.
double residue_numeric(const Lattice& lattice);

}  // namespace speclen
