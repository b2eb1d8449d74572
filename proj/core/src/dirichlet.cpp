#include "speclen/dirichlet.hpp"

#include <algorithm>
#include <cmath>

#include "speclen/specfun.hpp"

namespace speclen {

DirichletSeries::DirichletSeries(std::vector<DirichletTerm> terms, int dim,
                                 double cutoff, double coeff_bound)
    : terms_(std::move(terms)),
      dim_(dim),
      cutoff_(cutoff),
      coeff_bound_(coeff_bound) {
  if (dim_ < 1) throw Error("DirichletSeries: dimension must be positive");
  if (coeff_bound_ < 0.0) throw Error("DirichletSeries: coeff_bound must be >= 0");
  double prev = 0.0;
  for (const auto& t : terms_) {
    if (!(t.eigenvalue > 0.0)) {
      throw Error("DirichletSeries: eigenvalues must be strictly positive");
    }
    if (t.eigenvalue <= prev) {
      throw Error("DirichletSeries: eigenvalues must be strictly increasing");
    }
    if (t.multiplicity < 1) {
      throw Error("DirichletSeries: multiplicities must be positive");
    }
    prev = t.eigenvalue;
  }
  if (!terms_.empty() && cutoff_ < terms_.back().eigenvalue) {
    throw Error("DirichletSeries: cutoff below the largest stored eigenvalue");
  }
}

DirichletSeries::Evaluation DirichletSeries::evaluate(double s,
                                                      double margin) const {
  const double half_dim = 0.5 * dim_;
  if (!(s > half_dim + margin)) {
    throw ConvergenceDomainError(
        "DirichletSeries::evaluate requires s > d/2 + margin");
  }
  double value = 0.0;
  long count = 0;
  for (const auto& t : terms_) {
    value += t.coefficient * std::pow(t.eigenvalue, -s);
    count += t.multiplicity;
  }
  double tail = 0.0;
  if (cutoff_ > 0.0 && count > 0) {
    // Crude Weyl density from the stored count, doubled to stay conservative.
    const double c_weyl =
        2.0 * half_dim * static_cast<double>(count) / std::pow(cutoff_, half_dim);
    tail = coeff_bound_ * c_weyl * std::pow(cutoff_, half_dim - s) /
           (s - half_dim);
  }
  return {value, tail};
}

namespace {

// Enumeration radius for the incomplete-gamma sums: beyond x the summand is
// below e^{-(x - max(0,p) log x)} with p = s' - 1, so pick x with
// x - max(0,p) log x >= 45.
double gamma_sum_radius(double shape) {
  const double p = std::max(0.0, shape - 1.0);
  double x = 45.0 + p;
  for (int i = 0; i < 60; ++i) {
    const double f = x - p * std::log(x) - 45.0;
    if (f >= 0.0) break;
    x += -f / (1.0 - p / x) + 0.5;
  }
  return x;
}

double incomplete_gamma_sum(const Lattice& lattice, double shape,
                            double power) {
  const double radius = gamma_sum_radius(shape);
  double sum = 0.0;
  for (const auto& v : lattice_vectors_within(lattice, radius / M_PI)) {
    const double q = M_PI * v.squaredNorm();
    sum += std::pow(q, power) * upper_incomplete_gamma(shape, q);
  }
  return sum;
}

}  // namespace

double epstein_zeta(const Lattice& lattice, double s) {
  const int d = lattice.dim();
  const double half_dim = 0.5 * d;
  if (std::abs(s) > 20.0) {
    throw Error("epstein_zeta supports |s| <= 20");
  }
  if (std::abs(s - half_dim) < 1e-6) {
    throw PoleProximityError(
        "epstein_zeta evaluated too close to the pole at d/2");
  }
  // Completed form F(s) = Gamma(s) pi^{-s} Z_L(s); splitting the Mellin
  // integral of the theta function at t = 1 and applying the modular
  // transformation to the t < 1 piece gives
  //   F(s) = sum'_{v in L} (pi|v|^2)^{-s} Gamma(s, pi|v|^2)
  //        + (1/V) sum'_{w in dual} (pi|w|^2)^{s-d/2} Gamma(d/2-s, pi|w|^2)
  //        + 1/(V (s-d/2)) - 1/s,
  // both sums converging exponentially. The -1/s term is folded into
  // Gamma(s+1) below so s <= 0 stays finite.
  const double volume = lattice.volume();
  const Lattice dual = lattice.dual();
  const double direct = incomplete_gamma_sum(lattice, s, -s);
  const double reflected = incomplete_gamma_sum(dual, half_dim - s, s - half_dim);
  const double pole_part = 1.0 / (volume * (s - half_dim));
  const double pi_s = std::pow(M_PI, s);
  return pi_s * reciprocal_gamma(s) * (direct + reflected / volume + pole_part) -
         pi_s * reciprocal_gamma(s + 1.0);
}

double torus_full_zeta(const Lattice& lattice, double s) {
  return std::pow(4.0 * M_PI * M_PI, -s) * epstein_zeta(lattice.dual(), s);
}

double residue_closed_form(const Lattice& lattice, double integral_a0) {
  const double half_dim = 0.5 * lattice.dim();
  return integral_a0 / (gamma_function(half_dim) * std::pow(4.0 * M_PI, half_dim));
}

double residue_numeric(const Lattice& lattice) {
  // In the Ewald form of zeta_T(s) = (4 pi^2)^{-s} Z_{dual}(s) the only pole
  // in Re(s) > 0 is the explicit 1/(V_dual (s - d/2)) term, so
  //   Res_{s=d/2} zeta_T = (4 pi^2)^{-d/2} pi^{d/2} / (Gamma(d/2) V_dual),
  // with the dual volume and Gamma evaluated numerically.
  const double half_dim = 0.5 * lattice.dim();
  const double dual_volume = lattice.dual().volume();
  return std::pow(4.0 * M_PI * M_PI, -half_dim) * std::pow(M_PI, half_dim) /
         (gamma_function(half_dim) * dual_volume);
}

}  // namespace speclen
