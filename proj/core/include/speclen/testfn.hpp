#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "speclen/errors.hpp"
#include "speclen/lattice.hpp"
#include "speclen/manifolds.hpp"

namespace speclen {

// Real-valued finite trigonometric polynomial on a torus:
//   a(x) = sum_k c_k exp(2 pi i <D k, x>)
// with D the generator of the dual lattice and k integer coordinate vectors;
// Hermitian symmetry c_{-k} = conj(c_k) is enforced. Storing integer
// coordinates keeps pullback integrality exactly checkable.
class TrigPoly {
 public:
  using Key = std::vector<int>;
  using CoeffMap = std::map<Key, std::complex<double>>;

  TrigPoly(Lattice dual_lattice, CoeffMap coeffs);

  static TrigPoly zero(const Lattice& dual_lattice);
  static TrigPoly constant(const Lattice& dual_lattice, double value);
  static TrigPoly cosine(const Lattice& dual_lattice, const Key& k,
                         double amplitude = 1.0);
  static TrigPoly sine(const Lattice& dual_lattice, const Key& k,
                       double amplitude = 1.0);

  const Lattice& frequency_lattice() const { return dual_lattice_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  int dim() const { return dual_lattice_.dim(); }

  // Real frequency vector of a key: dual generator times k.
  Eigen::VectorXd frequency(const Key& k) const;

  std::complex<double> coefficient(const Key& k) const;
  bool is_constant() const;
  int max_coordinate_degree() const;  // max |k_i| over the support
  double sup_norm_bound() const;      // sum |c_k| >= sup |a|

  TrigPoly operator+(const TrigPoly& other) const;
  TrigPoly operator-(const TrigPoly& other) const;
  TrigPoly operator*(const TrigPoly& other) const;  // coefficient convolution
  TrigPoly scaled(double factor) const;

 private:
  Lattice dual_lattice_;
  CoeffMap coeffs_;
};

// Real trigonometric polynomial on a circle parameterized by theta:
//   a(theta) = sum_n c_n exp(i n theta), c_{-n} = conj(c_n).
class FourierPoly {
 public:
  using CoeffMap = std::map<int, std::complex<double>>;

  explicit FourierPoly(CoeffMap coeffs);

  static FourierPoly zero();
  static FourierPoly constant(double value);
  static FourierPoly cosine(int n, double amplitude = 1.0);
  static FourierPoly sine(int n, double amplitude = 1.0);

  const CoeffMap& coeffs() const { return coeffs_; }
  std::complex<double> coefficient(int n) const;
  bool is_constant() const;

  double integral_dtheta() const;       // int_0^{2pi} a dtheta = 2 pi c_0
  FourierPoly second_derivative() const;
  FourierPoly operator+(const FourierPoly& other) const;
  FourierPoly operator-(const FourierPoly& other) const;
  FourierPoly operator*(const FourierPoly& other) const;
  FourierPoly scaled(double factor) const;

 private:
  CoeffMap coeffs_;
};

// int_T a dmu = vol(T) * c_0. Requires a indexed by dual(T.lattice).
double integral(const TrigPoly& a, const FlatTorus& torus);

// int_T grad(a1)^T grad(a2) dmu, exact from Fourier orthogonality.
double gradient_pairing(const TrigPoly& a1, const TrigPoly& a2,
                        const FlatTorus& torus);

// Pullback of a (defined on the target torus) along the linear map A, as a
// polynomial on `source`: frequencies A^T lambda_k re-expressed in integer
// coordinates of dual(source); each must be within tau_int = 1e-6 of an
// integer vector.
TrigPoly pullback_linear(const TrigPoly& a, const Eigen::MatrixXd& A,
                         const FlatTorus& source);

// Real part of the Fourier sum; the imaginary part must vanish to 1e-12 by
// Hermitian symmetry (asserted).
double evaluate_at(const TrigPoly& a, const Eigen::VectorXd& x);
double evaluate_at(const FourierPoly& a, double theta);

// |p|^2 + epsilon for a random polynomial p with frequencies in the box
// max_i |k_i| <= degree; pointwise >= epsilon = 1e-3, deterministic per seed.
TrigPoly random_nonneg(const FlatTorus& torus, int degree, unsigned seed);
FourierPoly random_nonneg_fourier(int degree, unsigned seed);

// Random real polynomial with at least one nonzero mode (for a1 families).
FourierPoly random_nonconstant_fourier(int degree, unsigned seed);

}  // namespace speclen
