#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "speclen/errors.hpp"

namespace speclen {

// Full-rank lattice in d-dimensional Euclidean space. Columns of the
// generator matrix are the basis vectors.
class Lattice {
 public:
  explicit Lattice(Eigen::MatrixXd generator);

  int dim() const { return static_cast<int>(generator_.cols()); }
  const Eigen::MatrixXd& generator() const { return generator_; }

  // |det generator| = covolume of the lattice.
  double volume() const;
  Eigen::MatrixXd gram() const { return generator_.transpose() * generator_; }

  // Dual lattice: generator is the inverse transpose.
  Lattice dual() const;

  static Lattice integers(int dim);         // Z^d
  static Lattice schiemann(char sign);      // '+' or '-'

  // Built-in names: "Zn:<d>", "schiemann:+", "schiemann:-".
  static Lattice named(const std::string& name);

  // Text format: first line d, then d rows of d entries.
  static Lattice read(std::istream& in);
  static Lattice load(const std::string& path);

 private:
  Eigen::MatrixXd generator_;
};

struct SpectrumEntry {
  double value;
  long multiplicity;
};

// Sorted (value, multiplicity) pairs, complete up to `bound`: every value
// <= bound is present, none above.
struct Spectrum {
  std::vector<SpectrumEntry> entries;
  double bound = 0.0;

  long total_count() const;
};

// Squared lattice norms share the representation.
using NormSpectrum = Spectrum;

struct EnumerationOptions {
  double cluster_tol = 1e-9;           // relative tolerance for clustering norms
  std::size_t vector_cap = 10'000'000; // hard cap on enumerated vectors
};

// Multiset of squared norms of all v in L with ||v||^2 <= bound, the zero
// vector included as (0, 1). Fincke-Pohst enumeration over a Cholesky
// factorization of the Gram matrix.
NormSpectrum enumerate_by_norm(const Lattice& lattice, double bound,
                               const EnumerationOptions& options = {});

// All nonzero lattice vectors with squared norm <= bound (both v and -v).
std::vector<Eigen::VectorXd> lattice_vectors_within(
    const Lattice& lattice, double bound, const EnumerationOptions& options = {});

// Same enumeration, but returning the integer coordinate vectors.
std::vector<Eigen::VectorXi> lattice_points_within(
    const Lattice& lattice, double bound, const EnumerationOptions& options = {});

// Laplace spectrum of the flat torus R^d/L: eigenvalues 4 pi^2 ||w||^2 over
// the dual lattice, up to the eigenvalue bound.
Spectrum torus_spectrum(const Lattice& lattice, double eigenvalue_bound,
                        const EnumerationOptions& options = {});

struct IsospectralityReport {
  bool isospectral = false;
  std::string discrepancy;  // first mismatch, empty when isospectral
};

IsospectralityReport is_isospectral(const Lattice& a, const Lattice& b,
                                    double eigenvalue_bound,
                                    const EnumerationOptions& options = {});

}  // namespace speclen
