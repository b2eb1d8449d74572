#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "speclen/errors.hpp"
#include "speclen/lattice.hpp"

namespace speclen {

// Circle of radius r, metric ds^2 = r^2 dtheta, measure r dtheta.
class CircleManifold {
 public:
  explicit CircleManifold(double radius);
  double radius() const { return radius_; }

 private:
  double radius_;
};

// Flat torus R^d / Lambda.
class FlatTorus {
 public:
  explicit FlatTorus(Lattice lattice) : lattice_(std::move(lattice)) {}
  const Lattice& lattice() const { return lattice_; }
  int dim() const { return lattice_.dim(); }
  double volume() const { return lattice_.volume(); }
  Lattice dual_lattice() const { return lattice_.dual(); }

 private:
  Lattice lattice_;
};

// Finite-dimensional Laplacian oracle: symmetric PSD matrix L with a
// quadrature mass vector m. The operator is M^{-1} L, self-adjoint for the
// mass inner product <f,g> = sum m_i f_i g_i.
class DiscreteManifold {
 public:
  DiscreteManifold(Eigen::MatrixXd laplacian, Eigen::VectorXd mass,
                   std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(mass_.size()); }
  const Eigen::MatrixXd& laplacian() const { return laplacian_; }
  const Eigen::VectorXd& mass() const { return mass_; }
  const std::vector<std::string>& labels() const { return labels_; }

  struct Eigensystem {
    Eigen::VectorXd eigenvalues;     // ascending
    Eigen::MatrixXd eigenfunctions;  // columns, mass-orthonormal
    // [begin, end) column ranges grouping eigenvalues within relative gap 1e-6
    std::vector<std::pair<int, int>> clusters;
    double zero_threshold;           // 1e-9 * lambda_max
  };

  // Full dense eigendecomposition, computed once per value and cached.
  const Eigensystem& eigensystem() const;

  // Second-order finite-difference Laplacian of a circle of given radius.
  static DiscreteManifold fd_circle(int nodes, double radius);
  static DiscreteManifold path_graph(int nodes);
  static DiscreteManifold cycle_graph(int nodes);

  // Built-in names: "fd-circle:<n>:<r>", "path:<n>", "cycle:<n>".
  static DiscreteManifold named(const std::string& name);

  // Text format: first line n, then n rows of n matrix entries, then one
  // line of n mass weights.
  static DiscreteManifold read(std::istream& in);
  static DiscreteManifold load(const std::string& path);

 private:
  Eigen::MatrixXd laplacian_;
  Eigen::VectorXd mass_;
  std::vector<std::string> labels_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// Trace-style zeta: sum over nonzero eigenvalues of
// lambda^{-s} * sum_{Psi in eigenspace} <Psi| a |Psi>_mass.
double discrete_zeta(const DiscreteManifold& manifold, const Eigen::VectorXd& a,
                     double s);

// Finite-matrix form of tr(a1 [Delta, a2] Delta^{-s}), expanded in the
// eigenbasis: lambda^{-s} * <Psi| a1 Delta(a2 Psi) - a1 a2 lambda Psi>_mass.
double discrete_zeta2(const DiscreteManifold& manifold,
                      const Eigen::VectorXd& a1, const Eigen::VectorXd& a2,
                      double s);

}  // namespace speclen
