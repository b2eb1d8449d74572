#pragma once

#include <Eigen/Dense>
#include <variant>

#include "speclen/errors.hpp"
#include "speclen/manifolds.hpp"

namespace speclen {

// theta -> theta rescaling between circles of different radii.
struct CircleRescale {
  CircleManifold source;
  CircleManifold target;
};

struct AdmissibilityResult {
  bool admissible = false;
  Eigen::MatrixXi integer_matrix;  // rounded G2^{-1} A G1, valid when admissible
};

// True iff G2^{-1} A G1 rounds to an integer matrix (entries within
// tau_int = 1e-6) whose determinant is +-1 in exact integer arithmetic.
AdmissibilityResult check_admissible(const Eigen::MatrixXd& A,
                                     const FlatTorus& source,
                                     const FlatTorus& target);

// Linear map A between flat tori, A Lambda_1 contained in Lambda_2;
// admissibility is validated at construction.
class TorusLinearMap {
 public:
  TorusLinearMap(Eigen::MatrixXd A, FlatTorus source, FlatTorus target);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const FlatTorus& source() const { return source_; }
  const FlatTorus& target() const { return target_; }
  const Eigen::MatrixXi& integer_matrix() const { return integer_matrix_; }

 private:
  Eigen::MatrixXd matrix_;
  FlatTorus source_;
  FlatTorus target_;
  Eigen::MatrixXi integer_matrix_;
};

using ManifoldMap = std::variant<CircleRescale, TorusLinearMap>;

// Volume-element change: r_target/r_source for rescalings, |det A| for
// torus maps (= vol(target)/vol(source) when admissible).
double jacobian(const CircleRescale& map);
double jacobian(const TorusLinearMap& map);
double jacobian(const ManifoldMap& map);

// The 4x4 map G_- G_+^{-1} between the Schiemann tori, computed from the
// built-in generator matrices and checked entrywise against its known
// exact (1/5)-integer form.
Eigen::MatrixXd paper_A_matrix();

// Largest singular value via power iteration on A A^T (relative convergence
// 1e-12, two fixed random starts).
double spectral_norm(const Eigen::MatrixXd& A);

CircleRescale compose(const CircleRescale& second, const CircleRescale& first);
TorusLinearMap compose(const TorusLinearMap& second, const TorusLinearMap& first);
ManifoldMap compose(const ManifoldMap& second, const ManifoldMap& first);

}  // namespace speclen
