#include "speclen/maps.hpp"

#include <cmath>
#include <random>

namespace speclen {

namespace {

constexpr double kIntegralityTol = 1e-6;  // tau-int, conservative for G+-

// Exact integer determinant by fraction-free Gaussian elimination (Bareiss).
long long integer_determinant(const Eigen::MatrixXi& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> a =
      m.cast<long long>();
  long long prev = 1;
  long long sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a(i, k) != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) return 0;
      a.row(k).swap(a.row(pivot));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace

AdmissibilityResult check_admissible(const Eigen::MatrixXd& A,
                                     const FlatTorus& source,
                                     const FlatTorus& target) {
  if (source.dim() != target.dim() || A.rows() != source.dim() ||
      A.cols() != source.dim()) {
    throw DimensionMismatchError("check_admissible: dimension mismatch");
  }
  const Eigen::MatrixXd m =
      target.lattice().generator().inverse() * A * source.lattice().generator();
  AdmissibilityResult result;
  result.integer_matrix.resize(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const double rounded = std::nearbyint(m(i, j));
      if (std::abs(m(i, j) - rounded) > kIntegralityTol) return result;
      result.integer_matrix(i, j) = static_cast<int>(rounded);
    }
  }
  result.admissible = std::llabs(integer_determinant(result.integer_matrix)) == 1;
  return result;
}

TorusLinearMap::TorusLinearMap(Eigen::MatrixXd A, FlatTorus source,
                               FlatTorus target)
    : matrix_(std::move(A)),
      source_(std::move(source)),
      target_(std::move(target)) {
  const AdmissibilityResult check = check_admissible(matrix_, source_, target_);
  if (!check.admissible) {
    throw AdmissibilityError(
        "torus map is not admissible: G2^{-1} A G1 is not in GL(n,Z)");
  }
  integer_matrix_ = check.integer_matrix;
}

double jacobian(const CircleRescale& map) {
  return map.target.radius() / map.source.radius();
}

double jacobian(const TorusLinearMap& map) {
  return std::abs(map.matrix().determinant());
}

double jacobian(const ManifoldMap& map) {
  return std::visit([](const auto& m) { return jacobian(m); }, map);
}

Eigen::MatrixXd paper_A_matrix() {
  const Lattice plus = Lattice::schiemann('+');
  const Lattice minus = Lattice::schiemann('-');
  const Eigen::MatrixXd a =
      minus.generator() * plus.generator().inverse();
  Eigen::MatrixXd expected(4, 4);
  expected << -3, -2, -1, -3,
               2, -2,  4, -3,
               3, -3, -4,  3,
               1,  4,  2, -4;
  expected /= 5.0;
  if ((a - expected).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error("paper_A_matrix: generator transcription check failed");
  }
  return a;
}

double spectral_norm(const Eigen::MatrixXd& A) {
  const Eigen::MatrixXd gram = A * A.transpose();
  const int n = static_cast<int>(gram.rows());
  double best = 0.0;
  for (unsigned seed : {0x5eed1u, 0x5eed2u}) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = unit(rng);
    v.normalize();
    double lambda = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100000; ++iter) {
      Eigen::VectorXd w = gram * v;
      const double next = v.dot(w);
      const double norm = w.norm();
      if (norm == 0.0) {
        lambda = 0.0;
        converged = true;
        break;
      }
      v = w / norm;
      if (std::abs(next - lambda) <= 1e-12 * std::max(1.0, std::abs(next))) {
        lambda = next;
        converged = true;
        break;
      }
      lambda = next;
    }
    if (!converged) {
      throw NonConvergenceError("spectral_norm power iteration did not converge");
    }
    best = std::max(best, lambda);
  }
  return std::sqrt(std::max(best, 0.0));
}

CircleRescale compose(const CircleRescale& second, const CircleRescale& first) {
  if (std::abs(first.target.radius() - second.source.radius()) > 1e-12) {
    throw DimensionMismatchError(
        "compose: circle maps do not share the middle radius");
  }
  return {first.source, second.target};
}

TorusLinearMap compose(const TorusLinearMap& second,
                       const TorusLinearMap& first) {
  if (first.target().dim() != second.source().dim() ||
      (first.target().lattice().generator() -
       second.source().lattice().generator())
          .cwiseAbs()
          .maxCoeff() > 1e-12) {
    throw DimensionMismatchError(
        "compose: torus maps do not share the middle torus");
  }
  return TorusLinearMap(second.matrix() * first.matrix(), first.source(),
                        second.target());
}

ManifoldMap compose(const ManifoldMap& second, const ManifoldMap& first) {
  if (std::holds_alternative<CircleRescale>(second) &&
      std::holds_alternative<CircleRescale>(first)) {
    return compose(std::get<CircleRescale>(second), std::get<CircleRescale>(first));
  }
  if (std::holds_alternative<TorusLinearMap>(second) &&
      std::holds_alternative<TorusLinearMap>(first)) {
    return compose(std::get<TorusLinearMap>(second),
                   std::get<TorusLinearMap>(first));
  }
  throw DimensionMismatchError("compose: mixed map kinds are not composable");
}

}  // namespace speclen
