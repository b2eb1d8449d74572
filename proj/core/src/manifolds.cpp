#include "speclen/manifolds.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

namespace speclen {

CircleManifold::CircleManifold(double radius) : radius_(radius) {
  if (!(radius > 0.0)) throw Error("circle radius must be positive");
}

struct DiscreteManifold::Cache {
  std::once_flag once;
  Eigensystem eigensystem;
};

DiscreteManifold::DiscreteManifold(Eigen::MatrixXd laplacian,
                                   Eigen::VectorXd mass,
                                   std::vector<std::string> labels)
    : laplacian_(std::move(laplacian)),
      mass_(std::move(mass)),
      labels_(std::move(labels)),
      cache_(std::make_shared<Cache>()) {
  const int n = static_cast<int>(mass_.size());
  if (laplacian_.rows() != n || laplacian_.cols() != n || n == 0) {
    throw Error("discrete manifold: laplacian/mass size mismatch");
  }
  if ((mass_.array() <= 0.0).any()) {
    throw Error("discrete manifold: mass weights must be positive");
  }
  const double scale = std::max(1.0, laplacian_.cwiseAbs().maxCoeff());
  if ((laplacian_ - laplacian_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error("discrete manifold: laplacian must be symmetric");
  }
  if (labels_.empty()) {
    labels_.reserve(n);
    for (int i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != n) {
    throw Error("discrete manifold: label count mismatch");
  }
  const double row_sum_scale = std::max(1.0, laplacian_.cwiseAbs().maxCoeff());
  if ((laplacian_ * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() >
      1e-9 * row_sum_scale) {
    throw Error("discrete manifold: constants are not in the kernel");
  }
  eigensystem();  // validates positive semidefiniteness and connectedness
}

const DiscreteManifold::Eigensystem& DiscreteManifold::eigensystem() const {
  std::call_once(cache_->once, [this] {
    // Symmetrize with M^{-1/2}: eigenpairs of S = M^{-1/2} L M^{-1/2} map to
    // mass-orthonormal eigenfunctions Psi = M^{-1/2} v of M^{-1} L.
    const Eigen::VectorXd root_mass = mass_.array().sqrt();
    Eigen::MatrixXd sym = laplacian_;
    const int n = size();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) sym(i, j) /= root_mass[i] * root_mass[j];
    }
    sym = 0.5 * (sym + sym.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
      throw NonConvergenceError("discrete manifold eigensolver failed");
    }
    Eigensystem& es = cache_->eigensystem;
    es.eigenvalues = solver.eigenvalues();
    es.eigenfunctions = solver.eigenvectors();
    for (int i = 0; i < n; ++i) es.eigenfunctions.row(i) /= root_mass[i];

    const double lambda_max = std::max(es.eigenvalues.maxCoeff(), 0.0);
    es.zero_threshold = 1e-9 * std::max(lambda_max, 1e-300);
    if (es.eigenvalues[0] < -es.zero_threshold) {
      throw Error("discrete manifold: laplacian is not positive semidefinite");
    }
    if (n > 1 && es.eigenvalues[1] <= es.zero_threshold) {
      throw Error("discrete manifold: zero eigenvalue is not simple (disconnected)");
    }
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
      const bool close =
          i < n && es.eigenvalues[i] - es.eigenvalues[i - 1] <=
                       1e-6 * std::max(1.0, std::abs(es.eigenvalues[i]));
      if (!close) {
        es.clusters.emplace_back(begin, i);
        begin = i;
      }
    }
  });
  return cache_->eigensystem;
}

DiscreteManifold DiscreteManifold::fd_circle(int nodes, double radius) {
  if (nodes < 3) throw Error("fd-circle needs at least 3 nodes");
  if (!(radius > 0.0)) throw Error("fd-circle radius must be positive");
  const double h = 2.0 * M_PI / nodes;
  // Operator -(f_{j+1} - 2 f_j + f_{j-1}) / (r h)^2; the symmetric matrix
  // below together with mass r h realizes it as M^{-1} L.
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int j = 0; j < nodes; ++j) {
    lap(j, j) = 2.0 / (radius * h);
    lap(j, (j + 1) % nodes) = -1.0 / (radius * h);
    lap(j, (j + nodes - 1) % nodes) = -1.0 / (radius * h);
  }
  Eigen::VectorXd mass = Eigen::VectorXd::Constant(nodes, radius * h);
  return DiscreteManifold(std::move(lap), std::move(mass));
}

DiscreteManifold DiscreteManifold::path_graph(int nodes) {
  if (nodes < 2) throw Error("path graph needs at least 2 nodes");
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int j = 0; j + 1 < nodes; ++j) {
    lap(j, j) += 1.0;
    lap(j + 1, j + 1) += 1.0;
    lap(j, j + 1) -= 1.0;
    lap(j + 1, j) -= 1.0;
  }
  return DiscreteManifold(std::move(lap), Eigen::VectorXd::Ones(nodes));
}

DiscreteManifold DiscreteManifold::cycle_graph(int nodes) {
  if (nodes < 3) throw Error("cycle graph needs at least 3 nodes");
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int j = 0; j < nodes; ++j) {
    const int k = (j + 1) % nodes;
    lap(j, j) += 1.0;
    lap(k, k) += 1.0;
    lap(j, k) -= 1.0;
    lap(k, j) -= 1.0;
  }
  return DiscreteManifold(std::move(lap), Eigen::VectorXd::Ones(nodes));
}

DiscreteManifold DiscreteManifold::named(const std::string& name) {
  std::istringstream in(name);
  std::string kind;
  std::getline(in, kind, ':');
  if (kind == "fd-circle") {
    std::string n_str, r_str;
    std::getline(in, n_str, ':');
    std::getline(in, r_str, ':');
    if (r_str.empty()) r_str = "1";
    return fd_circle(std::stoi(n_str), std::stod(r_str));
  }
  if (kind == "path") {
    std::string n_str;
    std::getline(in, n_str, ':');
    return path_graph(std::stoi(n_str));
  }
  if (kind == "cycle") {
    std::string n_str;
    std::getline(in, n_str, ':');
    return cycle_graph(std::stoi(n_str));
  }
  throw Error("unknown discrete manifold name: " + name);
}

DiscreteManifold DiscreteManifold::read(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n < 1) throw Error("discrete manifold file: bad size line");
  Eigen::MatrixXd lap(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> lap(i, j))) throw Error("discrete manifold file: truncated matrix");
    }
  }
  Eigen::VectorXd mass(n);
  for (int i = 0; i < n; ++i) {
    if (!(in >> mass[i])) throw Error("discrete manifold file: truncated mass line");
  }
  return DiscreteManifold(std::move(lap), std::move(mass));
}

DiscreteManifold DiscreteManifold::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open discrete manifold file: " + path);
  return read(in);
}

double discrete_zeta(const DiscreteManifold& manifold, const Eigen::VectorXd& a,
                     double s) {
  if (a.size() != manifold.size()) {
    throw DimensionMismatchError("discrete_zeta: node value size mismatch");
  }
  const auto& es = manifold.eigensystem();
  const Eigen::VectorXd& mass = manifold.mass();
  double total = 0.0;
  for (int k = 0; k < es.eigenvalues.size(); ++k) {
    const double lambda = es.eigenvalues[k];
    if (lambda <= es.zero_threshold) continue;
    const Eigen::VectorXd psi = es.eigenfunctions.col(k);
    const double weight = (mass.array() * a.array() * psi.array().square()).sum();
    total += std::pow(lambda, -s) * weight;
  }
  return total;
}

double discrete_zeta2(const DiscreteManifold& manifold,
                      const Eigen::VectorXd& a1, const Eigen::VectorXd& a2,
                      double s) {
  if (a1.size() != manifold.size() || a2.size() != manifold.size()) {
    throw DimensionMismatchError("discrete_zeta2: node value size mismatch");
  }
  const auto& es = manifold.eigensystem();
  const Eigen::VectorXd& mass = manifold.mass();
  double total = 0.0;
  for (int k = 0; k < es.eigenvalues.size(); ++k) {
    const double lambda = es.eigenvalues[k];
    if (lambda <= es.zero_threshold) continue;
    const Eigen::VectorXd psi = es.eigenfunctions.col(k);
    const Eigen::VectorXd delta_a2psi =
        (manifold.laplacian() * (a2.array() * psi.array()).matrix()).array() /
        mass.array();
    const double bracket =
        (mass.array() *
         (psi.array() * a1.array() * delta_a2psi.array() -
          a1.array() * a2.array() * lambda * psi.array().square()))
            .sum();
    total += std::pow(lambda, -s) * bracket;
  }
  return total;
}

}  // namespace speclen
