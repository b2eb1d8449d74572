#include "speclen/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace speclen {

namespace {

constexpr double kSingularTol = 1e-12;

}  // namespace

Lattice::Lattice(Eigen::MatrixXd generator) : generator_(std::move(generator)) {
  if (generator_.rows() != generator_.cols() || generator_.rows() == 0) {
    throw SingularLatticeError("lattice generator must be a nonempty square matrix");
  }
  double scale = 0.0;
  for (int j = 0; j < generator_.cols(); ++j) {
    scale = std::max(scale, generator_.col(j).norm());
  }
  if (scale <= 0.0) {
    throw SingularLatticeError("lattice generator is zero");
  }
  const int d = dim();
  const double det = (generator_ / scale).determinant();
  if (std::abs(det) < kSingularTol) {
    throw SingularLatticeError("lattice generator is numerically singular");
  }
  (void)d;
}

double Lattice::volume() const { return std::abs(generator_.determinant()); }

Lattice Lattice::dual() const {
  Eigen::MatrixXd inv = generator_.inverse();
  return Lattice(inv.transpose());
}

Lattice Lattice::integers(int dim) {
  if (dim < 1) throw SingularLatticeError("dimension must be positive");
  return Lattice(Eigen::MatrixXd::Identity(dim, dim));
}

Lattice Lattice::schiemann(char sign) {
  if (sign != '+' && sign != '-') {
    throw SingularLatticeError("schiemann sign must be '+' or '-'");
  }
  const double s = sign == '+' ? 1.0 : -1.0;
  const double r7 = std::sqrt(7.0), r13 = std::sqrt(13.0), r19 = std::sqrt(19.0);
  Eigen::MatrixXd g(4, 4);
  g << s * 3.0, -r7,          -r13,          -r19,
       1.0,      s * 3.0 * r7, r13,          -r19,
       1.0,     -r7,           s * 3.0 * r13, r19,
       1.0,      r7,           r13,           s * 3.0 * r19;
  g /= 2.0 * std::sqrt(3.0);
  return Lattice(g);
}

Lattice Lattice::named(const std::string& name) {
  if (name.rfind("Zn:", 0) == 0) {
    const int d = std::stoi(name.substr(3));
    return integers(d);
  }
  if (name == "schiemann:+") return schiemann('+');
  if (name == "schiemann:-") return schiemann('-');
  throw SingularLatticeError("unknown lattice name: " + name);
}

Lattice Lattice::read(std::istream& in) {
  int d = 0;
  if (!(in >> d) || d < 1) {
    throw SingularLatticeError("lattice file: bad dimension line");
  }
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (!(in >> g(i, j))) {
        throw SingularLatticeError("lattice file: truncated matrix data");
      }
    }
  }
  return Lattice(g);
}

Lattice Lattice::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SingularLatticeError("cannot open lattice file: " + path);
  return read(in);
}

long Spectrum::total_count() const {
  long n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

namespace {

// Fincke-Pohst: enumerate integer vectors x with ||R x||^2 <= bound for the
// upper-triangular Cholesky factor R of the Gram matrix. Visits every
// solution including x = 0.
template <typename Visit>
void enumerate_integer_points(const Eigen::MatrixXd& R, double bound,
                              std::size_t cap, Visit&& visit) {
  const int d = static_cast<int>(R.rows());
  Eigen::VectorXi x = Eigen::VectorXi::Zero(d);
  // partial[i] = squared norm contributed by levels > i
  std::vector<double> partial(static_cast<std::size_t>(d) + 1, 0.0);
  // center[i] = value that x_i would take to cancel the fixed tail
  std::vector<double> center(d, 0.0);
  std::vector<int> low(d, 0), high(d, -1);
  std::size_t count = 0;

  int level = d - 1;
  bool descend = true;
  while (level < d) {
    if (descend) {
      double dot = 0.0;
      for (int j = level + 1; j < d; ++j) dot += R(level, j) * x[j];
      center[level] = -dot / R(level, level);
      const double budget = bound - partial[level + 1];
      if (budget < 0.0) {
        descend = false;
        ++level;
        continue;
      }
      const double radius = std::sqrt(budget) / R(level, level);
      low[level] = static_cast<int>(std::ceil(center[level] - radius - 1e-12));
      high[level] = static_cast<int>(std::floor(center[level] + radius + 1e-12));
      x[level] = low[level];
    } else {
      ++x[level];
    }
    if (x[level] > high[level]) {
      descend = false;
      ++level;
      continue;
    }
    const double t = R(level, level) * (x[level] - center[level]);
    const double acc = partial[level + 1] + t * t;
    if (acc > bound + 1e-9 * std::max(1.0, bound)) {
      descend = false;
      continue;
    }
    partial[level] = acc;
    if (level == 0) {
      if (++count > cap) {
        throw ResourceLimitError("lattice enumeration exceeded vector cap");
      }
      visit(x, acc);
      descend = false;
    } else {
      --level;
      descend = true;
    }
  }
}

Eigen::MatrixXd cholesky_factor(const Lattice& lattice) {
  Eigen::LLT<Eigen::MatrixXd> llt(lattice.gram());
  if (llt.info() != Eigen::Success) {
    throw SingularLatticeError("Gram matrix is not positive definite");
  }
  return llt.matrixU();
}

}  // namespace

NormSpectrum enumerate_by_norm(const Lattice& lattice, double bound,
                               const EnumerationOptions& options) {
  if (bound <= 0.0) throw Error("enumeration bound must be positive");
  const Eigen::MatrixXd R = cholesky_factor(lattice);
  std::vector<double> norms;
  enumerate_integer_points(R, bound, options.vector_cap,
                           [&](const Eigen::VectorXi&, double q) { norms.push_back(q); });
  std::sort(norms.begin(), norms.end());

  NormSpectrum spectrum;
  spectrum.bound = bound;
  for (double q : norms) {
    if (!spectrum.entries.empty() &&
        q - spectrum.entries.back().value <=
            options.cluster_tol * std::max(1.0, q)) {
      ++spectrum.entries.back().multiplicity;
    } else {
      spectrum.entries.push_back({q, 1});
    }
  }
  return spectrum;
}

std::vector<Eigen::VectorXd> lattice_vectors_within(
    const Lattice& lattice, double bound, const EnumerationOptions& options) {
  std::vector<Eigen::VectorXd> out;
  const Eigen::MatrixXd R = cholesky_factor(lattice);
  enumerate_integer_points(R, bound, options.vector_cap,
                           [&](const Eigen::VectorXi& x, double) {
                             if (x.isZero()) return;
                             out.push_back(lattice.generator() * x.cast<double>());
                           });
  return out;
}

std::vector<Eigen::VectorXi> lattice_points_within(
    const Lattice& lattice, double bound, const EnumerationOptions& options) {
  std::vector<Eigen::VectorXi> out;
  const Eigen::MatrixXd R = cholesky_factor(lattice);
  enumerate_integer_points(R, bound, options.vector_cap,
                           [&](const Eigen::VectorXi& x, double) {
                             if (x.isZero()) return;
                             out.push_back(x);
                           });
  return out;
}

Spectrum torus_spectrum(const Lattice& lattice, double eigenvalue_bound,
                        const EnumerationOptions& options) {
  const double four_pi_sq = 4.0 * M_PI * M_PI;
  NormSpectrum dual_norms =
      enumerate_by_norm(lattice.dual(), eigenvalue_bound / four_pi_sq, options);
  Spectrum spectrum;
  spectrum.bound = eigenvalue_bound;
  spectrum.entries.reserve(dual_norms.entries.size());
  for (const auto& e : dual_norms.entries) {
    spectrum.entries.push_back({four_pi_sq * e.value, e.multiplicity});
  }
  return spectrum;
}

IsospectralityReport is_isospectral(const Lattice& a, const Lattice& b,
                                    double eigenvalue_bound,
                                    const EnumerationOptions& options) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("isospectrality check requires equal dimensions");
  }
  const Spectrum sa = torus_spectrum(a, eigenvalue_bound, options);
  const Spectrum sb = torus_spectrum(b, eigenvalue_bound, options);
  IsospectralityReport report;
  const std::size_t n = std::min(sa.entries.size(), sb.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ea = sa.entries[i];
    const auto& eb = sb.entries[i];
    if (std::abs(ea.value - eb.value) >
        options.cluster_tol * std::max({1.0, ea.value, eb.value})) {
      std::ostringstream os;
      os << "eigenvalue mismatch at index " << i << ": " << ea.value << " vs "
         << eb.value;
      report.discrepancy = os.str();
      return report;
    }
    if (ea.multiplicity != eb.multiplicity) {
      std::ostringstream os;
      os << "multiplicity mismatch at eigenvalue " << ea.value << ": "
         << ea.multiplicity << " vs " << eb.multiplicity;
      report.discrepancy = os.str();
      return report;
    }
  }
  if (sa.entries.size() != sb.entries.size()) {
    std::ostringstream os;
    os << "entry count mismatch: " << sa.entries.size() << " vs "
       << sb.entries.size();
    report.discrepancy = os.str();
    return report;
  }
  report.isospectral = true;
  return report;
}

}  // namespace speclen
