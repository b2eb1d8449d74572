#include "speclen/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace speclen {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kIntegralityTol = 1e-6;  // tau_int for pullback frequencies
constexpr double kCoeffPrune = 1e-300;

TrigPoly::Key negate(const TrigPoly::Key& k) {
  TrigPoly::Key out(k.size());
  std::transform(k.begin(), k.end(), out.begin(), [](int v) { return -v; });
  return out;
}

bool lattices_match(const Lattice& a, const Lattice& b) {
  return a.dim() == b.dim() &&
         (a.generator() - b.generator()).cwiseAbs().maxCoeff() <= 1e-12;
}

}  // namespace

TrigPoly::TrigPoly(Lattice dual_lattice, CoeffMap coeffs)
    : dual_lattice_(std::move(dual_lattice)), coeffs_(std::move(coeffs)) {
  const std::size_t d = static_cast<std::size_t>(dual_lattice_.dim());
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->first.size() != d) {
      throw Error("TrigPoly: frequency key dimension mismatch");
    }
    if (std::abs(it->second) < kCoeffPrune) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& [k, c] : coeffs_) {
    const auto mirror = coeffs_.find(negate(k));
    const std::complex<double> conj_c =
        mirror == coeffs_.end() ? std::complex<double>(0.0) : mirror->second;
    if (std::abs(std::conj(c) - conj_c) >
        kHermitianTol * std::max(1.0, std::abs(c))) {
      throw Error("TrigPoly: coefficients violate Hermitian symmetry");
    }
  }
}

TrigPoly TrigPoly::zero(const Lattice& dual_lattice) {
  return TrigPoly(dual_lattice, {});
}

TrigPoly TrigPoly::constant(const Lattice& dual_lattice, double value) {
  CoeffMap coeffs;
  if (value != 0.0) coeffs[Key(dual_lattice.dim(), 0)] = value;
  return TrigPoly(dual_lattice, std::move(coeffs));
}

TrigPoly TrigPoly::cosine(const Lattice& dual_lattice, const Key& k,
                          double amplitude) {
  CoeffMap coeffs;
  coeffs[k] += amplitude / 2.0;
  coeffs[negate(k)] += amplitude / 2.0;
  return TrigPoly(dual_lattice, std::move(coeffs));
}

TrigPoly TrigPoly::sine(const Lattice& dual_lattice, const Key& k,
                        double amplitude) {
  CoeffMap coeffs;
  coeffs[k] += std::complex<double>(0.0, -amplitude / 2.0);
  coeffs[negate(k)] += std::complex<double>(0.0, amplitude / 2.0);
  return TrigPoly(dual_lattice, std::move(coeffs));
}

Eigen::VectorXd TrigPoly::frequency(const Key& k) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    out += static_cast<double>(k[static_cast<std::size_t>(i)]) *
           dual_lattice_.generator().col(i);
  }
  return out;
}

std::complex<double> TrigPoly::coefficient(const Key& k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? std::complex<double>(0.0) : it->second;
}

bool TrigPoly::is_constant() const {
  for (const auto& [k, c] : coeffs_) {
    if (std::any_of(k.begin(), k.end(), [](int v) { return v != 0; })) {
      return false;
    }
  }
  return true;
}

int TrigPoly::max_coordinate_degree() const {
  int degree = 0;
  for (const auto& [k, c] : coeffs_) {
    for (int v : k) degree = std::max(degree, std::abs(v));
  }
  return degree;
}

double TrigPoly::sup_norm_bound() const {
  double sum = 0.0;
  for (const auto& [k, c] : coeffs_) sum += std::abs(c);
  return sum;
}

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
  if (!lattices_match(dual_lattice_, other.dual_lattice_)) {
    throw DimensionMismatchError("TrigPoly addition: frequency lattice mismatch");
  }
  CoeffMap out = coeffs_;
  for (const auto& [k, c] : other.coeffs_) out[k] += c;
  return TrigPoly(dual_lattice_, std::move(out));
}

TrigPoly TrigPoly::operator-(const TrigPoly& other) const {
  return *this + other.scaled(-1.0);
}

TrigPoly TrigPoly::operator*(const TrigPoly& other) const {
  if (!lattices_match(dual_lattice_, other.dual_lattice_)) {
    throw DimensionMismatchError("TrigPoly product: frequency lattice mismatch");
  }
  CoeffMap out;
  for (const auto& [ka, ca] : coeffs_) {
    for (const auto& [kb, cb] : other.coeffs_) {
      Key k(ka.size());
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      out[k] += ca * cb;
    }
  }
  return TrigPoly(dual_lattice_, std::move(out));
}

TrigPoly TrigPoly::scaled(double factor) const {
  CoeffMap out = coeffs_;
  for (auto& [k, c] : out) c *= factor;
  return TrigPoly(dual_lattice_, std::move(out));
}

FourierPoly::FourierPoly(CoeffMap coeffs) : coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) < kCoeffPrune) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& [n, c] : coeffs_) {
    const auto mirror = coeffs_.find(-n);
    const std::complex<double> conj_c =
        mirror == coeffs_.end() ? std::complex<double>(0.0) : mirror->second;
    if (std::abs(std::conj(c) - conj_c) >
        kHermitianTol * std::max(1.0, std::abs(c))) {
      throw Error("FourierPoly: coefficients violate Hermitian symmetry");
    }
  }
}

FourierPoly FourierPoly::zero() { return FourierPoly(CoeffMap{}); }

FourierPoly FourierPoly::constant(double value) {
  CoeffMap coeffs;
  if (value != 0.0) coeffs[0] = value;
  return FourierPoly(std::move(coeffs));
}

FourierPoly FourierPoly::cosine(int n, double amplitude) {
  CoeffMap coeffs;
  coeffs[n] += amplitude / 2.0;
  coeffs[-n] += amplitude / 2.0;
  return FourierPoly(std::move(coeffs));
}

FourierPoly FourierPoly::sine(int n, double amplitude) {
  CoeffMap coeffs;
  coeffs[n] += std::complex<double>(0.0, -amplitude / 2.0);
  coeffs[-n] += std::complex<double>(0.0, amplitude / 2.0);
  return FourierPoly(std::move(coeffs));
}

std::complex<double> FourierPoly::coefficient(int n) const {
  const auto it = coeffs_.find(n);
  return it == coeffs_.end() ? std::complex<double>(0.0) : it->second;
}

bool FourierPoly::is_constant() const {
  for (const auto& [n, c] : coeffs_) {
    if (n != 0) return false;
  }
  return true;
}

double FourierPoly::integral_dtheta() const {
  return 2.0 * M_PI * coefficient(0).real();
}

FourierPoly FourierPoly::second_derivative() const {
  CoeffMap out;
  for (const auto& [n, c] : coeffs_) {
    if (n != 0) out[n] = -static_cast<double>(n) * n * c;
  }
  return FourierPoly(std::move(out));
}

FourierPoly FourierPoly::operator+(const FourierPoly& other) const {
  CoeffMap out = coeffs_;
  for (const auto& [n, c] : other.coeffs_) out[n] += c;
  return FourierPoly(std::move(out));
}

FourierPoly FourierPoly::operator-(const FourierPoly& other) const {
  return *this + other.scaled(-1.0);
}

FourierPoly FourierPoly::operator*(const FourierPoly& other) const {
  CoeffMap out;
  for (const auto& [na, ca] : coeffs_) {
    for (const auto& [nb, cb] : other.coeffs_) out[na + nb] += ca * cb;
  }
  return FourierPoly(std::move(out));
}

FourierPoly FourierPoly::scaled(double factor) const {
  CoeffMap out = coeffs_;
  for (auto& [n, c] : out) c *= factor;
  return FourierPoly(std::move(out));
}

namespace {

void require_indexed_by(const TrigPoly& a, const FlatTorus& torus,
                        const char* what) {
  if (!lattices_match(a.frequency_lattice(), torus.dual_lattice())) {
    throw DimensionMismatchError(std::string(what) +
                                 ": polynomial not indexed by the torus dual lattice");
  }
}

}  // namespace

double integral(const TrigPoly& a, const FlatTorus& torus) {
  require_indexed_by(a, torus, "integral");
  return torus.volume() * a.coefficient(TrigPoly::Key(torus.dim(), 0)).real();
}

double gradient_pairing(const TrigPoly& a1, const TrigPoly& a2,
                        const FlatTorus& torus) {
  require_indexed_by(a1, torus, "gradient_pairing");
  require_indexed_by(a2, torus, "gradient_pairing");
  // Orthogonality leaves only matched frequencies:
  //   int grad(a1).grad(a2) = vol * sum_k 4 pi^2 <l_k, l_k> c1_k conj(c2_k),
  // real by Hermitian symmetry.
  std::complex<double> sum = 0.0;
  for (const auto& [k, c1] : a1.coeffs()) {
    const std::complex<double> c2 = a2.coefficient(k);
    if (c2 == std::complex<double>(0.0)) continue;
    sum += c1 * std::conj(c2) * a1.frequency(k).squaredNorm();
  }
  return torus.volume() * 4.0 * M_PI * M_PI * sum.real();
}

TrigPoly pullback_linear(const TrigPoly& a, const Eigen::MatrixXd& A,
                         const FlatTorus& source) {
  if (A.rows() != a.dim() || A.cols() != source.dim()) {
    throw DimensionMismatchError("pullback_linear: matrix dimension mismatch");
  }
  // (a o phi)(x) = sum c_k exp(2 pi i <A^T l_k, x>): re-express A^T l_k in
  // integer coordinates of dual(source), i.e. apply D1^{-1} A^T D2.
  const Eigen::MatrixXd d1 = source.dual_lattice().generator();
  const Eigen::MatrixXd d2 = a.frequency_lattice().generator();
  const Eigen::MatrixXd key_map = d1.inverse() * A.transpose() * d2;
  TrigPoly::CoeffMap out;
  for (const auto& [k, c] : a.coeffs()) {
    Eigen::VectorXd key_real = Eigen::VectorXd::Zero(source.dim());
    for (int i = 0; i < a.dim(); ++i) {
      key_real += static_cast<double>(k[static_cast<std::size_t>(i)]) *
                  key_map.col(i);
    }
    TrigPoly::Key key(static_cast<std::size_t>(source.dim()));
    for (int i = 0; i < source.dim(); ++i) {
      const double rounded = std::nearbyint(key_real[i]);
      if (std::abs(key_real[i] - rounded) > kIntegralityTol) {
        throw AdmissibilityError(
            "pullback_linear: re-expressed frequency is not integral");
      }
      key[static_cast<std::size_t>(i)] = static_cast<int>(rounded);
    }
    out[key] += c;
  }
  return TrigPoly(source.dual_lattice(), std::move(out));
}

double evaluate_at(const TrigPoly& a, const Eigen::VectorXd& x) {
  if (x.size() != a.dim()) {
    throw DimensionMismatchError("evaluate_at: point dimension mismatch");
  }
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : a.coeffs()) {
    const double phase = 2.0 * M_PI * a.frequency(k).dot(x);
    sum += c * std::polar(1.0, phase);
  }
  if (std::abs(sum.imag()) > 1e-12 * std::max(1.0, std::abs(sum.real()))) {
    throw Error("evaluate_at: imaginary residue exceeds Hermitian tolerance");
  }
  return sum.real();
}

double evaluate_at(const FourierPoly& a, double theta) {
  std::complex<double> sum = 0.0;
  for (const auto& [n, c] : a.coeffs()) {
    sum += c * std::polar(1.0, n * theta);
  }
  if (std::abs(sum.imag()) > 1e-12 * std::max(1.0, std::abs(sum.real()))) {
    throw Error("evaluate_at: imaginary residue exceeds Hermitian tolerance");
  }
  return sum.real();
}

namespace {

constexpr double kNonnegFloor = 1e-3;

std::complex<double> random_unit_coeff(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  return {unit(rng), unit(rng)};
}

}  // namespace

TrigPoly random_nonneg(const FlatTorus& torus, int degree, unsigned seed) {
  if (degree < 0) throw Error("random_nonneg: degree must be >= 0");
  std::mt19937 rng(seed);
  const int d = torus.dim();
  // Sparse random p inside the box, then |p|^2 + floor. Up to 8 modes keeps
  // the squared support small in dimension 4.
  std::uniform_int_distribution<int> coord(-degree, degree);
  std::vector<std::pair<TrigPoly::Key, std::complex<double>>> modes;
  modes.emplace_back(TrigPoly::Key(static_cast<std::size_t>(d), 0),
                     random_unit_coeff(rng));
  const int extra = degree == 0 ? 0 : std::min(7, 2 * degree * d);
  for (int m = 0; m < extra; ++m) {
    TrigPoly::Key k(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) k[static_cast<std::size_t>(i)] = coord(rng);
    modes.emplace_back(std::move(k), random_unit_coeff(rng));
  }
  TrigPoly::CoeffMap squared;
  for (const auto& [ka, ca] : modes) {
    for (const auto& [kb, cb] : modes) {
      TrigPoly::Key k(ka.size());
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] - kb[i];
      squared[k] += ca * std::conj(cb);
    }
  }
  squared[TrigPoly::Key(static_cast<std::size_t>(d), 0)] += kNonnegFloor;
  return TrigPoly(torus.dual_lattice(), std::move(squared));
}

FourierPoly random_nonneg_fourier(int degree, unsigned seed) {
  if (degree < 0) throw Error("random_nonneg_fourier: degree must be >= 0");
  std::mt19937 rng(seed);
  FourierPoly::CoeffMap modes;
  for (int n = 0; n <= degree; ++n) modes[n] = random_unit_coeff(rng);
  FourierPoly::CoeffMap squared;
  for (const auto& [na, ca] : modes) {
    for (const auto& [nb, cb] : modes) squared[na - nb] += ca * std::conj(cb);
  }
  squared[0] += kNonnegFloor;
  return FourierPoly(std::move(squared));
}

FourierPoly random_nonconstant_fourier(int degree, unsigned seed) {
  if (degree < 1) throw Error("random_nonconstant_fourier: degree must be >= 1");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  FourierPoly out = FourierPoly::constant(unit(rng));
  bool has_mode = false;
  for (int n = 1; n <= degree; ++n) {
    const double amp_cos = unit(rng);
    const double amp_sin = unit(rng);
    if (std::abs(amp_cos) > 0.1) {
      out = out + FourierPoly::cosine(n, amp_cos);
      has_mode = true;
    }
    if (std::abs(amp_sin) > 0.1) {
      out = out + FourierPoly::sine(n, amp_sin);
      has_mode = true;
    }
  }
  if (!has_mode) out = out + FourierPoly::cosine(1, 1.0);
  return out;
}

}  // namespace speclen
