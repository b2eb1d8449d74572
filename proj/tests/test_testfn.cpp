#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "speclen/testfn.hpp"

using namespace speclen;

namespace {

FlatTorus unit_torus(int d) { return FlatTorus(Lattice::integers(d)); }

// Pointwise gradient by term-by-term differentiation; independent of the
// coefficient-space pairing formula.
Eigen::VectorXd gradient_at(const TrigPoly& a, const Eigen::VectorXd& x) {
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(x.size());
  for (const auto& [k, c] : a.coeffs()) {
    const Eigen::VectorXd freq = a.frequency(k);
    const std::complex<double> phase =
        c * std::polar(1.0, 2.0 * M_PI * freq.dot(x));
    sum += std::complex<double>(0.0, 2.0 * M_PI) * phase * freq;
  }
  return sum.real();
}

// Tensor-grid quadrature over the fundamental domain; exact on trig
// polynomials below the grid's Nyquist degree.
template <typename F>
double grid_quadrature(const FlatTorus& torus, int points_per_axis, F&& f) {
  const int d = torus.dim();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  double total = 0.0;
  long count = 0;
  for (;;) {
    Eigen::VectorXd frac(d);
    for (int i = 0; i < d; ++i) {
      frac[i] = static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                points_per_axis;
    }
    total += f(torus.lattice().generator() * frac);
    ++count;
    int level = 0;
    while (level < d && ++idx[static_cast<std::size_t>(level)] >= points_per_axis) {
      idx[static_cast<std::size_t>(level)] = 0;
      ++level;
    }
    if (level == d) break;
  }
  return torus.volume() * total / static_cast<double>(count);
}

TrigPoly random_poly(const FlatTorus& torus, int degree, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int d = torus.dim();
  std::uniform_int_distribution<int> coord(-degree, degree);
  TrigPoly out = TrigPoly::constant(torus.dual_lattice(), unit(rng));
  for (int m = 0; m < 4; ++m) {
    TrigPoly::Key k(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) k[static_cast<std::size_t>(i)] = coord(rng);
    out = out + TrigPoly::cosine(torus.dual_lattice(), k, unit(rng)) +
          TrigPoly::sine(torus.dual_lattice(), k, unit(rng));
  }
  return out;
}

}  // namespace

TEST_CASE("integral picks out the constant mode") {
  const FlatTorus t2 = unit_torus(2);
  CHECK(integral(TrigPoly::constant(t2.dual_lattice(), 1.0), t2) ==
        doctest::Approx(1.0));
  CHECK(integral(TrigPoly::cosine(t2.dual_lattice(), {1, 0}), t2) ==
        doctest::Approx(0.0));

  Eigen::MatrixXd g(2, 2);
  g << 1, 0, 0, 3;
  const FlatTorus stretched{Lattice(g)};
  const TrigPoly a = TrigPoly::constant(stretched.dual_lattice(), 2.0) +
                     TrigPoly::cosine(stretched.dual_lattice(), {1, 0});
  CHECK(integral(a, stretched) == doctest::Approx(2.0 * 3.0));
}

TEST_CASE("integral rejects a mismatched lattice") {
  const FlatTorus t2 = unit_torus(2);
  Eigen::MatrixXd g(2, 2);
  g << 1, 0, 0, 3;
  const FlatTorus other{Lattice(g)};
  const TrigPoly a = TrigPoly::constant(other.dual_lattice(), 1.0);
  CHECK_THROWS_AS(integral(a, t2), DimensionMismatchError);
}

TEST_CASE("gradient pairing on single modes") {
  const FlatTorus t2 = unit_torus(2);
  const TrigPoly constant = TrigPoly::constant(t2.dual_lattice(), 5.0);
  const TrigPoly cos_x = TrigPoly::cosine(t2.dual_lattice(), {1, 0});
  CHECK(gradient_pairing(constant, cos_x, t2) == doctest::Approx(0.0));
  CHECK(gradient_pairing(cos_x, cos_x, t2) ==
        doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));
  const TrigPoly cos_y = TrigPoly::cosine(t2.dual_lattice(), {0, 1});
  CHECK(gradient_pairing(cos_x, cos_y, t2) == doctest::Approx(0.0));
}

TEST_CASE("quadrature exactness for integral and gradient pairing") {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 2;
    const FlatTorus torus = unit_torus(d);
    const TrigPoly a = random_poly(torus, 2, rng);
    const TrigPoly b = random_poly(torus, 2, rng);
    const int grid = 2 * std::max(a.max_coordinate_degree(),
                                  b.max_coordinate_degree()) + 3;
    const double quad_integral = grid_quadrature(
        torus, grid, [&](const Eigen::VectorXd& x) { return evaluate_at(a, x); });
    CHECK(integral(a, torus) ==
          doctest::Approx(quad_integral).epsilon(1e-10).scale(1.0));
    const double quad_pairing =
        grid_quadrature(torus, grid, [&](const Eigen::VectorXd& x) {
          return gradient_at(a, x).dot(gradient_at(b, x));
        });
    CHECK(gradient_pairing(a, b, torus) ==
          doctest::Approx(quad_pairing).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("parseval identity") {
  std::mt19937 rng(777);
  const FlatTorus torus = unit_torus(2);
  for (int trial = 0; trial < 20; ++trial) {
    const TrigPoly a = random_poly(torus, 2, rng);
    double coeff_sum = 0.0;
    for (const auto& [k, c] : a.coeffs()) coeff_sum += std::norm(c);
    CHECK(integral(a * a, torus) ==
          doctest::Approx(torus.volume() * coeff_sum).epsilon(1e-12));
  }
}

TEST_CASE("pullback along the identity and of constants") {
  const FlatTorus t2 = unit_torus(2);
  const TrigPoly a = TrigPoly::cosine(t2.dual_lattice(), {2, -1}, 0.7) +
                     TrigPoly::constant(t2.dual_lattice(), 1.5);
  const TrigPoly back =
      pullback_linear(a, Eigen::MatrixXd::Identity(2, 2), t2);
  for (const auto& [k, c] : a.coeffs()) {
    CHECK(std::abs(back.coefficient(k) - c) < 1e-14);
  }

  Eigen::MatrixXd shear(2, 2);
  shear << 1, 1, 0, 1;
  const TrigPoly constant = TrigPoly::constant(t2.dual_lattice(), 3.0);
  const TrigPoly pulled = pullback_linear(constant, shear, t2);
  CHECK(pulled.coefficient(TrigPoly::Key{0, 0}) ==
        std::complex<double>(3.0, 0.0));
  CHECK(pulled.coeffs().size() == 1);
}

TEST_CASE("pullback between the schiemann tori via pointwise evaluation") {
  const FlatTorus plus{Lattice::schiemann('+')};
  const FlatTorus minus{Lattice::schiemann('-')};
  // A = G- G+^{-1} maps the '+' torus to the '-' torus.
  const Eigen::MatrixXd a_matrix =
      minus.lattice().generator() * plus.lattice().generator().inverse();
  const TrigPoly mode = TrigPoly::cosine(minus.dual_lattice(), {1, 0, -1, 2});
  const TrigPoly pulled = pullback_linear(mode, a_matrix, plus);
  CHECK(pulled.coeffs().size() == 2);
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd x(4);
    for (int j = 0; j < 4; ++j) x[j] = unit(rng);
    CHECK(evaluate_at(pulled, x) ==
          doctest::Approx(evaluate_at(mode, a_matrix * x)).epsilon(1e-10));
  }
}

TEST_CASE("pullback functoriality") {
  const FlatTorus t2 = unit_torus(2);
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 1, 1, 0, 1;
  b << 1, 0, 1, 1;
  std::mt19937 rng(9);
  const TrigPoly f = random_poly(t2, 2, rng);
  const TrigPoly two_step = pullback_linear(pullback_linear(f, a, t2), b, t2);
  const TrigPoly one_step = pullback_linear(f, a * b, t2);
  for (const auto& [k, c] : one_step.coeffs()) {
    CHECK(std::abs(two_step.coefficient(k) - c) < 1e-12);
  }
  CHECK(two_step.coeffs().size() == one_step.coeffs().size());
}

TEST_CASE("non-integral pullback frequencies are rejected") {
  const FlatTorus t2 = unit_torus(2);
  const TrigPoly mode = TrigPoly::cosine(t2.dual_lattice(), {1, 0});
  CHECK_THROWS_AS(
      pullback_linear(mode, 1.5 * Eigen::MatrixXd::Identity(2, 2), t2),
      AdmissibilityError);
}

TEST_CASE("evaluate_at basics and the reverse-summation oracle") {
  const FlatTorus t2 = unit_torus(2);
  CHECK(evaluate_at(TrigPoly::constant(t2.dual_lattice(), 3.0),
                    Eigen::VectorXd::Random(2)) == doctest::Approx(3.0));
  const TrigPoly cos_x = TrigPoly::cosine(t2.dual_lattice(), {1, 0}, 0.8);
  CHECK(evaluate_at(cos_x, Eigen::VectorXd::Zero(2)) ==
        doctest::Approx(0.8).epsilon(1e-14));

  std::mt19937 rng(2718);
  const TrigPoly a = random_poly(t2, 3, rng);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd x(2);
    x << unit(rng), unit(rng);
    std::complex<double> reversed = 0.0;
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) {
      reversed += it->second *
                  std::polar(1.0, 2.0 * M_PI * a.frequency(it->first).dot(x));
    }
    CHECK(evaluate_at(a, x) == doctest::Approx(reversed.real()).epsilon(1e-12));
  }
}

TEST_CASE("hermitian symmetry is enforced") {
  const Lattice dual = Lattice::integers(2);
  TrigPoly::CoeffMap bad;
  bad[{1, 0}] = {1.0, 0.5};
  bad[{-1, 0}] = {1.0, 0.5};  // conj would be (1.0, -0.5)
  CHECK_THROWS_AS(TrigPoly(dual, bad), Error);
}

TEST_CASE("random_nonneg stays above its floor and is deterministic") {
  const FlatTorus t2 = unit_torus(2);
  const TrigPoly zero_degree = random_nonneg(t2, 0, 5);
  CHECK(zero_degree.is_constant());
  CHECK(evaluate_at(zero_degree, Eigen::VectorXd::Zero(2)) > 0.0);

  const TrigPoly a = random_nonneg(t2, 2, 12345);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd x(2);
    x << unit(rng), unit(rng);
    CHECK(evaluate_at(a, x) >= 1e-3 - 1e-12);
  }
  const TrigPoly b = random_nonneg(t2, 2, 12345);
  CHECK(a.coeffs().size() == b.coeffs().size());
  for (const auto& [k, c] : a.coeffs()) {
    CHECK(std::abs(b.coefficient(k) - c) == 0.0);
  }
}

TEST_CASE("fourier polynomials mirror the torus behavior") {
  const FourierPoly a = FourierPoly::constant(2.0) + FourierPoly::cosine(3, 0.5);
  CHECK(a.integral_dtheta() == doctest::Approx(4.0 * M_PI));
  CHECK(evaluate_at(a, 0.0) == doctest::Approx(2.5));
  const FourierPoly d2 = a.second_derivative();
  CHECK(evaluate_at(d2, 0.0) == doctest::Approx(-9.0 * 0.5));
  CHECK(d2.coefficient(0) == std::complex<double>(0.0, 0.0));

  const FourierPoly nonneg = random_nonneg_fourier(2, 7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(evaluate_at(nonneg, 2.0 * M_PI * i / 1000.0) >= 1e-3 - 1e-12);
  }
  CHECK_FALSE(random_nonconstant_fourier(2, 3).is_constant());
}
