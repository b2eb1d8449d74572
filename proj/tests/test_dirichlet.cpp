#include <doctest.h>

#include <cmath>
#include <random>

#include "speclen/dirichlet.hpp"
#include "speclen/specfun.hpp"

using namespace speclen;

namespace {

Lattice random_lattice(int dim, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    Eigen::MatrixXd g(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) g(i, j) = unit(rng);
    }
    g += 1.5 * Eigen::MatrixXd::Identity(dim, dim);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    if (svd.singularValues()(dim - 1) > 0.3) return Lattice(g);
  }
}

// Truncated direct lattice sum as a DirichletSeries, with tail metadata.
DirichletSeries direct_epstein_series(const Lattice& lattice, double bound) {
  const NormSpectrum norms = enumerate_by_norm(lattice, bound);
  std::vector<DirichletTerm> terms;
  for (const auto& e : norms.entries) {
    if (e.value <= 0.0) continue;
    terms.push_back({e.value, static_cast<double>(e.multiplicity),
                     e.multiplicity});
  }
  return DirichletSeries(std::move(terms), lattice.dim(), bound, 1.0);
}

}  // namespace

TEST_CASE("single-term series evaluation and tail formula") {
  const DirichletSeries series({{1.0, 1.0, 1}}, 1, 1.0, 1.0);
  const auto [value, tail] = series.evaluate(3.0);
  CHECK(value == doctest::Approx(1.0));
  // coeff_bound * 2 (d/2) count cutoff^{d/2-s} / (s-d/2)
  CHECK(tail == doctest::Approx(1.0 * 2.0 * 0.5 * 1.0 * 1.0 / 2.5));
  CHECK_THROWS_AS(series.evaluate(0.7), ConvergenceDomainError);
}

TEST_CASE("series invariants are enforced") {
  CHECK_THROWS(DirichletSeries({{1.0, 1.0, 1}, {1.0, 2.0, 1}}, 1, 2.0, 1.0));
  CHECK_THROWS(DirichletSeries({{-1.0, 1.0, 1}}, 1, 2.0, 1.0));
  CHECK_THROWS(DirichletSeries({{2.0, 1.0, 1}}, 1, 1.0, 1.0));
}

TEST_CASE("circle spectrum series matches the closed form within its tail") {
  // Unit circle, eigenfunctions orthonormal in L^2(r dtheta): coefficient 2
  // per eigenvalue n^2; closed form is 2 zeta(2s).
  std::vector<DirichletTerm> terms;
  for (long n = 1; n <= 1000; ++n) {
    terms.push_back({static_cast<double>(n) * n, 2.0, 2});
  }
  const DirichletSeries series(std::move(terms), 1, 1.0e6, 1.0);
  const auto [value, tail] = series.evaluate(2.0);
  const double closed = 2.0 * riemann_zeta(4.0);
  CHECK(std::abs(value - closed) <= tail);
  CHECK(tail < 1e-7);
}

TEST_CASE("epstein zeta reduces to riemann zeta in one dimension") {
  const Lattice z = Lattice::integers(1);
  CHECK(epstein_zeta(z, 1.0) ==
        doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-10));
  CHECK(epstein_zeta(z, 2.0) ==
        doctest::Approx(std::pow(M_PI, 4) / 45.0).epsilon(1e-10));
}

TEST_CASE("epstein zeta on Z^2 against the brute-force sum") {
  // Direct summation over |v|^2 <= 1e6 plus the integral tail estimate
  // pi/B for sum_{|v|^2 > B} |v|^{-4}.
  double brute = 0.0;
  const long box = 1000;
  for (long m = -box; m <= box; ++m) {
    for (long n = -box; n <= box; ++n) {
      if (m == 0 && n == 0) continue;
      const double q = static_cast<double>(m * m + n * n);
      if (q <= 1.0e6) brute += 1.0 / (q * q);
    }
  }
  brute += M_PI / 1.0e6;
  CHECK(epstein_zeta(Lattice::integers(2), 2.0) ==
        doctest::Approx(brute).epsilon(1e-6));
}

TEST_CASE("epstein zeta continues below the pole") {
  // Z_Z(s) = 2 zeta(2s): at s = 0 the continuation gives 2 zeta(0) = -1,
  // at s = -1/2 it gives 2 zeta(-1) = -1/6.
  const Lattice z = Lattice::integers(1);
  CHECK(epstein_zeta(z, 0.0) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(epstein_zeta(z, -0.5) == doctest::Approx(-1.0 / 6.0).epsilon(1e-9));
  CHECK_THROWS_AS(epstein_zeta(z, 0.5), PoleProximityError);
  CHECK_THROWS_AS(epstein_zeta(z, 0.5 + 1e-8), PoleProximityError);
  CHECK_THROWS_AS(epstein_zeta(z, 25.0), Error);
}

TEST_CASE("continuation consistency with direct summation") {
  std::mt19937 rng(314159);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + trial % 3;
    const Lattice l = random_lattice(dim, rng);
    const double bound = dim == 3 ? 2500.0 : 10000.0;
    const DirichletSeries direct = direct_epstein_series(l, bound);
    for (double s : {0.5 * dim + 0.5, 0.5 * dim + 1.0,
                     static_cast<double>(dim), dim + 1.0}) {
      const auto [value, tail] = direct.evaluate(s);
      const double continued = epstein_zeta(l, s);
      CHECK(std::abs(continued - value) <= tail);
    }
  }
}

TEST_CASE("epstein zeta functional equation") {
  // The completed function F_L(s) = Gamma(s) pi^{-s} Z_L(s) satisfies
  // F_L(s) = V^{-1} F_dual(d/2 - s); checked across the pole on random
  // lattices in dimensions 1-3.
  std::mt19937 rng(161803);
  for (int trial = 0; trial < 9; ++trial) {
    const int dim = 1 + trial % 3;
    const Lattice l = random_lattice(dim, rng);
    const Lattice dual = l.dual();
    for (double offset : {0.35, 0.8, 1.6}) {
      const double s = 0.5 * dim + offset;
      const double lhs = std::tgamma(s) * std::pow(M_PI, -s) * epstein_zeta(l, s);
      const double mirrored = 0.5 * dim - s;
      const double gamma_mirror =
          mirrored > 0.0 ? std::tgamma(mirrored)
                         : 1.0 / reciprocal_gamma(mirrored);
      const double rhs = gamma_mirror * std::pow(M_PI, -mirrored) *
                         epstein_zeta(dual, mirrored) / l.volume();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("torus zeta basics") {
  const double four_pi_sq = 4.0 * M_PI * M_PI;
  CHECK(torus_full_zeta(Lattice::integers(1), 2.0) ==
        doctest::Approx(std::pow(four_pi_sq, -2.0) * 2.0 * riemann_zeta(4.0))
            .epsilon(1e-12));

  // Z^2 at s = 3 against the truncated spectral sum, absolute gap <= 1e-8.
  double truncated = 0.0;
  const Spectrum spectrum =
      torus_spectrum(Lattice::integers(2), four_pi_sq * 150.0);
  for (const auto& e : spectrum.entries) {
    if (e.value > 0.0) truncated += e.multiplicity * std::pow(e.value, -3.0);
  }
  CHECK(std::abs(torus_full_zeta(Lattice::integers(2), 3.0) - truncated) <=
        1e-8);
}

TEST_CASE("isospectral tori share their full zeta") {
  const double plus = torus_full_zeta(Lattice::schiemann('+'), 3.0);
  const double minus = torus_full_zeta(Lattice::schiemann('-'), 3.0);
  CHECK(plus == doctest::Approx(minus).epsilon(1e-10));
}

TEST_CASE("torus zeta positivity and scaling law") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = 1 + trial % 3;
    const Lattice l = random_lattice(dim, rng);
    for (double ds : {0.3, 0.8, 1.5, 3.0}) {
      const double s = 0.5 * dim + ds;
      const double value = torus_full_zeta(l, s);
      CHECK(value > 0.0);
      const Lattice scaled(2.0 * l.generator());
      CHECK(torus_full_zeta(scaled, s) ==
            doctest::Approx(std::pow(2.0, 2.0 * s) * value).epsilon(1e-10));
    }
  }
}

TEST_CASE("residue closed forms") {
  CHECK(residue_closed_form(Lattice::integers(2), 1.0) ==
        doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
  CHECK(residue_closed_form(Lattice::integers(1), 2.0 * M_PI) ==
        doctest::Approx(2.0 * M_PI /
                        (std::sqrt(M_PI) * std::sqrt(4.0 * M_PI)))
            .epsilon(1e-13));
  CHECK(residue_closed_form(Lattice::integers(3), 1.0) ==
        doctest::Approx(1.0 / (gamma_function(1.5) *
                               std::pow(4.0 * M_PI, 1.5)))
            .epsilon(1e-13));
}

TEST_CASE("numeric residue agrees with the closed form") {
  for (const char* name : {"Zn:1", "Zn:2", "Zn:3", "schiemann:+", "schiemann:-"}) {
    const Lattice l = Lattice::named(name);
    const double closed = residue_closed_form(l, l.volume());
    CHECK(residue_numeric(l) == doctest::Approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("numeric residue matches the pole of the continuation") {
  // (s - d/2) zeta_T(s) extrapolated toward the pole.
  const Lattice l = Lattice::integers(2);
  const double res = residue_numeric(l);
  for (double h : {1e-3, 1e-4}) {
    const double approx = h * torus_full_zeta(l, 1.0 + h);
    CHECK(std::abs(approx - res) < 5.0 * h);
  }
}
