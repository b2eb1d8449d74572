#include "speclen/zeta_families.hpp"

#include <algorithm>
#include <cmath>

#include "speclen/specfun.hpp"

namespace speclen {

namespace {

void require_circle_domain(double s) {
  if (!(s > 0.5 + 1e-6)) {
    throw ConvergenceDomainError("circle zeta families require s > 1/2");
  }
}

}  // namespace

double circle_zeta_paper(const CircleManifold& circle, const FourierPoly& a0,
                         double s) {
  require_circle_domain(s);
  return 2.0 * std::pow(circle.radius(), 2.0 * s + 1.0) * a0.integral_dtheta() *
         riemann_zeta(2.0 * s);
}

double circle_zeta2_paper(const CircleManifold& circle, const FourierPoly& a1,
                          const FourierPoly& a2, double s) {
  require_circle_domain(s);
  const double pairing = (a1 * a2.second_derivative()).integral_dtheta();
  return 2.0 * std::pow(circle.radius(), 2.0 * s - 1.0) * pairing *
         riemann_zeta(2.0 * s);
}

double circle_zeta_first_principles(const CircleManifold& circle,
                                    const FourierPoly& a0, double s) {
  require_circle_domain(s);
  return std::pow(circle.radius(), 2.0 * s) * a0.integral_dtheta() / M_PI *
         riemann_zeta(2.0 * s);
}

double circle_zeta2_first_principles(const CircleManifold& circle,
                                     const FourierPoly& a1,
                                     const FourierPoly& a2, double s) {
  require_circle_domain(s);
  // int a1' a2' dtheta = -int a1 d^2(a2) dtheta, exact on trig polynomials.
  const double pairing = -(a1 * a2.second_derivative()).integral_dtheta();
  return std::pow(circle.radius(), 2.0 * s - 2.0) * pairing / M_PI *
         riemann_zeta(2.0 * s);
}

double torus_zeta_family(const FlatTorus& torus, const TrigPoly& a0, double s) {
  if (!(s > 0.5 * torus.dim())) {
    throw ConvergenceDomainError("torus_zeta_family requires s > d/2");
  }
  const double mean = integral(a0, torus) / torus.volume();
  return mean * torus_full_zeta(torus.lattice(), s);
}

double torus_zeta2_family(const FlatTorus& torus, const TrigPoly& a1,
                          const TrigPoly& a2, double s) {
  if (!(s > 0.5 * torus.dim())) {
    throw ConvergenceDomainError("torus_zeta2_family requires s > d/2");
  }
  const double mean = gradient_pairing(a1, a2, torus) / torus.volume();
  return mean * torus_full_zeta(torus.lattice(), s);
}

DirichletSeries torus_zeta_series(const FlatTorus& torus, const TrigPoly& a0,
                                  double dual_norm_bound) {
  const Lattice dual = torus.dual_lattice();
  const double amplitude = std::sqrt(2.0 / torus.volume());
  struct Raw {
    double eigenvalue;
    double coefficient;
  };
  std::vector<Raw> raw;
  for (const auto& point : lattice_points_within(dual, dual_norm_bound)) {
    // One representative per +/- pair.
    int lead = 0;
    for (int i = 0; i < point.size(); ++i) {
      if (point[i] != 0) {
        lead = point[i];
        break;
      }
    }
    if (lead < 0) continue;
    TrigPoly::Key key(point.data(), point.data() + point.size());
    const TrigPoly psi_cos = TrigPoly::cosine(dual, key, amplitude);
    const TrigPoly psi_sin = TrigPoly::sine(dual, key, amplitude);
    const double coefficient = integral(a0 * (psi_cos * psi_cos), torus) +
                               integral(a0 * (psi_sin * psi_sin), torus);
    Eigen::VectorXd frequency = Eigen::VectorXd::Zero(torus.dim());
    for (int i = 0; i < torus.dim(); ++i) {
      frequency += static_cast<double>(point[i]) * dual.generator().col(i);
    }
    raw.push_back({4.0 * M_PI * M_PI * frequency.squaredNorm(), coefficient});
  }
  std::sort(raw.begin(), raw.end(),
            [](const Raw& a, const Raw& b) { return a.eigenvalue < b.eigenvalue; });
  std::vector<DirichletTerm> terms;
  for (const auto& r : raw) {
    if (!terms.empty() &&
        r.eigenvalue - terms.back().eigenvalue <=
            1e-9 * std::max(1.0, r.eigenvalue)) {
      terms.back().coefficient += r.coefficient;
      terms.back().multiplicity += 2;
    } else {
      terms.push_back({r.eigenvalue, r.coefficient, 2});
    }
  }
  const double cutoff = 4.0 * M_PI * M_PI * dual_norm_bound;
  return DirichletSeries(std::move(terms), torus.dim(), cutoff,
                         a0.sup_norm_bound());
}

}  // namespace speclen
