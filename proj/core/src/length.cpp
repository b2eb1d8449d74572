#include "speclen/length.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "speclen/dirichlet.hpp"
#include "speclen/zeta_families.hpp"

namespace speclen {

namespace {

double log_abs_ratio(const std::function<double(double)>& f,
                     const std::function<double(double)>& g, double s) {
  const double fv = f(s);
  const double gv = g(s);
  if (!(fv > 0.0) || !(gv > 0.0)) {
    throw PositivityError("delta1: nonpositive sample value");
  }
  return std::abs(std::log(fv / gv));
}

}  // namespace

double delta1(const std::function<double(double)>& f,
              const std::function<double(double)>& g, double sigma, int grid) {
  if (grid < 2) throw Error("delta1: grid must have at least 2 points");
  const double h = 1.0 / (grid - 1);
  double best = -1.0;
  int best_index = 0;
  for (int i = 0; i < grid; ++i) {
    const double value = log_abs_ratio(f, g, sigma + i * h);
    if (value > best) {
      best = value;
      best_index = i;
    }
  }
  // Golden-section refinement of the bracket around the best grid point.
  double a = sigma + std::max(0, best_index - 1) * h;
  double b = sigma + std::min(grid - 1, best_index + 1) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = log_abs_ratio(f, g, x1);
  double f2 = log_abs_ratio(f, g, x2);
  for (int iter = 0; iter < 80 && b - a > 1e-12; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = log_abs_ratio(f, g, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = log_abs_ratio(f, g, x1);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

double d_sigma_from_delta(double delta) { return delta / (1.0 + delta); }

double d_sigma(const std::function<double(double)>& f,
               const std::function<double(double)>& g, double sigma, int grid) {
  return d_sigma_from_delta(delta1(f, g, sigma, grid));
}

double circle_length_closed_form(double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error("circle radii must be positive");
  const double log_ratio = std::abs(std::log(r1 / r2));
  if (log_ratio == 0.0) return 0.0;
  return 1.0 / (1.0 + 1.0 / (5.0 * log_ratio));
}

double circle_length_closed_form_first_principles(double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error("circle radii must be positive");
  const double log_ratio = std::abs(std::log(r1 / r2));
  if (log_ratio == 0.0) return 0.0;
  return 1.0 / (1.0 + 1.0 / (4.0 * log_ratio));
}

namespace {

void validate_circle_pair(const CircleTestPair& pair) {
  if (pair.a0.integral_dtheta() <= 0.0) {
    throw PositivityError("circle test family: a0 must have positive mean");
  }
  for (int i = 0; i < 256; ++i) {
    const double theta = 2.0 * M_PI * i / 256.0;
    if (evaluate_at(pair.a0, theta) < -1e-9) {
      throw PositivityError("circle test family: a0 must be nonnegative");
    }
  }
  if (pair.a1.is_constant()) {
    throw Error("circle test family: a1 must be nonconstant");
  }
}

}  // namespace

LengthReport circle_length_computed(const CircleRescale& map,
                                    const std::vector<CircleTestPair>& family,
                                    int grid,
                                    CircleNormalization normalization) {
  if (family.empty()) {
    throw Error("circle_length_computed: test family must be nonempty");
  }
  const CircleManifold& source = map.source;
  const CircleManifold& target = map.target;
  const bool paper = normalization == CircleNormalization::kPaper;
  constexpr double sigma = 1.0;  // d = 1

  double best_delta = -1.0;
  std::size_t best_pair = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const CircleTestPair& pair = family[i];
    validate_circle_pair(pair);
    // theta -> theta pullback leaves Fourier coefficients unchanged; only the
    // circle carrying them changes.
    const auto f0 = [&](double s) {
      return std::abs(paper ? circle_zeta_paper(source, pair.a0, s)
                            : circle_zeta_first_principles(source, pair.a0, s));
    };
    const auto g0 = [&](double s) {
      return std::abs(paper ? circle_zeta_paper(target, pair.a0, s)
                            : circle_zeta_first_principles(target, pair.a0, s));
    };
    const auto f1 = [&](double s) {
      return std::abs(paper
                          ? circle_zeta2_paper(source, pair.a1, pair.a1, s)
                          : circle_zeta2_first_principles(source, pair.a1,
                                                          pair.a1, s));
    };
    const auto g1 = [&](double s) {
      return std::abs(paper
                          ? circle_zeta2_paper(target, pair.a1, pair.a1, s)
                          : circle_zeta2_first_principles(target, pair.a1,
                                                          pair.a1, s));
    };
    const double delta =
        std::max(delta1(f0, g0, sigma, grid), delta1(f1, g1, sigma, grid));
    if (delta > best_delta) {
      best_delta = delta;
      best_pair = i;
    }
  }

  LengthReport report;
  report.length_lower = d_sigma_from_delta(best_delta);
  report.length_upper =
      paper ? circle_length_closed_form(source.radius(), target.radius())
            : circle_length_closed_form_first_principles(source.radius(),
                                                         target.radius());
  std::ostringstream witness;
  witness << "family pair #" << best_pair;
  report.witness = witness.str();
  // The log-ratio exponent grows with s, so the sup sits at the right endpoint.
  report.witness_s = sigma + 1.0;
  std::ostringstream spec;
  spec << family.size() << " (a0, a1) Fourier pairs, "
       << (paper ? "paper" : "first-principles") << " normalization";
  report.family_spec = spec.str();
  return report;
}

namespace {

constexpr double kDefaultIsospectralVectors = 40.0;

double default_isospectral_bound(const FlatTorus& torus) {
  // Eigenvalue bound that captures roughly kDefaultIsospectralVectors dual
  // vectors: count(|w|^2 <= B) ~ vol(T) * c_d * B^{d/2}.
  const int d = torus.dim();
  const double ball = std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  const double b = std::pow(
      kDefaultIsospectralVectors / (torus.volume() * ball), 2.0 / d);
  return 4.0 * M_PI * M_PI * std::max(b, 1e-6);
}

void require_isospectral_pair(const TorusLinearMap& map) {
  if (std::abs(jacobian(map) - 1.0) > 1e-10) {
    throw PreconditionError(
        "torus length bounds require |det A| = 1 (isospectral tori)");
  }
  const double bound = std::max(default_isospectral_bound(map.source()),
                                default_isospectral_bound(map.target()));
  const auto report =
      is_isospectral(map.source().lattice(), map.target().lattice(), bound);
  if (!report.isospectral) {
    throw PreconditionError("torus length bounds require isospectral tori: " +
                            report.discrepancy);
  }
}

double upper_bound_delta(const Eigen::MatrixXd& a) {
  const double norm = spectral_norm(a);
  const double norm_inv = spectral_norm(a.inverse());
  return 2.0 * std::max({std::log(norm), std::log(norm_inv), 0.0});
}

}  // namespace

double torus_length_upper_bound(const TorusLinearMap& map) {
  require_isospectral_pair(map);
  return d_sigma_from_delta(upper_bound_delta(map.matrix()));
}

LengthReport torus_length_lower_bound(const TorusLinearMap& map,
                                      double norm_bound, int grid) {
  require_isospectral_pair(map);
  const FlatTorus& source = map.source();
  const FlatTorus& target = map.target();
  const int d = source.dim();

  // log of the common zeta ratio zeta_{T1}/zeta_{T2} on the s-grid; zero in
  // exact arithmetic for isospectral tori, kept so the reported sup is the
  // honest one.
  const int zeta_grid = std::max(2, std::min(grid, 5));
  std::vector<double> log_zeta_ratio;
  std::vector<double> grid_s;
  for (int i = 0; i < zeta_grid; ++i) {
    const double s = d + static_cast<double>(i) / (zeta_grid - 1);
    grid_s.push_back(s);
    log_zeta_ratio.push_back(
        std::log(torus_full_zeta(source.lattice(), s) /
                 torus_full_zeta(target.lattice(), s)));
  }

  const Lattice target_dual = target.dual_lattice();
  double best_delta = 0.0;
  double best_s = grid_s.front();
  std::string best_witness = "one-variable ratio (constant test function)";
  // One-variable term: the ratio is |det A|^{-1} * zeta ratio = zeta ratio.
  for (std::size_t i = 0; i < grid_s.size(); ++i) {
    if (std::abs(log_zeta_ratio[i]) > best_delta) {
      best_delta = std::abs(log_zeta_ratio[i]);
      best_s = grid_s[i];
    }
  }

  for (const auto& point : lattice_points_within(target_dual, norm_bound)) {
    int lead = 0;
    for (int i = 0; i < point.size(); ++i) {
      if (point[i] != 0) {
        lead = point[i];
        break;
      }
    }
    if (lead < 0) continue;  // one representative per +- pair
    TrigPoly::Key key(point.data(), point.data() + point.size());
    const TrigPoly mode = TrigPoly::cosine(target_dual, key);
    const TrigPoly pulled = pullback_linear(mode, map.matrix(), source);
    const double num = gradient_pairing(pulled, pulled, source) / source.volume();
    const double den = gradient_pairing(mode, mode, target) / target.volume();
    if (!(num > 0.0) || !(den > 0.0)) {
      throw PositivityError("torus_length_lower_bound: degenerate mode pairing");
    }
    const double log_ratio = std::log(num / den);
    for (std::size_t i = 0; i < grid_s.size(); ++i) {
      const double delta = std::abs(log_ratio + log_zeta_ratio[i]);
      if (delta > best_delta) {
        best_delta = delta;
        best_s = grid_s[i];
        std::ostringstream witness;
        witness << "dual mode k = (";
        for (int j = 0; j < point.size(); ++j) {
          witness << point[j] << (j + 1 < point.size() ? "," : "");
        }
        witness << "), gradient ratio " << num / den;
        best_witness = witness.str();
      }
    }
  }

  LengthReport report;
  report.length_lower = d_sigma_from_delta(best_delta);
  report.length_upper = d_sigma_from_delta(upper_bound_delta(map.matrix()));
  report.witness = best_witness;
  report.witness_s = best_s;
  std::ostringstream spec;
  spec << "single cosine modes on target dual vectors with |w|^2 <= "
       << norm_bound;
  report.family_spec = spec.str();
  return report;
}

namespace {

// Exact integer determinant for the small dimensions the enumeration uses.
long long det_int(const Eigen::MatrixXi& m) {
  switch (m.rows()) {
    case 1:
      return m(0, 0);
    case 2:
      return static_cast<long long>(m(0, 0)) * m(1, 1) -
             static_cast<long long>(m(0, 1)) * m(1, 0);
    case 3: {
      auto e = [&](int i, int j) { return static_cast<long long>(m(i, j)); };
      return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
             e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
             e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    }
    case 4: {
      auto e = [&](int i, int j) { return static_cast<long long>(m(i, j)); };
      const long long m01 = e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0);
      const long long m02 = e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0);
      const long long m03 = e(2, 0) * e(3, 3) - e(2, 3) * e(3, 0);
      const long long m12 = e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1);
      const long long m13 = e(2, 1) * e(3, 3) - e(2, 3) * e(3, 1);
      const long long m23 = e(2, 2) * e(3, 3) - e(2, 3) * e(3, 2);
      return (e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0)) * m23 -
             (e(0, 0) * e(1, 2) - e(0, 2) * e(1, 0)) * m13 +
             (e(0, 0) * e(1, 3) - e(0, 3) * e(1, 0)) * m12 +
             (e(0, 1) * e(1, 2) - e(0, 2) * e(1, 1)) * m03 -
             (e(0, 1) * e(1, 3) - e(0, 3) * e(1, 1)) * m02 +
             (e(0, 2) * e(1, 3) - e(0, 3) * e(1, 2)) * m01;
    }
    default:
      throw Error("integer matrix enumeration supports dimensions <= 4");
  }
}

bool lexicographically_less(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    }
  }
  return false;
}

DirectionalDistanceBound direction_bound(const FlatTorus& from,
                                         const FlatTorus& to, int entry_bound,
                                         bool isospectral,
                                         double log_zeta_floor,
                                         const ZetaDistanceOptions& options) {
  const int d = from.dim();
  const int cells = d * d;
  const long long span = 2LL * entry_bound + 1;
  double total = std::pow(static_cast<double>(span), cells);
  if (total > static_cast<double>(options.candidate_cap)) {
    throw ResourceLimitError("zeta_distance_torus: candidate cap exceeded");
  }

  DirectionalDistanceBound bound;
  bound.lower = d_sigma_from_delta(log_zeta_floor);

  const Eigen::MatrixXd g_from_inv = from.lattice().generator().inverse();
  const Eigen::MatrixXd& g_to = to.lattice().generator();
  Eigen::MatrixXi m = Eigen::MatrixXi::Constant(d, d, -entry_bound);
  double best_delta = std::numeric_limits<double>::infinity();
  Eigen::MatrixXi best_m;

  bool done = false;
  while (!done) {
    if (std::llabs(det_int(m)) == 1) {
      const Eigen::MatrixXd a = g_to * m.cast<double>() * g_from_inv;
      // Frobenius prescreen: ||A||_2 >= ||A||_F / sqrt(d).
      const double frob_floor = a.norm() / std::sqrt(static_cast<double>(d));
      const double delta_floor = 2.0 * std::max(std::log(frob_floor), 0.0);
      if (delta_floor < best_delta) {
        const double delta = upper_bound_delta(a);
        if (delta < best_delta ||
            (delta == best_delta && lexicographically_less(m, best_m))) {
          best_delta = delta;
          best_m = m;
        }
      }
    }
    // odometer increment
    done = true;
    for (int i = 0; i < cells; ++i) {
      int& cell = m(i / d, i % d);
      if (cell < entry_bound) {
        ++cell;
        done = false;
        break;
      }
      cell = -entry_bound;
    }
  }

  if (!std::isfinite(best_delta)) return bound;  // no admissible candidate
  bound.candidate_found = true;
  bound.witness = best_m;
  if (isospectral) {
    bound.upper = d_sigma_from_delta(best_delta);
    const Eigen::MatrixXd a = g_to * best_m.cast<double>() * g_from_inv;
    bound.report = torus_length_lower_bound(
        TorusLinearMap(a, from, to), options.lower_bound_norm_bound,
        options.grid);
  }
  return bound;
}

}  // namespace

ZetaDistanceReport zeta_distance_torus(const FlatTorus& t1, const FlatTorus& t2,
                                       int entry_bound,
                                       const ZetaDistanceOptions& options) {
  if (t1.dim() != t2.dim()) {
    throw DimensionMismatchError("zeta_distance_torus: dimension mismatch");
  }
  if (entry_bound < 1) throw Error("zeta_distance_torus: entry bound must be >= 1");

  const int d = t1.dim();
  const bool isospectral =
      is_isospectral(t1.lattice(), t2.lattice(),
                     std::max(default_isospectral_bound(t1),
                              default_isospectral_bound(t2)))
          .isospectral;
  double log_zeta_floor = 0.0;
  if (!isospectral) {
    for (double s : {static_cast<double>(d), d + 0.5, d + 1.0}) {
      log_zeta_floor = std::max(
          log_zeta_floor, std::abs(std::log(torus_full_zeta(t1.lattice(), s) /
                                            torus_full_zeta(t2.lattice(), s))));
    }
  }

  ZetaDistanceReport report;
  report.forward =
      direction_bound(t1, t2, entry_bound, isospectral, log_zeta_floor, options);
  report.backward =
      direction_bound(t2, t1, entry_bound, isospectral, log_zeta_floor, options);
  report.one_sided = report.forward.upper;
  if (report.forward.upper && report.backward.upper) {
    report.symmetrized = 0.5 * (*report.forward.upper + *report.backward.upper);
  }
  return report;
}

double group_hom_length(long a, long b, long multiplier) {
  if (a < 1 || b < 1) throw Error("group orders must be >= 1");
  long m = ((multiplier % b) + b) % b;
  if ((static_cast<long long>(a) * m) % b != 0) {
    throw std::invalid_argument(
        "x -> m x does not define a homomorphism Z/a -> Z/b (need a*m = 0 mod b)");
  }
  const long g = std::gcd(b, m);
  const long image_order = b / g;
  const long kernel_order = a / image_order;
  const long cokernel_order = g;
  return std::max(std::log(static_cast<double>(kernel_order)),
                  std::log(static_cast<double>(cokernel_order)));
}

}  // namespace speclen
