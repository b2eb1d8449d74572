// Command-line driver: spectral zeta families on circles and flat tori,
// isospectrality checks, map lengths, and zeta-distance estimates.
//
// Exit codes: 0 success/affirmative, 1 negative finding, 2 usage error,
// 3 numeric-domain error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "speclen/dirichlet.hpp"
#include "speclen/heat.hpp"
#include "speclen/length.hpp"
#include "speclen/maps.hpp"
#include "speclen/zeta_families.hpp"

namespace {

enum ExitCode { kOk = 0, kNegative = 1, kUsage = 2, kNumeric = 3 };

enum class Format { kHuman, kCsv, kStructured };

Format parse_format(const std::string& name) {
  if (name == "human") return Format::kHuman;
  if (name == "csv") return Format::kCsv;
  if (name == "structured") return Format::kStructured;
  throw CLI::ValidationError("--format must be human, csv, or structured");
}

// Built-in name or file path.
speclen::Lattice resolve_lattice(const std::string& spec) {
  if (spec.rfind("Zn:", 0) == 0 || spec.rfind("schiemann:", 0) == 0) {
    return speclen::Lattice::named(spec);
  }
  if (std::filesystem::exists(spec)) return speclen::Lattice::load(spec);
  throw std::invalid_argument("unknown lattice spec: " + spec);
}

speclen::TrigPoly resolve_trig_poly(const std::string& spec,
                                    const speclen::FlatTorus& torus) {
  if (spec.rfind("const:", 0) == 0) {
    return speclen::TrigPoly::constant(torus.dual_lattice(),
                                       std::stod(spec.substr(6)));
  }
  if (spec.rfind("random:", 0) == 0) {
    const auto rest = spec.substr(7);
    const auto colon = rest.find(':');
    const int degree = std::stoi(rest.substr(0, colon));
    const unsigned seed =
        colon == std::string::npos ? 1u
                                   : static_cast<unsigned>(std::stoul(rest.substr(colon + 1)));
    return speclen::random_nonneg(torus, degree, seed);
  }
  throw std::invalid_argument("a0 spec must be const:<c> or random:<degree>[:<seed>]");
}

int cmd_zeta(const std::string& lattice_spec, const std::string& a0_spec,
             double s, std::optional<double> s_max, int steps, Format format) {
  speclen::FlatTorus torus{resolve_lattice(lattice_spec)};
  const speclen::TrigPoly a0 = resolve_trig_poly(a0_spec, torus);
  std::vector<double> grid;
  if (s_max) {
    for (int i = 0; i < steps; ++i) {
      grid.push_back(s + (*s_max - s) * i / std::max(1, steps - 1));
    }
  } else {
    grid.push_back(s);
  }
  if (format == Format::kCsv) std::printf("s,zeta\n");
  for (double si : grid) {
    const double value = speclen::torus_zeta_family(torus, a0, si);
    switch (format) {
      case Format::kHuman:
        std::printf("zeta_{T,a0}(%.6g) = %.15g   (Ewald continuation, rel. err <= 1e-10)\n",
                    si, value);
        break;
      case Format::kCsv:
        std::printf("%.17g,%.17g\n", si, value);
        break;
      case Format::kStructured:
        std::printf("s=%.17g\nzeta=%.17g\n", si, value);
        break;
    }
  }
  return kOk;
}

int cmd_isospectral(const std::string& spec1, const std::string& spec2,
                    double bound, Format format) {
  const speclen::Lattice l1 = resolve_lattice(spec1);
  const speclen::Lattice l2 = resolve_lattice(spec2);
  const auto report = speclen::is_isospectral(l1, l2, bound);
  switch (format) {
    case Format::kHuman:
      if (report.isospectral) {
        std::printf("isospectral up to eigenvalue %.6g\n", bound);
      } else {
        std::printf("NOT isospectral: %s\n", report.discrepancy.c_str());
      }
      break;
    case Format::kCsv:
      std::printf("isospectral,discrepancy\n%d,%s\n", report.isospectral ? 1 : 0,
                  report.discrepancy.c_str());
      break;
    case Format::kStructured:
      std::printf("isospectral=%d\ndiscrepancy=%s\n", report.isospectral ? 1 : 0,
                  report.discrepancy.c_str());
      break;
  }
  return report.isospectral ? kOk : kNegative;
}

void print_length_report(const speclen::LengthReport& report, Format format,
                         const char* prefix) {
  switch (format) {
    case Format::kHuman:
      std::printf("%slower bound  %.9f   (witness: %s at s = %.6g)\n", prefix,
                  report.length_lower, report.witness.c_str(), report.witness_s);
      if (report.length_upper) {
        std::printf("%supper bound  %.9f\n", prefix, *report.length_upper);
      }
      std::printf("%sfamily: %s\n", prefix, report.family_spec.c_str());
      break;
    case Format::kCsv:
      std::printf("lower,upper,witness_s\n%.17g,%.17g,%.17g\n",
                  report.length_lower,
                  report.length_upper ? *report.length_upper : NAN,
                  report.witness_s);
      break;
    case Format::kStructured:
      std::printf("length_lower=%.17g\n", report.length_lower);
      if (report.length_upper) {
        std::printf("length_upper=%.17g\n", *report.length_upper);
      }
      std::printf("witness=%s\nwitness_s=%.17g\nfamily=%s\n",
                  report.witness.c_str(), report.witness_s,
                  report.family_spec.c_str());
      break;
  }
}

int cmd_length_circle(double r1, double r2, int family_size, int grid,
                      bool both_normalizations, Format format) {
  const speclen::CircleRescale map{speclen::CircleManifold(r1),
                                   speclen::CircleManifold(r2)};
  std::vector<speclen::CircleTestPair> family;
  for (int i = 0; i < family_size; ++i) {
    family.push_back({speclen::random_nonneg_fourier(2, 100u + i),
                      speclen::random_nonconstant_fourier(2, 200u + i)});
  }
  const auto report = speclen::circle_length_computed(
      map, family, grid, speclen::CircleNormalization::kPaper);
  if (format == Format::kHuman) {
    std::printf("circle rescaling r1 = %.6g -> r2 = %.6g\n", r1, r2);
    std::printf("closed form 1/(1 + 1/(5|log(r1/r2)|)) = %.9f\n",
                speclen::circle_length_closed_form(r1, r2));
  }
  print_length_report(report, format, "");
  if (both_normalizations) {
    const auto fp = speclen::circle_length_computed(
        map, family, grid, speclen::CircleNormalization::kFirstPrinciples);
    if (format == Format::kHuman) {
      std::printf("first-principles normalization (exponent 4):\n");
    }
    print_length_report(fp, format, "  ");
  }
  return kOk;
}

int cmd_length_torus(const std::string& map_spec, const std::string& spec1,
                     const std::string& spec2, double norm_bound, int grid,
                     Format format) {
  std::optional<speclen::TorusLinearMap> map;
  if (map_spec == "paper-A") {
    // G- G+^{-1} maps the '+' torus onto the '-' torus.
    map.emplace(speclen::paper_A_matrix(),
                speclen::FlatTorus(speclen::Lattice::schiemann('+')),
                speclen::FlatTorus(speclen::Lattice::schiemann('-')));
  } else {
    speclen::FlatTorus source{resolve_lattice(spec1)};
    speclen::FlatTorus target{resolve_lattice(spec2)};
    speclen::Lattice matrix_as_lattice = speclen::Lattice::load(map_spec);
    map.emplace(matrix_as_lattice.generator(), source, target);
  }
  const auto report = speclen::torus_length_lower_bound(*map, norm_bound, grid);
  if (format == Format::kHuman) {
    std::printf("linear torus map, |A|_2 = %.9f\n",
                speclen::spectral_norm(map->matrix()));
  }
  print_length_report(report, format, "");
  return kOk;
}

int cmd_fig1(double r_min, double r_max, int steps, bool both) {
  std::printf(both ? "r,length,length_first_principles\n" : "r,length\n");
  for (int i = 0; i < steps; ++i) {
    const double r = r_min + (r_max - r_min) * i / std::max(1, steps - 1);
    const double value = speclen::circle_length_closed_form(r, 1.0);
    if (both) {
      std::printf("%.17g,%.17g,%.17g\n", r, value,
                  speclen::circle_length_closed_form_first_principles(r, 1.0));
    } else {
      std::printf("%.17g,%.17g\n", r, value);
    }
  }
  return kOk;
}

int cmd_distance(const std::string& spec1, const std::string& spec2,
                 int entry_bound, Format format) {
  speclen::FlatTorus t1{resolve_lattice(spec1)};
  speclen::FlatTorus t2{resolve_lattice(spec2)};
  const auto report = speclen::zeta_distance_torus(t1, t2, entry_bound);

  const auto print_direction = [&](const char* name,
                                   const speclen::DirectionalDistanceBound& dir) {
    if (format == Format::kStructured) {
      std::printf("%s_candidate_found=%d\n", name, dir.candidate_found ? 1 : 0);
      if (dir.upper) std::printf("%s_upper=%.17g\n", name, *dir.upper);
      std::printf("%s_lower=%.17g\n", name, dir.lower);
      return;
    }
    std::printf("%s: ", name);
    if (!dir.candidate_found) {
      std::printf("no admissible candidate within the entry bound\n");
      return;
    }
    if (dir.upper) {
      std::printf("upper bound %.9f, witness M =", *dir.upper);
      for (int i = 0; i < dir.witness.rows(); ++i) {
        std::printf(" [");
        for (int j = 0; j < dir.witness.cols(); ++j) {
          std::printf("%d%s", dir.witness(i, j),
                      j + 1 < dir.witness.cols() ? " " : "");
        }
        std::printf("]");
      }
      std::printf("\n");
      if (dir.report) print_length_report(*dir.report, Format::kHuman, "    ");
    } else {
      std::printf("non-isospectral pair, distance floor %.9f\n", dir.lower);
    }
  };

  print_direction("forward", report.forward);
  print_direction("backward", report.backward);
  if (format == Format::kStructured) {
    if (report.one_sided) std::printf("one_sided=%.17g\n", *report.one_sided);
    if (report.symmetrized) {
      std::printf("symmetrized=%.17g\n", *report.symmetrized);
    }
  } else {
    if (report.one_sided) {
      std::printf("one-sided distance bound: %.9f\n", *report.one_sided);
    } else if (report.forward.candidate_found) {
      std::printf("one-sided distance: no certified upper bound, floor %.9f\n",
                  report.forward.lower);
    } else {
      std::printf("one-sided distance: unreachable within the entry bound\n");
    }
    if (report.symmetrized) {
      std::printf("symmetrized distance bound: %.9f\n", *report.symmetrized);
    }
  }
  return kOk;
}

int oracle_lemma2to1() {
  // Gap between tr(a [D,a] D^{-s}) and tr(g(da,da) D^{-s}) on
  // finite-difference circles shrinks at second order in the node count.
  const double s = 2.0;
  std::vector<int> sizes = {64, 128, 256};
  std::vector<double> gaps;
  for (int n : sizes) {
    const auto manifold = speclen::DiscreteManifold::fd_circle(n, 1.0);
    Eigen::VectorXd a(n), g(n);
    for (int j = 0; j < n; ++j) {
      const double theta = 2.0 * M_PI * j / n;
      a[j] = std::cos(theta);
      g[j] = std::sin(theta) * std::sin(theta);
    }
    const double two_var = speclen::discrete_zeta2(manifold, a, a, s);
    const double one_var = speclen::discrete_zeta(manifold, g, s);
    gaps.push_back(std::abs(two_var - one_var));
    std::printf("n = %3d  gap = %.3e\n", n, gaps.back());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log(sizes[i]);
    const double y = std::log(gaps[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double n_pts = static_cast<double>(sizes.size());
  const double slope = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
  const bool pass = std::abs(slope + 2.0) <= 0.3;
  std::printf("log-log slope = %.4f (expected -2 +- 0.3): %s\n", slope,
              pass ? "PASS" : "FAIL");
  return pass ? kOk : kNegative;
}

int oracle_residue() {
  bool all_pass = true;
  const std::vector<std::string> names = {"Zn:1", "Zn:2", "Zn:3",
                                          "schiemann:+", "schiemann:-"};
  for (const auto& name : names) {
    const speclen::Lattice lattice = speclen::Lattice::named(name);
    const double numeric = speclen::residue_numeric(lattice);
    const double closed =
        speclen::residue_closed_form(lattice, lattice.volume());
    const double gap = std::abs(numeric - closed) / std::abs(closed);
    const bool pass = gap <= 1e-8;
    all_pass = all_pass && pass;
    std::printf("%-12s residue %.12g vs %.12g   rel gap %.2e  %s\n",
                name.c_str(), numeric, closed, gap, pass ? "PASS" : "FAIL");
  }
  return all_pass ? kOk : kNegative;
}

int oracle_mellin() {
  bool all_pass = true;
  for (const auto& [name, dim] :
       std::vector<std::pair<std::string, int>>{{"Zn:1", 1}, {"Zn:2", 2}}) {
    const speclen::FlatTorus torus{speclen::Lattice::named(name)};
    for (double s : {static_cast<double>(dim), dim + 1.0}) {
      const auto check = speclen::mellin_check(torus, s);
      const bool pass = check.relative_gap <= 1e-4;
      all_pass = all_pass && pass;
      std::printf("%-6s s = %.1f  Gamma(s) zeta = %.12g  integral = %.12g  gap %.2e  %s\n",
                  name.c_str(), s, check.lhs, check.rhs, check.relative_gap,
                  pass ? "PASS" : "FAIL");
    }
  }
  return all_pass ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral Dirichlet series, map lengths, and zeta-distances"};
  app.require_subcommand(1);
  std::string format_name = "human";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"human", "csv", "structured"}))
      ->capture_default_str();

  // zeta
  auto* zeta = app.add_subcommand("zeta", "Evaluate zeta_{T,a0}(s) on a flat torus");
  std::string zeta_lattice = "Zn:2";
  std::string zeta_a0 = "const:1";
  double zeta_s = 3.0;
  std::optional<double> zeta_s_max;
  int zeta_steps = 10;
  zeta->add_option("--lattice", zeta_lattice, "Lattice name or file")->capture_default_str();
  zeta->add_option("--a0", zeta_a0, "Test function: const:<c> or random:<degree>[:<seed>]")
      ->capture_default_str();
  zeta->add_option("--s", zeta_s, "Evaluation point (or range start)")->capture_default_str();
  zeta->add_option("--s-max", zeta_s_max, "Range end (enables a grid)");
  zeta->add_option("--steps", zeta_steps, "Grid size when --s-max is set")->capture_default_str();

  // isospectral
  auto* iso = app.add_subcommand("isospectral", "Compare torus spectra up to a bound");
  std::string iso_l1, iso_l2;
  double iso_bound = 4.0 * M_PI * M_PI * 30.0;
  iso->add_option("--lattice1", iso_l1, "First lattice")->required();
  iso->add_option("--lattice2", iso_l2, "Second lattice")->required();
  iso->add_option("--bound", iso_bound, "Eigenvalue bound")->capture_default_str();

  // length
  auto* length = app.add_subcommand("length", "Length of a map");
  auto* length_circle = length->add_subcommand("circle", "Circle rescaling");
  double lc_r1 = 2.0, lc_r2 = 1.0;
  int lc_family = 3, lc_grid = 33;
  bool lc_both = false;
  length_circle->add_option("--r1", lc_r1, "Source radius")->capture_default_str();
  length_circle->add_option("--r2", lc_r2, "Target radius")->capture_default_str();
  length_circle->add_option("--family-size", lc_family, "Random test pairs")->capture_default_str();
  length_circle->add_option("--grid", lc_grid, "s-grid size")->capture_default_str();
  length_circle->add_flag("--both-normalizations", lc_both,
                          "Also report the first-principles normalization");
  auto* length_torus = length->add_subcommand("torus", "Linear torus map");
  std::string lt_map = "paper-A";
  std::string lt_l1 = "schiemann:+", lt_l2 = "schiemann:-";
  double lt_norm_bound = 30.0;
  int lt_grid = 9;
  length_torus->add_option("--map", lt_map, "paper-A or a matrix file")->capture_default_str();
  length_torus->add_option("--lattice1", lt_l1, "Source lattice (with a matrix file)")
      ->capture_default_str();
  length_torus->add_option("--lattice2", lt_l2, "Target lattice (with a matrix file)")
      ->capture_default_str();
  length_torus->add_option("--norm-bound", lt_norm_bound, "Dual mode search radius")
      ->capture_default_str();
  length_torus->add_option("--grid", lt_grid, "s-grid size")->capture_default_str();

  // fig1
  auto* fig1 = app.add_subcommand("fig1", "CSV of rescaling lengths over a radius range");
  double f_rmin = 0.01, f_rmax = 2.0;
  int f_steps = 400;
  bool f_both = false;
  fig1->add_option("--r-min", f_rmin, "Range start")->capture_default_str();
  fig1->add_option("--r-max", f_rmax, "Range end")->capture_default_str();
  fig1->add_option("--steps", f_steps, "Rows")->capture_default_str();
  fig1->add_flag("--both-normalizations", f_both, "Emit both normalization columns");

  // distance
  auto* distance = app.add_subcommand("distance", "Zeta-distance bound between tori");
  std::string d_l1, d_l2;
  int d_entry = 1;
  distance->add_option("--lattice1", d_l1, "First lattice")->required();
  distance->add_option("--lattice2", d_l2, "Second lattice")->required();
  distance->add_option("--entry-bound", d_entry, "Integer matrix entry bound")
      ->capture_default_str();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Run a named consistency suite");
  std::string oracle_suite;
  oracle->add_option("suite", oracle_suite, "lemma2to1 | residue | mellin")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const Format format = parse_format(format_name);
    if (zeta->parsed()) {
      return cmd_zeta(zeta_lattice, zeta_a0, zeta_s, zeta_s_max, zeta_steps, format);
    }
    if (iso->parsed()) return cmd_isospectral(iso_l1, iso_l2, iso_bound, format);
    if (length->parsed()) {
      if (length_circle->parsed()) {
        return cmd_length_circle(lc_r1, lc_r2, lc_family, lc_grid, lc_both, format);
      }
      if (length_torus->parsed()) {
        return cmd_length_torus(lt_map, lt_l1, lt_l2, lt_norm_bound, lt_grid, format);
      }
      std::cerr << "length requires a circle or torus subcommand\n";
      return kUsage;
    }
    if (fig1->parsed()) return cmd_fig1(f_rmin, f_rmax, f_steps, f_both);
    if (distance->parsed()) return cmd_distance(d_l1, d_l2, d_entry, format);
    if (oracle->parsed()) {
      if (oracle_suite == "lemma2to1") return oracle_lemma2to1();
      if (oracle_suite == "residue") return oracle_residue();
      if (oracle_suite == "mellin") return oracle_mellin();
      std::cerr << "unknown oracle suite: " << oracle_suite << "\n";
      return kUsage;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const speclen::DimensionMismatchError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const speclen::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}
