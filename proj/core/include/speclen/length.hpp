#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "speclen/errors.hpp"
#include "speclen/maps.hpp"
#include "speclen/testfn.hpp"

namespace speclen {

// Outcome of a length computation: a certified lower bound from the sampled
// test family, paired with a closed-form upper bound when one exists.
struct LengthReport {
  double length_lower = 0.0;
  std::optional<double> length_upper;
  std::string witness;      // test function / mode achieving length_lower
  double witness_s = 0.0;   // s attaining the sup
  std::string family_spec;
};

// delta_1(f,g) = sup over sigma <= s <= sigma+1 of |log(f(s)/g(s))|, via a
// uniform grid including both endpoints followed by golden-section
// refinement around the best grid point. A lower bound for the true sup.
double delta1(const std::function<double(double)>& f,
              const std::function<double(double)>& g, double sigma, int grid);

// d_sigma = delta_1 / (1 + delta_1).
double d_sigma(const std::function<double(double)>& f,
               const std::function<double(double)>& g, double sigma, int grid);
double d_sigma_from_delta(double delta);

// l(phi_{r1,r2}) = 1/(1 + 1/(5 |log(r1/r2)|)), with the r1 = r2 limit 0.
double circle_length_closed_form(double r1, double r2);

// Same shape under the first-principles normalization: exponent 4.
double circle_length_closed_form_first_principles(double r1, double r2);

enum class CircleNormalization { kPaper, kFirstPrinciples };

struct CircleTestPair {
  FourierPoly a0;  // nonnegative, nonzero
  FourierPoly a1;  // nonconstant
};

// Length of a circle rescaling over an explicit test family; with either
// normalization the log-ratios are test-function independent, so the report
// matches the corresponding closed form.
LengthReport circle_length_computed(
    const CircleRescale& map, const std::vector<CircleTestPair>& family,
    int grid, CircleNormalization normalization = CircleNormalization::kPaper);

// Closed-form upper bound for the length of an admissible linear map between
// isospectral tori. The mode ratio int |A^T grad a1|^2 / int |grad a1|^2 lies
// in [sigma_min(A)^2, sigma_max(A)^2], so
//   delta_up = 2 max(log ||A||_2, log ||A^{-1}||_2)   and
//   upper    = delta_up / (1 + delta_up),
// zero exactly for orthogonal A.
double torus_length_upper_bound(const TorusLinearMap& map);

// Mode search over single cosine modes on dual vectors of the target with
// ||w||^2 <= norm_bound; pullback through the test-function algebra, ratio
// through the gradient pairing, sup over an s-grid on [d, d+1].
LengthReport torus_length_lower_bound(const TorusLinearMap& map,
                                      double norm_bound, int grid);

struct DirectionalDistanceBound {
  bool candidate_found = false;
  std::optional<double> upper;  // min certified upper bound over candidates
  double lower = 0.0;           // floor from the one-variable zeta ratio
  Eigen::MatrixXi witness;      // integer matrix M achieving `upper`
  std::optional<LengthReport> report;  // mode-search report for the winner
};

struct ZetaDistanceReport {
  DirectionalDistanceBound forward;   // T1 -> T2
  DirectionalDistanceBound backward;  // T2 -> T1
  std::optional<double> one_sided;    // forward.upper; nullopt = unreachable
  std::optional<double> symmetrized;  // average of both directions
};

struct ZetaDistanceOptions {
  std::size_t candidate_cap = std::size_t{1} << 27;
  double lower_bound_norm_bound = 8.0;  // mode search radius for the winner
  int grid = 9;
};

// Enumerates integer matrices M with entries in [-entry_bound, entry_bound]
// and |det M| = 1, forms A = G2 M G1^{-1} per direction, and minimizes the
// certified upper bound; the full mode search runs on the winner.
ZetaDistanceReport zeta_distance_torus(const FlatTorus& t1, const FlatTorus& t2,
                                       int entry_bound,
                                       const ZetaDistanceOptions& options = {});

// max(log |ker|, log |coker|) for Z/a -> Z/b, x -> multiplier * x.
// Requires a * multiplier = 0 mod b (otherwise the map is ill-defined).
double group_hom_length(long a, long b, long multiplier);

}  // namespace speclen
