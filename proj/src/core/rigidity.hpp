#pragma once

#include "core/curvature.hpp"
#include "core/gauss_bonnet.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tg {

enum class RadiusConvention { enclosing_cap, lemma_empty_ball };

const char* radius_convention_name(RadiusConvention c);

struct EuclideanBall {
  Vec center;
  double radius = -1.0;
};

/// Smallest enclosing Euclidean ball (Welzl, move-to-front, deterministic
/// seeded shuffle).
EuclideanBall smallest_enclosing_ball(const std::vector<Vec>& points);

struct CapResult {
  SpherePoint center;
  double radius = 0.0;
  RadiusConvention convention = RadiusConvention::enclosing_cap;
};

/// Smallest spherical cap containing the samples: the normalized center of
/// the Euclidean enclosing ball, with radius the largest geodesic distance
/// to a sample. Rejects configurations whose ball center is at the origin
/// (no cap smaller than a hemisphere is determined).
CapResult enclosing_cap(const std::vector<SpherePoint>& samples);

struct EmptyBallOptions {
  int surface_seed_nodes = 16;  // per chart axis
  int centers = 10000;
  int refine_top = 8;
  int outer_stages = 40;
  int outer_proposals = 12;
  int inner_stages = 10;
  std::uint64_t seed = 0x51ac5eedULL;
};

struct EmptyBallResult {
  SpherePoint center;
  double radius = 0.0;
};

/// Numerical maximin search for the largest geodesic ball missing the
/// surface: random candidate centers refined by shrinking-step hill
/// climbing, with the surface distance minimized over the chart.
/// Deterministic for a fixed seed.
EmptyBallResult largest_empty_ball(const ParametricImmersion& imm,
                                   const EmptyBallOptions& options = {});

/// arccos(min(r, sqrt(1 - r^2))).
double lemma_radius_clifford(double r);

/// Closed-form principal curvature pair of the r-family:
/// (-sqrt(1-r^2)/r, r/sqrt(1-r^2)).
std::pair<double, double> clifford_principal_curvatures(double r);

struct CertificateReport {
  bool certified = false;
  RadiusConvention convention = RadiusConvention::enclosing_cap;
  Vec cap_center;
  double cap_radius = 0.0;
  double threshold = 0.0;  // tan(R/2)
  double min_abs_lambda = 0.0;
  double margin_curvature = 0.0;
  double min_abs_lambda_plus_c = 0.0;
  double margin_invertibility = 0.0;
  Vec worst_curvature_u;
  Vec worst_invertibility_u;
  double delta = 0.0;
  std::string note;
};

/// Grid check of the diffeomorphism-certificate hypotheses against an
/// explicitly given cap. The verdict is sampled at grid resolution, not a
/// proof.
CertificateReport certify_with_cap(const ParametricImmersion& imm,
                                   const QuadratureGrid& grid, double delta,
                                   const SpherePoint& cap_center,
                                   double cap_radius,
                                   RadiusConvention convention);

/// Computes the cap under the requested convention, then runs the
/// hypothesis check with the cap center as base point.
CertificateReport certify_sphere(const ParametricImmersion& imm,
                                 const QuadratureGrid& grid, double delta,
                                 RadiusConvention convention);

struct CounterexampleReport {
  double epsilon = 0.0;
  double r = 0.0;
  double j_lo = 0.0;  // parameter window used to pick r
  double j_hi = 0.0;
  double pick_lo = 0.0;  // intersection with (0, 1/sqrt(2)]
  double pick_hi = 0.0;
  double empirical_lo = 0.0;  // scan of the closed-form inequality
  double empirical_hi = 0.0;
  double cap_radius = 0.0;    // empty-ball convention
  double threshold = 0.0;     // epsilon * tan(R/2)
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double min_abs_lambda_grid = 0.0;
  double margin = 0.0;
  int euler_char = 0;
  bool ok = false;
};

/// Builds the non-spherical family member for the given pinch factor and
/// verifies the curvature inequality on a grid.
CounterexampleReport counterexample_family(double epsilon, int n,
                                           int grid_nodes = 64);

}  // namespace tg
