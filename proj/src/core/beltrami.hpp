#pragma once

#include "core/rigidity.hpp"

namespace tg {

/// Central (gnomonic) projection of the open upper hemisphere onto the
/// tangent hyperplane at the north pole e_{n+2}.
Vec beltrami_project(const SpherePoint& p);

/// Inverse of the central projection.
SpherePoint beltrami_inverse(const Vec& x);

/// The conjugated homothety: scale by t in gnomonic coordinates. Fixes the
/// north pole and shrinks the hemisphere toward it for t < 1.
SpherePoint shrink_map(const SpherePoint& p, double t);

/// Closed-form derivative of the shrink map on tangent vectors.
TangentVector shrink_map_derivative(const SpherePoint& p,
                                    const TangentVector& v, double t);

/// Unit normal of the image surface at shrink_map(p), in closed form from
/// the normal at p.
TangentVector transported_normal(const SpherePoint& p,
                                 const TangentVector& eta, double t);

/// Exact factor relating the normalized second fundamental forms of the
/// surface and its shrunk image along a unit tangent direction v.
double curvature_transfer_factor(const SpherePoint& p,
                                 const TangentVector& eta,
                                 const TangentVector& v, double t);

/// Squared speed of the image of a unit tangent vector under the shrink
/// map, in closed form.
double image_speed_sq(const SpherePoint& p, const TangentVector& v, double t);

struct HemisphereConstants {
  double h = 0.0;    // lower bound for <x, pole>^2 on the surface
  double eps = 0.0;  // <eta, pole>^2 < 1 - eps^2 on the surface
};

/// Scans the grid for the hemisphere bounds (with a 1e-9 safety margin);
/// rejects surfaces that touch or leave the open hemisphere.
HemisphereConstants hemisphere_constants(const ParametricImmersion& imm,
                                         const QuadratureGrid& grid);

/// K = h^{3/2} / (6 sqrt(2)); the transfer factor satisfies F_t >= K/t for
/// t < 1/sqrt(2).
double k_bound(double h);

/// The composed immersion shrink_map(t) after f, with chain-rule analytic
/// first derivatives.
ParametricImmersion shrink_immersion(const ParametricImmersion& imm, double t);

struct XiaReport {
  bool certified = false;
  std::string failed_stage;  // empty when certified
  double margin = 0.0;
  double delta = 0.0;
  double gk_min_abs = 0.0;
  Vec cap_center;
  double cap_radius = 0.0;
  double hemisphere_min_dot = 0.0;
  HemisphereConstants constants;
  double k_constant = 0.0;
  bool flipped_orientation = false;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double t_star = 0.0;
  double mu_min_at_t_star = 0.0;
  double mu_bound_min_slack = 0.0;  // min over nodes of mu_j - (K/t*) lambda_j
  CertificateReport certificate;
};

/// Full pipeline: nonvanishing Gauss-Kronecker curvature, hemisphere
/// containment (after aligning the enclosing cap with the north pole),
/// uniform curvature sign, search for the largest shrink parameter whose
/// image has all principal curvatures above 1 + margin, the lower-bound
/// inequality against (K/t) lambda, and the final hemisphere certificate
/// with cap radius pi/2.
XiaReport xia_certify(const ParametricImmersion& imm,
                      const QuadratureGrid& grid, double margin = 1e-3,
                      double delta = 1e-6);

}  // namespace tg
