#include "core/beltrami.hpp"

#include <cmath>

namespace tg {

namespace {

constexpr double kHemisphereTol = 1e-10;

double pole_component(const Vec& v) { return v(v.size() - 1); }

void check_hemisphere(const SpherePoint& p) {
  if (pole_component(p.coords()) <= kHemisphereTol) {
    fail(Errc::outside_hemisphere, "point outside the open upper hemisphere");
  }
}

void check_t(double t) {
  if (!(t > 0.0)) fail(Errc::domain_error, "shrink parameter must be > 0");
}

Vec scaled_lift(const SpherePoint& p, double t) {
  Vec m = p.coords();
  m(m.size() - 1) /= t;
  return m;
}

}  // namespace

Vec beltrami_project(const SpherePoint& p) {
  check_hemisphere(p);
  const Vec& v = p.coords();
  const int d = p.ambient_dim();
  return v.head(d - 1) / v(d - 1);
}

SpherePoint beltrami_inverse(const Vec& x) {
  Vec lifted(x.size() + 1);
  lifted.head(x.size()) = x;
  lifted(x.size()) = 1.0;
  return SpherePoint::normalized(lifted);
}

SpherePoint shrink_map(const SpherePoint& p, double t) {
  check_hemisphere(p);
  check_t(t);
  return SpherePoint::normalized(scaled_lift(p, t));
}

TangentVector shrink_map_derivative(const SpherePoint& p,
                                    const TangentVector& v, double t) {
  check_hemisphere(p);
  check_t(t);
  const double mn = scaled_lift(p, t).norm();
  const double vp0 = pole_component(v.vec());
  const double pp0 = pole_component(p.coords());
  Vec pole = Vec::Zero(p.ambient_dim());
  pole(p.ambient_dim() - 1) = 1.0;

  const double coeff = (t - 1.0) * vp0 / (t * t * mn * mn);
  Vec out =
      (coeff * ((t + 1.0) * pp0 * p.coords() - t * pole) + v.vec()) / mn;
  return TangentVector::projected(shrink_map(p, t), out);
}

TangentVector transported_normal(const SpherePoint& p,
                                 const TangentVector& eta, double t) {
  check_hemisphere(p);
  check_t(t);
  const double ep0 = pole_component(eta.vec());
  Vec pole = Vec::Zero(p.ambient_dim());
  pole(p.ambient_dim() - 1) = 1.0;
  Vec num = eta.vec() + (t - 1.0) * ep0 * pole;
  const double den = std::sqrt(1.0 + (t * t - 1.0) * ep0 * ep0);
  return TangentVector::projected(shrink_map(p, t), num / den);
}

double curvature_transfer_factor(const SpherePoint& p,
                                 const TangentVector& eta,
                                 const TangentVector& v, double t) {
  check_hemisphere(p);
  check_t(t);
  if (std::abs(v.norm() - 1.0) > 1e-9) {
    fail(Errc::domain_error, "transfer factor expects a unit direction");
  }
  const double pp0 = pole_component(p.coords());
  const double vp0 = pole_component(v.vec());
  const double ep0 = pole_component(eta.vec());
  const double one_mt2 = 1.0 - t * t;
  const double num = std::pow(one_mt2 * pp0 * pp0 + t * t, 1.5);
  const double den =
      t * (one_mt2 * (pp0 * pp0 + vp0 * vp0) + t * t) *
      std::sqrt(1.0 + (t * t - 1.0) * ep0 * ep0);
  return num / den;
}

double image_speed_sq(const SpherePoint& p, const TangentVector& v, double t) {
  check_hemisphere(p);
  check_t(t);
  const double mn2 = scaled_lift(p, t).squaredNorm();
  const double pp0 = pole_component(p.coords());
  const double vp0 = pole_component(v.vec());
  const double one_mt2 = 1.0 - t * t;
  return (one_mt2 * (pp0 * pp0 + vp0 * vp0) + t * t) / (t * t * mn2 * mn2);
}

HemisphereConstants hemisphere_constants(const ParametricImmersion& imm,
                                         const QuadratureGrid& grid) {
  double min_dot = 1.0;
  double max_eta_sq = 0.0;
  for (int k = 0; k < grid.node_count(); ++k) {
    const Vec u = grid.node(k);
    TangentVector eta = unit_normal(imm, u);
    const double dot = pole_component(eta.base().coords());
    const double eta_dot = pole_component(eta.vec());
    min_dot = std::min(min_dot, dot);
    max_eta_sq = std::max(max_eta_sq, eta_dot * eta_dot);
  }
  if (!(min_dot > 0.0)) {
    fail(Errc::not_in_hemisphere,
         "surface is not contained in the open upper hemisphere");
  }
  HemisphereConstants out;
  out.h = min_dot * min_dot - 1e-9;
  out.eps = std::sqrt(std::max(0.0, 1.0 - max_eta_sq)) - 1e-9;
  if (!(out.h > 0.0) || !(out.eps > 0.0)) {
    fail(Errc::not_in_hemisphere, "hemisphere bounds degenerate");
  }
  return out;
}

double k_bound(double h) {
  if (!(h > 0.0 && h < 1.0)) {
    fail(Errc::domain_error, "hemisphere bound must lie in (0, 1)");
  }
  return std::pow(h, 1.5) / (6.0 * std::sqrt(2.0));
}

ParametricImmersion shrink_immersion(const ParametricImmersion& imm,
                                     double t) {
  check_t(t);
  auto inner = std::make_shared<ParametricImmersion>(imm);
  ParametricImmersion out(
      imm.intrinsic_dim(), imm.ambient_dim(), imm.chart(),
      [inner, t](const Vec& u) -> Vec {
        return shrink_map(inner->eval(u), t).coords();
      },
      imm.topology());
  out.set_derivative([inner, t](const Vec& u, int i) -> Vec {
    SpherePoint p = inner->eval(u);
    TangentVector v = TangentVector::projected(p, inner->derivative(u, i));
    return shrink_map_derivative(p, v, t).vec();
  });
  out.set_orientation(imm.orientation());
  out.set_fd_steps(imm.fd_step_first(), imm.fd_step_second());
  return out;
}

namespace {

// Smallest |mu| over the grid for the image surface at parameter t, using
// the transported normal so the sign convention follows the base surface.
double min_abs_image_curvature(const ParametricImmersion& base,
                               const ParametricImmersion& shrunk,
                               const QuadratureGrid& grid, double t) {
  double min_abs = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.node_count(); ++k) {
    const Vec u = grid.node(k);
    TangentVector eta = unit_normal(base, u);
    TangentVector eta_t = transported_normal(eta.base(), eta, t);
    Mat h = second_fundamental_form(shrunk, u, eta_t);
    Mat g = tangent_frame(shrunk, u).metric;
    const Vec mu = principal_curvatures(h, g);
    min_abs = std::min(min_abs, mu.cwiseAbs().minCoeff());
  }
  return min_abs;
}

}  // namespace

XiaReport xia_certify(const ParametricImmersion& imm,
                      const QuadratureGrid& grid, double margin,
                      double delta) {
  if (imm.intrinsic_dim() < 2) {
    fail(Errc::domain_error, "pipeline needs intrinsic dimension >= 2");
  }
  XiaReport report;
  report.margin = margin;
  report.delta = delta;

  // Stage 1: the Gauss-Kronecker curvature must be bounded away from zero.
  double gk_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.node_count(); ++k) {
    gk_min = std::min(gk_min, std::abs(gauss_kronecker(imm, grid.node(k))));
  }
  report.gk_min_abs = gk_min;
  if (!(gk_min > margin)) {
    report.failed_stage = "gauss_kronecker";
    return report;
  }

  // Stage 2: align the enclosing cap with the north pole and verify open
  // hemisphere containment.
  std::vector<SpherePoint> samples;
  samples.reserve(grid.node_count());
  for (int k = 0; k < grid.node_count(); ++k) {
    samples.push_back(imm.eval(grid.node(k)));
  }
  Vec pole = Vec::Zero(imm.ambient_dim());
  pole(imm.ambient_dim() - 1) = 1.0;
  ParametricImmersion rotated = imm;
  try {
    CapResult cap = enclosing_cap(samples);
    report.cap_center = cap.center.coords();
    report.cap_radius = cap.radius;
    rotated = compose_rotation(imm, rotation_aligning(cap.center.coords(), pole));
  } catch (const GeomError& e) {
    if (e.code() != Errc::degenerate_configuration) throw;
    report.failed_stage = "hemisphere";
    return report;
  }
  double min_dot = 1.0;
  for (int k = 0; k < grid.node_count(); ++k) {
    min_dot = std::min(min_dot,
                       pole_component(rotated.eval_raw(grid.node(k))));
  }
  report.hemisphere_min_dot = min_dot;
  if (!(min_dot > 0.0)) {
    report.failed_stage = "hemisphere";
    return report;
  }

  // Stage 3: all principal curvatures must share one sign; normalize to
  // positive by flipping the orientation when needed.
  double lambda_min = std::numeric_limits<double>::infinity();
  double lambda_max = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.node_count(); ++k) {
    const Vec lambda = principal_curvatures(rotated, grid.node(k));
    lambda_min = std::min(lambda_min, lambda.minCoeff());
    lambda_max = std::max(lambda_max, lambda.maxCoeff());
  }
  if (lambda_max < 0.0) {
    rotated.flip_orientation();
    std::swap(lambda_min, lambda_max);
    lambda_min = -lambda_min;
    lambda_max = -lambda_max;
    report.flipped_orientation = true;
  } else if (!(lambda_min > 0.0)) {
    report.lambda_min = lambda_min;
    report.lambda_max = lambda_max;
    report.failed_stage = "curvature_sign";
    return report;
  }
  report.lambda_min = lambda_min;
  report.lambda_max = lambda_max;

  report.constants = hemisphere_constants(rotated, grid);
  report.k_constant = k_bound(report.constants.h);

  // Stage 4: largest shrink parameter whose image has all principal
  // curvatures above 1 + margin (binary search on log t).
  const double t_max = 1.0 / std::sqrt(2.0) - 1e-9;
  const double t_min = 1e-3;
  auto admissible = [&](double t) {
    ParametricImmersion shrunk = shrink_immersion(rotated, t);
    return min_abs_image_curvature(rotated, shrunk, grid, t) > 1.0 + margin;
  };
  double t_star = 0.0;
  if (admissible(t_max)) {
    t_star = t_max;
  } else if (!admissible(t_min)) {
    report.failed_stage = "shrink_search";
    return report;
  } else {
    double lo = std::log(t_min), hi = std::log(t_max);
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (admissible(std::exp(mid))) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    t_star = std::exp(lo);
  }
  report.t_star = t_star;

  ParametricImmersion shrunk = shrink_immersion(rotated, t_star);
  report.mu_min_at_t_star =
      min_abs_image_curvature(rotated, shrunk, grid, t_star);

  // Stage 5: the image curvatures dominate (K/t) lambda componentwise.
  double slack = std::numeric_limits<double>::infinity();
  const double scale = report.k_constant / t_star;
  for (int k = 0; k < grid.node_count(); ++k) {
    const Vec u = grid.node(k);
    const Vec lambda = principal_curvatures(rotated, u);
    TangentVector eta = unit_normal(rotated, u);
    TangentVector eta_t = transported_normal(eta.base(), eta, t_star);
    Mat h = second_fundamental_form(shrunk, u, eta_t);
    Mat g = tangent_frame(shrunk, u).metric;
    const Vec mu = principal_curvatures(h, g);
    for (int j = 0; j < mu.size(); ++j) {
      slack = std::min(slack, mu(j) - scale * lambda(j));
    }
  }
  report.mu_bound_min_slack = slack;
  if (!(slack > -1e-6)) {
    report.failed_stage = "shrink_bound";
    return report;
  }

  // Stage 6: hemisphere certificate with cap radius pi/2.
  report.certificate =
      certify_with_cap(shrunk, grid, delta, SpherePoint(pole), 0.5 * M_PI,
                       RadiusConvention::enclosing_cap);
  if (!report.certificate.certified) {
    report.failed_stage = "certificate";
    return report;
  }
  report.certified = true;
  return report;
}

}  // namespace tg
