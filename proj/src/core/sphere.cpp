#include "core/sphere.hpp"

#include <cmath>

namespace tg {

namespace {
constexpr double kUnitTol = 1e-12;
constexpr double kTangentTol = 1e-10;
constexpr double kAntipodalTol = 1e-10;
}  // namespace

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::domain_error: return "DomainError";
    case Errc::antipodal_points: return "AntipodalPoints";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::immersion_degenerate: return "ImmersionDegenerate";
    case Errc::eigen_solve_failure: return "EigenSolveFailure";
    case Errc::degenerate_configuration: return "DegenerateConfiguration";
    case Errc::not_in_hemisphere: return "NotInHemisphere";
    case Errc::outside_hemisphere: return "OutsideHemisphere";
    case Errc::odd_dimension: return "OddDimension";
    case Errc::unknown_topology: return "UnknownTopology";
    case Errc::not_regular_value: return "NotRegularValue";
    case Errc::convergence_failure: return "ConvergenceFailure";
    case Errc::gk_vanishes: return "GKVanishes";
    case Errc::mixed_curvature_signs: return "MixedCurvatureSigns";
    case Errc::no_admissible_t: return "NoAdmissibleT";
    case Errc::frame_not_orthonormal: return "FrameNotOrthonormal";
  }
  return "Unknown";
}

SpherePoint::SpherePoint(Vec coords) : v_(std::move(coords)) {
  if (v_.size() < 2 || !v_.allFinite()) {
    fail(Errc::domain_error, "sphere point needs >= 2 finite coordinates");
  }
  if (std::abs(v_.norm() - 1.0) > kUnitTol) {
    fail(Errc::domain_error, "sphere point is not unit length");
  }
}

SpherePoint SpherePoint::normalized(const Vec& coords) {
  const double n = coords.norm();
  if (!(n > 0.0) || !coords.allFinite()) {
    fail(Errc::domain_error, "cannot normalize zero or non-finite vector");
  }
  return SpherePoint(coords / n);
}

TangentVector::TangentVector(SpherePoint base, Vec vec)
    : base_(std::move(base)), vec_(std::move(vec)) {
  if (vec_.size() != base_.coords().size() || !vec_.allFinite()) {
    fail(Errc::domain_error, "tangent vector has wrong size or is not finite");
  }
  if (std::abs(vec_.dot(base_.coords())) > kTangentTol) {
    fail(Errc::domain_error, "vector is not tangent to the sphere at base");
  }
}

TangentVector TangentVector::projected(const SpherePoint& base,
                                       const Vec& ambient) {
  Vec w = ambient - ambient.dot(base.coords()) * base.coords();
  return TangentVector(base, std::move(w));
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  double c = p.dot(q);
  c = std::max(-1.0, std::min(1.0, c));
  return std::acos(c);
}

SpherePoint exp_map(const TangentVector& v) {
  const double len = v.norm();
  if (len < 1e-14) return v.base();
  Vec out = std::cos(len) * v.base().coords() + (std::sin(len) / len) * v.vec();
  return SpherePoint::normalized(out);
}

TangentVector tangent_project(const SpherePoint& p, const Vec& w) {
  return TangentVector::projected(p, w);
}

TangentVector parallel_transport(const SpherePoint& p, const SpherePoint& q,
                                 const TangentVector& v) {
  const double cospq = p.dot(q);
  if (1.0 + cospq <= kAntipodalTol) {
    fail(Errc::antipodal_points, "parallel transport undefined at antipodes");
  }
  if ((p.coords() - q.coords()).norm() < 1e-15) {
    return TangentVector(q, v.vec());
  }
  const double coeff = v.vec().dot(q.coords()) / (1.0 + cospq);
  Vec out = v.vec() - coeff * (q.coords() + p.coords());
  return TangentVector::projected(q, out);
}

TangentVector parallel_transport_ode(const SpherePoint& p,
                                     const SpherePoint& q,
                                     const TangentVector& v, int steps) {
  const double cospq = p.dot(q);
  if (1.0 + cospq <= kAntipodalTol) {
    fail(Errc::antipodal_points, "parallel transport undefined at antipodes");
  }
  if (steps < 2) fail(Errc::domain_error, "ODE transport needs steps >= 2");

  const double dist = geodesic_distance(p, q);
  if (dist < 1e-14) return TangentVector(q, v.vec());

  // Unit-speed geodesic beta(t) = cos(t) p + sin(t) qbar.
  Vec qbar = q.coords() - cospq * p.coords();
  qbar /= qbar.norm();
  const Vec& p0 = p.coords();

  auto rhs = [&](double t, const Vec& x) -> Vec {
    Vec beta = std::cos(t) * p0 + std::sin(t) * qbar;
    Vec beta_dot = -std::sin(t) * p0 + std::cos(t) * qbar;
    return -x.dot(beta_dot) * beta;
  };

  Vec x = v.vec();
  const double h = dist / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    Vec k1 = rhs(t, x);
    Vec k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    Vec k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    Vec k4 = rhs(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return TangentVector::projected(q, x);
}

double sphere_volume(int n) {
  if (n < 1) fail(Errc::domain_error, "sphere volume needs n >= 1");
  const double half = 0.5 * (n + 1);
  return 2.0 * std::pow(M_PI, half) / std::tgamma(half);
}

Mat complement_basis(const Vec& unit) {
  const int d = static_cast<int>(unit.size());
  Mat basis(d, d - 1);
  Vec u = unit;
  u(0) -= 1.0;
  const double uu = u.squaredNorm();
  if (uu < 1e-16) {
    basis.setZero();
    for (int j = 0; j < d - 1; ++j) basis(j + 1, j) = 1.0;
    return basis;
  }
  // Columns 2..d of the Householder reflection mapping e_1 to `unit`.
  for (int j = 0; j < d - 1; ++j) {
    Vec e = Vec::Zero(d);
    e(j + 1) = 1.0;
    basis.col(j) = e - (2.0 * u(j + 1) / uu) * u;
  }
  return basis;
}

Mat rotation_aligning(const Vec& from, const Vec& to) {
  const int d = static_cast<int>(from.size());
  const double c = from.dot(to);
  if (c > 1.0 - 1e-15) return Mat::Identity(d, d);
  if (c < -1.0 + 1e-15) {
    // Half-turn in a plane containing `from`.
    Mat basis = complement_basis(from);
    Vec w = basis.col(0);
    return Mat::Identity(d, d) - 2.0 * from * from.transpose() -
           2.0 * w * w.transpose();
  }
  Vec perp = to - c * from;
  const double s = perp.norm();
  perp /= s;
  Mat r = Mat::Identity(d, d);
  r += s * (perp * from.transpose() - from * perp.transpose());
  r += (c - 1.0) * (from * from.transpose() + perp * perp.transpose());
  return r;
}

}  // namespace tg
