#pragma once

#include "core/types.hpp"

namespace tg {

/// A point of the unit sphere S^{n+1}, stored as its embedding in R^{n+2}.
/// Construction enforces |norm - 1| <= 1e-12.
class SpherePoint {
 public:
  explicit SpherePoint(Vec coords);

  /// Normalizes an arbitrary nonzero ambient vector onto the sphere.
  static SpherePoint normalized(const Vec& coords);

  const Vec& coords() const { return v_; }
  int ambient_dim() const { return static_cast<int>(v_.size()); }
  double dot(const SpherePoint& other) const { return v_.dot(other.v_); }

 private:
  Vec v_;
};

/// An ambient vector attached to a sphere point and orthogonal to it
/// (|<vec, base>| <= 1e-10 at construction).
class TangentVector {
 public:
  TangentVector(SpherePoint base, Vec vec);

  /// Projects an arbitrary ambient vector onto the tangent space at `base`.
  static TangentVector projected(const SpherePoint& base, const Vec& ambient);

  const SpherePoint& base() const { return base_; }
  const Vec& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }

 private:
  SpherePoint base_;
  Vec vec_;
};

/// arccos of <p,q>, clamped to [-1,1] so roundoff never yields NaN.
double geodesic_distance(const SpherePoint& p, const SpherePoint& q);

/// cos|v| * p + sin|v| * v/|v|; returns the base point for |v| < 1e-14.
SpherePoint exp_map(const TangentVector& v);

/// w - <w,p> p, attached at p.
TangentVector tangent_project(const SpherePoint& p, const Vec& w);

/// Parallel transport along the minimizing geodesic from p to q, in closed
/// form. Rejects antipodal pairs (1 + <p,q> <= 1e-10); transport from a
/// point to itself is the identity.
TangentVector parallel_transport(const SpherePoint& p, const SpherePoint& q,
                                 const TangentVector& v);

/// Fixed-step RK4 integration of the parallel-field equation along the
/// geodesic from p to q; serves as an independent oracle for the closed form.
TangentVector parallel_transport_ode(const SpherePoint& p,
                                     const SpherePoint& q,
                                     const TangentVector& v, int steps);

/// Volume of the unit n-sphere: 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_volume(int n);

/// Orthonormal basis of the hyperplane orthogonal to `unit`, as the columns
/// of a d x (d-1) matrix. Householder-based, deterministic.
Mat complement_basis(const Vec& unit);

/// Rotation of R^d mapping unit vector `from` to unit vector `to`, acting as
/// the identity on the orthogonal complement of their span.
Mat rotation_aligning(const Vec& from, const Vec& to);

}  // namespace tg
