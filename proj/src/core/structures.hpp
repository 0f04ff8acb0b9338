#pragma once

#include "core/sphere.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace tg {

/// A translational structure on (a domain of) the sphere: a family of linear
/// isometries identifying each tangent space with a fixed model space
/// V = R^{n+1}. apply/unapply are mutually inverse fibrewise.
class TranslationStructure {
 public:
  virtual ~TranslationStructure() = default;

  int ambient_dim() const { return ambient_dim_; }
  int model_dim() const { return ambient_dim_ - 1; }

  virtual bool in_domain(const SpherePoint& p) const = 0;

  /// Coordinates in V of the tangent vector v at p. Norm-preserving.
  virtual Vec apply(const SpherePoint& p, const TangentVector& v) const = 0;

  /// Inverse of apply at the fibre over p.
  virtual TangentVector unapply(const SpherePoint& p, const Vec& w) const = 0;

  /// Value at q of the invariant vector field generated by X.
  TangentVector invariant_field(const TangentVector& x,
                                const SpherePoint& q) const;

  /// The point whose tangent space is identified with V (group identity for
  /// the quaternion structure).
  virtual const SpherePoint& reference_point() const = 0;

 protected:
  explicit TranslationStructure(int ambient_dim);

  void check_domain(const SpherePoint& p) const;

 private:
  int ambient_dim_;
};

/// Identifies T_p with T_{p0} by parallel transport along minimizing
/// geodesics; defined away from the antipode of the base point.
class ParallelTransportStructure final : public TranslationStructure {
 public:
  explicit ParallelTransportStructure(SpherePoint base);

  bool in_domain(const SpherePoint& p) const override;
  Vec apply(const SpherePoint& p, const TangentVector& v) const override;
  TangentVector unapply(const SpherePoint& p, const Vec& w) const override;
  const SpherePoint& reference_point() const override { return base_; }

  /// Orthonormal basis of the tangent space at the base point, columns of an
  /// (n+2) x (n+1) matrix; fixes the identification V = R^{n+1}.
  const Mat& basis() const { return basis_; }

 private:
  SpherePoint base_;
  Mat basis_;
};

/// Structure induced by a globally orthonormal tangent frame. The frame is
/// supplied as closures; orthonormality is checked at every queried point
/// against `gram_tol` rather than re-orthonormalized.
class FrameStructure final : public TranslationStructure {
 public:
  using FieldFn = std::function<Vec(const SpherePoint&)>;
  using DomainFn = std::function<bool(const SpherePoint&)>;

  FrameStructure(SpherePoint base, std::vector<FieldFn> fields,
                 double gram_tol = 1e-8, DomainFn domain = {});

  bool in_domain(const SpherePoint& p) const override;
  Vec apply(const SpherePoint& p, const TangentVector& v) const override;
  TangentVector unapply(const SpherePoint& p, const Vec& w) const override;
  const SpherePoint& reference_point() const override { return base_; }

 private:
  Mat frame_at(const SpherePoint& p) const;

  SpherePoint base_;
  std::vector<FieldFn> fields_;
  double gram_tol_;
  DomainFn domain_;
};

/// The frame obtained by parallel-transporting an orthonormal basis at
/// `base` to every point; reproduces ParallelTransportStructure.
std::vector<FrameStructure::FieldFn> transported_frame_fields(
    const SpherePoint& base);

/// Left translation on the unit quaternions: S^3 in R^4 with
/// (a,b,c,d) = a + bi + cj + dk, V = imaginary part at the identity.
class QuaternionStructure final : public TranslationStructure {
 public:
  QuaternionStructure();

  bool in_domain(const SpherePoint&) const override { return true; }
  Vec apply(const SpherePoint& p, const TangentVector& v) const override;
  TangentVector unapply(const SpherePoint& p, const Vec& w) const override;
  const SpherePoint& reference_point() const override { return identity_; }

 private:
  SpherePoint identity_;
};

}  // namespace tg
