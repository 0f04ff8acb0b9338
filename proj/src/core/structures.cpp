#include "core/structures.hpp"

#include <cmath>

namespace tg {

namespace {

Eigen::Vector4d qmul(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  Eigen::Vector4d out;
  out(0) = a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
  out(1) = a(0) * b(1) + a(1) * b(0) + a(2) * b(3) - a(3) * b(2);
  out(2) = a(0) * b(2) - a(1) * b(3) + a(2) * b(0) + a(3) * b(1);
  out(3) = a(0) * b(3) + a(1) * b(2) - a(2) * b(1) + a(3) * b(0);
  return out;
}

Eigen::Vector4d qconj(const Eigen::Vector4d& a) {
  return Eigen::Vector4d(a(0), -a(1), -a(2), -a(3));
}

}  // namespace

TranslationStructure::TranslationStructure(int ambient_dim)
    : ambient_dim_(ambient_dim) {
  if (ambient_dim < 3) {
    fail(Errc::domain_error, "translation structure needs ambient dim >= 3");
  }
}

void TranslationStructure::check_domain(const SpherePoint& p) const {
  if (p.ambient_dim() != ambient_dim_) {
    fail(Errc::domain_error, "point has wrong ambient dimension");
  }
  if (!in_domain(p)) {
    fail(Errc::out_of_domain, "point outside the structure's domain");
  }
}

TangentVector TranslationStructure::invariant_field(
    const TangentVector& x, const SpherePoint& q) const {
  return unapply(q, apply(x.base(), x));
}

ParallelTransportStructure::ParallelTransportStructure(SpherePoint base)
    : TranslationStructure(base.ambient_dim()),
      base_(std::move(base)),
      basis_(complement_basis(base_.coords())) {}

bool ParallelTransportStructure::in_domain(const SpherePoint& p) const {
  return 1.0 + p.dot(base_) > 1e-10;
}

Vec ParallelTransportStructure::apply(const SpherePoint& p,
                                      const TangentVector& v) const {
  check_domain(p);
  TangentVector at_base = parallel_transport(p, base_, v);
  return basis_.transpose() * at_base.vec();
}

TangentVector ParallelTransportStructure::unapply(const SpherePoint& p,
                                                  const Vec& w) const {
  check_domain(p);
  if (w.size() != model_dim()) {
    fail(Errc::domain_error, "model vector has wrong dimension");
  }
  TangentVector at_base = TangentVector::projected(base_, basis_ * w);
  return parallel_transport(base_, p, at_base);
}

FrameStructure::FrameStructure(SpherePoint base, std::vector<FieldFn> fields,
                               double gram_tol, DomainFn domain)
    : TranslationStructure(base.ambient_dim()),
      base_(std::move(base)),
      fields_(std::move(fields)),
      gram_tol_(gram_tol),
      domain_(std::move(domain)) {
  if (static_cast<int>(fields_.size()) != model_dim()) {
    fail(Errc::domain_error, "frame needs exactly n+1 vector fields");
  }
}

bool FrameStructure::in_domain(const SpherePoint& p) const {
  return domain_ ? domain_(p) : true;
}

Mat FrameStructure::frame_at(const SpherePoint& p) const {
  const int m = model_dim();
  Mat frame(ambient_dim(), m);
  for (int i = 0; i < m; ++i) frame.col(i) = fields_[i](p);
  for (int i = 0; i < m; ++i) {
    if (std::abs(frame.col(i).dot(p.coords())) > gram_tol_) {
      fail(Errc::frame_not_orthonormal, "frame field is not tangent");
    }
  }
  Mat gram = frame.transpose() * frame;
  if ((gram - Mat::Identity(m, m)).cwiseAbs().maxCoeff() > gram_tol_) {
    fail(Errc::frame_not_orthonormal, "frame is not orthonormal at point");
  }
  return frame;
}

Vec FrameStructure::apply(const SpherePoint& p, const TangentVector& v) const {
  check_domain(p);
  return frame_at(p).transpose() * v.vec();
}

TangentVector FrameStructure::unapply(const SpherePoint& p,
                                      const Vec& w) const {
  check_domain(p);
  if (w.size() != model_dim()) {
    fail(Errc::domain_error, "model vector has wrong dimension");
  }
  return TangentVector::projected(p, frame_at(p) * w);
}

std::vector<FrameStructure::FieldFn> transported_frame_fields(
    const SpherePoint& base) {
  const Mat basis = complement_basis(base.coords());
  std::vector<FrameStructure::FieldFn> fields;
  for (int i = 0; i < basis.cols(); ++i) {
    Vec e = basis.col(i);
    fields.push_back([base, e](const SpherePoint& p) -> Vec {
      TangentVector v = TangentVector::projected(base, e);
      return parallel_transport(base, p, v).vec();
    });
  }
  return fields;
}

QuaternionStructure::QuaternionStructure()
    : TranslationStructure(4),
      identity_(SpherePoint(Eigen::Vector4d(1, 0, 0, 0))) {}

Vec QuaternionStructure::apply(const SpherePoint& p,
                               const TangentVector& v) const {
  check_domain(p);
  Eigen::Vector4d prod = qmul(qconj(p.coords()), Eigen::Vector4d(v.vec()));
  return prod.tail<3>();
}

TangentVector QuaternionStructure::unapply(const SpherePoint& p,
                                           const Vec& w) const {
  check_domain(p);
  if (w.size() != 3) {
    fail(Errc::domain_error, "model vector has wrong dimension");
  }
  Eigen::Vector4d imag(0.0, w(0), w(1), w(2));
  Eigen::Vector4d prod = qmul(Eigen::Vector4d(p.coords()), imag);
  return TangentVector::projected(p, prod);
}

}  // namespace tg
