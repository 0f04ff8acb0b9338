#include "core/curvature.hpp"

#include <cmath>

namespace tg {

Mat second_fundamental_form(const ParametricImmersion& imm, const Vec& u,
                            const TangentVector& normal) {
  const int n = imm.intrinsic_dim();
  Mat h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double hij = imm.second_derivative(u, i, j).dot(normal.vec());
      h(i, j) = hij;
      h(j, i) = hij;
    }
  }
  return h;
}

Mat shape_operator(const ParametricImmersion& imm, const Vec& u) {
  TangentFrame frame = tangent_frame(imm, u);
  TangentVector eta = unit_normal(imm, u);
  Mat h = second_fundamental_form(imm, u, eta);
  return frame.metric.ldlt().solve(h);
}

Vec principal_curvatures(const Mat& h, const Mat& g) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(h, g,
                                                       Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(Errc::eigen_solve_failure, "generalized eigenvalue solve failed");
  }
  return solver.eigenvalues();
}

Vec principal_curvatures(const ParametricImmersion& imm, const Vec& u) {
  TangentFrame frame = tangent_frame(imm, u);
  TangentVector eta = unit_normal(imm, u);
  Mat h = second_fundamental_form(imm, u, eta);
  return principal_curvatures(h, frame.metric);
}

double gauss_kronecker(const ParametricImmersion& imm, const Vec& u) {
  return shape_operator(imm, u).determinant();
}

Vec gauss_map(const TranslationStructure& structure,
              const ParametricImmersion& imm, const Vec& u) {
  TangentVector eta = unit_normal(imm, u);
  return structure.apply(eta.base(), eta);
}

Vec tangent_coordinates(const TangentFrame& frame, const Vec& ambient) {
  const int n = static_cast<int>(frame.partials.size());
  Vec rhs(n);
  for (int i = 0; i < n; ++i) rhs(i) = frame.partials[i].dot(ambient);
  return frame.metric.ldlt().solve(rhs);
}

Mat gauss_map_derivative(const TranslationStructure& structure,
                         const ParametricImmersion& imm, const Vec& u,
                         double h) {
  const int n = imm.intrinsic_dim();
  TangentFrame frame = tangent_frame(imm, u);
  Vec gamma0 = gauss_map(structure, imm, u);
  Mat out(n, n);
  for (int i = 0; i < n; ++i) {
    Vec up = u, dn = u;
    up(i) += h;
    dn(i) -= h;
    Vec diff =
        (gauss_map(structure, imm, up) - gauss_map(structure, imm, dn)) /
        (2.0 * h);
    diff -= diff.dot(gamma0) * gamma0;  // drop the radial FD error
    TangentVector pulled = structure.unapply(frame.point, diff);
    Vec tangential = pulled.vec();
    tangential -= tangential.dot(frame.point.coords()) * frame.point.coords();
    out.col(i) = tangent_coordinates(frame, tangential);
  }
  return out;
}

double c_function(const SpherePoint& p0, const ParametricImmersion& imm,
                  const Vec& u) {
  TangentVector eta = unit_normal(imm, u);
  const double denom = 1.0 + eta.base().dot(p0);
  if (denom <= 1e-10) {
    fail(Errc::antipodal_points, "surface point antipodal to the base point");
  }
  return eta.vec().dot(p0.coords()) / denom;
}

Mat invariant_shape_operator(const TranslationStructure& structure,
                             const ParametricImmersion& imm, const Vec& u,
                             double h) {
  const int n = imm.intrinsic_dim();
  TangentFrame frame = tangent_frame(imm, u);
  TangentVector eta = unit_normal(imm, u);
  const Vec model = structure.apply(eta.base(), eta);

  Mat out(n, n);
  for (int i = 0; i < n; ++i) {
    Vec up = u, dn = u;
    up(i) += h;
    dn(i) -= h;
    Vec field_up = structure.unapply(imm.eval(up), model).vec();
    Vec field_dn = structure.unapply(imm.eval(dn), model).vec();
    Vec diff = (field_up - field_dn) / (2.0 * h);
    diff -= diff.dot(frame.point.coords()) * frame.point.coords();
    out.col(i) = tangent_coordinates(frame, diff);
  }
  return out;
}

TranslationalCurvature translational_curvature(
    const TranslationStructure& structure, const ParametricImmersion& imm,
    const Vec& u, double h) {
  Mat dgamma = gauss_map_derivative(structure, imm, u, h);
  Mat shape = shape_operator(imm, u);
  Mat alpha = invariant_shape_operator(structure, imm, u, h);
  TranslationalCurvature out;
  out.via_gauss_map = dgamma.determinant();
  out.via_shape = (-(shape + alpha)).determinant();
  out.difference = std::abs(out.via_gauss_map - out.via_shape);
  return out;
}

CurvatureSample curvature_sample(const TranslationStructure& structure,
                                 const ParametricImmersion& imm, const Vec& u,
                                 double h) {
  TangentFrame frame = tangent_frame(imm, u);
  TangentVector eta = unit_normal(imm, u);
  Mat h2 = second_fundamental_form(imm, u, eta);
  Mat shape = frame.metric.ldlt().solve(h2);

  CurvatureSample sample{u,
                         frame.point,
                         eta,
                         frame.metric,
                         shape,
                         principal_curvatures(h2, frame.metric),
                         c_function(structure.reference_point(), imm, u),
                         invariant_shape_operator(structure, imm, u, h),
                         gauss_map_derivative(structure, imm, u, h),
                         0.0,
                         0.0,
                         0.0,
                         0.0};
  sample.kappa_gamma = (-(shape + sample.alpha)).determinant();
  sample.kappa_gamma_alt = sample.dgamma_pullback.determinant();
  sample.gauss_kronecker = shape.determinant();
  sample.prop_residual =
      (sample.dgamma_pullback + shape + sample.alpha).cwiseAbs().maxCoeff();
  return sample;
}

}  // namespace tg
