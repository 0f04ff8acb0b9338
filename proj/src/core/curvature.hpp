#pragma once

#include "core/immersion.hpp"
#include "core/structures.hpp"

namespace tg {

/// H_ij = <d^2 f / du_i du_j, normal>. Valid with any vector orthogonal to
/// both the surface and the ambient position (the sphere's own normal
/// correction drops out).
Mat second_fundamental_form(const ParametricImmersion& imm, const Vec& u,
                            const TangentVector& normal);

/// Shape operator g^{-1} H in the chart basis, using the immersion's
/// oriented unit normal.
Mat shape_operator(const ParametricImmersion& imm, const Vec& u);

/// Eigenvalues of the pencil H w = lambda g w, ascending.
Vec principal_curvatures(const ParametricImmersion& imm, const Vec& u);
Vec principal_curvatures(const Mat& h, const Mat& g);

/// det of the shape operator.
double gauss_kronecker(const ParametricImmersion& imm, const Vec& u);

/// Model-space coordinates of the structure applied to the unit normal.
Vec gauss_map(const TranslationStructure& structure,
              const ParametricImmersion& imm, const Vec& u);

/// The pullback of the Gauss map derivative to the tangent space, expressed
/// in the chart basis. Central differences with step h along each axis.
Mat gauss_map_derivative(const TranslationStructure& structure,
                         const ParametricImmersion& imm, const Vec& u,
                         double h = 1e-4);

/// <eta(p), p0> / (1 + <p, p0>).
double c_function(const SpherePoint& p0, const ParametricImmersion& imm,
                  const Vec& u);

/// Covariant derivative of the invariant extension of the normal, in the
/// chart basis. Finite differences of the invariant field with step h.
Mat invariant_shape_operator(const TranslationStructure& structure,
                             const ParametricImmersion& imm, const Vec& u,
                             double h = 1e-4);

struct TranslationalCurvature {
  double via_gauss_map = 0.0;  // det of the Gauss-map pullback
  double via_shape = 0.0;      // det of -(A + alpha)
  double difference = 0.0;
  double value() const { return via_shape; }
};

TranslationalCurvature translational_curvature(
    const TranslationStructure& structure, const ParametricImmersion& imm,
    const Vec& u, double h = 1e-4);

/// Per-point extrinsic data bundle.
struct CurvatureSample {
  Vec u;
  SpherePoint point;
  TangentVector normal;
  Mat metric;
  Mat shape;
  Vec lambda;              // ascending principal curvatures
  double c = 0.0;          // relative to the structure's reference point
  Mat alpha;
  Mat dgamma_pullback;
  double kappa_gamma = 0.0;      // det(-(A + alpha))
  double kappa_gamma_alt = 0.0;  // det of the Gauss-map pullback
  double gauss_kronecker = 0.0;
  double prop_residual = 0.0;  // max-abs entry of dgamma + (A + alpha)
};

CurvatureSample curvature_sample(const TranslationStructure& structure,
                                 const ParametricImmersion& imm, const Vec& u,
                                 double h = 1e-4);

/// Coordinates of an ambient tangent vector at `frame.point` in the chart
/// basis (least squares through the metric).
Vec tangent_coordinates(const TangentFrame& frame, const Vec& ambient);

}  // namespace tg
