#pragma once

#include "core/curvature.hpp"

#include <functional>
#include <span>

namespace tg {

/// Sums in a fixed pairwise (tree) order, independent of accumulation
/// chunking, so repeated runs reduce identically.
double pairwise_sum(std::span<const double> terms);

/// Quadrature of `field` against the induced volume element:
/// sum_k w_k field(u_k) sqrt(det g(u_k)).
double integrate_scalar(const ParametricImmersion& imm,
                        const std::function<double(const Vec&)>& field,
                        const QuadratureGrid& grid);

struct GaussBonnetReport {
  double integral = 0.0;
  double target = 0.0;
  double residual = 0.0;
  double degree_estimate = 0.0;
  int euler_char = 0;
};

/// Integrates the translational curvature and compares with
/// (c_n / 2) * chi(M). Even intrinsic dimension only.
GaussBonnetReport gauss_bonnet_check(const TranslationStructure& structure,
                                     const ParametricImmersion& imm,
                                     const QuadratureGrid& grid,
                                     double h_field = 1e-4);

/// Signed count of Gauss-map preimages of `target_direction`, found by
/// Newton refinement from grid cells where the alignment with the target is
/// locally maximal. Rejects the direction if any preimage is nearly
/// critical (|kappa| <= 1e-6).
int degree_by_preimage(const TranslationStructure& structure,
                       const ParametricImmersion& imm,
                       const QuadratureGrid& grid, const Vec& target_direction,
                       double h_field = 1e-4);

/// Retries degree_by_preimage with deterministically perturbed directions
/// when the target fails the regular-value check.
int degree_by_preimage_robust(const TranslationStructure& structure,
                              const ParametricImmersion& imm,
                              const QuadratureGrid& grid,
                              Vec target_direction, double h_field = 1e-4,
                              int max_attempts = 5);

/// Euler characteristic from the declared topology.
int euler_characteristic(const ParametricImmersion& imm);

/// V - E + F of a triangulation of an n=2 chart grid, respecting periodic
/// identifications; polar (non-periodic) axes are closed off with cone
/// points. Independent cross-check of the declared topology.
int euler_characteristic_mesh(const ParametricImmersion& imm, int n0, int n1);

}  // namespace tg
