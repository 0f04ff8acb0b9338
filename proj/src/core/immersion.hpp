#pragma once

#include "core/sphere.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace tg {

struct ChartAxis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
  double length() const { return hi - lo; }
};

struct Topology {
  enum class Kind { sphere, torus, other };
  Kind kind = Kind::other;
  int euler_char = 0;
};

/// A chart-based immersion f : U subset R^n -> S^{n+1} in R^{n+2}.
/// Derivatives fall back to central finite differences when no analytic
/// closure is supplied (steps h_first / h_second, overridable).
class ParametricImmersion {
 public:
  using EvalFn = std::function<Vec(const Vec&)>;
  using DerivFn = std::function<Vec(const Vec&, int)>;
  using Deriv2Fn = std::function<Vec(const Vec&, int, int)>;

  ParametricImmersion(int intrinsic_dim, int ambient_dim,
                      std::vector<ChartAxis> chart, EvalFn eval,
                      Topology topology);

  int intrinsic_dim() const { return n_; }
  int ambient_dim() const { return d_; }
  const std::vector<ChartAxis>& chart() const { return chart_; }
  const Topology& topology() const { return topology_; }

  SpherePoint eval(const Vec& u) const;
  Vec eval_raw(const Vec& u) const;
  Vec derivative(const Vec& u, int i) const;
  Vec second_derivative(const Vec& u, int i, int j) const;

  bool has_analytic_derivative() const { return static_cast<bool>(d1_); }
  bool has_analytic_second_derivative() const { return static_cast<bool>(d2_); }

  void set_derivative(DerivFn fn) { d1_ = std::move(fn); }
  void set_second_derivative(Deriv2Fn fn) { d2_ = std::move(fn); }

  int orientation() const { return orientation_; }
  void set_orientation(int sign);
  void flip_orientation() { orientation_ = -orientation_; }

  double fd_step_first() const { return h_first_; }
  double fd_step_second() const { return h_second_; }
  void set_fd_steps(double h_first, double h_second);

  /// Finite-difference first derivative, available even when an analytic
  /// closure is installed (used by convergence checks).
  Vec derivative_fd(const Vec& u, int i, double h) const;

 private:
  int n_;
  int d_;
  std::vector<ChartAxis> chart_;
  EvalFn eval_;
  DerivFn d1_;
  Deriv2Fn d2_;
  Topology topology_;
  int orientation_ = 1;
  double h_first_ = 1e-5;
  double h_second_ = 1e-4;
};

/// Angular chart of the unit m-sphere in R^{m+1}: polar angles in (0, pi)
/// followed by one periodic azimuth in [0, 2pi).
class SphereChart {
 public:
  explicit SphereChart(int m);

  int dim() const { return m_; }
  std::vector<ChartAxis> axes() const;

  Vec point(const Vec& phi) const;
  Vec d1(const Vec& phi, int i) const;
  Vec d2(const Vec& phi, int i, int j) const;

 private:
  double factor(int k, int j, double phi, int order) const;
  Vec component(const Vec& phi, int di, int dj) const;

  int m_;
};

/// S^1(r) x S^{n-1}(s) in S^{n+1}, s = sqrt(1 - r^2). Chart is
/// (theta, phi_1..phi_{n-1}) -> (r cos theta, r sin theta, s w(phi)).
ParametricImmersion make_clifford(int n, double r);

/// Distance sphere of radius rho about `center`; rho in (0, pi).
ParametricImmersion make_geodesic_sphere(const SpherePoint& center, double rho,
                                         int n);

/// Geodesic sphere with a radial perturbation of amplitude a and angular
/// frequency k; stays inside the open hemisphere (rho + a < pi/2 required).
ParametricImmersion make_perturbed_sphere(const SpherePoint& center,
                                          double rho, double amplitude,
                                          int frequency);

/// The immersion u -> Q f(u) for an ambient rotation Q.
ParametricImmersion compose_rotation(const ParametricImmersion& imm,
                                     const Mat& q);

struct TangentFrame {
  SpherePoint point;
  std::vector<Vec> partials;
  Mat metric;
};

/// Chart partials and induced metric; rejects points where the immersion
/// degenerates (smallest singular value of the Jacobian <= 1e-8).
TangentFrame tangent_frame(const ParametricImmersion& imm, const Vec& u);

/// Unit vector orthogonal to the surface and to the ambient sphere normal,
/// with sign fixed by det[df_1, .., df_n, eta, f] * orientation > 0.
TangentVector unit_normal(const ParametricImmersion& imm, const Vec& u);

/// Tensor-product quadrature over the chart box: periodic axes use the
/// trapezoid rule, the rest Gauss-Legendre (all nodes interior).
class QuadratureGrid {
 public:
  enum class Rule { periodic_trapezoid, gauss_legendre };

  QuadratureGrid(std::vector<ChartAxis> axes, std::vector<int> nodes);

  static QuadratureGrid for_immersion(const ParametricImmersion& imm,
                                      const std::vector<int>& nodes);
  static QuadratureGrid for_immersion(const ParametricImmersion& imm,
                                      int nodes_per_axis);

  int axis_count() const { return static_cast<int>(axes_.size()); }
  int node_count() const { return total_; }
  const std::vector<int>& nodes_per_axis() const { return counts_; }
  Rule rule(int axis) const { return rules_[axis]; }

  Vec node(int k) const;
  double weight(int k) const;

  /// Multi-index of flat node k (axis 0 slowest).
  std::vector<int> unflatten(int k) const;

 private:
  std::vector<ChartAxis> axes_;
  std::vector<int> counts_;
  std::vector<Rule> rules_;
  std::vector<std::vector<double>> axis_nodes_;
  std::vector<std::vector<double>> axis_weights_;
  int total_ = 1;
};

/// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace tg
