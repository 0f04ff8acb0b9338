#include "core/immersion.hpp"

#include <cmath>

namespace tg {

namespace {
constexpr double kDegenerateTol = 1e-8;
constexpr double kOnSphereTol = 1e-10;
}  // namespace

ParametricImmersion::ParametricImmersion(int intrinsic_dim, int ambient_dim,
                                         std::vector<ChartAxis> chart,
                                         EvalFn eval, Topology topology)
    : n_(intrinsic_dim),
      d_(ambient_dim),
      chart_(std::move(chart)),
      eval_(std::move(eval)),
      topology_(topology) {
  if (n_ < 1 || d_ != n_ + 2) {
    fail(Errc::domain_error, "immersion must map an n-manifold into S^{n+1}");
  }
  if (static_cast<int>(chart_.size()) != n_) {
    fail(Errc::domain_error, "chart has wrong number of axes");
  }
}

SpherePoint ParametricImmersion::eval(const Vec& u) const {
  Vec raw = eval_raw(u);
  if (std::abs(raw.norm() - 1.0) > kOnSphereTol) {
    fail(Errc::domain_error, "immersion left the unit sphere");
  }
  return SpherePoint::normalized(raw);
}

Vec ParametricImmersion::eval_raw(const Vec& u) const {
  if (u.size() != n_) fail(Errc::domain_error, "chart point has wrong size");
  return eval_(u);
}

Vec ParametricImmersion::derivative(const Vec& u, int i) const {
  if (i < 0 || i >= n_) fail(Errc::domain_error, "axis index out of range");
  if (d1_) return d1_(u, i);
  return derivative_fd(u, i, h_first_);
}

Vec ParametricImmersion::derivative_fd(const Vec& u, int i, double h) const {
  Vec up = u, dn = u;
  up(i) += h;
  dn(i) -= h;
  return (eval_raw(up) - eval_raw(dn)) / (2.0 * h);
}

Vec ParametricImmersion::second_derivative(const Vec& u, int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    fail(Errc::domain_error, "axis index out of range");
  }
  if (d2_) return d2_(u, i, j);
  Vec up = u, dn = u;
  up(j) += h_second_;
  dn(j) -= h_second_;
  return (derivative(up, i) - derivative(dn, i)) / (2.0 * h_second_);
}

void ParametricImmersion::set_orientation(int sign) {
  if (sign != 1 && sign != -1) {
    fail(Errc::domain_error, "orientation must be +1 or -1");
  }
  orientation_ = sign;
}

void ParametricImmersion::set_fd_steps(double h_first, double h_second) {
  if (!(h_first > 0.0) || !(h_second > 0.0)) {
    fail(Errc::domain_error, "finite-difference steps must be positive");
  }
  h_first_ = h_first;
  h_second_ = h_second;
}

SphereChart::SphereChart(int m) : m_(m) {
  if (m < 1) fail(Errc::domain_error, "sphere chart needs dimension >= 1");
}

std::vector<ChartAxis> SphereChart::axes() const {
  std::vector<ChartAxis> out;
  for (int i = 0; i < m_ - 1; ++i) out.push_back({0.0, M_PI, false});
  out.push_back({0.0, 2.0 * M_PI, true});
  return out;
}

double SphereChart::factor(int k, int j, double phi, int order) const {
  // Component k is a product over axes j of sin, cos or the constant 1.
  const bool is_sin = (k == m_) ? true : (j < k);
  const bool is_cos = (k < m_) && (j == k);
  if (is_sin) {
    switch (order) {
      case 0: return std::sin(phi);
      case 1: return std::cos(phi);
      default: return -std::sin(phi);
    }
  }
  if (is_cos) {
    switch (order) {
      case 0: return std::cos(phi);
      case 1: return -std::sin(phi);
      default: return -std::cos(phi);
    }
  }
  return order == 0 ? 1.0 : 0.0;
}

Vec SphereChart::component(const Vec& phi, int di, int dj) const {
  Vec out(m_ + 1);
  for (int k = 0; k <= m_; ++k) {
    double prod = 1.0;
    for (int j = 0; j < m_; ++j) {
      int order = 0;
      if (j == di) ++order;
      if (j == dj) ++order;
      prod *= factor(k, j, phi(j), order);
      if (prod == 0.0) break;
    }
    out(k) = prod;
  }
  return out;
}

Vec SphereChart::point(const Vec& phi) const { return component(phi, -1, -2); }

Vec SphereChart::d1(const Vec& phi, int i) const {
  return component(phi, i, -2);
}

Vec SphereChart::d2(const Vec& phi, int i, int j) const {
  return component(phi, i, j);
}

namespace {

// Chooses the factory orientation so that unit_normal reproduces the
// reference normal at a generic interior chart point.
void align_orientation(ParametricImmersion& imm, const Vec& u_star,
                       const Vec& reference_normal) {
  imm.set_orientation(1);
  TangentVector eta = unit_normal(imm, u_star);
  if (eta.vec().dot(reference_normal) < 0.0) imm.set_orientation(-1);
}

Vec generic_interior_point(const std::vector<ChartAxis>& axes) {
  Vec u(axes.size());
  for (size_t i = 0; i < axes.size(); ++i) {
    const double f = (i % 2 == 0) ? 0.43 : 0.61;
    u(static_cast<int>(i)) = axes[i].lo + f * axes[i].length();
  }
  return u;
}

}  // namespace

ParametricImmersion make_clifford(int n, double r) {
  if (!(r > 0.0 && r < 1.0)) {
    fail(Errc::domain_error, "clifford radius must lie in (0, 1)");
  }
  if (n < 2) fail(Errc::domain_error, "clifford family needs n >= 2");
  const double s = std::sqrt(1.0 - r * r);
  const int d = n + 2;
  SphereChart chart(n - 1);

  std::vector<ChartAxis> axes;
  axes.push_back({0.0, 2.0 * M_PI, true});
  for (const ChartAxis& a : chart.axes()) axes.push_back(a);

  auto assemble = [d](double a, double b, const Vec& tail) {
    Vec out(d);
    out(0) = a;
    out(1) = b;
    out.tail(d - 2) = tail;
    return out;
  };

  auto eval = [=](const Vec& u) -> Vec {
    const double theta = u(0);
    return assemble(r * std::cos(theta), r * std::sin(theta),
                    s * chart.point(u.tail(u.size() - 1)));
  };

  Topology topo{n == 2 ? Topology::Kind::torus : Topology::Kind::other, 0};
  ParametricImmersion imm(n, d, axes, eval, topo);

  imm.set_derivative([=](const Vec& u, int i) -> Vec {
    const double theta = u(0);
    const Vec phi = u.tail(u.size() - 1);
    if (i == 0) {
      return assemble(-r * std::sin(theta), r * std::cos(theta),
                      Vec::Zero(d - 2));
    }
    return assemble(0.0, 0.0, s * chart.d1(phi, i - 1));
  });
  imm.set_second_derivative([=](const Vec& u, int i, int j) -> Vec {
    const double theta = u(0);
    const Vec phi = u.tail(u.size() - 1);
    if (i == 0 && j == 0) {
      return assemble(-r * std::cos(theta), -r * std::sin(theta),
                      Vec::Zero(d - 2));
    }
    if (i == 0 || j == 0) return Vec::Zero(d);
    return assemble(0.0, 0.0, s * chart.d2(phi, i - 1, j - 1));
  });

  // Reference normal (s/r x, -r/s y): the sign convention under which the
  // factor circle carries the negative principal curvature.
  const Vec u_star = generic_interior_point(axes);
  Vec f = imm.eval_raw(u_star);
  Vec ref(d);
  ref.head(2) = (s / r) * f.head(2);
  ref.tail(d - 2) = -(r / s) * f.tail(d - 2);
  align_orientation(imm, u_star, ref);
  return imm;
}

ParametricImmersion make_geodesic_sphere(const SpherePoint& center, double rho,
                                         int n) {
  if (!(rho > 0.0 && rho < M_PI)) {
    fail(Errc::domain_error, "geodesic sphere radius must lie in (0, pi)");
  }
  if (n < 1 || center.ambient_dim() != n + 2) {
    fail(Errc::domain_error,
         "geodesic sphere dimension inconsistent with center");
  }
  const int d = n + 2;
  SphereChart chart(n);
  const Mat basis = complement_basis(center.coords());
  const Vec c = center.coords();

  auto eval = [=](const Vec& u) -> Vec {
    return std::cos(rho) * c + std::sin(rho) * (basis * chart.point(u));
  };

  Topology topo{Topology::Kind::sphere, (n % 2 == 0) ? 2 : 0};
  ParametricImmersion imm(n, d, chart.axes(), eval, topo);
  imm.set_derivative([=](const Vec& u, int i) -> Vec {
    return std::sin(rho) * (basis * chart.d1(u, i));
  });
  imm.set_second_derivative([=](const Vec& u, int i, int j) -> Vec {
    return std::sin(rho) * (basis * chart.d2(u, i, j));
  });

  const Vec u_star = generic_interior_point(imm.chart());
  Vec outward =
      -std::sin(rho) * c + std::cos(rho) * (basis * chart.point(u_star));
  align_orientation(imm, u_star, outward);
  return imm;
}

ParametricImmersion make_perturbed_sphere(const SpherePoint& center,
                                          double rho, double amplitude,
                                          int frequency) {
  if (!(amplitude >= 0.0)) {
    fail(Errc::domain_error, "perturbation amplitude must be >= 0");
  }
  if (!(rho + amplitude < 0.5 * M_PI)) {
    fail(Errc::domain_error,
         "perturbed sphere must stay inside the open hemisphere");
  }
  if (!(rho - amplitude > 0.0)) {
    fail(Errc::domain_error, "perturbation exceeds the base radius");
  }
  const int n = center.ambient_dim() - 2;
  if (n < 1) fail(Errc::domain_error, "ambient dimension too small");
  const int d = n + 2;
  SphereChart chart(n);
  const Mat basis = complement_basis(center.coords());
  const Vec c = center.coords();
  const double k = frequency;
  // The 1/(1+k^2) factor keeps the curvature perturbation of order
  // `amplitude` independently of the oscillation frequency.
  const double a = amplitude / (1.0 + k * k);

  // Radial offset a * sin(k w_0) cos(k w_1): smooth on the whole sphere
  // because it is the restriction of a smooth ambient function.
  auto radial = [=](const Vec& w) {
    return rho + a * std::sin(k * w(0)) * std::cos(k * w(1));
  };
  auto radial_grad = [=](const Vec& w) -> Eigen::Vector2d {
    return {a * k * std::cos(k * w(0)) * std::cos(k * w(1)),
            -a * k * std::sin(k * w(0)) * std::sin(k * w(1))};
  };

  auto eval = [=](const Vec& u) -> Vec {
    Vec w = chart.point(u);
    const double r = radial(w);
    return std::cos(r) * c + std::sin(r) * (basis * w);
  };

  Topology topo{Topology::Kind::sphere, (n % 2 == 0) ? 2 : 0};
  ParametricImmersion imm(n, d, chart.axes(), eval, topo);
  imm.set_derivative([=](const Vec& u, int i) -> Vec {
    Vec w = chart.point(u);
    Vec dw = chart.d1(u, i);
    const double r = radial(w);
    const Eigen::Vector2d grad = radial_grad(w);
    const double dr = grad(0) * dw(0) + grad(1) * dw(1);
    return dr * (-std::sin(r) * c + std::cos(r) * (basis * w)) +
           std::sin(r) * (basis * dw);
  });

  const Vec u_star = generic_interior_point(imm.chart());
  Vec w_star = chart.point(u_star);
  const double r_star = radial(w_star);
  Vec outward = -std::sin(r_star) * c + std::cos(r_star) * (basis * w_star);
  align_orientation(imm, u_star, outward);
  return imm;
}

ParametricImmersion compose_rotation(const ParametricImmersion& imm,
                                     const Mat& q) {
  if (q.rows() != imm.ambient_dim() || q.cols() != imm.ambient_dim()) {
    fail(Errc::domain_error, "rotation has wrong dimensions");
  }
  auto inner = std::make_shared<ParametricImmersion>(imm);
  ParametricImmersion out(
      imm.intrinsic_dim(), imm.ambient_dim(), imm.chart(),
      [inner, q](const Vec& u) -> Vec { return q * inner->eval_raw(u); },
      imm.topology());
  out.set_derivative([inner, q](const Vec& u, int i) -> Vec {
    return q * inner->derivative(u, i);
  });
  out.set_second_derivative([inner, q](const Vec& u, int i, int j) -> Vec {
    return q * inner->second_derivative(u, i, j);
  });
  out.set_orientation(imm.orientation());
  out.set_fd_steps(imm.fd_step_first(), imm.fd_step_second());
  return out;
}

TangentFrame tangent_frame(const ParametricImmersion& imm, const Vec& u) {
  const int n = imm.intrinsic_dim();
  TangentFrame frame{imm.eval(u), {}, Mat(n, n)};
  Mat jac(imm.ambient_dim(), n);
  for (int i = 0; i < n; ++i) {
    Vec di = imm.derivative(u, i);
    jac.col(i) = di;
    frame.partials.push_back(std::move(di));
  }
  Eigen::JacobiSVD<Mat> svd(jac);
  if (svd.singularValues().minCoeff() <= kDegenerateTol) {
    fail(Errc::immersion_degenerate, "immersion degenerates at chart point");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      frame.metric(i, j) = frame.partials[i].dot(frame.partials[j]);
    }
  }
  return frame;
}

TangentVector unit_normal(const ParametricImmersion& imm, const Vec& u) {
  const int n = imm.intrinsic_dim();
  const int d = imm.ambient_dim();
  TangentFrame frame = tangent_frame(imm, u);
  Mat m(d, n + 1);
  for (int i = 0; i < n; ++i) m.col(i) = frame.partials[i];
  m.col(n) = frame.point.coords();

  Eigen::HouseholderQR<Mat> qr(m);
  Mat qfull = qr.householderQ();
  Vec eta = qfull.col(d - 1);

  Mat full(d, d);
  for (int i = 0; i < n; ++i) full.col(i) = frame.partials[i];
  full.col(n) = eta;
  full.col(n + 1) = frame.point.coords();
  const double det = full.determinant();
  if (det * imm.orientation() < 0.0) eta = -eta;
  return TangentVector::projected(frame.point, eta);
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) fail(Errc::domain_error, "quadrature needs >= 1 node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n and its derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = -p1 / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureGrid::QuadratureGrid(std::vector<ChartAxis> axes,
                               std::vector<int> nodes)
    : axes_(std::move(axes)), counts_(std::move(nodes)) {
  if (axes_.empty() || axes_.size() != counts_.size()) {
    fail(Errc::domain_error, "grid axes and node counts mismatch");
  }
  for (size_t ax = 0; ax < axes_.size(); ++ax) {
    const int n = counts_[ax];
    if (n < 2) fail(Errc::domain_error, "grid needs >= 2 nodes per axis");
    const ChartAxis& a = axes_[ax];
    std::vector<double> xs, ws;
    if (a.periodic) {
      rules_.push_back(Rule::periodic_trapezoid);
      const double h = a.length() / n;
      for (int i = 0; i < n; ++i) {
        xs.push_back(a.lo + i * h);
        ws.push_back(h);
      }
    } else {
      rules_.push_back(Rule::gauss_legendre);
      gauss_legendre(n, xs, ws);
      const double mid = 0.5 * (a.lo + a.hi);
      const double half = 0.5 * a.length();
      for (int i = 0; i < n; ++i) {
        xs[i] = mid + half * xs[i];
        ws[i] *= half;
      }
    }
    double sum = 0.0;
    for (double w : ws) {
      if (!(w > 0.0)) fail(Errc::domain_error, "quadrature weight <= 0");
      sum += w;
    }
    if (std::abs(sum - a.length()) > 1e-12 * std::max(1.0, a.length())) {
      fail(Errc::domain_error, "quadrature weights do not sum to axis length");
    }
    axis_nodes_.push_back(std::move(xs));
    axis_weights_.push_back(std::move(ws));
    total_ *= n;
  }
}

QuadratureGrid QuadratureGrid::for_immersion(const ParametricImmersion& imm,
                                             const std::vector<int>& nodes) {
  return QuadratureGrid(imm.chart(), nodes);
}

QuadratureGrid QuadratureGrid::for_immersion(const ParametricImmersion& imm,
                                             int nodes_per_axis) {
  return QuadratureGrid(
      imm.chart(),
      std::vector<int>(imm.chart().size(), nodes_per_axis));
}

std::vector<int> QuadratureGrid::unflatten(int k) const {
  std::vector<int> idx(axes_.size());
  for (int ax = static_cast<int>(axes_.size()) - 1; ax >= 0; --ax) {
    idx[ax] = k % counts_[ax];
    k /= counts_[ax];
  }
  return idx;
}

Vec QuadratureGrid::node(int k) const {
  std::vector<int> idx = unflatten(k);
  Vec u(axes_.size());
  for (size_t ax = 0; ax < axes_.size(); ++ax) {
    u(static_cast<int>(ax)) = axis_nodes_[ax][idx[ax]];
  }
  return u;
}

double QuadratureGrid::weight(int k) const {
  std::vector<int> idx = unflatten(k);
  double w = 1.0;
  for (size_t ax = 0; ax < axes_.size(); ++ax) w *= axis_weights_[ax][idx[ax]];
  return w;
}

}  // namespace tg
