#include "core/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tg {

const char* radius_convention_name(RadiusConvention c) {
  return c == RadiusConvention::enclosing_cap ? "enclosing" : "lemma";
}

namespace {

bool inside_ball(const Vec& p, const EuclideanBall& b) {
  if (b.radius < 0.0) return false;
  const double r2 = b.radius * b.radius;
  return (p - b.center).squaredNorm() <= r2 * (1.0 + 1e-12) + 1e-18;
}

EuclideanBall ball_from_support(const std::vector<Vec>& support, int dim) {
  EuclideanBall ball;
  if (support.empty()) {
    ball.center = Vec::Zero(dim);
    ball.radius = -1.0;
    return ball;
  }
  if (support.size() == 1) {
    ball.center = support[0];
    ball.radius = 0.0;
    return ball;
  }
  const Vec& q0 = support[0];
  const int m = static_cast<int>(support.size()) - 1;
  Mat a(m, m);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    const Vec di = support[i + 1] - q0;
    b(i) = 0.5 * di.squaredNorm();
    for (int j = 0; j < m; ++j) a(i, j) = di.dot(support[j + 1] - q0);
  }
  // Least squares tolerates nearly affinely dependent support sets.
  Vec x = a.colPivHouseholderQr().solve(b);
  Vec center = q0;
  for (int i = 0; i < m; ++i) center += x(i) * (support[i + 1] - q0);
  ball.center = center;
  ball.radius = 0.0;
  for (const Vec& q : support) {
    ball.radius = std::max(ball.radius, (q - center).norm());
  }
  return ball;
}

EuclideanBall welzl(std::vector<const Vec*>& pts, size_t end,
                    std::vector<Vec>& support, int dim) {
  if (end == 0 || support.size() == static_cast<size_t>(dim + 1)) {
    return ball_from_support(support, dim);
  }
  const Vec* p = pts[end - 1];
  EuclideanBall ball = welzl(pts, end - 1, support, dim);
  if (inside_ball(*p, ball)) return ball;
  support.push_back(*p);
  ball = welzl(pts, end - 1, support, dim);
  support.pop_back();
  // Move-to-front keeps boundary points early in later passes.
  std::rotate(pts.begin(), pts.begin() + (end - 1), pts.begin() + end);
  return ball;
}

}  // namespace

EuclideanBall smallest_enclosing_ball(const std::vector<Vec>& points) {
  if (points.empty()) {
    fail(Errc::degenerate_configuration, "no points to enclose");
  }
  const int dim = static_cast<int>(points[0].size());
  std::vector<const Vec*> ptrs;
  ptrs.reserve(points.size());
  for (const Vec& p : points) {
    if (p.size() != dim) fail(Errc::domain_error, "mixed point dimensions");
    ptrs.push_back(&p);
  }
  std::mt19937_64 rng(0x7ec2b4u);
  std::shuffle(ptrs.begin(), ptrs.end(), rng);
  std::vector<Vec> support;
  return welzl(ptrs, ptrs.size(), support, dim);
}

CapResult enclosing_cap(const std::vector<SpherePoint>& samples) {
  if (samples.empty()) {
    fail(Errc::degenerate_configuration, "no sample points");
  }
  std::vector<Vec> pts;
  pts.reserve(samples.size());
  for (const SpherePoint& p : samples) pts.push_back(p.coords());
  EuclideanBall ball = smallest_enclosing_ball(pts);
  if (ball.center.norm() < 1e-7) {
    fail(Errc::degenerate_configuration,
         "enclosing-ball center at the origin: no cap below a hemisphere");
  }
  SpherePoint center = SpherePoint::normalized(ball.center);
  double radius = 0.0;
  for (const SpherePoint& p : samples) {
    radius = std::max(radius, geodesic_distance(center, p));
  }
  return {center, radius, RadiusConvention::enclosing_cap};
}

namespace {

struct SurfaceSeeds {
  std::vector<Vec> chart_points;
  std::vector<Vec> positions;
};

SurfaceSeeds sample_surface(const ParametricImmersion& imm, int per_axis) {
  SurfaceSeeds seeds;
  QuadratureGrid grid = QuadratureGrid::for_immersion(imm, per_axis);
  seeds.chart_points.reserve(grid.node_count());
  seeds.positions.reserve(grid.node_count());
  for (int k = 0; k < grid.node_count(); ++k) {
    Vec u = grid.node(k);
    seeds.positions.push_back(imm.eval_raw(u));
    seeds.chart_points.push_back(std::move(u));
  }
  return seeds;
}

// cos of the distance from p to the closest surface seed.
double coarse_alignment(const Vec& p, const SurfaceSeeds& seeds,
                        int* best = nullptr) {
  double max_dot = -2.0;
  for (size_t i = 0; i < seeds.positions.size(); ++i) {
    const double d = p.dot(seeds.positions[i]);
    if (d > max_dot) {
      max_dot = d;
      if (best) *best = static_cast<int>(i);
    }
  }
  return max_dot;
}

// Maximizes <p, f(u)> over the chart by repeated local grid refinement.
double refined_alignment(const Vec& p, const ParametricImmersion& imm,
                         const SurfaceSeeds& seeds, int inner_stages) {
  int best = 0;
  double best_dot = coarse_alignment(p, seeds, &best);
  Vec u = seeds.chart_points[best];
  const int n = imm.intrinsic_dim();
  std::vector<double> window(n);
  for (int i = 0; i < n; ++i) {
    window[i] = imm.chart()[i].length() /
                std::max<size_t>(2, static_cast<size_t>(std::round(
                                        std::pow(seeds.positions.size(),
                                                 1.0 / n))));
  }
  for (int stage = 0; stage < inner_stages; ++stage) {
    Vec u_best = u;
    for (int k = 0; k < (n == 1 ? 5 : 25); ++k) {
      Vec cand = u;
      if (n == 1) {
        cand(0) += window[0] * (k - 2) / 2.0;
      } else {
        cand(0) += window[0] * (k / 5 - 2) / 2.0;
        cand(1) += window[1] * (k % 5 - 2) / 2.0;
      }
      const double d = p.dot(imm.eval_raw(cand));
      if (d > best_dot) {
        best_dot = d;
        u_best = cand;
      }
    }
    u = u_best;
    for (int i = 0; i < n; ++i) window[i] *= 0.35;
  }
  return best_dot;
}

}  // namespace

EmptyBallResult largest_empty_ball(const ParametricImmersion& imm,
                                   const EmptyBallOptions& options) {
  const int dim = imm.ambient_dim();
  SurfaceSeeds seeds = sample_surface(imm, options.surface_seed_nodes);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_unit = [&]() {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
    return Vec(v / v.norm());
  };

  // Coarse sweep: smaller alignment = larger empty ball.
  std::vector<std::pair<double, Vec>> best;
  for (int k = 0; k < options.centers; ++k) {
    Vec c = random_unit();
    const double a = coarse_alignment(c, seeds);
    best.emplace_back(a, std::move(c));
  }
  std::sort(best.begin(), best.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  best.resize(std::min<size_t>(best.size(), options.refine_top));

  double winner_alignment = 2.0;
  Vec winner = best.front().second;
  for (auto& [coarse, center] : best) {
    Vec c = center;
    double value = refined_alignment(c, imm, seeds, options.inner_stages);
    double sigma = 0.4;
    for (int stage = 0; stage < options.outer_stages; ++stage) {
      for (int k = 0; k < options.outer_proposals; ++k) {
        Vec step(dim);
        for (int i = 0; i < dim; ++i) step(i) = gauss(rng);
        Vec cand = c + sigma * step;
        cand /= cand.norm();
        const double v = refined_alignment(cand, imm, seeds,
                                           options.inner_stages);
        if (v < value) {
          value = v;
          c = cand;
        }
      }
      sigma *= 0.72;
    }
    if (value < winner_alignment) {
      winner_alignment = value;
      winner = c;
    }
  }
  EmptyBallResult out{SpherePoint::normalized(winner),
                      std::acos(std::clamp(winner_alignment, -1.0, 1.0))};
  return out;
}

double lemma_radius_clifford(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    fail(Errc::domain_error, "radius parameter must lie in (0, 1)");
  }
  return std::acos(std::min(r, std::sqrt(1.0 - r * r)));
}

std::pair<double, double> clifford_principal_curvatures(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    fail(Errc::domain_error, "radius parameter must lie in (0, 1)");
  }
  const double s = std::sqrt(1.0 - r * r);
  return {-s / r, r / s};
}

CertificateReport certify_with_cap(const ParametricImmersion& imm,
                                   const QuadratureGrid& grid, double delta,
                                   const SpherePoint& cap_center,
                                   double cap_radius,
                                   RadiusConvention convention) {
  CertificateReport report;
  report.convention = convention;
  report.cap_center = cap_center.coords();
  report.cap_radius = cap_radius;
  report.threshold = std::tan(0.5 * std::min(cap_radius, M_PI - 1e-6));
  report.delta = delta;
  report.note = "sampled, not a proof";

  double min_abs_lambda = std::numeric_limits<double>::infinity();
  double min_abs_sum = std::numeric_limits<double>::infinity();
  Vec worst_curv, worst_inv;
  for (int k = 0; k < grid.node_count(); ++k) {
    const Vec u = grid.node(k);
    const Vec lambda = principal_curvatures(imm, u);
    const double c = c_function(cap_center, imm, u);
    for (int i = 0; i < lambda.size(); ++i) {
      if (std::abs(lambda(i)) < min_abs_lambda) {
        min_abs_lambda = std::abs(lambda(i));
        worst_curv = u;
      }
      if (std::abs(lambda(i) + c) < min_abs_sum) {
        min_abs_sum = std::abs(lambda(i) + c);
        worst_inv = u;
      }
    }
  }
  report.min_abs_lambda = min_abs_lambda;
  report.margin_curvature = min_abs_lambda - report.threshold;
  report.min_abs_lambda_plus_c = min_abs_sum;
  report.margin_invertibility = min_abs_sum;
  report.worst_curvature_u = worst_curv;
  report.worst_invertibility_u = worst_inv;
  report.certified = (report.margin_curvature > delta) &&
                     (report.margin_invertibility > delta);
  return report;
}

CertificateReport certify_sphere(const ParametricImmersion& imm,
                                 const QuadratureGrid& grid, double delta,
                                 RadiusConvention convention) {
  std::vector<SpherePoint> samples;
  samples.reserve(grid.node_count());
  for (int k = 0; k < grid.node_count(); ++k) {
    samples.push_back(imm.eval(grid.node(k)));
  }

  SpherePoint base = samples.front();
  double radius = 0.0;
  std::string note;
  if (convention == RadiusConvention::enclosing_cap) {
    try {
      CapResult cap = enclosing_cap(samples);
      base = cap.center;
      radius = cap.radius;
    } catch (const GeomError& e) {
      if (e.code() != Errc::degenerate_configuration) throw;
      // No cap below a hemisphere exists; anchor the cap at the antipode of
      // the largest empty ball instead.
      EmptyBallOptions cheap;
      cheap.centers = 2000;
      cheap.refine_top = 6;
      cheap.outer_stages = 30;
      EmptyBallResult empty = largest_empty_ball(imm, cheap);
      base = SpherePoint::normalized(-empty.center.coords());
      radius = 0.0;
      for (const SpherePoint& p : samples) {
        radius = std::max(radius, geodesic_distance(base, p));
      }
      note = "; enclosing ball degenerate, cap anchored at empty-ball antipode";
    }
  } else {
    EmptyBallResult empty = largest_empty_ball(imm);
    base = SpherePoint::normalized(-empty.center.coords());
    radius = empty.radius;
  }

  CertificateReport report =
      certify_with_cap(imm, grid, delta, base, radius, convention);
  report.note += note;
  return report;
}

CounterexampleReport counterexample_family(double epsilon, int n,
                                           int grid_nodes) {
  const double limit = std::sqrt(2.0) - 1.0;
  if (!(epsilon > 0.0 && epsilon < limit)) {
    fail(Errc::domain_error, "pinch factor must lie in (0, sqrt(2) - 1)");
  }
  CounterexampleReport report;
  report.epsilon = epsilon;
  report.j_lo = epsilon / (1.0 - epsilon);
  report.j_hi = 1.0 / (1.0 + epsilon);
  report.pick_lo = std::max(0.0, report.j_lo);
  report.pick_hi = std::min(1.0 / std::sqrt(2.0), report.j_hi);
  if (!(report.pick_lo < report.pick_hi)) {
    fail(Errc::degenerate_configuration, "empty parameter window");
  }
  report.r = 0.5 * (report.pick_lo + report.pick_hi);

  const auto [l1, l2] = clifford_principal_curvatures(report.r);
  report.lambda1 = l1;
  report.lambda2 = l2;
  report.cap_radius = lemma_radius_clifford(report.r);
  report.threshold = epsilon * std::tan(0.5 * report.cap_radius);

  ParametricImmersion imm = make_clifford(n, report.r);
  QuadratureGrid grid = QuadratureGrid::for_immersion(imm, grid_nodes);
  double min_abs = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.node_count(); ++k) {
    const Vec lambda = principal_curvatures(imm, grid.node(k));
    min_abs = std::min(min_abs, lambda.cwiseAbs().minCoeff());
  }
  report.min_abs_lambda_grid = min_abs;
  report.margin = min_abs - report.threshold;
  report.euler_char = euler_characteristic(imm);
  report.ok = report.margin > 0.0;

  // The inequality itself, scanned over the whole parameter range with the
  // closed-form curvatures; reported next to the analytic window.
  auto admissible = [&](double r) {
    const auto [a, b] = clifford_principal_curvatures(r);
    const double thr = epsilon * std::tan(0.5 * lemma_radius_clifford(r));
    return std::min(std::abs(a), std::abs(b)) > thr;
  };
  const int scan = 4000;
  double lo = report.r, hi = report.r;
  for (int k = static_cast<int>(report.r * scan); k >= 1; --k) {
    const double r = static_cast<double>(k) / scan;
    if (!admissible(r)) break;
    lo = r;
  }
  for (int k = static_cast<int>(report.r * scan) + 1; k < scan; ++k) {
    const double r = static_cast<double>(k) / scan;
    if (!admissible(r)) break;
    hi = r;
  }
  report.empirical_lo = lo;
  report.empirical_hi = hi;
  return report;
}

}  // namespace tg
