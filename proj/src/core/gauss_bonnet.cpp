#include "core/gauss_bonnet.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace tg {

double pairwise_sum(std::span<const double> terms) {
  const size_t n = terms.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc;
  }
  const size_t half = n / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double integrate_scalar(const ParametricImmersion& imm,
                        const std::function<double(const Vec&)>& field,
                        const QuadratureGrid& grid) {
  std::vector<double> terms(grid.node_count());
  for (int k = 0; k < grid.node_count(); ++k) {
    const Vec u = grid.node(k);
    TangentFrame frame = tangent_frame(imm, u);
    const double det = frame.metric.determinant();
    terms[k] = grid.weight(k) * field(u) * std::sqrt(std::max(det, 0.0));
  }
  return pairwise_sum(terms);
}

GaussBonnetReport gauss_bonnet_check(const TranslationStructure& structure,
                                     const ParametricImmersion& imm,
                                     const QuadratureGrid& grid,
                                     double h_field) {
  const int n = imm.intrinsic_dim();
  if (n % 2 != 0) {
    fail(Errc::odd_dimension, "the curvature integral needs even dimension");
  }
  GaussBonnetReport report;
  report.euler_char = euler_characteristic(imm);
  report.integral = integrate_scalar(
      imm,
      [&](const Vec& u) {
        return translational_curvature(structure, imm, u, h_field).value();
      },
      grid);
  const double cn = sphere_volume(n);
  report.target = 0.5 * cn * report.euler_char;
  report.residual = std::abs(report.integral - report.target);
  report.degree_estimate = report.integral / cn;
  return report;
}

namespace {

struct Preimage {
  Vec u;
  Vec point;  // ambient position, used to merge duplicate chart hits
  double kappa;
};

bool newton_refine(const TranslationStructure& structure,
                   const ParametricImmersion& imm, const Vec& target,
                   const Mat& complement, double h, Vec& u) {
  const int n = imm.intrinsic_dim();
  double chart_scale = 0.0;
  for (const ChartAxis& a : imm.chart()) {
    chart_scale = std::max(chart_scale, a.length());
  }
  for (int iter = 0; iter < 60; ++iter) {
    Vec gamma;
    try {
      gamma = gauss_map(structure, imm, u);
    } catch (const GeomError&) {
      return false;
    }
    if ((gamma - target).norm() < 1e-11) return true;
    Mat jac(target.size(), n);
    for (int i = 0; i < n; ++i) {
      Vec up = u, dn = u;
      up(i) += h;
      dn(i) -= h;
      try {
        jac.col(i) = (gauss_map(structure, imm, up) -
                      gauss_map(structure, imm, dn)) /
                     (2.0 * h);
      } catch (const GeomError&) {
        return false;
      }
    }
    Mat reduced = complement.transpose() * jac;
    Vec rhs = complement.transpose() * (gamma - target);
    Eigen::FullPivLU<Mat> lu(reduced);
    if (!lu.isInvertible()) return false;
    Vec step = lu.solve(rhs);
    if (!step.allFinite() || step.norm() > 0.5 * chart_scale) return false;
    u -= step;
  }
  return false;
}

}  // namespace

int degree_by_preimage(const TranslationStructure& structure,
                       const ParametricImmersion& imm,
                       const QuadratureGrid& grid, const Vec& target_direction,
                       double h_field) {
  const int n = imm.intrinsic_dim();
  if (n % 2 != 0) {
    fail(Errc::odd_dimension, "degree counting needs even dimension");
  }
  if (target_direction.size() != structure.model_dim()) {
    fail(Errc::domain_error, "target direction has wrong dimension");
  }
  Vec target = target_direction / target_direction.norm();

  const int total = grid.node_count();
  std::vector<double> dots(total);
  for (int k = 0; k < total; ++k) {
    dots[k] = gauss_map(structure, imm, grid.node(k)).dot(target);
  }

  // Seed Newton at grid nodes whose alignment dominates their axis
  // neighbours (periodic axes wrap, open axes clip).
  const std::vector<int>& counts = grid.nodes_per_axis();
  auto flatten = [&](const std::vector<int>& idx) {
    int k = 0;
    for (size_t ax = 0; ax < counts.size(); ++ax) k = k * counts[ax] + idx[ax];
    return k;
  };
  std::vector<int> seeds;
  for (int k = 0; k < total; ++k) {
    const std::vector<int> idx = grid.unflatten(k);
    bool is_max = true;
    for (size_t ax = 0; ax < counts.size() && is_max; ++ax) {
      for (int step : {-1, 1}) {
        std::vector<int> nb = idx;
        nb[ax] += step;
        if (nb[ax] < 0 || nb[ax] >= counts[ax]) {
          if (!imm.chart()[ax].periodic) continue;
          nb[ax] = (nb[ax] + counts[ax]) % counts[ax];
        }
        if (dots[flatten(nb)] > dots[k]) {
          is_max = false;
          break;
        }
      }
    }
    if (is_max) seeds.push_back(k);
  }

  const Mat complement = complement_basis(target);
  std::vector<Preimage> roots;
  bool any_tight_seed = false;
  bool any_converged = false;
  for (int seed : seeds) {
    if (dots[seed] > 1.0 - 1e-9) any_tight_seed = true;
    Vec u = grid.node(seed);
    if (!newton_refine(structure, imm, target, complement, h_field, u)) {
      continue;
    }
    any_converged = true;
    Vec point = imm.eval_raw(u);
    bool duplicate = false;
    for (const Preimage& r : roots) {
      if ((r.point - point).norm() < 1e-6) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    const double kappa =
        translational_curvature(structure, imm, u, h_field).value();
    if (std::abs(kappa) <= 1e-6) {
      fail(Errc::not_regular_value,
           "target direction has a nearly critical preimage");
    }
    roots.push_back({u, point, kappa});
  }

  if (any_tight_seed && !any_converged) {
    fail(Errc::convergence_failure,
         "Newton failed near an apparent preimage of the target");
  }

  int degree = 0;
  for (const Preimage& r : roots) degree += (r.kappa > 0.0) ? 1 : -1;
  return degree;
}

int degree_by_preimage_robust(const TranslationStructure& structure,
                              const ParametricImmersion& imm,
                              const QuadratureGrid& grid, Vec target_direction,
                              double h_field, int max_attempts) {
  Vec target = target_direction / target_direction.norm();
  for (int attempt = 0;; ++attempt) {
    try {
      return degree_by_preimage(structure, imm, grid, target, h_field);
    } catch (const GeomError& e) {
      if (e.code() != Errc::not_regular_value || attempt + 1 >= max_attempts) {
        throw;
      }
    }
    // Deterministic nudge, different on every retry.
    Vec tweak = Vec::Zero(target.size());
    tweak((attempt + 1) % target.size()) = 0.013 * (attempt + 1);
    target = (target + tweak).normalized();
  }
}

int euler_characteristic(const ParametricImmersion& imm) {
  const Topology& topo = imm.topology();
  if (topo.euler_char == std::numeric_limits<int>::min()) {
    fail(Errc::unknown_topology, "immersion has no declared topology");
  }
  return topo.euler_char;
}

int euler_characteristic_mesh(const ParametricImmersion& imm, int n0, int n1) {
  if (imm.intrinsic_dim() != 2) {
    fail(Errc::domain_error, "mesh counting is implemented for n = 2 only");
  }
  if (n0 < 3 || n1 < 3) fail(Errc::domain_error, "mesh needs >= 3 nodes");
  const bool per0 = imm.chart()[0].periodic;
  const bool per1 = imm.chart()[1].periodic;

  std::set<int> vertices;
  std::set<std::pair<int, int>> edges;
  int faces = 0;
  auto add_tri = [&](int a, int b, int c) {
    vertices.insert({a, b, c});
    auto add_edge = [&](int x, int y) {
      edges.insert({std::min(x, y), std::max(x, y)});
    };
    add_edge(a, b);
    add_edge(b, c);
    add_edge(a, c);
    ++faces;
  };

  const int rows = n0;
  const int cols = n1;
  auto vid = [&](int i, int j) {
    if (per0) i = (i + rows) % rows;
    if (per1) j = (j + cols) % cols;
    return i * cols + j;
  };

  const int row_lim = per0 ? rows : rows - 1;
  const int col_lim = per1 ? cols : cols - 1;
  for (int i = 0; i < row_lim; ++i) {
    for (int j = 0; j < col_lim; ++j) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i, j + 1),
                d = vid(i + 1, j + 1);
      add_tri(a, b, c);
      add_tri(b, d, c);
    }
  }
  // Close polar (non-periodic) axes with cone points.
  int next_id = rows * cols;
  if (!per0) {
    const int north = next_id++, south = next_id++;
    for (int j = 0; j < col_lim; ++j) {
      add_tri(north, vid(0, j), vid(0, j + 1));
      add_tri(south, vid(rows - 1, j), vid(rows - 1, j + 1));
    }
  }
  if (!per1) {
    const int west = next_id++, east = next_id++;
    for (int i = 0; i < row_lim; ++i) {
      add_tri(west, vid(i, 0), vid(i + 1, 0));
      add_tri(east, vid(i, cols - 1), vid(i + 1, cols - 1));
    }
  }
  return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) +
         faces;
}

}  // namespace tg
