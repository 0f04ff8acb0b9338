#include "transgauss/transgauss.h"

#include "core/beltrami.hpp"
#include "core/curvature.hpp"
#include "core/gauss_bonnet.hpp"
#include "core/immersion.hpp"
#include "core/rigidity.hpp"
#include "core/sphere.hpp"
#include "core/structures.hpp"

#include <json.hpp>

#include <cstring>
#include <memory>
#include <string>

using nlohmann::json;

struct tg_structure {
  std::unique_ptr<tg::TranslationStructure> impl;
};

struct tg_immersion {
  tg::ParametricImmersion impl;
};

struct tg_grid {
  tg::QuadratureGrid impl;
};

namespace {

thread_local std::string g_last_error;

tg_status map_code(tg::Errc code) {
  switch (code) {
    case tg::Errc::domain_error: return TG_ERR_DOMAIN;
    case tg::Errc::antipodal_points: return TG_ERR_ANTIPODAL;
    case tg::Errc::out_of_domain: return TG_ERR_OUT_OF_DOMAIN;
    case tg::Errc::immersion_degenerate: return TG_ERR_DEGENERATE_IMMERSION;
    case tg::Errc::eigen_solve_failure: return TG_ERR_EIGEN_SOLVE;
    case tg::Errc::degenerate_configuration:
      return TG_ERR_DEGENERATE_CONFIGURATION;
    case tg::Errc::not_in_hemisphere: return TG_ERR_NOT_IN_HEMISPHERE;
    case tg::Errc::outside_hemisphere: return TG_ERR_OUTSIDE_HEMISPHERE;
    case tg::Errc::odd_dimension: return TG_ERR_ODD_DIMENSION;
    case tg::Errc::unknown_topology: return TG_ERR_UNKNOWN_TOPOLOGY;
    case tg::Errc::not_regular_value: return TG_ERR_NOT_REGULAR_VALUE;
    case tg::Errc::convergence_failure: return TG_ERR_CONVERGENCE;
    case tg::Errc::gk_vanishes: return TG_ERR_GK_VANISHES;
    case tg::Errc::mixed_curvature_signs: return TG_ERR_MIXED_CURVATURE_SIGNS;
    case tg::Errc::no_admissible_t: return TG_ERR_NO_ADMISSIBLE_T;
    case tg::Errc::frame_not_orthonormal: return TG_ERR_FRAME_NOT_ORTHONORMAL;
  }
  return TG_ERR_INTERNAL;
}

template <typename Fn>
tg_status wrap(Fn&& fn) {
  try {
    fn();
    return TG_OK;
  } catch (const tg::GeomError& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TG_ERR_INTERNAL;
  }
}

tg::Vec to_vec(const double* data, int size) {
  tg::Vec v(size);
  for (int i = 0; i < size; ++i) v(i) = data[i];
  return v;
}

void from_vec(const tg::Vec& v, double* out) {
  for (int i = 0; i < v.size(); ++i) out[i] = v(i);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<double> as_std(const tg::Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json certificate_json(const tg::CertificateReport& r) {
  return json{{"certified", r.certified},
              {"convention", tg::radius_convention_name(r.convention)},
              {"cap_center", as_std(r.cap_center)},
              {"cap_radius", r.cap_radius},
              {"threshold_tan_half_radius", r.threshold},
              {"min_abs_lambda", r.min_abs_lambda},
              {"margin_curvature", r.margin_curvature},
              {"min_abs_lambda_plus_c", r.min_abs_lambda_plus_c},
              {"margin_invertibility", r.margin_invertibility},
              {"worst_curvature_u", as_std(r.worst_curvature_u)},
              {"worst_invertibility_u", as_std(r.worst_invertibility_u)},
              {"delta", r.delta},
              {"note", r.note}};
}

json xia_json(const tg::XiaReport& r) {
  json out{{"certified", r.certified},
           {"failed_stage", r.failed_stage},
           {"margin", r.margin},
           {"delta", r.delta},
           {"gk_min_abs", r.gk_min_abs},
           {"cap_radius", r.cap_radius},
           {"hemisphere_min_dot", r.hemisphere_min_dot},
           {"h", r.constants.h},
           {"eps", r.constants.eps},
           {"k_constant", r.k_constant},
           {"flipped_orientation", r.flipped_orientation},
           {"lambda_min", r.lambda_min},
           {"lambda_max", r.lambda_max},
           {"t_star", r.t_star},
           {"mu_min_at_t_star", r.mu_min_at_t_star},
           {"mu_bound_min_slack", r.mu_bound_min_slack}};
  if (r.cap_center.size() > 0) out["cap_center"] = as_std(r.cap_center);
  if (!r.failed_stage.empty() &&
      (r.failed_stage == "gauss_kronecker" || r.failed_stage == "hemisphere" ||
       r.failed_stage == "curvature_sign")) {
    out["certificate"] = nullptr;
  } else {
    out["certificate"] = certificate_json(r.certificate);
  }
  return out;
}

json counterexample_json(const tg::CounterexampleReport& r) {
  return json{{"ok", r.ok},
              {"epsilon", r.epsilon},
              {"r", r.r},
              {"window", {{"lo", r.j_lo}, {"hi", r.j_hi}}},
              {"pick_interval", {{"lo", r.pick_lo}, {"hi", r.pick_hi}}},
              {"empirical_interval",
               {{"lo", r.empirical_lo}, {"hi", r.empirical_hi}}},
              {"cap_radius", r.cap_radius},
              {"threshold", r.threshold},
              {"lambda1", r.lambda1},
              {"lambda2", r.lambda2},
              {"min_abs_lambda_grid", r.min_abs_lambda_grid},
              {"margin", r.margin},
              {"euler_characteristic", r.euler_char}};
}

}  // namespace

extern "C" {

const char* tg_status_name(tg_status status) {
  switch (status) {
    case TG_OK: return "TG_OK";
    case TG_ERR_DOMAIN: return "TG_ERR_DOMAIN";
    case TG_ERR_ANTIPODAL: return "TG_ERR_ANTIPODAL";
    case TG_ERR_OUT_OF_DOMAIN: return "TG_ERR_OUT_OF_DOMAIN";
    case TG_ERR_DEGENERATE_IMMERSION: return "TG_ERR_DEGENERATE_IMMERSION";
    case TG_ERR_EIGEN_SOLVE: return "TG_ERR_EIGEN_SOLVE";
    case TG_ERR_DEGENERATE_CONFIGURATION:
      return "TG_ERR_DEGENERATE_CONFIGURATION";
    case TG_ERR_NOT_IN_HEMISPHERE: return "TG_ERR_NOT_IN_HEMISPHERE";
    case TG_ERR_OUTSIDE_HEMISPHERE: return "TG_ERR_OUTSIDE_HEMISPHERE";
    case TG_ERR_ODD_DIMENSION: return "TG_ERR_ODD_DIMENSION";
    case TG_ERR_UNKNOWN_TOPOLOGY: return "TG_ERR_UNKNOWN_TOPOLOGY";
    case TG_ERR_NOT_REGULAR_VALUE: return "TG_ERR_NOT_REGULAR_VALUE";
    case TG_ERR_CONVERGENCE: return "TG_ERR_CONVERGENCE";
    case TG_ERR_GK_VANISHES: return "TG_ERR_GK_VANISHES";
    case TG_ERR_MIXED_CURVATURE_SIGNS: return "TG_ERR_MIXED_CURVATURE_SIGNS";
    case TG_ERR_NO_ADMISSIBLE_T: return "TG_ERR_NO_ADMISSIBLE_T";
    case TG_ERR_FRAME_NOT_ORTHONORMAL: return "TG_ERR_FRAME_NOT_ORTHONORMAL";
    case TG_ERR_INTERNAL: return "TG_ERR_INTERNAL";
  }
  return "TG_ERR_UNKNOWN";
}

const char* tg_last_error_message(void) { return g_last_error.c_str(); }

void tg_string_free(char* s) { delete[] s; }

tg_status tg_sphere_volume(int n, double* out) {
  return wrap([&] { *out = tg::sphere_volume(n); });
}

tg_status tg_geodesic_distance(int dim, const double* p, const double* q,
                               double* out) {
  return wrap([&] {
    *out = tg::geodesic_distance(tg::SpherePoint(to_vec(p, dim)),
                                 tg::SpherePoint(to_vec(q, dim)));
  });
}

tg_status tg_exp_map(int dim, const double* p, const double* v, double* out) {
  return wrap([&] {
    tg::SpherePoint base(to_vec(p, dim));
    tg::SpherePoint result =
        tg::exp_map(tg::TangentVector(base, to_vec(v, dim)));
    from_vec(result.coords(), out);
  });
}

tg_status tg_tangent_project(int dim, const double* p, const double* w,
                             double* out) {
  return wrap([&] {
    tg::TangentVector result =
        tg::tangent_project(tg::SpherePoint(to_vec(p, dim)), to_vec(w, dim));
    from_vec(result.vec(), out);
  });
}

tg_status tg_parallel_transport(int dim, const double* p, const double* q,
                                const double* v, double* out) {
  return wrap([&] {
    tg::SpherePoint from(to_vec(p, dim)), to(to_vec(q, dim));
    tg::TangentVector result =
        tg::parallel_transport(from, to, tg::TangentVector(from, to_vec(v, dim)));
    from_vec(result.vec(), out);
  });
}

tg_status tg_parallel_transport_ode(int dim, const double* p, const double* q,
                                    const double* v, int steps, double* out) {
  return wrap([&] {
    tg::SpherePoint from(to_vec(p, dim)), to(to_vec(q, dim));
    tg::TangentVector result = tg::parallel_transport_ode(
        from, to, tg::TangentVector(from, to_vec(v, dim)), steps);
    from_vec(result.vec(), out);
  });
}

tg_status tg_structure_create_parallel(int dim, const double* base_point,
                                       tg_structure** out) {
  return wrap([&] {
    *out = new tg_structure{std::make_unique<tg::ParallelTransportStructure>(
        tg::SpherePoint(to_vec(base_point, dim)))};
  });
}

tg_status tg_structure_create_quaternion(tg_structure** out) {
  return wrap([&] {
    *out = new tg_structure{std::make_unique<tg::QuaternionStructure>()};
  });
}

tg_status tg_structure_create_transported_frame(int dim,
                                                const double* base_point,
                                                tg_structure** out) {
  return wrap([&] {
    tg::SpherePoint base(to_vec(base_point, dim));
    *out = new tg_structure{std::make_unique<tg::FrameStructure>(
        base, tg::transported_frame_fields(base), 1e-8,
        [base](const tg::SpherePoint& p) {
          return 1.0 + p.dot(base) > 1e-10;
        })};
  });
}

tg_status tg_structure_create_frame(int dim, const double* base_point,
                                    tg_frame_field_fn fields, void* user_data,
                                    double gram_tol, tg_structure** out) {
  return wrap([&] {
    tg::SpherePoint base(to_vec(base_point, dim));
    std::vector<tg::FrameStructure::FieldFn> fns;
    for (int i = 0; i < dim - 1; ++i) {
      fns.push_back([fields, user_data, i, dim](const tg::SpherePoint& p) {
        std::vector<double> buf(dim);
        fields(i, p.coords().data(), buf.data(), user_data);
        return to_vec(buf.data(), dim);
      });
    }
    *out = new tg_structure{
        std::make_unique<tg::FrameStructure>(base, std::move(fns), gram_tol)};
  });
}

void tg_structure_free(tg_structure* s) { delete s; }

int tg_structure_ambient_dim(const tg_structure* s) {
  return s->impl->ambient_dim();
}

int tg_structure_model_dim(const tg_structure* s) {
  return s->impl->model_dim();
}

tg_status tg_structure_in_domain(const tg_structure* s, const double* p,
                                 int* out) {
  return wrap([&] {
    *out = s->impl->in_domain(
               tg::SpherePoint(to_vec(p, s->impl->ambient_dim())))
               ? 1
               : 0;
  });
}

tg_status tg_structure_reference_point(const tg_structure* s, double* out) {
  return wrap([&] { from_vec(s->impl->reference_point().coords(), out); });
}

tg_status tg_structure_apply(const tg_structure* s, const double* p,
                             const double* v, double* out) {
  return wrap([&] {
    const int dim = s->impl->ambient_dim();
    tg::SpherePoint base(to_vec(p, dim));
    from_vec(s->impl->apply(base, tg::TangentVector(base, to_vec(v, dim))),
             out);
  });
}

tg_status tg_structure_unapply(const tg_structure* s, const double* p,
                               const double* w, double* out) {
  return wrap([&] {
    const int dim = s->impl->ambient_dim();
    tg::SpherePoint base(to_vec(p, dim));
    from_vec(
        s->impl->unapply(base, to_vec(w, s->impl->model_dim())).vec(), out);
  });
}

tg_status tg_structure_invariant_field(const tg_structure* s, const double* p,
                                       const double* x, const double* q,
                                       double* out) {
  return wrap([&] {
    const int dim = s->impl->ambient_dim();
    tg::SpherePoint base(to_vec(p, dim));
    tg::TangentVector field = s->impl->invariant_field(
        tg::TangentVector(base, to_vec(x, dim)),
        tg::SpherePoint(to_vec(q, dim)));
    from_vec(field.vec(), out);
  });
}

tg_status tg_immersion_create_clifford(int n, double r, tg_immersion** out) {
  return wrap([&] { *out = new tg_immersion{tg::make_clifford(n, r)}; });
}

tg_status tg_immersion_create_geodesic_sphere(int dim, const double* center,
                                              double rho, tg_immersion** out) {
  return wrap([&] {
    *out = new tg_immersion{tg::make_geodesic_sphere(
        tg::SpherePoint(to_vec(center, dim)), rho, dim - 2)};
  });
}

tg_status tg_immersion_create_perturbed_sphere(int dim, const double* center,
                                               double rho, double amplitude,
                                               int frequency,
                                               tg_immersion** out) {
  return wrap([&] {
    *out = new tg_immersion{tg::make_perturbed_sphere(
        tg::SpherePoint(to_vec(center, dim)), rho, amplitude, frequency)};
  });
}

void tg_immersion_free(tg_immersion* imm) { delete imm; }

int tg_immersion_intrinsic_dim(const tg_immersion* imm) {
  return imm->impl.intrinsic_dim();
}

int tg_immersion_ambient_dim(const tg_immersion* imm) {
  return imm->impl.ambient_dim();
}

int tg_immersion_orientation(const tg_immersion* imm) {
  return imm->impl.orientation();
}

tg_status tg_immersion_set_orientation(tg_immersion* imm, int sign) {
  return wrap([&] { imm->impl.set_orientation(sign); });
}

tg_status tg_immersion_set_fd_steps(tg_immersion* imm, double h_first,
                                    double h_second) {
  return wrap([&] { imm->impl.set_fd_steps(h_first, h_second); });
}

tg_status tg_immersion_chart_axis(const tg_immersion* imm, int axis,
                                  double* lo, double* hi, int* periodic) {
  return wrap([&] {
    if (axis < 0 || axis >= imm->impl.intrinsic_dim()) {
      tg::fail(tg::Errc::domain_error, "axis index out of range");
    }
    const tg::ChartAxis& a = imm->impl.chart()[axis];
    *lo = a.lo;
    *hi = a.hi;
    *periodic = a.periodic ? 1 : 0;
  });
}

tg_status tg_immersion_euler_characteristic(const tg_immersion* imm,
                                            int* out) {
  return wrap([&] { *out = tg::euler_characteristic(imm->impl); });
}

tg_status tg_immersion_eval(const tg_immersion* imm, const double* u,
                            double* out) {
  return wrap([&] {
    from_vec(imm->impl.eval(to_vec(u, imm->impl.intrinsic_dim())).coords(),
             out);
  });
}

tg_status tg_immersion_normal(const tg_immersion* imm, const double* u,
                              double* out) {
  return wrap([&] {
    from_vec(
        tg::unit_normal(imm->impl, to_vec(u, imm->impl.intrinsic_dim())).vec(),
        out);
  });
}

tg_status tg_immersion_metric(const tg_immersion* imm, const double* u,
                              double* out) {
  return wrap([&] {
    const int n = imm->impl.intrinsic_dim();
    tg::TangentFrame frame = tg::tangent_frame(imm->impl, to_vec(u, n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out[i * n + j] = frame.metric(i, j);
    }
  });
}

tg_status tg_grid_create(const tg_immersion* imm, const int* nodes_per_axis,
                         tg_grid** out) {
  return wrap([&] {
    std::vector<int> nodes(nodes_per_axis,
                           nodes_per_axis + imm->impl.intrinsic_dim());
    *out = new tg_grid{tg::QuadratureGrid::for_immersion(imm->impl, nodes)};
  });
}

void tg_grid_free(tg_grid* grid) { delete grid; }

int tg_grid_node_count(const tg_grid* grid) { return grid->impl.node_count(); }

tg_status tg_grid_node(const tg_grid* grid, int k, double* u_out,
                       double* weight_out) {
  return wrap([&] {
    if (k < 0 || k >= grid->impl.node_count()) {
      tg::fail(tg::Errc::domain_error, "node index out of range");
    }
    from_vec(grid->impl.node(k), u_out);
    *weight_out = grid->impl.weight(k);
  });
}

tg_status tg_curvature_eval(const tg_structure* s, const tg_immersion* imm,
                            const double* u, double h_field,
                            double* lambda_out, tg_curvature_data* data) {
  return wrap([&] {
    tg::CurvatureSample sample = tg::curvature_sample(
        *s->impl, imm->impl, to_vec(u, imm->impl.intrinsic_dim()), h_field);
    if (lambda_out) from_vec(sample.lambda, lambda_out);
    if (data) {
      data->c = sample.c;
      data->kappa_gamma = sample.kappa_gamma;
      data->kappa_gamma_alt = sample.kappa_gamma_alt;
      data->gauss_kronecker = sample.gauss_kronecker;
      data->prop_residual = sample.prop_residual;
    }
  });
}

tg_status tg_gauss_map(const tg_structure* s, const tg_immersion* imm,
                       const double* u, double* out) {
  return wrap([&] {
    from_vec(tg::gauss_map(*s->impl, imm->impl,
                           to_vec(u, imm->impl.intrinsic_dim())),
             out);
  });
}

tg_status tg_gauss_bonnet(const tg_structure* s, const tg_immersion* imm,
                          const tg_grid* grid, double h_field,
                          tg_gauss_bonnet_data* out) {
  return wrap([&] {
    tg::GaussBonnetReport report =
        tg::gauss_bonnet_check(*s->impl, imm->impl, grid->impl, h_field);
    out->integral = report.integral;
    out->target = report.target;
    out->residual = report.residual;
    out->degree_estimate = report.degree_estimate;
    out->euler_char = report.euler_char;
  });
}

tg_status tg_degree_by_preimage(const tg_structure* s, const tg_immersion* imm,
                                const tg_grid* grid,
                                const double* target_direction, double h_field,
                                int max_attempts, int* out) {
  return wrap([&] {
    *out = tg::degree_by_preimage_robust(
        *s->impl, imm->impl, grid->impl,
        to_vec(target_direction, s->impl->model_dim()), h_field,
        max_attempts);
  });
}

tg_status tg_enclosing_cap(int dim, const double* points, int count,
                           double* center_out, double* radius_out) {
  return wrap([&] {
    std::vector<tg::SpherePoint> samples;
    samples.reserve(count);
    for (int i = 0; i < count; ++i) {
      samples.emplace_back(to_vec(points + i * dim, dim));
    }
    tg::CapResult cap = tg::enclosing_cap(samples);
    from_vec(cap.center.coords(), center_out);
    *radius_out = cap.radius;
  });
}

tg_status tg_lemma_radius_clifford(double r, double* out) {
  return wrap([&] { *out = tg::lemma_radius_clifford(r); });
}

tg_status tg_clifford_principal_curvatures(double r, double* lambda1,
                                           double* lambda2) {
  return wrap([&] {
    auto [l1, l2] = tg::clifford_principal_curvatures(r);
    *lambda1 = l1;
    *lambda2 = l2;
  });
}

tg_status tg_certify_sphere(const tg_immersion* imm, const tg_grid* grid,
                            double delta, int convention, int* certified,
                            char** json_report) {
  return wrap([&] {
    const tg::RadiusConvention conv = convention == 0
                                          ? tg::RadiusConvention::enclosing_cap
                                          : tg::RadiusConvention::lemma_empty_ball;
    tg::CertificateReport report =
        tg::certify_sphere(imm->impl, grid->impl, delta, conv);
    if (certified) *certified = report.certified ? 1 : 0;
    if (json_report) *json_report = dup_string(certificate_json(report).dump());
  });
}

tg_status tg_counterexample_family(double epsilon, int n, int grid_nodes,
                                   int* ok, char** json_report) {
  return wrap([&] {
    tg::CounterexampleReport report =
        tg::counterexample_family(epsilon, n, grid_nodes);
    if (ok) *ok = report.ok ? 1 : 0;
    if (json_report) {
      *json_report = dup_string(counterexample_json(report).dump());
    }
  });
}

tg_status tg_beltrami_project(int dim, const double* p, double* out) {
  return wrap([&] {
    from_vec(tg::beltrami_project(tg::SpherePoint(to_vec(p, dim))), out);
  });
}

tg_status tg_beltrami_inverse(int dim, const double* x, double* out) {
  return wrap([&] {
    from_vec(tg::beltrami_inverse(to_vec(x, dim - 1)).coords(), out);
  });
}

tg_status tg_shrink_map(int dim, const double* p, double t, double* out) {
  return wrap([&] {
    from_vec(tg::shrink_map(tg::SpherePoint(to_vec(p, dim)), t).coords(), out);
  });
}

tg_status tg_shrink_map_derivative(int dim, const double* p, const double* v,
                                   double t, double* out) {
  return wrap([&] {
    tg::SpherePoint base(to_vec(p, dim));
    from_vec(tg::shrink_map_derivative(
                 base, tg::TangentVector(base, to_vec(v, dim)), t)
                 .vec(),
             out);
  });
}

tg_status tg_transported_normal(int dim, const double* p, const double* eta,
                                double t, double* out) {
  return wrap([&] {
    tg::SpherePoint base(to_vec(p, dim));
    from_vec(tg::transported_normal(
                 base, tg::TangentVector(base, to_vec(eta, dim)), t)
                 .vec(),
             out);
  });
}

tg_status tg_curvature_transfer_factor(int dim, const double* p,
                                       const double* eta, const double* v,
                                       double t, double* out) {
  return wrap([&] {
    tg::SpherePoint base(to_vec(p, dim));
    *out = tg::curvature_transfer_factor(
        base, tg::TangentVector(base, to_vec(eta, dim)),
        tg::TangentVector(base, to_vec(v, dim)), t);
  });
}

tg_status tg_image_speed_sq(int dim, const double* p, const double* v,
                            double t, double* out) {
  return wrap([&] {
    tg::SpherePoint base(to_vec(p, dim));
    *out = tg::image_speed_sq(base, tg::TangentVector(base, to_vec(v, dim)),
                              t);
  });
}

tg_status tg_hemisphere_constants(const tg_immersion* imm, const tg_grid* grid,
                                  double* h_out, double* eps_out) {
  return wrap([&] {
    tg::HemisphereConstants constants =
        tg::hemisphere_constants(imm->impl, grid->impl);
    *h_out = constants.h;
    *eps_out = constants.eps;
  });
}

tg_status tg_k_bound(double h, double* out) {
  return wrap([&] { *out = tg::k_bound(h); });
}

tg_status tg_xia_certify(const tg_immersion* imm, const tg_grid* grid,
                         double margin, double delta, int* certified,
                         char** json_report) {
  return wrap([&] {
    tg::XiaReport report =
        tg::xia_certify(imm->impl, grid->impl, margin, delta);
    if (certified) *certified = report.certified ? 1 : 0;
    if (json_report) *json_report = dup_string(xia_json(report).dump());
  });
}

}  // extern "C"
