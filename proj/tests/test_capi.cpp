// Exercises the shared-library surface through the C header only.

#include <transgauss/transgauss.h>

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

const double kNorth[4] = {0.0, 0.0, 0.0, 1.0};
const double kE1[4] = {1.0, 0.0, 0.0, 0.0};

struct Handles {
  tg_immersion* imm = nullptr;
  tg_structure* st = nullptr;
  tg_grid* grid = nullptr;
  ~Handles() {
    tg_grid_free(grid);
    tg_structure_free(st);
    tg_immersion_free(imm);
  }
};

}  // namespace

TEST_CASE("capi: status names and volumes") {
  CHECK(std::string(tg_status_name(TG_OK)) == "TG_OK");
  double volume = 0.0;
  REQUIRE(tg_sphere_volume(2, &volume) == TG_OK);
  CHECK(volume == doctest::Approx(4 * M_PI).epsilon(1e-14));
  CHECK(tg_sphere_volume(0, &volume) == TG_ERR_DOMAIN);
  CHECK(std::strlen(tg_last_error_message()) > 0);
}

TEST_CASE("capi: transport and its error codes") {
  const double e2[4] = {0.0, 1.0, 0.0, 0.0};
  const double v[4] = {0.0, 1.0, 0.0, 0.0};
  double out[4];
  REQUIRE(tg_parallel_transport(4, kE1, e2, v, out) == TG_OK);
  CHECK(out[0] == doctest::Approx(-1.0).epsilon(1e-14));

  const double anti[4] = {-1.0, 0.0, 0.0, 0.0};
  CHECK(tg_parallel_transport(4, kE1, anti, v, out) == TG_ERR_ANTIPODAL);

  double ode[4];
  REQUIRE(tg_parallel_transport_ode(4, kE1, e2, v, 5000, ode) == TG_OK);
  CHECK(std::abs(ode[0] - out[0]) < 1e-8);
}

TEST_CASE("capi: exp map and projection") {
  double out[4];
  const double v[4] = {0.0, M_PI / 2, 0.0, 0.0};
  REQUIRE(tg_exp_map(4, kE1, v, out) == TG_OK);
  CHECK(out[1] == doctest::Approx(1.0).epsilon(1e-12));
  const double w[4] = {1.0, 1.0, 0.0, 0.0};
  REQUIRE(tg_tangent_project(4, kE1, w, out) == TG_OK);
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(1.0));
}

TEST_CASE("capi: immersion, grid and curvature round trip") {
  Handles h;
  REQUIRE(tg_immersion_create_clifford(2, 0.5, &h.imm) == TG_OK);
  CHECK(tg_immersion_intrinsic_dim(h.imm) == 2);
  CHECK(tg_immersion_ambient_dim(h.imm) == 4);
  int chi = 99;
  REQUIRE(tg_immersion_euler_characteristic(h.imm, &chi) == TG_OK);
  CHECK(chi == 0);

  double lo, hi;
  int periodic = 0;
  REQUIRE(tg_immersion_chart_axis(h.imm, 0, &lo, &hi, &periodic) == TG_OK);
  CHECK(periodic == 1);
  CHECK(hi == doctest::Approx(2 * M_PI));

  REQUIRE(tg_structure_create_parallel(4, kE1, &h.st) == TG_OK);
  const int nodes[2] = {16, 16};
  REQUIRE(tg_grid_create(h.imm, nodes, &h.grid) == TG_OK);
  CHECK(tg_grid_node_count(h.grid) == 256);

  double u[2], weight = 0.0;
  REQUIRE(tg_grid_node(h.grid, 37, u, &weight) == TG_OK);
  CHECK(weight > 0.0);

  double lambda[2];
  tg_curvature_data data{};
  REQUIRE(tg_curvature_eval(h.st, h.imm, u, 1e-4, lambda, &data) == TG_OK);
  CHECK(lambda[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-8));
  CHECK(lambda[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-8));
  CHECK(data.gauss_kronecker == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(data.prop_residual < 1e-5);
  CHECK(std::abs(data.kappa_gamma - data.kappa_gamma_alt) < 1e-5);

  double point[4];
  REQUIRE(tg_immersion_eval(h.imm, u, point) == TG_OK);
  double normal[4];
  REQUIRE(tg_immersion_normal(h.imm, u, normal) == TG_OK);
  double dot = 0.0;
  for (int i = 0; i < 4; ++i) dot += point[i] * normal[i];
  CHECK(std::abs(dot) < 1e-10);

  double metric[4];
  REQUIRE(tg_immersion_metric(h.imm, u, metric) == TG_OK);
  CHECK(metric[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(metric[3] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("capi: gauss map, curvature integral and degree") {
  Handles h;
  REQUIRE(tg_immersion_create_geodesic_sphere(4, kNorth, 0.5, &h.imm) ==
          TG_OK);
  REQUIRE(tg_structure_create_parallel(4, kNorth, &h.st) == TG_OK);
  const int nodes[2] = {48, 48};
  REQUIRE(tg_grid_create(h.imm, nodes, &h.grid) == TG_OK);

  tg_gauss_bonnet_data data{};
  REQUIRE(tg_gauss_bonnet(h.st, h.imm, h.grid, 1e-4, &data) == TG_OK);
  CHECK(data.euler_char == 2);
  CHECK(data.residual < 1e-5);
  CHECK(std::abs(data.integral - 4 * M_PI) < 1e-5);

  double u[2] = {1.1, 2.3};
  double target[3];
  REQUIRE(tg_gauss_map(h.st, h.imm, u, target) == TG_OK);
  int degree = 0;
  REQUIRE(tg_degree_by_preimage(h.st, h.imm, h.grid, target, 1e-4, 5,
                                &degree) == TG_OK);
  CHECK(degree == 1);
}

TEST_CASE("capi: structure apply/unapply and invariant fields") {
  tg_structure* st = nullptr;
  REQUIRE(tg_structure_create_quaternion(&st) == TG_OK);
  CHECK(tg_structure_model_dim(st) == 3);
  double ref[4];
  REQUIRE(tg_structure_reference_point(st, ref) == TG_OK);
  CHECK(ref[0] == doctest::Approx(1.0));

  const double g[4] = {0.5, 0.5, 0.5, 0.5};
  const double v[4] = {-0.5, 0.5, 0.5, -0.5};  // tangent at g
  double w[3];
  REQUIRE(tg_structure_apply(st, g, v, w) == TG_OK);
  double back[4];
  REQUIRE(tg_structure_unapply(st, g, w, back) == TG_OK);
  for (int i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(v[i]).epsilon(1e-12));

  int inside = 0;
  REQUIRE(tg_structure_in_domain(st, g, &inside) == TG_OK);
  CHECK(inside == 1);
  tg_structure_free(st);
}

TEST_CASE("capi: custom frame structure via callback") {
  // Constant coordinate frame on S^3 would not be tangent; use the
  // transported frame as the callback payload instead.
  tg_structure* reference = nullptr;
  REQUIRE(tg_structure_create_transported_frame(4, kE1, &reference) == TG_OK);
  tg_structure* parallel = nullptr;
  REQUIRE(tg_structure_create_parallel(4, kE1, &parallel) == TG_OK);

  const double p[4] = {0.0, 0.8, 0.6, 0.0};
  const double v[4] = {0.0, -0.6, 0.8, 0.0};
  double via_frame[3], via_parallel[3];
  REQUIRE(tg_structure_apply(reference, p, v, via_frame) == TG_OK);
  REQUIRE(tg_structure_apply(parallel, p, v, via_parallel) == TG_OK);
  for (int i = 0; i < 3; ++i) {
    CHECK(via_frame[i] == doctest::Approx(via_parallel[i]).epsilon(1e-9));
  }
  tg_structure_free(parallel);
  tg_structure_free(reference);
}

TEST_CASE("capi: certificates and reports") {
  Handles h;
  REQUIRE(tg_immersion_create_geodesic_sphere(4, kNorth, 0.5, &h.imm) ==
          TG_OK);
  const int nodes[2] = {32, 32};
  REQUIRE(tg_grid_create(h.imm, nodes, &h.grid) == TG_OK);

  int certified = 0;
  char* report = nullptr;
  REQUIRE(tg_certify_sphere(h.imm, h.grid, 1e-6, 0, &certified, &report) ==
          TG_OK);
  CHECK(certified == 1);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"certified\":true") != std::string::npos);
  tg_string_free(report);
}

TEST_CASE("capi: counterexample family and shrink pipeline") {
  int ok = 0;
  char* report = nullptr;
  REQUIRE(tg_counterexample_family(0.2, 2, 32, &ok, &report) == TG_OK);
  CHECK(ok == 1);
  CHECK(std::string(report).find("\"euler_characteristic\":0") !=
        std::string::npos);
  tg_string_free(report);
  CHECK(tg_counterexample_family(0.45, 2, 32, &ok, &report) == TG_ERR_DOMAIN);

  Handles h;
  REQUIRE(tg_immersion_create_geodesic_sphere(4, kNorth, 1.2, &h.imm) ==
          TG_OK);
  const int nodes[2] = {24, 24};
  REQUIRE(tg_grid_create(h.imm, nodes, &h.grid) == TG_OK);
  int certified = 0;
  char* xia = nullptr;
  REQUIRE(tg_xia_certify(h.imm, h.grid, 1e-3, 1e-6, &certified, &xia) ==
          TG_OK);
  CHECK(certified == 1);
  CHECK(std::string(xia).find("\"t_star\"") != std::string::npos);
  tg_string_free(xia);
}

TEST_CASE("capi: hemisphere helpers") {
  double x[3];
  REQUIRE(tg_beltrami_project(4, kNorth, x) == TG_OK);
  CHECK(std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) < 1e-15);
  double back[4];
  REQUIRE(tg_beltrami_inverse(4, x, back) == TG_OK);
  CHECK(back[3] == doctest::Approx(1.0));

  CHECK(tg_beltrami_project(4, kE1, x) == TG_ERR_OUTSIDE_HEMISPHERE);

  double out[4];
  REQUIRE(tg_shrink_map(4, kNorth, 0.5, out) == TG_OK);
  CHECK(out[3] == doctest::Approx(1.0));

  double k = 0.0;
  REQUIRE(tg_k_bound(1.0, &k) == TG_OK);
  CHECK(k == doctest::Approx(1.0 / (6 * std::sqrt(2.0))).epsilon(1e-14));
  CHECK(tg_k_bound(2.0, &k) == TG_ERR_DOMAIN);
}

TEST_CASE("capi: constructor validation errors") {
  tg_immersion* imm = nullptr;
  CHECK(tg_immersion_create_clifford(2, 1.5, &imm) == TG_ERR_DOMAIN);
  CHECK(tg_immersion_create_clifford(1, 0.5, &imm) == TG_ERR_DOMAIN);
  double bad_center[4] = {2.0, 0.0, 0.0, 0.0};
  CHECK(tg_immersion_create_geodesic_sphere(4, bad_center, 0.5, &imm) ==
        TG_ERR_DOMAIN);
}
