#include "core/gauss_bonnet.hpp"

#include "util.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace tg;
using tgtest::basis_vector;

TEST_CASE("pairwise sum matches plain accumulation") {
  auto gen = tgtest::rng(179);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> terms(1037);
  for (double& t : terms) t = unif(gen);
  const double plain = std::accumulate(terms.begin(), terms.end(), 0.0);
  CHECK(pairwise_sum(terms) == doctest::Approx(plain).epsilon(1e-12));
  CHECK(pairwise_sum(terms) == pairwise_sum(terms));
}

TEST_CASE("scalar integration reproduces known areas and is linear") {
  ParametricImmersion torus = make_clifford(2, 0.6);
  QuadratureGrid tgrid = QuadratureGrid::for_immersion(torus, 32);
  CHECK(std::abs(integrate_scalar(torus, [](const Vec&) { return 1.0; },
                                  tgrid) -
                 4 * M_PI * M_PI * 0.6 * 0.8) < 1e-10);

  SpherePoint center(basis_vector(4, 3));
  ParametricImmersion sphere = make_geodesic_sphere(center, 0.5, 2);
  QuadratureGrid sgrid = QuadratureGrid::for_immersion(sphere, 48);
  CHECK(std::abs(integrate_scalar(sphere, [](const Vec&) { return 1.0; },
                                  sgrid) -
                 4 * M_PI * std::pow(std::sin(0.5), 2)) < 1e-6);

  auto f = [](const Vec& u) { return std::sin(u(0)) + 0.3; };
  auto g = [](const Vec& u) { return std::cos(u(1)); };
  const double lhs = integrate_scalar(
      torus, [&](const Vec& u) { return 2.0 * f(u) - 5.0 * g(u); }, tgrid);
  const double rhs = 2.0 * integrate_scalar(torus, f, tgrid) -
                     5.0 * integrate_scalar(torus, g, tgrid);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("curvature integral identity on the geodesic sphere") {
  SpherePoint center(basis_vector(4, 3));
  ParametricImmersion imm = make_geodesic_sphere(center, 0.5, 2);
  ParallelTransportStructure st(center);
  QuadratureGrid grid = QuadratureGrid::for_immersion(imm, 64);
  GaussBonnetReport report = gauss_bonnet_check(st, imm, grid, 1e-4);
  CHECK(report.euler_char == 2);
  CHECK(report.target == doctest::Approx(4 * M_PI).epsilon(1e-14));
  CHECK(report.residual < 1e-5);
  CHECK(report.degree_estimate == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("curvature integral vanishes on the flat-family torus") {
  ParametricImmersion imm = make_clifford(2, 0.6);
  ParallelTransportStructure st(SpherePoint(basis_vector(4, 0)));
  QuadratureGrid grid = QuadratureGrid::for_immersion(imm, 64);
  GaussBonnetReport report = gauss_bonnet_check(st, imm, grid, 1e-4);
  CHECK(report.euler_char == 0);
  CHECK(std::abs(report.integral) < 1e-6);
}

TEST_CASE("identity is structure independent (quaternion case)") {
  auto gen = tgtest::rng(181);
  SpherePoint center = tgtest::random_point(gen, 4);
  ParametricImmersion imm = make_geodesic_sphere(center, 0.5, 2);
  QuaternionStructure st;
  QuadratureGrid grid = QuadratureGrid::for_immersion(imm, 64);
  GaussBonnetReport report = gauss_bonnet_check(st, imm, grid, 1e-4);
  CHECK(std::abs(report.integral - 4 * M_PI) < 1e-4);
}

TEST_CASE("odd-dimensional surfaces are rejected") {
  auto gen = tgtest::rng(191);
  SpherePoint center = tgtest::random_point(gen, 5);
  ParametricImmersion imm = make_geodesic_sphere(center, 0.5, 3);
  ParallelTransportStructure st(center);
  QuadratureGrid grid = QuadratureGrid::for_immersion(imm, 8);
  CHECK_THROWS_AS(gauss_bonnet_check(st, imm, grid, 1e-4), GeomError);
  try {
    gauss_bonnet_check(st, imm, grid, 1e-4);
  } catch (const GeomError& e) {
    CHECK(e.code() == Errc::odd_dimension);
  }
}

TEST_CASE("degree by preimage counts +1 for spheres and 0 for tori") {
  SpherePoint center(basis_vector(4, 3));
  ParametricImmersion sphere = make_geodesic_sphere(center, 0.5, 2);
  ParallelTransportStructure st(center);
  QuadratureGrid grid = QuadratureGrid::for_immersion(sphere, 32);
  Vec seed(2);
  seed << 1.1, 2.3;
  Vec target = gauss_map(st, sphere, seed);
  CHECK(degree_by_preimage(st, sphere, grid, target, 1e-4) == 1);

  ParametricImmersion torus = make_clifford(2, 0.6);
  ParallelTransportStructure st2(SpherePoint(basis_vector(4, 0)));
  QuadratureGrid tgrid = QuadratureGrid::for_immersion(torus, 48);
  Vec tseed(2);
  tseed << 0.9, 2.7;
  Vec ttarget = gauss_map(st2, torus, tseed);
  const int degree =
      degree_by_preimage_robust(st2, torus, tgrid, ttarget, 1e-4);
  CHECK(degree == 0);
}

TEST_CASE("preimage count is consistent with the integral estimate") {
  SpherePoint center(basis_vector(4, 3));
  ParametricImmersion sphere = make_geodesic_sphere(center, 0.7, 2);
  ParallelTransportStructure st(center);
  QuadratureGrid grid = QuadratureGrid::for_immersion(sphere, 48);
  GaussBonnetReport report = gauss_bonnet_check(st, sphere, grid, 1e-4);
  Vec seed(2);
  seed << 0.8, 1.9;
  Vec target = gauss_map(st, sphere, seed);
  const int degree = degree_by_preimage_robust(st, sphere, grid, target, 1e-4);
  CHECK(degree == std::lround(report.degree_estimate));
}

TEST_CASE("degree is stable under grid refinement") {
  ParametricImmersion torus = make_clifford(2, 0.55);
  ParallelTransportStructure st(SpherePoint(basis_vector(4, 0)));
  Vec seed(2);
  seed << 1.7, 0.4;
  Vec target = gauss_map(st, torus, seed);
  QuadratureGrid coarse = QuadratureGrid::for_immersion(torus, 32);
  QuadratureGrid fine = QuadratureGrid::for_immersion(torus, 64);
  CHECK(degree_by_preimage_robust(st, torus, coarse, target, 1e-4) ==
        degree_by_preimage_robust(st, torus, fine, target, 1e-4));
}

TEST_CASE("euler characteristic from tags and from mesh counting") {
  SpherePoint center(basis_vector(4, 3));
  ParametricImmersion sphere = make_geodesic_sphere(center, 0.5, 2);
  ParametricImmersion torus = make_clifford(2, 0.6);
  CHECK(euler_characteristic(sphere) == 2);
  CHECK(euler_characteristic(torus) == 0);
  CHECK(euler_characteristic_mesh(torus, 16, 16) == 0);
  CHECK(euler_characteristic_mesh(sphere, 16, 16) == 2);
}

TEST_CASE("residual decreases under refinement on the perturbed sphere") {
  SpherePoint center(basis_vector(4, 3));
  ParametricImmersion imm = make_perturbed_sphere(center, 0.5, 0.05, 3);
  ParallelTransportStructure st(center);
  double previous = std::numeric_limits<double>::infinity();
  double final_residual = 0.0;
  for (int nodes : {32, 64, 128}) {
    QuadratureGrid grid = QuadratureGrid::for_immersion(imm, nodes);
    GaussBonnetReport report = gauss_bonnet_check(st, imm, grid, 1e-4);
    // Monotone up to the finite-difference noise floor.
    CHECK(report.residual <= previous + 1e-7);
    previous = report.residual;
    final_residual = report.residual;
  }
  CHECK(final_residual < 1e-4);
}

TEST_CASE("identity holds for parallel structures at three base points") {
  SpherePoint center(basis_vector(4, 3));
  ParametricImmersion imm = make_perturbed_sphere(center, 0.5, 0.05, 3);
  QuadratureGrid grid = QuadratureGrid::for_immersion(imm, 48);
  auto gen = tgtest::rng(193);
  for (int trial = 0; trial < 3; ++trial) {
    SpherePoint base = tgtest::random_point(gen, 4);
    ParallelTransportStructure st(base);
    GaussBonnetReport report = gauss_bonnet_check(st, imm, grid, 1e-4);
    CHECK(report.residual < 1e-4);
  }
}
