#pragma once

#include "core/sphere.hpp"

#include <random>

namespace tgtest {

inline std::mt19937_64 rng(std::uint64_t seed = 0xc0ffee123ULL) {
  return std::mt19937_64(seed);
}

inline tg::Vec random_unit(std::mt19937_64& gen, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  tg::Vec v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = gauss(gen);
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

inline tg::SpherePoint random_point(std::mt19937_64& gen, int dim) {
  return tg::SpherePoint(random_unit(gen, dim));
}

inline tg::TangentVector random_tangent(std::mt19937_64& gen,
                                        const tg::SpherePoint& p) {
  tg::Vec v = random_unit(gen, p.ambient_dim());
  tg::TangentVector t = tg::TangentVector::projected(p, v);
  if (t.norm() < 1e-6) return random_tangent(gen, p);
  return tg::TangentVector(p, t.vec() / t.norm());
}

inline tg::Vec basis_vector(int dim, int i) {
  tg::Vec e = tg::Vec::Zero(dim);
  e(i) = 1.0;
  return e;
}

}  // namespace tgtest
