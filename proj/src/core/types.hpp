#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace tg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Failure categories surfaced through the C API as status codes.
enum class Errc {
  domain_error,
  antipodal_points,
  out_of_domain,
  immersion_degenerate,
  eigen_solve_failure,
  degenerate_configuration,
  not_in_hemisphere,
  outside_hemisphere,
  odd_dimension,
  unknown_topology,
  not_regular_value,
  convergence_failure,
  gk_vanishes,
  mixed_curvature_signs,
  no_admissible_t,
  frame_not_orthonormal,
};

const char* errc_name(Errc c);

class GeomError : public std::runtime_error {
 public:
  GeomError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw GeomError(code, what);
}

}  // namespace tg
