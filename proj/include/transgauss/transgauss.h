/*
 * transgauss — translational structures, Gauss maps and curvature
 * certificates for hypersurfaces of the round sphere.
 *
 * C interface to the shared library. All geometric objects are opaque
 * handles; every entry point returns a tg_status and writes results through
 * out-parameters. Points of S^{n+1} are passed as `dim` = n+2 doubles,
 * model-space vectors as n+1 doubles. Complex reports are returned as JSON
 * strings owned by the caller (release with tg_string_free).
 */

#ifndef TRANSGAUSS_H
#define TRANSGAUSS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tg_status {
  TG_OK = 0,
  TG_ERR_DOMAIN = 1,
  TG_ERR_ANTIPODAL = 2,
  TG_ERR_OUT_OF_DOMAIN = 3,
  TG_ERR_DEGENERATE_IMMERSION = 4,
  TG_ERR_EIGEN_SOLVE = 5,
  TG_ERR_DEGENERATE_CONFIGURATION = 6,
  TG_ERR_NOT_IN_HEMISPHERE = 7,
  TG_ERR_OUTSIDE_HEMISPHERE = 8,
  TG_ERR_ODD_DIMENSION = 9,
  TG_ERR_UNKNOWN_TOPOLOGY = 10,
  TG_ERR_NOT_REGULAR_VALUE = 11,
  TG_ERR_CONVERGENCE = 12,
  TG_ERR_GK_VANISHES = 13,
  TG_ERR_MIXED_CURVATURE_SIGNS = 14,
  TG_ERR_NO_ADMISSIBLE_T = 15,
  TG_ERR_FRAME_NOT_ORTHONORMAL = 16,
  TG_ERR_INTERNAL = 99
} tg_status;

const char* tg_status_name(tg_status status);

/* Message of the most recent failure on the calling thread. */
const char* tg_last_error_message(void);

void tg_string_free(char* s);

typedef struct tg_structure tg_structure;
typedef struct tg_immersion tg_immersion;
typedef struct tg_grid tg_grid;

/* ---------- sphere primitives ---------- */

tg_status tg_sphere_volume(int n, double* out);
tg_status tg_geodesic_distance(int dim, const double* p, const double* q,
                               double* out);
tg_status tg_exp_map(int dim, const double* p, const double* v, double* out);
tg_status tg_tangent_project(int dim, const double* p, const double* w,
                             double* out);
tg_status tg_parallel_transport(int dim, const double* p, const double* q,
                                const double* v, double* out);
tg_status tg_parallel_transport_ode(int dim, const double* p, const double* q,
                                    const double* v, int steps, double* out);

/* ---------- translational structures ---------- */

tg_status tg_structure_create_parallel(int dim, const double* base_point,
                                       tg_structure** out);
tg_status tg_structure_create_quaternion(tg_structure** out);
tg_status tg_structure_create_transported_frame(int dim,
                                                const double* base_point,
                                                tg_structure** out);

/* Custom orthonormal frame supplied as a callback: writes field
 * `field_index` evaluated at `point` (dim doubles) into `out`. */
typedef void (*tg_frame_field_fn)(int field_index, const double* point,
                                  double* out, void* user_data);
tg_status tg_structure_create_frame(int dim, const double* base_point,
                                    tg_frame_field_fn fields, void* user_data,
                                    double gram_tol, tg_structure** out);

void tg_structure_free(tg_structure* s);
int tg_structure_ambient_dim(const tg_structure* s);
int tg_structure_model_dim(const tg_structure* s);
tg_status tg_structure_in_domain(const tg_structure* s, const double* p,
                                 int* out);
tg_status tg_structure_reference_point(const tg_structure* s, double* out);
tg_status tg_structure_apply(const tg_structure* s, const double* p,
                             const double* v, double* out);
tg_status tg_structure_unapply(const tg_structure* s, const double* p,
                               const double* w, double* out);
tg_status tg_structure_invariant_field(const tg_structure* s, const double* p,
                                       const double* x, const double* q,
                                       double* out);

/* ---------- immersed hypersurfaces ---------- */

tg_status tg_immersion_create_clifford(int n, double r, tg_immersion** out);
tg_status tg_immersion_create_geodesic_sphere(int dim, const double* center,
                                              double rho, tg_immersion** out);
tg_status tg_immersion_create_perturbed_sphere(int dim, const double* center,
                                               double rho, double amplitude,
                                               int frequency,
                                               tg_immersion** out);
void tg_immersion_free(tg_immersion* imm);
int tg_immersion_intrinsic_dim(const tg_immersion* imm);
int tg_immersion_ambient_dim(const tg_immersion* imm);
int tg_immersion_orientation(const tg_immersion* imm);
tg_status tg_immersion_set_orientation(tg_immersion* imm, int sign);
tg_status tg_immersion_set_fd_steps(tg_immersion* imm, double h_first,
                                    double h_second);
tg_status tg_immersion_chart_axis(const tg_immersion* imm, int axis,
                                  double* lo, double* hi, int* periodic);
tg_status tg_immersion_euler_characteristic(const tg_immersion* imm, int* out);
tg_status tg_immersion_eval(const tg_immersion* imm, const double* u,
                            double* out);
tg_status tg_immersion_normal(const tg_immersion* imm, const double* u,
                              double* out);

/* Metric in the chart basis, row major, n*n doubles. */
tg_status tg_immersion_metric(const tg_immersion* imm, const double* u,
                              double* out);

/* ---------- quadrature grids ---------- */

tg_status tg_grid_create(const tg_immersion* imm, const int* nodes_per_axis,
                         tg_grid** out);
void tg_grid_free(tg_grid* grid);
int tg_grid_node_count(const tg_grid* grid);
tg_status tg_grid_node(const tg_grid* grid, int k, double* u_out,
                       double* weight_out);

/* ---------- pointwise curvature ---------- */

typedef struct tg_curvature_data {
  double c;
  double kappa_gamma;     /* det(-(A + alpha)) */
  double kappa_gamma_alt; /* det of the Gauss-map pullback */
  double gauss_kronecker;
  double prop_residual; /* max-abs entry of dgamma + (A + alpha) */
} tg_curvature_data;

tg_status tg_curvature_eval(const tg_structure* s, const tg_immersion* imm,
                            const double* u, double h_field,
                            double* lambda_out /* n doubles, may be NULL */,
                            tg_curvature_data* data /* may be NULL */);
tg_status tg_gauss_map(const tg_structure* s, const tg_immersion* imm,
                       const double* u, double* out);

/* ---------- global identities ---------- */

typedef struct tg_gauss_bonnet_data {
  double integral;
  double target;
  double residual;
  double degree_estimate;
  int euler_char;
} tg_gauss_bonnet_data;

tg_status tg_gauss_bonnet(const tg_structure* s, const tg_immersion* imm,
                          const tg_grid* grid, double h_field,
                          tg_gauss_bonnet_data* out);

/* Retries non-regular target directions up to max_attempts times with a
 * deterministic perturbation. */
tg_status tg_degree_by_preimage(const tg_structure* s, const tg_immersion* imm,
                                const tg_grid* grid,
                                const double* target_direction, double h_field,
                                int max_attempts, int* out);

/* ---------- rigidity certificates ---------- */

tg_status tg_enclosing_cap(int dim, const double* points, int count,
                           double* center_out, double* radius_out);
tg_status tg_lemma_radius_clifford(double r, double* out);
tg_status tg_clifford_principal_curvatures(double r, double* lambda1,
                                           double* lambda2);

/* convention: 0 = enclosing cap, 1 = largest empty ball. */
tg_status tg_certify_sphere(const tg_immersion* imm, const tg_grid* grid,
                            double delta, int convention, int* certified,
                            char** json_report);
tg_status tg_counterexample_family(double epsilon, int n, int grid_nodes,
                                   int* ok, char** json_report);

/* ---------- hemisphere shrink pipeline ---------- */

tg_status tg_beltrami_project(int dim, const double* p, double* out);
tg_status tg_beltrami_inverse(int dim, const double* x, double* out);
tg_status tg_shrink_map(int dim, const double* p, double t, double* out);
tg_status tg_shrink_map_derivative(int dim, const double* p, const double* v,
                                   double t, double* out);
tg_status tg_transported_normal(int dim, const double* p, const double* eta,
                                double t, double* out);
tg_status tg_curvature_transfer_factor(int dim, const double* p,
                                       const double* eta, const double* v,
                                       double t, double* out);
tg_status tg_image_speed_sq(int dim, const double* p, const double* v,
                            double t, double* out);
tg_status tg_hemisphere_constants(const tg_immersion* imm, const tg_grid* grid,
                                  double* h_out, double* eps_out);
tg_status tg_k_bound(double h, double* out);
tg_status tg_xia_certify(const tg_immersion* imm, const tg_grid* grid,
                         double margin, double delta, int* certified,
                         char** json_report);

#ifdef __cplusplus
}
#endif

#endif /* TRANSGAUSS_H */
