/* qtunnel - stationary 1D scattering through piecewise-constant barriers,
 * tunneling phase times, and time-domain wavepacket cross-checks.
 *
 * C API of the shared library. All entry points return qtn_status; outputs
 * go through pointers. Objects returned through handle pointers are owned by
 * the caller and released with the matching *_free function. On any failure
 * qtn_last_error() returns a thread-local description of what went wrong.
 */
#ifndef QTUNNEL_H
#define QTUNNEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QTN_API __declspec(dllexport)
#else
#define QTN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qtn_status {
  QTN_OK = 0,
  QTN_ERROR_INVALID_ARGUMENT = 1,
  QTN_ERROR_DEGENERATE_ENERGY = 2,  /* energy coincides with a segment height */
  QTN_ERROR_NEAR_RESONANCE = 3,
  QTN_ERROR_STEP_TOO_LARGE = 4,
  QTN_ERROR_MAPPING = 5,
  QTN_ERROR_INSUFFICIENT_TRANSMISSION = 6,
  QTN_ERROR_SCHEME_UNSTABLE = 7,
  QTN_ERROR_PARSE = 8,
  QTN_ERROR_IO = 9,
  QTN_ERROR_INTERNAL = 10
} qtn_status;

typedef struct qtn_profile qtn_profile;   /* potential profile handle */
typedef struct qtn_solution qtn_solution; /* stationary solution handle */
typedef struct qtn_table qtn_table;       /* result table handle */

typedef struct qtn_constants {
  double hbar;
  double mass;
} qtn_constants;

typedef struct qtn_complex {
  double re;
  double im;
} qtn_complex;

QTN_API const char* qtn_version(void);
QTN_API const char* qtn_status_name(qtn_status status);
QTN_API const char* qtn_last_error(void);

QTN_API qtn_constants qtn_constants_natural(void);
QTN_API qtn_constants qtn_constants_si_electron(void);

/* ---- profiles ---------------------------------------------------------- */

QTN_API qtn_status qtn_profile_create(const double* widths, const double* heights,
                                      size_t n_segments, qtn_profile** out);
/* Profile file: '#' comments, optional `hbar V` / `mass V`, ordered
 * `segment WIDTH HEIGHT` lines. constants/has_constants may be NULL. */
QTN_API qtn_status qtn_profile_load(const char* path, qtn_profile** out,
                                    qtn_constants* constants, int* has_constants);
QTN_API qtn_status qtn_profile_save(const qtn_profile* profile,
                                    const qtn_constants* constants, const char* path);
QTN_API size_t qtn_profile_segment_count(const qtn_profile* profile);
QTN_API qtn_status qtn_profile_segment(const qtn_profile* profile, size_t index,
                                       double* width, double* height);
QTN_API double qtn_profile_extent(const qtn_profile* profile);
QTN_API void qtn_profile_free(qtn_profile* profile);

/* ---- stationary scattering --------------------------------------------- */

QTN_API qtn_status qtn_scatter(const qtn_profile* profile,
                               const qtn_constants* constants, double energy,
                               qtn_solution** out);
QTN_API qtn_status qtn_solution_reflection(const qtn_solution* s, qtn_complex* out);
QTN_API qtn_status qtn_solution_transmission(const qtn_solution* s, qtn_complex* out);
QTN_API qtn_status qtn_solution_trans_log_abs(const qtn_solution* s, double* out);
QTN_API qtn_status qtn_solution_probabilities(const qtn_solution* s,
                                              double* reflection_prob,
                                              double* transmission_prob);
QTN_API size_t qtn_solution_region_count(const qtn_solution* s);
/* Per-region wavenumber and (forward, backward) coefficients referenced to
 * the region's left-edge origin. Any output pointer may be NULL. */
QTN_API qtn_status qtn_solution_region(const qtn_solution* s, size_t index,
                                       qtn_complex* wavenumber, double* origin,
                                       double* width, qtn_complex* forward,
                                       qtn_complex* backward);
QTN_API void qtn_solution_free(qtn_solution* s);

/* Dense matching-condition solve of the symmetric double barrier
 * (independent of the transfer-matrix path). Fills the eight amplitudes in
 * the order refl1, trans1, decay1, grow1, refl2, trans2, decay2, grow2. */
QTN_API qtn_status qtn_two_barrier_direct(double barrier_width, double gap,
                                          double height,
                                          const qtn_constants* constants,
                                          double energy, qtn_complex out[8]);

/* ---- opaque-limit closed forms ------------------------------------------ */

typedef struct qtn_opaque_amplitudes {
  qtn_complex refl1, trans1, decay1, grow1;
  qtn_complex refl2, trans2, decay2, grow2;
  double gap_factor;
} qtn_opaque_amplitudes;

QTN_API qtn_status qtn_opaque_limit(double k, double chi, double barrier_width,
                                    double left_edge_of_second_barrier,
                                    qtn_opaque_amplitudes* out);
QTN_API double qtn_resonance_condition(double k, double chi, double gap);
QTN_API qtn_status qtn_hartman_phase_time(double k, double chi,
                                          const qtn_constants* constants,
                                          double* out);

/* ---- phase time ---------------------------------------------------------- */

typedef struct qtn_phase_time_options {
  double step_fraction;      /* initial dE as a fraction of E (default 1e-4) */
  double min_step_fraction;  /* adaptive floor (default 1e-10) */
  double resonance_guard;    /* flag threshold (default 0.1) */
} qtn_phase_time_options;

typedef struct qtn_phase_time_result {
  double energy;
  double tau;
  double reference_length;
  double step_used;
  int resonance_flag;
} qtn_phase_time_result;

QTN_API qtn_phase_time_options qtn_phase_time_defaults(void);
QTN_API qtn_status qtn_phase_time(const qtn_profile* profile,
                                  const qtn_constants* constants, double energy,
                                  const qtn_phase_time_options* options,
                                  qtn_phase_time_result* out);

/* ---- resonances ---------------------------------------------------------- */

typedef struct qtn_resonance_fit {
  double e_r;
  double gamma;
  double tau_nr;
  double fit_quality;
  int flagged;
} qtn_resonance_fit;

/* Writes up to `capacity` fits; *n_found reports how many peaks were fitted. */
QTN_API qtn_status qtn_resonance_scan(const qtn_profile* profile,
                                      const qtn_constants* constants, double e_min,
                                      double e_max, int n_points,
                                      qtn_resonance_fit* fits, size_t capacity,
                                      size_t* n_found);

/* ---- wavepacket ----------------------------------------------------------- */

typedef struct qtn_grid_spec {
  double x_min;
  double x_max;
  int n_points; /* >= 1024 */
  double dt;
} qtn_grid_spec;

typedef struct qtn_packet_spec {
  double x0;
  double k0;
  double sigma;
} qtn_packet_spec;

typedef struct qtn_arrival_options {
  double t_max;          /* 0: ballistic estimate plus tail room */
  int absorbers;         /* imaginary absorbing layers at the grid edges */
  double absorber_fraction;
  double absorber_strength;
  const char* frame_path; /* NULL: no |psi|^2 frame dumps */
  int frame_stride;
  double min_transmitted; /* measurement floor (default 1e-12) */
} qtn_arrival_options;

typedef struct qtn_arrival_record {
  double detector_x;
  double t_peak;
  double t_centroid;
  double transmitted_fraction;
  double reflected_fraction;
  double absorbed_fraction;
  double norm_drift;
  int quasi_mono_warning;
} qtn_arrival_record;

QTN_API qtn_arrival_options qtn_arrival_defaults(void);
QTN_API qtn_status qtn_wavepacket_arrival(const qtn_profile* profile,
                                          const qtn_constants* constants,
                                          const qtn_grid_spec* grid,
                                          const qtn_packet_spec* packet,
                                          double detector_x,
                                          const qtn_arrival_options* options,
                                          qtn_arrival_record* out);

/* ---- waveguide analogy ----------------------------------------------------- */

typedef struct qtn_waveguide_params {
  double width_normal;
  double width_undersized;
  double frequency;
  const double* segment_lengths; /* undersized / normal / ... / undersized */
  size_t n_segments;             /* odd */
} qtn_waveguide_params;

typedef struct qtn_waveguide_result {
  qtn_constants constants;
  double energy;
  double k;
  double chi;
  double cutoff_normal;
  double cutoff_undersized;
  double barrier_height;
} qtn_waveguide_result;

QTN_API qtn_status qtn_waveguide_map(const qtn_waveguide_params* params,
                                     qtn_profile** profile,
                                     qtn_waveguide_result* out);
/* Same mapping driven by a parameter file (`width_normal`, `width_undersized`,
 * `frequency`, repeated `segment_length` lines; '#' comments). */
QTN_API qtn_status qtn_waveguide_map_file(const char* path, qtn_profile** profile,
                                          qtn_waveguide_result* out);

/* ---- result tables ---------------------------------------------------------- */

typedef enum qtn_format { QTN_FORMAT_CSV = 0, QTN_FORMAT_JSONL = 1 } qtn_format;

QTN_API qtn_status qtn_scatter_table(const qtn_profile* profile,
                                     const qtn_constants* constants,
                                     const double* energies, size_t n,
                                     qtn_table** out);
QTN_API qtn_status qtn_phase_time_table(const qtn_profile* profile,
                                        const qtn_constants* constants,
                                        const double* energies, size_t n,
                                        const qtn_phase_time_options* options,
                                        qtn_table** out);
QTN_API qtn_status qtn_resonance_table(const qtn_profile* profile,
                                       const qtn_constants* constants, double e_min,
                                       double e_max, int n_points, qtn_table** out);
QTN_API qtn_status qtn_arrival_table(const qtn_profile* profile,
                                     const qtn_constants* constants,
                                     const qtn_grid_spec* grid,
                                     const qtn_packet_spec* packet, double detector_x,
                                     const qtn_arrival_options* options,
                                     qtn_table** out);
QTN_API qtn_status qtn_waveguide_table(const qtn_waveguide_params* params,
                                       qtn_table** out);
QTN_API qtn_status qtn_waveguide_table_from_file(const char* path, qtn_table** out);
/* Sweep spec file: see the repository README for the schema. guard_scale
 * rescales the near-resonance guard (CLI --tolerance). */
QTN_API qtn_status qtn_sweep_table_from_file(const char* path, int jobs,
                                             double guard_scale, qtn_table** out);
/* Canonical verification suite; one row per check. which/NULL runs all. */
QTN_API qtn_status qtn_reproduce_table(const int* which, size_t n_which,
                                       uint64_t seed, int jobs, qtn_table** out,
                                       int* n_failed);

QTN_API size_t qtn_table_row_count(const qtn_table* table);
/* path NULL writes to stdout. */
QTN_API qtn_status qtn_table_write(const qtn_table* table, qtn_format format,
                                   const char* path);
QTN_API void qtn_table_free(qtn_table* table);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QTUNNEL_H */
