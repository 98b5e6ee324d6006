/*
 * C interface to the mmwave analysis engine.
 *
 * Conventions: every fallible call returns an mmw_status; outputs are
 * written through pointers only on MMW_OK. mmw_last_error() returns a
 * thread-local message for the most recent failure on the calling thread.
 * Angles are radians, powers watts, densities per square meter.
 */
#ifndef MMWAVE_H
#define MMWAVE_H

#include <stdint.h>

#if defined(_WIN32)
#define MMW_API __declspec(dllexport)
#else
#define MMW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmw_status {
  MMW_OK = 0,
  MMW_ERR_INVALID_PARAMETER = 1, /* rejected model or argument value */
  MMW_ERR_NOISE_OUTAGE = 2,      /* SINR budget fails with no interference */
  MMW_ERR_OUT_OF_RANGE = 3,      /* link length outside [0, d_max] */
  MMW_ERR_QUADRATURE = 4,        /* integral failed to converge */
  MMW_ERR_BAD_ARGUMENT = 5,      /* null pointer or invalid handle */
  MMW_ERR_INTERNAL = 6
} mmw_status;

typedef enum mmw_link_mode {
  MMW_LINK_FIXED = 0,          /* every link has length link_length_m */
  MMW_LINK_RANDOM_IN_DISK = 1  /* length law 2*l/d_max^2 on (0, d_max] */
} mmw_link_mode;

typedef struct mmw_model_spec {
  double lambda_t;    /* transmitter density, 1/m^2 */
  double lambda_o;    /* obstacle density, 1/m^2 */
  double rho_a;       /* ALOHA transmission probability, (0, 1] */
  double theta_rad;   /* antenna beamwidth, (0, 2*pi] */
  double theta_c_rad; /* blockage coherence angle, (0, theta] */
  double power_w;
  double atten_1m;    /* channel attenuation at 1 m */
  double alpha;       /* path-loss exponent, >= 2 */
  double beta;        /* SINR threshold, linear */
  double noise_w;
  mmw_link_mode link_mode;
  double link_length_m; /* MMW_LINK_FIXED */
  double d_max_m;       /* MMW_LINK_RANDOM_IN_DISK */
} mmw_model_spec;

MMW_API void mmw_model_spec_defaults(mmw_model_spec* spec);

typedef struct mmw_model mmw_model; /* opaque: validated params + geometry */

MMW_API mmw_status mmw_model_create(const mmw_model_spec* spec,
                                    mmw_model** out);
MMW_API void mmw_model_destroy(mmw_model* m);

MMW_API const char* mmw_last_error(void);
MMW_API const char* mmw_status_name(mmw_status s);
MMW_API const char* mmw_version(void);

/* derived geometry */
MMW_API mmw_status mmw_model_geometry(const mmw_model* m, double* d_max_m,
                                      int* sector_count,
                                      double* interferer_density);

/* closed forms; the *_prob family returns values in [0, 1].
 * Length-averaged quantities (collision_prob, throughputs, ASEs, the rho_a
 * optimizer) require MMW_LINK_RANDOM_IN_DISK and fail with
 * MMW_ERR_INVALID_PARAMETER on fixed-length models. */
MMW_API mmw_status mmw_collision_prob(const mmw_model* m, double* out);
MMW_API mmw_status mmw_collision_prob_bounds(const mmw_model* m,
                                             double* lower, double* upper);
MMW_API mmw_status mmw_conditional_collision_prob(const mmw_model* m,
                                                  double ell_m, double* out);
MMW_API mmw_status mmw_los_interference_prob_regular(const mmw_model* m,
                                                     double* out);
MMW_API mmw_status mmw_los_interference_prob_typical(const mmw_model* m,
                                                     double ell_m,
                                                     double* out);
MMW_API mmw_status mmw_aloha_throughput(const mmw_model* m, double* out);
MMW_API mmw_status mmw_aloha_ase(const mmw_model* m, double area_m2,
                                 double* out);
MMW_API mmw_status mmw_tdma_throughput(const mmw_model* m, double area_m2,
                                       double* out);
MMW_API mmw_status mmw_tdma_ase(const mmw_model* m, double area_m2,
                                double* out);
MMW_API mmw_status mmw_optimal_transmission_prob(const mmw_model* m,
                                                 double* rho_opt,
                                                 double* throughput_opt);

/* Monte Carlo sampling of the sectored model */
typedef struct mmw_estimate {
  double mean;
  double std_error;
  double ci_low;  /* 95% normal interval clamped to [0, 1] */
  double ci_high;
  uint64_t trials;
  uint64_t hits;
} mmw_estimate;

MMW_API mmw_status mmw_mc_collision_prob(const mmw_model* m, uint64_t trials,
                                         uint64_t seed, int threads,
                                         mmw_estimate* out);
MMW_API mmw_status mmw_mc_conditional_collision_prob(const mmw_model* m,
                                                     double ell_m,
                                                     uint64_t trials,
                                                     uint64_t seed,
                                                     int threads,
                                                     mmw_estimate* out);

/* slot-level emulation */
typedef enum mmw_scheduler {
  MMW_SCHED_ALOHA = 0,
  MMW_SCHED_TDMA = 1
} mmw_scheduler;

typedef struct mmw_traffic {
  double cbr_bps;
  double packet_bits;
  double slot_duration_s;
  double duration_s;
  int saturated; /* nonzero: every link always backlogged */
} mmw_traffic;

MMW_API void mmw_traffic_defaults(mmw_traffic* t);

typedef struct mmw_emu_report {
  double per_link_throughput; /* delivered packets/slot per core link */
  double ase;                 /* delivered packets/slot per m^2 */
  double collision_freq;      /* collided / unblocked attempts */
  double blockage_freq;       /* blocked / attempts */
  uint64_t attempted, blocked, collided, delivered;
  uint64_t links; /* core links over all deployments */
  uint64_t slots; /* per deployment */
  uint32_t deployments;
} mmw_emu_report;

/* omni_benchmark != 0 widens every beam to 2*pi with power rescaled by
 * (2*pi/theta)^2 so d_max is unchanged, on the same deployments */
MMW_API mmw_status mmw_emulate(const mmw_model* m, mmw_scheduler sched,
                               double core_width_m, const mmw_traffic* t,
                               uint32_t deployments, uint64_t seed,
                               int omni_benchmark, int threads,
                               mmw_emu_report* out);

typedef struct mmw_slot_event {
  uint64_t slot;
  uint32_t link;
  uint8_t attempted, blocked, collided, delivered;
} mmw_slot_event;

typedef void (*mmw_trace_fn)(void* user, const mmw_slot_event* ev);

/* single deployment with one event per (slot, core link) streamed to fn */
MMW_API mmw_status mmw_emulate_traced(const mmw_model* m, mmw_scheduler sched,
                                      double core_width_m,
                                      const mmw_traffic* t, uint64_t seed,
                                      int omni_benchmark, mmw_trace_fn fn,
                                      void* user, mmw_emu_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MMWAVE_H */
