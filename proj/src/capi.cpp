#include "mmwave.h"

#include <exception>
#include <string>

#include "mmwave/analytic.hpp"
#include "mmwave/emulator.hpp"
#include "mmwave/model.hpp"
#include "mmwave/montecarlo.hpp"
#include "mmwave/random.hpp"

struct mmw_model {
  mmwave::NetworkParams params;
  mmwave::DerivedGeometry geom;
};

namespace {

thread_local std::string g_last_error;

mmw_status code_of(mmwave::ErrorCode c) {
  using EC = mmwave::ErrorCode;
  switch (c) {
    case EC::InvalidParameter:
      return MMW_ERR_INVALID_PARAMETER;
    case EC::NoiseOutage:
      return MMW_ERR_NOISE_OUTAGE;
    case EC::OutOfRange:
      return MMW_ERR_OUT_OF_RANGE;
    case EC::QuadratureFailure:
      return MMW_ERR_QUADRATURE;
    case EC::ConfigError:
      return MMW_ERR_INVALID_PARAMETER;
  }
  return MMW_ERR_INTERNAL;
}

template <class Fn>
mmw_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MMW_OK;
  } catch (const mmwave::Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MMW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MMW_ERR_INTERNAL;
  }
}

mmw_status bad_argument(const char* what) {
  g_last_error = what;
  return MMW_ERR_BAD_ARGUMENT;
}

bool random_length(const mmw_model* m) {
  return std::holds_alternative<mmwave::RandomInDisk>(m->params.link_length);
}

mmw_status need_random_length(const mmw_model* m) {
  if (random_length(m)) return MMW_OK;
  g_last_error =
      "operation averages over random link lengths; model uses fixed-length "
      "links";
  return MMW_ERR_INVALID_PARAMETER;
}

mmwave::emulator::TrafficConfig to_traffic(const mmw_traffic* t) {
  mmwave::emulator::TrafficConfig cfg;
  cfg.cbr_bps = t->cbr_bps;
  cfg.packet_bits = t->packet_bits;
  cfg.slot_s = t->slot_duration_s;
  cfg.duration_s = t->duration_s;
  cfg.saturated = t->saturated != 0;
  return cfg;
}

void fill_estimate(const mmwave::montecarlo::CollisionEstimate& e,
                   mmw_estimate* out) {
  out->mean = e.mean;
  out->std_error = e.std_error;
  out->ci_low = e.ci_low;
  out->ci_high = e.ci_high;
  out->trials = e.trials;
  out->hits = e.collisions;
}

class CallbackSink final : public mmwave::emulator::TraceSink {
 public:
  CallbackSink(mmw_trace_fn fn, void* user) : fn_(fn), user_(user) {}
  void on_event(const mmwave::emulator::SlotEvent& ev) override {
    const mmw_slot_event e{ev.slot, ev.link,
                           static_cast<uint8_t>(ev.attempted),
                           static_cast<uint8_t>(ev.blocked),
                           static_cast<uint8_t>(ev.collided),
                           static_cast<uint8_t>(ev.delivered)};
    fn_(user_, &e);
  }

 private:
  mmw_trace_fn fn_;
  void* user_;
};

void fill_report(const mmwave::emulator::ThroughputReport& r,
                 mmw_emu_report* out) {
  out->per_link_throughput = r.per_link_throughput;
  out->ase = r.ase;
  out->collision_freq = r.collision_freq;
  out->blockage_freq = r.blockage_freq;
  out->attempted = r.attempted;
  out->blocked = r.blocked;
  out->collided = r.collided;
  out->delivered = r.delivered;
  out->links = r.links;
  out->slots = r.slots;
  out->deployments = r.deployments;
}

}  // namespace

extern "C" {

void mmw_model_spec_defaults(mmw_model_spec* spec) {
  if (!spec) return;
  const mmwave::NetworkParams d;
  spec->lambda_t = d.lambda_t;
  spec->lambda_o = d.lambda_o;
  spec->rho_a = d.rho_a;
  spec->theta_rad = d.theta;
  spec->theta_c_rad = d.theta_c;
  spec->power_w = d.power_w;
  spec->atten_1m = d.atten_1m;
  spec->alpha = d.alpha;
  spec->beta = d.beta;
  spec->noise_w = d.noise_w;
  spec->link_mode = MMW_LINK_RANDOM_IN_DISK;
  spec->link_length_m = 1.0;
  spec->d_max_m = std::get<mmwave::RandomInDisk>(d.link_length).d_max_m;
}

mmw_status mmw_model_create(const mmw_model_spec* spec, mmw_model** out) {
  if (!spec || !out) return bad_argument("null spec or output pointer");
  *out = nullptr;
  return guarded([&] {
    mmwave::NetworkParams p;
    p.lambda_t = spec->lambda_t;
    p.lambda_o = spec->lambda_o;
    p.rho_a = spec->rho_a;
    p.theta = spec->theta_rad;
    p.theta_c = spec->theta_c_rad;
    p.power_w = spec->power_w;
    p.atten_1m = spec->atten_1m;
    p.alpha = spec->alpha;
    p.beta = spec->beta;
    p.noise_w = spec->noise_w;
    if (spec->link_mode == MMW_LINK_FIXED) {
      p.link_length = mmwave::FixedLength{spec->link_length_m};
    } else if (spec->link_mode == MMW_LINK_RANDOM_IN_DISK) {
      p.link_length = mmwave::RandomInDisk{spec->d_max_m};
    } else {
      throw mmwave::Error(mmwave::ErrorCode::InvalidParameter,
                          "unknown link mode");
    }
    auto g = mmwave::derive_geometry(p);
    *out = new mmw_model{p, g};
  });
}

void mmw_model_destroy(mmw_model* m) { delete m; }

const char* mmw_last_error(void) { return g_last_error.c_str(); }

const char* mmw_status_name(mmw_status s) {
  switch (s) {
    case MMW_OK:
      return "ok";
    case MMW_ERR_INVALID_PARAMETER:
      return "invalid_parameter";
    case MMW_ERR_NOISE_OUTAGE:
      return "noise_outage";
    case MMW_ERR_OUT_OF_RANGE:
      return "out_of_range";
    case MMW_ERR_QUADRATURE:
      return "quadrature_failure";
    case MMW_ERR_BAD_ARGUMENT:
      return "bad_argument";
    case MMW_ERR_INTERNAL:
      return "internal_error";
  }
  return "unknown";
}

const char* mmw_version(void) { return "1.0.0"; }

mmw_status mmw_model_geometry(const mmw_model* m, double* d_max_m,
                              int* sector_count,
                              double* interferer_density) {
  if (!m) return bad_argument("null model");
  if (d_max_m) *d_max_m = m->geom.d_max;
  if (sector_count) *sector_count = m->geom.sector_count;
  if (interferer_density) *interferer_density = m->geom.interferer_density;
  return MMW_OK;
}

mmw_status mmw_collision_prob(const mmw_model* m, double* out) {
  if (!m || !out) return bad_argument("null model or output");
  if (auto s = need_random_length(m); s != MMW_OK) return s;
  return guarded([&] {
    *out = mmwave::analytic::collision_prob(m->geom, m->params.lambda_o);
  });
}

mmw_status mmw_collision_prob_bounds(const mmw_model* m, double* lower,
                                     double* upper) {
  if (!m || !lower || !upper) return bad_argument("null model or output");
  return guarded([&] {
    const auto b =
        mmwave::analytic::collision_prob_bounds(m->geom, m->params.lambda_o);
    *lower = b.lower;
    *upper = b.upper;
  });
}

mmw_status mmw_conditional_collision_prob(const mmw_model* m, double ell_m,
                                          double* out) {
  if (!m || !out) return bad_argument("null model or output");
  return guarded([&] {
    *out = mmwave::analytic::conditional_collision_prob(
        m->geom, m->params.lambda_o, ell_m);
  });
}

mmw_status mmw_los_interference_prob_regular(const mmw_model* m,
                                             double* out) {
  if (!m || !out) return bad_argument("null model or output");
  return guarded([&] {
    *out = mmwave::analytic::los_interference_prob_regular_sector(
        m->geom, m->params.lambda_o);
  });
}

mmw_status mmw_los_interference_prob_typical(const mmw_model* m, double ell_m,
                                             double* out) {
  if (!m || !out) return bad_argument("null model or output");
  return guarded([&] {
    *out = mmwave::analytic::los_interference_prob_typical_sector(
        m->geom, m->params.lambda_o, ell_m);
  });
}

mmw_status mmw_aloha_throughput(const mmw_model* m, double* out) {
  if (!m || !out) return bad_argument("null model or output");
  if (auto s = need_random_length(m); s != MMW_OK) return s;
  return guarded([&] {
    *out = mmwave::analytic::aloha_per_link_throughput(
        m->geom, m->params.lambda_o, m->params.rho_a);
  });
}

mmw_status mmw_aloha_ase(const mmw_model* m, double area_m2, double* out) {
  if (!m || !out) return bad_argument("null model or output");
  if (auto s = need_random_length(m); s != MMW_OK) return s;
  return guarded([&] {
    *out = mmwave::analytic::aloha_ase(m->geom, m->params.lambda_o,
                                       m->params.rho_a, m->params.lambda_t,
                                       area_m2);
  });
}

mmw_status mmw_tdma_throughput(const mmw_model* m, double area_m2,
                               double* out) {
  if (!m || !out) return bad_argument("null model or output");
  if (auto s = need_random_length(m); s != MMW_OK) return s;
  return guarded([&] {
    *out = mmwave::analytic::tdma_per_link_throughput(
        m->geom, m->params.lambda_o, m->params.lambda_t, area_m2);
  });
}

mmw_status mmw_tdma_ase(const mmw_model* m, double area_m2, double* out) {
  if (!m || !out) return bad_argument("null model or output");
  if (auto s = need_random_length(m); s != MMW_OK) return s;
  return guarded([&] {
    *out = mmwave::analytic::tdma_ase(m->geom, m->params.lambda_o, area_m2);
  });
}

mmw_status mmw_optimal_transmission_prob(const mmw_model* m, double* rho_opt,
                                         double* throughput_opt) {
  if (!m || !rho_opt || !throughput_opt) {
    return bad_argument("null model or output");
  }
  if (auto s = need_random_length(m); s != MMW_OK) return s;
  return guarded([&] {
    const auto r = mmwave::analytic::optimal_transmission_prob(m->params);
    *rho_opt = r.rho_a;
    *throughput_opt = r.throughput;
  });
}

mmw_status mmw_mc_collision_prob(const mmw_model* m, uint64_t trials,
                                 uint64_t seed, int threads,
                                 mmw_estimate* out) {
  if (!m || !out) return bad_argument("null model or output");
  if (auto s = need_random_length(m); s != MMW_OK) return s;
  return guarded([&] {
    fill_estimate(mmwave::montecarlo::estimate_collision_prob(
                      m->geom, m->params.lambda_o, trials, seed, 0, threads),
                  out);
  });
}

mmw_status mmw_mc_conditional_collision_prob(const mmw_model* m, double ell_m,
                                             uint64_t trials, uint64_t seed,
                                             int threads, mmw_estimate* out) {
  if (!m || !out) return bad_argument("null model or output");
  return guarded([&] {
    fill_estimate(
        mmwave::montecarlo::estimate_conditional_collision_prob(
            m->geom, m->params.lambda_o, ell_m, trials, seed, 0, threads),
        out);
  });
}

void mmw_traffic_defaults(mmw_traffic* t) {
  if (!t) return;
  const mmwave::emulator::TrafficConfig d;
  t->cbr_bps = d.cbr_bps;
  t->packet_bits = d.packet_bits;
  t->slot_duration_s = d.slot_s;
  t->duration_s = d.duration_s;
  t->saturated = d.saturated ? 1 : 0;
}

mmw_status mmw_emulate(const mmw_model* m, mmw_scheduler sched,
                       double core_width_m, const mmw_traffic* t,
                       uint32_t deployments, uint64_t seed,
                       int omni_benchmark, int threads,
                       mmw_emu_report* out) {
  if (!m || !t || !out) return bad_argument("null model, traffic or output");
  if (sched != MMW_SCHED_ALOHA && sched != MMW_SCHED_TDMA) {
    return bad_argument("unknown scheduler");
  }
  return guarded([&] {
    const auto r = mmwave::emulator::run_ensemble(
        m->params, m->geom,
        sched == MMW_SCHED_ALOHA ? mmwave::emulator::Scheduler::Aloha
                                 : mmwave::emulator::Scheduler::Tdma,
        core_width_m, to_traffic(t), deployments, seed, omni_benchmark != 0,
        threads);
    fill_report(r, out);
  });
}

mmw_status mmw_emulate_traced(const mmw_model* m, mmw_scheduler sched,
                              double core_width_m, const mmw_traffic* t,
                              uint64_t seed, int omni_benchmark,
                              mmw_trace_fn fn, void* user,
                              mmw_emu_report* out) {
  if (!m || !t || !out) return bad_argument("null model, traffic or output");
  if (sched != MMW_SCHED_ALOHA && sched != MMW_SCHED_TDMA) {
    return bad_argument("unknown scheduler");
  }
  return guarded([&] {
    using namespace mmwave::emulator;
    const mmwave::NetworkParams run_p =
        omni_benchmark ? omni_equivalent(m->params) : m->params;
    const mmwave::DerivedGeometry run_g =
        omni_benchmark ? mmwave::derive_geometry(run_p) : m->geom;
    const std::uint64_t sub =
        mmwave::splitmix64(seed ^ mmwave::splitmix64(0));
    const Deployment dep =
        generate_deployment(m->params, m->geom, core_width_m, sub);
    CallbackSink sink(fn, user);
    TraceSink* sp = fn ? &sink : nullptr;
    const TrafficConfig cfg = to_traffic(t);
    const SlotTrace tr =
        sched == MMW_SCHED_ALOHA
            ? run_slotted_aloha(dep, run_p, run_g, cfg, sub, sp)
            : run_tdma(dep, run_p, run_g, cfg, sp);
    fill_report(summarize(tr, core_width_m * core_width_m), out);
  });
}

}  // extern "C"
