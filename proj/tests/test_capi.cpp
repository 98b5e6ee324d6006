#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <string>

#include "mmwave.h"
#include "mmwave/analytic.hpp"
#include "mmwave/emulator.hpp"
#include "mmwave/model.hpp"
#include "mmwave/montecarlo.hpp"
#include "testutil.hpp"

using namespace mmwave;
using testutil::kDeg;

namespace {

mmw_model_spec headline_spec() {
  mmw_model_spec s;
  mmw_model_spec_defaults(&s);
  s.lambda_t = 1.0 / 9.0;
  s.lambda_o = 1.0 / 400.0;
  s.rho_a = 1.0;
  s.theta_rad = 20.0 * kDeg;
  s.theta_c_rad = 5.0 * kDeg;
  s.link_mode = MMW_LINK_RANDOM_IN_DISK;
  s.d_max_m = 16.83;
  return s;
}

NetworkParams to_params(const mmw_model_spec& s) {
  NetworkParams p;
  p.lambda_t = s.lambda_t;
  p.lambda_o = s.lambda_o;
  p.rho_a = s.rho_a;
  p.theta = s.theta_rad;
  p.theta_c = s.theta_c_rad;
  p.power_w = s.power_w;
  p.atten_1m = s.atten_1m;
  p.alpha = s.alpha;
  p.beta = s.beta;
  p.noise_w = s.noise_w;
  if (s.link_mode == MMW_LINK_FIXED) {
    p.link_length = FixedLength{s.link_length_m};
  } else {
    p.link_length = RandomInDisk{s.d_max_m};
  }
  return p;
}

struct TraceTally {
  std::uint64_t events = 0;
  std::uint64_t delivered = 0;
};

}  // namespace

TEST_CASE("spec defaults mirror the native defaults") {
  mmw_model_spec s;
  mmw_model_spec_defaults(&s);
  const NetworkParams d;
  CHECK(s.lambda_t == d.lambda_t);
  CHECK(s.lambda_o == d.lambda_o);
  CHECK(s.rho_a == d.rho_a);
  CHECK(s.theta_rad == d.theta);
  CHECK(s.theta_c_rad == d.theta_c);
  CHECK(s.power_w == d.power_w);
  CHECK(s.atten_1m == d.atten_1m);
  CHECK(s.alpha == d.alpha);
  CHECK(s.beta == d.beta);
  CHECK(s.noise_w == d.noise_w);
  CHECK(s.link_mode == MMW_LINK_RANDOM_IN_DISK);
  CHECK(s.d_max_m == std::get<RandomInDisk>(d.link_length).d_max_m);

  mmw_traffic t;
  mmw_traffic_defaults(&t);
  const emulator::TrafficConfig c;
  CHECK(t.cbr_bps == c.cbr_bps);
  CHECK(t.packet_bits == c.packet_bits);
  CHECK(t.slot_duration_s == c.slot_s);
  CHECK(t.duration_s == c.duration_s);
  CHECK(t.saturated == 0);
}

TEST_CASE("model creation surfaces geometry identically to the core") {
  const mmw_model_spec s = headline_spec();
  mmw_model* m = nullptr;
  REQUIRE(mmw_model_create(&s, &m) == MMW_OK);
  REQUIRE(m != nullptr);

  double dm = 0.0, li = 0.0;
  int k = 0;
  REQUIRE(mmw_model_geometry(m, &dm, &k, &li) == MMW_OK);
  const DerivedGeometry g = derive_geometry(to_params(s));
  CHECK(dm == g.d_max);
  CHECK(k == g.sector_count);
  CHECK(li == g.interferer_density);
  mmw_model_destroy(m);
  mmw_model_destroy(nullptr);  // harmless
}

TEST_CASE("closed-form wrappers match the core bit for bit") {
  const mmw_model_spec s = headline_spec();
  mmw_model* m = nullptr;
  REQUIRE(mmw_model_create(&s, &m) == MMW_OK);
  const NetworkParams p = to_params(s);
  const DerivedGeometry g = derive_geometry(p);
  const double area = 100.0;
  double v = 0.0, w = 0.0;

  REQUIRE(mmw_collision_prob(m, &v) == MMW_OK);
  CHECK(v == analytic::collision_prob(g, p.lambda_o));

  REQUIRE(mmw_collision_prob_bounds(m, &v, &w) == MMW_OK);
  const auto b = analytic::collision_prob_bounds(g, p.lambda_o);
  CHECK(v == b.lower);
  CHECK(w == b.upper);

  REQUIRE(mmw_conditional_collision_prob(m, 3.0, &v) == MMW_OK);
  CHECK(v == analytic::conditional_collision_prob(g, p.lambda_o, 3.0));

  REQUIRE(mmw_los_interference_prob_regular(m, &v) == MMW_OK);
  CHECK(v == analytic::los_interference_prob_regular_sector(g, p.lambda_o));

  REQUIRE(mmw_los_interference_prob_typical(m, 3.0, &v) == MMW_OK);
  CHECK(v ==
        analytic::los_interference_prob_typical_sector(g, p.lambda_o, 3.0));

  REQUIRE(mmw_aloha_throughput(m, &v) == MMW_OK);
  CHECK(v == analytic::aloha_per_link_throughput(g, p.lambda_o, p.rho_a));

  REQUIRE(mmw_aloha_ase(m, area, &v) == MMW_OK);
  CHECK(v ==
        analytic::aloha_ase(g, p.lambda_o, p.rho_a, p.lambda_t, area));

  REQUIRE(mmw_tdma_throughput(m, area, &v) == MMW_OK);
  CHECK(v ==
        analytic::tdma_per_link_throughput(g, p.lambda_o, p.lambda_t, area));

  REQUIRE(mmw_tdma_ase(m, area, &v) == MMW_OK);
  CHECK(v == analytic::tdma_ase(g, p.lambda_o, area));

  REQUIRE(mmw_optimal_transmission_prob(m, &v, &w) == MMW_OK);
  const auto opt = analytic::optimal_transmission_prob(p);
  CHECK(v == opt.rho_a);
  CHECK(w == opt.throughput);

  mmw_model_destroy(m);
}

TEST_CASE("Monte Carlo wrappers reproduce the core streams") {
  const mmw_model_spec s = headline_spec();
  mmw_model* m = nullptr;
  REQUIRE(mmw_model_create(&s, &m) == MMW_OK);
  const NetworkParams p = to_params(s);
  const DerivedGeometry g = derive_geometry(p);

  mmw_estimate e;
  REQUIRE(mmw_mc_collision_prob(m, 20000, 7, 2, &e) == MMW_OK);
  const auto core =
      montecarlo::estimate_collision_prob(g, p.lambda_o, 20000, 7, 0, 2);
  CHECK(e.trials == core.trials);
  CHECK(e.hits == core.collisions);
  CHECK(e.mean == core.mean);
  CHECK(e.std_error == core.std_error);
  CHECK(e.ci_low == core.ci_low);
  CHECK(e.ci_high == core.ci_high);

  REQUIRE(mmw_mc_conditional_collision_prob(m, 4.0, 20000, 7, 2, &e) ==
          MMW_OK);
  const auto cond = montecarlo::estimate_conditional_collision_prob(
      g, p.lambda_o, 4.0, 20000, 7, 0, 2);
  CHECK(e.hits == cond.collisions);
  CHECK(e.mean == cond.mean);

  REQUIRE(mmw_mc_collision_prob(m, 0, 7, 1, &e) ==
          MMW_ERR_INVALID_PARAMETER);
  mmw_model_destroy(m);
}

TEST_CASE("emulation wrapper equals the core ensemble") {
  mmw_model_spec s = headline_spec();
  s.lambda_t = 0.3;
  s.lambda_o = 0.02;
  s.d_max_m = 3.0;
  mmw_model* m = nullptr;
  REQUIRE(mmw_model_create(&s, &m) == MMW_OK);
  const NetworkParams p = to_params(s);
  const DerivedGeometry g = derive_geometry(p);

  mmw_traffic t;
  mmw_traffic_defaults(&t);
  t.saturated = 1;
  t.duration_s = 40 * t.slot_duration_s;
  emulator::TrafficConfig tc;
  tc.saturated = true;
  tc.duration_s = 40 * tc.slot_s;

  mmw_emu_report r;
  REQUIRE(mmw_emulate(m, MMW_SCHED_ALOHA, 6.0, &t, 8, 5, 0, 2, &r) == MMW_OK);
  const auto core = emulator::run_ensemble(
      p, g, emulator::Scheduler::Aloha, 6.0, tc, 8, 5, false, 2);
  CHECK(r.delivered == core.delivered);
  CHECK(r.attempted == core.attempted);
  CHECK(r.collided == core.collided);
  CHECK(r.blocked == core.blocked);
  CHECK(r.links == core.links);
  CHECK(r.slots == core.slots);
  CHECK(r.deployments == core.deployments);
  CHECK(r.per_link_throughput == core.per_link_throughput);
  CHECK(r.ase == core.ase);

  // omni benchmark goes through the same path
  mmw_emu_report ro;
  REQUIRE(mmw_emulate(m, MMW_SCHED_ALOHA, 6.0, &t, 8, 5, 1, 2, &ro) ==
          MMW_OK);
  const auto core_o = emulator::run_ensemble(
      p, g, emulator::Scheduler::Aloha, 6.0, tc, 8, 5, true, 2);
  CHECK(ro.delivered == core_o.delivered);
  CHECK(ro.links == core_o.links);

  mmw_model_destroy(m);
}

TEST_CASE("traced emulation replays ensemble deployment zero") {
  mmw_model_spec s = headline_spec();
  s.lambda_t = 0.3;
  s.lambda_o = 0.02;
  s.d_max_m = 3.0;
  mmw_model* m = nullptr;
  REQUIRE(mmw_model_create(&s, &m) == MMW_OK);

  mmw_traffic t;
  mmw_traffic_defaults(&t);
  t.saturated = 1;
  t.duration_s = 25 * t.slot_duration_s;

  TraceTally tally;
  auto cb = +[](void* user, const mmw_slot_event* ev) {
    auto* ta = static_cast<TraceTally*>(user);
    ++ta->events;
    ta->delivered += ev->delivered;
  };

  mmw_emu_report traced;
  REQUIRE(mmw_emulate_traced(m, MMW_SCHED_ALOHA, 6.0, &t, 5, 0, cb, &tally,
                             &traced) == MMW_OK);
  CHECK(traced.deployments == 1);
  CHECK(tally.events == traced.slots * traced.links);
  CHECK(tally.delivered == traced.delivered);

  mmw_emu_report single;
  REQUIRE(mmw_emulate(m, MMW_SCHED_ALOHA, 6.0, &t, 1, 5, 0, 1, &single) ==
          MMW_OK);
  CHECK(single.delivered == traced.delivered);
  CHECK(single.attempted == traced.attempted);
  CHECK(single.links == traced.links);

  // a null callback is allowed: summary only
  mmw_emu_report quiet;
  REQUIRE(mmw_emulate_traced(m, MMW_SCHED_TDMA, 6.0, &t, 5, 0, nullptr,
                             nullptr, &quiet) == MMW_OK);
  CHECK(quiet.collided == 0);

  mmw_model_destroy(m);
}

TEST_CASE("status codes and messages for every failure family") {
  CHECK(std::string(mmw_status_name(MMW_OK)) == "ok");
  CHECK(std::string(mmw_status_name(MMW_ERR_INVALID_PARAMETER)) ==
        "invalid_parameter");
  CHECK(std::string(mmw_status_name(MMW_ERR_NOISE_OUTAGE)) == "noise_outage");
  CHECK(std::string(mmw_status_name(MMW_ERR_OUT_OF_RANGE)) == "out_of_range");
  CHECK(std::string(mmw_status_name(MMW_ERR_QUADRATURE)) ==
        "quadrature_failure");
  CHECK(std::string(mmw_status_name(MMW_ERR_BAD_ARGUMENT)) == "bad_argument");
  CHECK(std::string(mmw_status_name(MMW_ERR_INTERNAL)) == "internal_error");
  CHECK(std::string(mmw_status_name(static_cast<mmw_status>(99))) ==
        "unknown");
  CHECK(std::string(mmw_version()) == "1.0.0");

  // invalid model values
  mmw_model_spec s = headline_spec();
  s.theta_c_rad = s.theta_rad * 2.0;
  mmw_model* m = reinterpret_cast<mmw_model*>(0x1);
  CHECK(mmw_model_create(&s, &m) == MMW_ERR_INVALID_PARAMETER);
  CHECK(m == nullptr);
  CHECK(std::strlen(mmw_last_error()) > 0);

  // noise outage from an unreachable budget
  s = headline_spec();
  s.link_mode = MMW_LINK_FIXED;
  s.link_length_m = 5.0;
  s.noise_w = 1.0;
  s.power_w = 1e-9;
  CHECK(mmw_model_create(&s, &m) == MMW_ERR_NOISE_OUTAGE);

  // null-pointer arguments
  CHECK(mmw_model_create(nullptr, &m) == MMW_ERR_BAD_ARGUMENT);
  CHECK(mmw_model_create(&s, nullptr) == MMW_ERR_BAD_ARGUMENT);
  double v = 0.0;
  CHECK(mmw_collision_prob(nullptr, &v) == MMW_ERR_BAD_ARGUMENT);
  CHECK(mmw_model_geometry(nullptr, &v, nullptr, nullptr) ==
        MMW_ERR_BAD_ARGUMENT);
}

TEST_CASE("fixed-length models reject length-averaged operations") {
  mmw_model_spec s = headline_spec();
  s.link_mode = MMW_LINK_FIXED;
  s.link_length_m = 1.5;
  s.beta = 8.0;  // derived range 3 m, so the fixed link fits
  mmw_model* m = nullptr;
  REQUIRE(mmw_model_create(&s, &m) == MMW_OK);

  double v = 0.0, w = 0.0;
  CHECK(mmw_collision_prob(m, &v) == MMW_ERR_INVALID_PARAMETER);
  CHECK(std::string(mmw_last_error()).find("fixed-length") !=
        std::string::npos);
  CHECK(mmw_aloha_throughput(m, &v) == MMW_ERR_INVALID_PARAMETER);
  CHECK(mmw_aloha_ase(m, 100.0, &v) == MMW_ERR_INVALID_PARAMETER);
  CHECK(mmw_tdma_throughput(m, 100.0, &v) == MMW_ERR_INVALID_PARAMETER);
  CHECK(mmw_tdma_ase(m, 100.0, &v) == MMW_ERR_INVALID_PARAMETER);
  CHECK(mmw_optimal_transmission_prob(m, &v, &w) ==
        MMW_ERR_INVALID_PARAMETER);
  mmw_estimate e;
  CHECK(mmw_mc_collision_prob(m, 100, 1, 1, &e) ==
        MMW_ERR_INVALID_PARAMETER);

  // known-length quantities still work
  CHECK(mmw_conditional_collision_prob(m, 1.0, &v) == MMW_OK);
  CHECK(mmw_collision_prob_bounds(m, &v, &w) == MMW_OK);
  CHECK(mmw_los_interference_prob_typical(m, 1.0, &v) == MMW_OK);
  CHECK(mmw_mc_conditional_collision_prob(m, 1.0, 5000, 3, 1, &e) == MMW_OK);

  // out-of-range link length
  CHECK(mmw_conditional_collision_prob(m, -1.0, &v) == MMW_ERR_OUT_OF_RANGE);
  CHECK(std::string(mmw_last_error()).find("link length") !=
        std::string::npos);

  // success clears the sticky message
  CHECK(mmw_conditional_collision_prob(m, 1.0, &v) == MMW_OK);
  CHECK(std::strlen(mmw_last_error()) == 0);

  mmw_model_destroy(m);
}

TEST_CASE("emulation argument screening") {
  const mmw_model_spec s = headline_spec();
  mmw_model* m = nullptr;
  REQUIRE(mmw_model_create(&s, &m) == MMW_OK);
  mmw_traffic t;
  mmw_traffic_defaults(&t);
  t.saturated = 1;
  t.duration_s = 2 * t.slot_duration_s;
  mmw_emu_report r;

  CHECK(mmw_emulate(m, static_cast<mmw_scheduler>(7), 5.0, &t, 1, 1, 0, 1,
                    &r) == MMW_ERR_BAD_ARGUMENT);
  CHECK(mmw_emulate(m, MMW_SCHED_ALOHA, 5.0, nullptr, 1, 1, 0, 1, &r) ==
        MMW_ERR_BAD_ARGUMENT);
  CHECK(mmw_emulate(m, MMW_SCHED_ALOHA, 5.0, &t, 0, 1, 0, 1, &r) ==
        MMW_ERR_INVALID_PARAMETER);
  CHECK(mmw_emulate(m, MMW_SCHED_ALOHA, -5.0, &t, 1, 1, 0, 1, &r) ==
        MMW_ERR_INVALID_PARAMETER);
  t.slot_duration_s = 0.0;
  CHECK(mmw_emulate_traced(m, MMW_SCHED_ALOHA, 5.0, &t, 1, 0, nullptr,
                           nullptr, &r) == MMW_ERR_INVALID_PARAMETER);
  mmw_model_destroy(m);
}
