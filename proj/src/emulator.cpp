#include "mmwave/emulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mmwave/montecarlo.hpp"
#include "mmwave/random.hpp"

namespace mmwave::emulator {

namespace {

void check_traffic(const TrafficConfig& t) {
  auto bad = [](double v) { return !std::isfinite(v) || v <= 0.0; };
  if (bad(t.slot_s) || bad(t.duration_s) || bad(t.packet_bits) ||
      (!t.saturated && bad(t.cbr_bps))) {
    throw Error(ErrorCode::InvalidParameter,
                "traffic rates, sizes and durations must be positive");
  }
  if (TrafficConfig(t).slots() == 0) {
    throw Error(ErrorCode::InvalidParameter,
                "emulation must span at least one slot");
  }
}

void check_core_width(double w) {
  if (!std::isfinite(w) || w <= 0.0) {
    throw Error(ErrorCode::InvalidParameter,
                "core region width must be positive");
  }
}

bool path_blocked(Vec2 a, Vec2 b, const std::vector<Segment>& obstacles) {
  const double xlo = std::min(a.x, b.x), xhi = std::max(a.x, b.x);
  const double ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
  for (const auto& s : obstacles) {
    // obstacles are at most 1 m long, so a padded box test rejects cheaply
    if (s.a.x < xlo - 1.0 && s.b.x < xlo - 1.0) continue;
    if (s.a.x > xhi + 1.0 && s.b.x > xhi + 1.0) continue;
    if (s.a.y < ylo - 1.0 && s.b.y < ylo - 1.0) continue;
    if (s.a.y > yhi + 1.0 && s.b.y > yhi + 1.0) continue;
    if (segments_intersect(a, b, s)) return true;
  }
  return false;
}

struct Prepared {
  std::vector<std::uint32_t> core;       // link indices with rx in core
  std::vector<bool> own_blocked;         // parallel to core
  std::vector<std::vector<std::uint32_t>> colliders;  // parallel to core
};

// static per-deployment facts: which links can ever ruin which core link
Prepared prepare(const Deployment& d, const NetworkParams& p,
                 const DerivedGeometry& g, bool with_colliders) {
  Prepared out;
  for (std::uint32_t i = 0; i < d.links.size(); ++i) {
    if (d.links[i].rx_in_core) out.core.push_back(i);
  }
  out.own_blocked.resize(out.core.size());
  out.colliders.resize(out.core.size());
  for (std::size_t c = 0; c < out.core.size(); ++c) {
    const Link& li = d.links[out.core[c]];
    out.own_blocked[c] = path_blocked(li.tx, li.rx, d.obstacles);
    if (!with_colliders) continue;
    const double rx_bore =
        std::atan2(li.tx.y - li.rx.y, li.tx.x - li.rx.x);
    auto& lst = out.colliders[c];
    for (std::uint32_t j = 0; j < d.links.size(); ++j) {
      if (j == out.core[c]) continue;
      const Link& lj = d.links[j];
      if (norm(lj.tx - li.rx) > g.d_max) continue;          // out of range
      if (!beam_covers(lj.tx, li.rx, lj.bore, p.theta)) continue;  // their beam misses
      if (!beam_covers(li.rx, lj.tx, rx_bore, p.theta)) continue;  // our beam misses
      if (path_blocked(lj.tx, li.rx, d.obstacles)) continue;       // shadowed
      lst.push_back(j);
    }
  }
  return out;
}

void emit(TraceSink* sink, std::uint64_t slot, std::uint32_t link,
          bool attempted, bool blocked, bool collided, bool delivered) {
  if (sink) sink->on_event({slot, link, attempted, blocked, collided, delivered});
}

}  // namespace

std::uint64_t TrafficConfig::slots() const {
  return static_cast<std::uint64_t>(std::llround(duration_s / slot_s));
}

Deployment generate_deployment(const NetworkParams& p,
                               const DerivedGeometry& g, double core_width,
                               std::uint64_t seed) {
  check_core_width(core_width);
  Deployment d;
  d.core_width = core_width;
  d.margin = g.d_max + 1.0;

  auto eng = make_stream(seed, 0);
  const double lo = -d.margin;
  const double side = core_width + 2.0 * d.margin;
  const bool fixed = std::holds_alternative<FixedLength>(p.link_length);
  const double fixed_len =
      fixed ? std::get<FixedLength>(p.link_length).length_m : 0.0;

  const std::uint64_t n_tx = poisson(eng, p.lambda_t * side * side);
  d.links.resize(n_tx);
  for (auto& l : d.links) {
    l.tx = {lo + side * uniform_unit(eng), lo + side * uniform_unit(eng)};
    const double len =
        fixed ? fixed_len : montecarlo::draw_link_length(eng, g.d_max);
    l.bore = kTwoPi * uniform_unit(eng);
    l.rx = {l.tx.x + len * std::cos(l.bore),
            l.tx.y + len * std::sin(l.bore)};
    l.rx_in_core = l.rx.x >= 0.0 && l.rx.x <= core_width && l.rx.y >= 0.0 &&
                   l.rx.y <= core_width;
  }

  const std::uint64_t n_ob = poisson(eng, p.lambda_o * side * side);
  d.obstacles.resize(n_ob);
  for (auto& s : d.obstacles) {
    const Vec2 center{lo + side * uniform_unit(eng),
                      lo + side * uniform_unit(eng)};
    const double half = 0.5 * uniform_unit(eng);  // length uniform on (0, 1]
    const double ang = kPi * uniform_unit(eng);
    const Vec2 arm{half * std::cos(ang), half * std::sin(ang)};
    s = {center - arm, center + arm};
  }
  return d;
}

SlotTrace run_slotted_aloha(const Deployment& d, const NetworkParams& p,
                            const DerivedGeometry& g, const TrafficConfig& t,
                            std::uint64_t seed, TraceSink* sink) {
  validate(p);
  check_traffic(t);
  const Prepared prep = prepare(d, p, g, true);
  const std::size_t n_core = prep.core.size();
  const std::size_t n_all = d.links.size();
  const std::uint64_t slots = t.slots();
  const double rate = t.packets_per_slot();
  const double rho = p.rho_a;

  SlotTrace trace;
  trace.core_links = prep.core;
  trace.counts.assign(n_core, {});
  trace.slots = slots;
  trace.offered_per_slot = t.saturated ? 1.0 : rate;

  std::vector<char> active(n_all, 0);
  std::vector<double> buffer(t.saturated ? 0 : n_all, 0.0);
  auto eng = make_stream(seed, 1);

  for (std::uint64_t slot = 0; slot < slots; ++slot) {
    for (std::size_t j = 0; j < n_all; ++j) {
      bool backlogged = true;
      if (!t.saturated) {
        buffer[j] += rate;
        backlogged = buffer[j] >= 1.0;
      }
      const bool act =
          backlogged && (rho >= 1.0 || uniform_unit(eng) <= rho);
      if (act && !t.saturated) buffer[j] -= 1.0;  // dropped or not, it leaves
      active[j] = act ? 1 : 0;
    }
    for (std::size_t c = 0; c < n_core; ++c) {
      const std::uint32_t self = prep.core[c];
      if (!active[self]) {
        emit(sink, slot, self, false, false, false, false);
        continue;
      }
      auto& lc = trace.counts[c];
      ++lc.attempted;
      if (prep.own_blocked[c]) {
        ++lc.blocked;
        emit(sink, slot, self, true, true, false, false);
        continue;
      }
      bool hit = false;
      for (const std::uint32_t j : prep.colliders[c]) {
        if (active[j]) {
          hit = true;
          break;
        }
      }
      if (hit) {
        ++lc.collided;
        emit(sink, slot, self, true, false, true, false);
      } else {
        ++lc.delivered;
        emit(sink, slot, self, true, false, false, true);
      }
    }
  }
  return trace;
}

SlotTrace run_tdma(const Deployment& d, const NetworkParams& p,
                   const DerivedGeometry& g, const TrafficConfig& t,
                   TraceSink* sink) {
  validate(p);
  check_traffic(t);
  const Prepared prep = prepare(d, p, g, false);
  const std::size_t n_core = prep.core.size();
  const std::uint64_t slots = t.slots();
  const double rate = t.packets_per_slot();

  SlotTrace trace;
  trace.core_links = prep.core;
  trace.counts.assign(n_core, {});
  trace.slots = slots;
  trace.offered_per_slot = t.saturated ? 1.0 : rate;

  std::vector<double> buffer(t.saturated ? 0 : n_core, 0.0);
  for (std::uint64_t slot = 0; slot < slots; ++slot) {
    const std::size_t turn = n_core ? slot % n_core : 0;
    for (std::size_t c = 0; c < n_core; ++c) {
      bool backlogged = true;
      if (!t.saturated) {
        buffer[c] += rate;
        backlogged = buffer[c] >= 1.0;
      }
      if (c != turn || n_core == 0 || !backlogged) {
        emit(sink, slot, prep.core[c], false, false, false, false);
        continue;
      }
      if (!t.saturated) buffer[c] -= 1.0;
      auto& lc = trace.counts[c];
      ++lc.attempted;
      if (prep.own_blocked[c]) {
        ++lc.blocked;
        emit(sink, slot, prep.core[c], true, true, false, false);
      } else {
        ++lc.delivered;
        emit(sink, slot, prep.core[c], true, false, false, true);
      }
    }
  }
  return trace;
}

NetworkParams omni_equivalent(const NetworkParams& p) {
  NetworkParams q = p;
  const double gain = kTwoPi / p.theta;
  q.theta = kTwoPi;
  q.power_w = p.power_w * gain * gain;  // keeps the d_max budget unchanged
  return q;
}

ThroughputReport summarize(const SlotTrace& t, double core_area) {
  check_core_width(core_area);
  ThroughputReport r;
  r.links = t.core_links.size();
  r.slots = t.slots;
  r.deployments = 1;
  for (const auto& c : t.counts) {
    r.attempted += c.attempted;
    r.blocked += c.blocked;
    r.collided += c.collided;
    r.delivered += c.delivered;
  }
  const double slot_total =
      static_cast<double>(t.slots) * static_cast<double>(r.links);
  r.per_link_throughput =
      slot_total > 0.0 ? static_cast<double>(r.delivered) / slot_total : 0.0;
  r.ase = static_cast<double>(r.delivered) /
          (static_cast<double>(t.slots) * core_area);
  const std::uint64_t unblocked = r.attempted - r.blocked;
  r.collision_freq =
      unblocked ? static_cast<double>(r.collided) / unblocked : 0.0;
  r.blockage_freq =
      r.attempted ? static_cast<double>(r.blocked) / r.attempted : 0.0;
  return r;
}

ThroughputReport run_ensemble(const NetworkParams& p,
                              const DerivedGeometry& g, Scheduler sched,
                              double core_width, const TrafficConfig& t,
                              std::uint32_t deployments, std::uint64_t seed,
                              bool omni, int threads) {
  if (deployments == 0) {
    throw Error(ErrorCode::InvalidParameter,
                "ensemble needs at least one deployment");
  }
  validate(p);
  check_traffic(t);
  check_core_width(core_width);
  const NetworkParams run_p = omni ? omni_equivalent(p) : p;
  const DerivedGeometry run_g = omni ? derive_geometry(run_p) : g;

  std::vector<ThroughputReport> parts(deployments);
  auto work = [&](std::uint32_t i) {
    const std::uint64_t sub = splitmix64(seed ^ splitmix64(i));
    // the deployment always comes from the base params so the omni
    // benchmark replays the exact same topology
    const Deployment dep = generate_deployment(p, g, core_width, sub);
    const SlotTrace tr =
        sched == Scheduler::Aloha
            ? run_slotted_aloha(dep, run_p, run_g, t, sub)
            : run_tdma(dep, run_p, run_g, t);
    parts[i] = summarize(tr, core_width * core_width);
  };

  unsigned n =
      threads > 0 ? static_cast<unsigned>(threads)
                  : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<std::uint32_t>(n, deployments);
  if (n <= 1) {
    for (std::uint32_t i = 0; i < deployments; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint32_t i = w; i < deployments; i += n) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  ThroughputReport r;
  r.slots = t.slots();
  r.deployments = deployments;
  for (const auto& part : parts) {
    r.attempted += part.attempted;
    r.blocked += part.blocked;
    r.collided += part.collided;
    r.delivered += part.delivered;
    r.links += part.links;
  }
  const double slot_total =
      static_cast<double>(r.slots) * static_cast<double>(r.links);
  r.per_link_throughput =
      slot_total > 0.0 ? static_cast<double>(r.delivered) / slot_total : 0.0;
  r.ase = static_cast<double>(r.delivered) /
          (static_cast<double>(r.slots) * static_cast<double>(deployments) *
           core_width * core_width);
  const std::uint64_t unblocked = r.attempted - r.blocked;
  r.collision_freq =
      unblocked ? static_cast<double>(r.collided) / unblocked : 0.0;
  r.blockage_freq =
      r.attempted ? static_cast<double>(r.blocked) / r.attempted : 0.0;
  return r;
}

}  // namespace mmwave::emulator
