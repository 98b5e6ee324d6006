#pragma once

#include <cstdint>
#include <vector>

#include "mmwave/geometry.hpp"
#include "mmwave/model.hpp"

// Slot-level packet emulator on a planar deployment. Transmitters form a
// Poisson field over the core region enlarged by a margin that absorbs edge
// effects; statistics are collected over links whose receiver falls in the
// core. Obstacles are short line segments (Poisson centers, uniform
// orientation, length uniform on (0, 1] m). A transmission from link j ruins
// link i's slot when j is active, tx_j lies within d_max of rx_i, each end's
// beam covers the other, and the path tx_j -> rx_i is unobstructed.

namespace mmwave::emulator {

struct Link {
  Vec2 tx;
  Vec2 rx;
  double bore = 0.0;  // beam direction tx -> rx; rx beam points back
  bool rx_in_core = false;
};

struct Deployment {
  std::vector<Link> links;
  std::vector<Segment> obstacles;
  double core_width = 0.0;  // core is [0, core_width]^2
  double margin = 0.0;      // border width added on every side
};

// margin is d_max + 1 so no outside transmitter or obstacle can reach a
// core receiver
Deployment generate_deployment(const NetworkParams& p,
                               const DerivedGeometry& g, double core_width,
                               std::uint64_t seed);

struct TrafficConfig {
  double cbr_bps = 384e6;       // constant bit rate offered per link
  double packet_bits = 40e3;    // 5 kB packets
  double slot_s = 100e-6;
  double duration_s = 1.0;
  bool saturated = false;       // ignore arrivals; every link always has a packet

  double packets_per_slot() const { return cbr_bps * slot_s / packet_bits; }
  std::uint64_t slots() const;
};

enum class Scheduler { Aloha, Tdma };

struct LinkCounts {
  std::uint64_t attempted = 0;
  std::uint64_t blocked = 0;    // own link shadowed by an obstacle
  std::uint64_t collided = 0;   // unblocked but an interferer got through
  std::uint64_t delivered = 0;
};

struct SlotEvent {
  std::uint64_t slot = 0;
  std::uint32_t link = 0;  // index into Deployment::links
  bool attempted = false;
  bool blocked = false;
  bool collided = false;
  bool delivered = false;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_event(const SlotEvent& ev) = 0;
};

struct SlotTrace {
  std::vector<std::uint32_t> core_links;  // indices into Deployment::links
  std::vector<LinkCounts> counts;         // parallel to core_links
  std::uint64_t slots = 0;
  double offered_per_slot = 0.0;          // packets per slot per link
};

// Failed packets are dropped (no retransmission), so per link
// attempted = blocked + collided + delivered and attempted <= slots.
SlotTrace run_slotted_aloha(const Deployment& d, const NetworkParams& p,
                            const DerivedGeometry& g, const TrafficConfig& t,
                            std::uint64_t seed, TraceSink* sink = nullptr);

// One core link per slot in rotation; outside transmitters hold their own
// orthogonal schedules, so no slot can collide. Fully deterministic.
SlotTrace run_tdma(const Deployment& d, const NetworkParams& p,
                   const DerivedGeometry& g, const TrafficConfig& t,
                   TraceSink* sink = nullptr);

// Same network with beams widened to the full circle and transmit power
// raised by (2*pi/theta)^2, which keeps d_max unchanged; isolates what
// directionality alone buys.
NetworkParams omni_equivalent(const NetworkParams& p);

struct ThroughputReport {
  double per_link_throughput = 0.0;  // delivered packets/slot per core link
  double ase = 0.0;                  // delivered packets/slot per m^2 of core
  double collision_freq = 0.0;       // collided / unblocked attempts
  double blockage_freq = 0.0;        // blocked / attempts
  std::uint64_t attempted = 0;
  std::uint64_t blocked = 0;
  std::uint64_t collided = 0;
  std::uint64_t delivered = 0;
  std::uint64_t links = 0;  // core links summed over deployments
  std::uint64_t slots = 0;  // per deployment
  std::uint32_t deployments = 0;
};

ThroughputReport summarize(const SlotTrace& t, double core_area);

// Independent deployments (sub-seeded from `seed` by index, so any thread
// count gives identical totals), pooled as ratio estimators over all core
// links. omni = true runs the widened-beam benchmark on the same deployments.
ThroughputReport run_ensemble(const NetworkParams& p,
                              const DerivedGeometry& g, Scheduler sched,
                              double core_width, const TrafficConfig& t,
                              std::uint32_t deployments, std::uint64_t seed,
                              bool omni = false, int threads = 1);

}  // namespace mmwave::emulator
