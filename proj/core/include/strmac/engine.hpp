#pragma once

#include "strmac/channel.hpp"
#include "strmac/frames.hpp"
#include "strmac/observer.hpp"
#include "strmac/rng.hpp"
#include "strmac/types.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <queue>
#include <vector>

namespace strmac {

class Simulator;

/// A node's MAC as driven by the simulator. Handlers run on the simulator's
/// thread in event order; they act through the Simulator reference.
class MacNode {
public:
  virtual ~MacNode() = default;

  virtual void start() = 0;
  /// Physical carrier sense went idle -> busy.
  virtual void on_medium_busy() = 0;
  /// Physical carrier sense went busy -> idle.
  virtual void on_medium_idle() = 0;
  /// A frame ended at this node. `ok` is false for a corrupted reception.
  virtual void on_rx(const Frame& frame, bool ok) = 0;
  virtual void on_tx_end(const Frame& frame) = 0;
  virtual void on_timer(std::uint32_t kind, std::uint64_t tag) = 0;
  [[nodiscard]] virtual Micros nav_until() const = 0;
};

struct EngineStats {
  std::uint64_t events = 0;
  std::uint64_t tx_starts = 0;
  std::uint64_t tx_ends = 0;
  std::uint64_t timer_events = 0;
};

/// Discrete-event core. Keeps the set of active transmissions, per-node
/// physical carrier-sense state, and adjudicates every reception: the
/// addressed receiver by SINR (physical model), every other listener within
/// transmission range by the protocol model (clean iff no other sensed
/// transmission overlapped).
class Simulator {
public:
  Simulator(const Channel& channel, std::uint64_t seed);
  ~Simulator();

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  void attach(std::vector<std::unique_ptr<MacNode>> macs);
  void set_observer(SimObserver* observer) { m_observer = observer; }
  void set_trace(TraceSink* trace) { m_trace = trace; }

  /// Starts every MAC at t = 0 and processes events with time <= until_us.
  void run(Micros until_us);

  [[nodiscard]] Micros now() const { return m_now; }
  [[nodiscard]] const Channel& channel() const { return *m_channel; }
  [[nodiscard]] const EngineStats& stats() const { return m_stats; }
  [[nodiscard]] SimObserver* observer() const { return m_observer; }
  [[nodiscard]] bool tracing() const { return m_trace != nullptr; }

  /// Starts a transmission now. The node must not already be transmitting.
  void transmit(NodeId node, const Frame& frame, Micros airtime_us);
  void set_timer(NodeId node, Micros at_us, std::uint32_t kind, std::uint64_t tag = 0);

  [[nodiscard]] bool medium_busy(NodeId node) const { return m_phy[node.index()].busy > 0; }
  [[nodiscard]] bool transmitting(NodeId node) const { return m_phy[node.index()].transmitting; }
  /// End time of the node's ongoing transmission, or of its last one.
  [[nodiscard]] Micros tx_end_time(NodeId node) const { return m_phy[node.index()].tx_end; }
  [[nodiscard]] std::size_t active_transmissions() const { return m_active; }

  Rng& backoff_rng(NodeId node) { return m_backoff_rng[node.index()]; }
  Rng& traffic_rng(NodeId node) { return m_traffic_rng[node.index()]; }

  void trace(std::string_view kind, NodeId node, const Frame& frame, std::string_view extra = {});

private:
  struct TxRecord {
    NodeId tx;
    Frame frame;
    Micros start;
    Micros end;
    bool active;
  };

  struct PhyState {
    std::uint32_t busy = 0;
    Micros last_multi_end = -1;
    bool transmitting = false;
    Micros tx_start = -1;
    Micros tx_end = -1;
  };

  enum class EventType : std::uint8_t { TxEnd = 0, Timer = 1 };

  struct Event {
    Micros time;
    std::uint64_t order;  // priority in the top bits, then insertion sequence
    std::uint64_t tag;
    std::uint32_t node;
    std::uint32_t kind;
    EventType type;

    bool operator>(const Event& o) const { return time != o.time ? time > o.time : order > o.order; }
  };

  void push(Micros time, EventType type, std::uint32_t node, std::uint32_t kind, std::uint64_t tag);
  void finish_transmission(std::uint64_t tx_id);
  bool intended_reception_ok(const TxRecord& rec, NodeId rx, bool self_tx);
  void prune_history();

  const Channel* m_channel;
  std::vector<std::unique_ptr<MacNode>> m_macs;
  std::vector<PhyState> m_phy;
  std::vector<Rng> m_backoff_rng;
  std::vector<Rng> m_traffic_rng;
  Rng m_fading_rng;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> m_queue;
  std::deque<TxRecord> m_history;  // ordered by start time
  std::uint64_t m_history_base = 0;
  std::size_t m_active = 0;
  std::uint64_t m_seq = 0;
  Micros m_now = 0;
  EngineStats m_stats;
  SimObserver* m_observer = nullptr;
  TraceSink* m_trace = nullptr;

  // scratch buffers reused across events
  std::vector<std::pair<NodeId, bool>> m_rx_scratch;
  std::vector<NodeId> m_idle_scratch;
  std::vector<NodeId> m_busy_scratch;
};

}  // namespace strmac
