#pragma once

#include "strmac/frames.hpp"
#include "strmac/timing.hpp"
#include "strmac/types.hpp"

#include <optional>
#include <string_view>

namespace strmac {

enum class ExchangeKind : std::uint8_t { Hd, Bfd, Ufd };

const char* to_string(ExchangeKind kind);

/// An FD exchange as committed by the node that planned the second transmission.
struct FdExchangeRecord {
  ExchangeKind kind = ExchangeKind::Bfd;
  NodeId planner;         ///< node that sent the CTS-FD
  NodeId first_tx;        ///< transmitter of the first data frame (RTS sender)
  NodeId first_rx;        ///< its receiver (the planner)
  NodeId second_rx;       ///< receiver of the planner's data frame
  Micros t1 = 0;          ///< RTS end
  Micros t2 = 0;          ///< CTS-FD end
  Micros t4 = 0;          ///< first data end
  Micros t5 = 0;          ///< ACK deadline
  Micros d0 = 0;
  Micros d1 = 0;
  TxSchedule second;
};

/// Hooks for invariant checking and measurement. All default to no-ops.
class SimObserver {
public:
  virtual ~SimObserver() = default;

  virtual void on_tx_start(NodeId /*node*/, const Frame& /*frame*/, Micros /*start*/, Micros /*end*/,
                           Micros /*nav_until*/)
  {
  }
  virtual void on_rx(NodeId /*node*/, const Frame& /*frame*/, bool /*ok*/, Micros /*now*/) {}
  virtual void on_fd_exchange(const FdExchangeRecord& /*record*/) {}
  /// An ACK addressed to `node` arrived after it had already given up waiting.
  virtual void on_late_ack(NodeId /*node*/, Micros /*now*/) {}
  virtual void on_ack_timeout(NodeId /*node*/, Micros /*deadline*/, Micros /*now*/) {}
  /// `node` completed an interframe wait of `ifs_us` before backoff.
  virtual void on_contention_wait(NodeId /*node*/, Micros /*ifs_us*/, Micros /*now*/) {}
  /// `node` fell back to EIFS after a corrupted reception overlapping an FD exchange.
  virtual void on_fd_induced_eifs(NodeId /*node*/, Micros /*now*/) {}
};

/// Receives one line per traced event: `time_us kind node frame-summary`.
class TraceSink {
public:
  virtual ~TraceSink() = default;
  virtual void line(std::string_view text) = 0;
};

}  // namespace strmac
