#pragma once

#include "strmac/types.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace strmac {

enum class FrameKind : std::uint8_t { Rts, Cts, Data, Ack, Beacon, AssocRequest, AssocResponse };

const char* to_string(FrameKind kind);

/// Frame Control. The two flags live in bits that legacy stations treat as
/// reserved, so a legacy decoder never sees them.
struct FrameControl {
  FrameKind kind = FrameKind::Data;
  bool fd_flag = false;    ///< CTS-FD marker.
  bool fdti_flag = false;  ///< FD transmission indicator marker.

  bool operator==(const FrameControl&) const = default;
};

/// 16-bit Capability Information field of management frames.
struct CapabilityInfo {
  /// Reserved bit carrying "full-duplex capable".
  static constexpr unsigned kFdBit = 15;

  std::uint16_t raw = 0;

  [[nodiscard]] bool fd_capable() const { return (raw >> kFdBit) & 1U; }
  void set_fd_capable(bool on)
  {
    raw = static_cast<std::uint16_t>(on ? (raw | (1U << kFdBit)) : (raw & ~(1U << kFdBit)));
  }

  bool operator==(const CapabilityInfo&) const = default;
};

struct Frame {
  FrameControl control;
  std::uint32_t duration_us = 0;  ///< Duration/ID field, 15 usable bits.
  NodeId src = kBroadcast;
  NodeId dst = kBroadcast;
  std::uint32_t payload_bits = 0;  ///< Data frames only.
  CapabilityInfo capability;       ///< Beacon / association frames only.

  [[nodiscard]] FrameKind kind() const { return control.kind; }
  bool operator==(const Frame&) const = default;
};

inline constexpr std::uint32_t kMaxDurationUs = 32767;

/// On-air sizes of the synthetic bit layout.
inline constexpr std::size_t kRtsBits = 288;
inline constexpr std::size_t kCtsBits = 240;
inline constexpr std::size_t kAckBits = 240;
inline constexpr std::size_t kMacHeaderBits = 272;
inline constexpr std::size_t kManagementBits = kMacHeaderBits + 16;

/// Stream positions of the Frame Control reserved bits used by the FD extensions.
inline constexpr std::size_t kFdFlagPosition = 14;
inline constexpr std::size_t kFdtiFlagPosition = 15;

class EncodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// MSB-first bit string.
class BitString {
public:
  BitString() = default;
  explicit BitString(std::size_t size) : m_bits(size, false) {}

  [[nodiscard]] std::size_t size() const { return m_bits.size(); }
  [[nodiscard]] bool operator[](std::size_t pos) const { return m_bits[pos]; }
  void set(std::size_t pos, bool value) { m_bits[pos] = value; }
  void flip(std::size_t pos) { m_bits[pos] = !m_bits[pos]; }

  void append(std::uint64_t value, unsigned width);
  void append_zeros(std::size_t count) { m_bits.resize(m_bits.size() + count, false); }
  [[nodiscard]] std::uint64_t read(std::size_t pos, unsigned width) const;

  bool operator==(const BitString&) const = default;

private:
  std::vector<bool> m_bits;
};

std::size_t hamming_distance(const BitString& a, const BitString& b);

/// Encoded length in bits of a frame.
std::size_t encoded_size(const Frame& frame);

BitString encode(const Frame& frame);

/// FD-aware decoder: reads the reserved flag bits.
Frame decode(const BitString& bits);

/// Decoder of a station that predates the FD extensions. Reserved bits in
/// Frame Control and Capability Information are ignored.
Frame decode_legacy(const BitString& bits);

Frame make_rts(NodeId src, NodeId dst, std::uint32_t duration_us);
Frame make_cts(NodeId src, NodeId dst, std::uint32_t duration_us);
Frame make_cts_fd(NodeId dst, std::uint32_t duration_us, NodeId src = kBroadcast);
Frame make_data(NodeId src, NodeId dst, std::uint32_t duration_us, std::uint32_t payload_bits);
Frame make_ack(NodeId src, NodeId dst);
/// FDTI: a broadcast ACK-sized control frame with the FDTI bit set.
Frame make_fdti(NodeId src);
Frame make_beacon(NodeId ap, bool fd_capable);
Frame make_assoc_request(NodeId sta, NodeId ap, bool fd_capable);
Frame make_assoc_response(NodeId ap, NodeId sta, bool fd_capable);

[[nodiscard]] inline bool is_cts_fd(const Frame& f) { return f.kind() == FrameKind::Cts && f.control.fd_flag; }
[[nodiscard]] inline bool is_fdti(const Frame& f) { return f.control.fdti_flag; }

/// One-line rendering used in traces: kind, flags, duration, src, dst.
std::string to_string(const Frame& frame);

}  // namespace strmac
