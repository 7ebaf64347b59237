#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>

namespace strmac {

/// Simulation clock in integer microseconds.
using Micros = std::int64_t;

/// Identifier of a node (AP or STA). Nodes are numbered densely from 0.
struct NodeId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const NodeId&) const = default;
  [[nodiscard]] constexpr std::size_t index() const { return value; }
};

inline constexpr NodeId kBroadcast{std::numeric_limits<std::uint32_t>::max()};

inline std::ostream& operator<<(std::ostream& os, NodeId id)
{
  if (id == kBroadcast) {
    return os << "bcast";
  }
  return os << id.value;
}

enum class Role : std::uint8_t { Ap, Sta };
enum class Duplex : std::uint8_t { Half, Full };

}  // namespace strmac

template <>
struct std::hash<strmac::NodeId> {
  std::size_t operator()(strmac::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
