#include "strmac/frames.hpp"

#include <sstream>

namespace strmac {

namespace {

constexpr unsigned kTypeManagement = 0;
constexpr unsigned kTypeControl = 1;
constexpr unsigned kTypeData = 2;

constexpr std::uint64_t kBroadcastAddress = 0xFFFF'FFFF'FFFFULL;

struct TypeCode {
  unsigned type;
  unsigned subtype;
};

TypeCode type_code(FrameKind kind)
{
  switch (kind) {
  case FrameKind::AssocRequest:
    return {kTypeManagement, 0};
  case FrameKind::AssocResponse:
    return {kTypeManagement, 1};
  case FrameKind::Beacon:
    return {kTypeManagement, 8};
  case FrameKind::Rts:
    return {kTypeControl, 11};
  case FrameKind::Cts:
    return {kTypeControl, 12};
  case FrameKind::Ack:
    return {kTypeControl, 13};
  case FrameKind::Data:
    return {kTypeData, 0};
  }
  throw EncodeError("unknown frame kind");
}

FrameKind kind_from_code(unsigned type, unsigned subtype)
{
  if (type == kTypeManagement) {
    switch (subtype) {
    case 0:
      return FrameKind::AssocRequest;
    case 1:
      return FrameKind::AssocResponse;
    case 8:
      return FrameKind::Beacon;
    default:
      break;
    }
  } else if (type == kTypeControl) {
    switch (subtype) {
    case 11:
      return FrameKind::Rts;
    case 12:
      return FrameKind::Cts;
    case 13:
      return FrameKind::Ack;
    default:
      break;
    }
  } else if (type == kTypeData && subtype == 0) {
    return FrameKind::Data;
  }
  throw DecodeError("unsupported type/subtype " + std::to_string(type) + "/" + std::to_string(subtype));
}

bool is_management(FrameKind kind)
{
  return kind == FrameKind::Beacon || kind == FrameKind::AssocRequest || kind == FrameKind::AssocResponse;
}

std::uint64_t to_address(NodeId id)
{
  return id == kBroadcast ? kBroadcastAddress : id.value;
}

NodeId from_address(std::uint64_t address)
{
  if (address == kBroadcastAddress) {
    return kBroadcast;
  }
  if (address >= kBroadcast.value) {
    throw DecodeError("address outside node-id space");
  }
  return NodeId{static_cast<std::uint32_t>(address)};
}

std::size_t expected_size(FrameKind kind)
{
  switch (kind) {
  case FrameKind::Rts:
    return kRtsBits;
  case FrameKind::Cts:
    return kCtsBits;
  case FrameKind::Ack:
    return kAckBits;
  case FrameKind::Data:
    return kMacHeaderBits;
  default:
    return kManagementBits;
  }
}

}  // namespace

const char* to_string(FrameKind kind)
{
  switch (kind) {
  case FrameKind::Rts:
    return "RTS";
  case FrameKind::Cts:
    return "CTS";
  case FrameKind::Data:
    return "DATA";
  case FrameKind::Ack:
    return "ACK";
  case FrameKind::Beacon:
    return "BEACON";
  case FrameKind::AssocRequest:
    return "ASSOC_REQ";
  case FrameKind::AssocResponse:
    return "ASSOC_RESP";
  }
  return "?";
}

void BitString::append(std::uint64_t value, unsigned width)
{
  for (unsigned i = width; i-- > 0;) {
    m_bits.push_back(((value >> i) & 1U) != 0);
  }
}

std::uint64_t BitString::read(std::size_t pos, unsigned width) const
{
  if (pos + width > m_bits.size()) {
    throw DecodeError("read past end of bit string");
  }
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) {
    value = (value << 1U) | (m_bits[pos + i] ? 1U : 0U);
  }
  return value;
}

std::size_t hamming_distance(const BitString& a, const BitString& b)
{
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_distance: length mismatch");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += a[i] != b[i] ? 1 : 0;
  }
  return d;
}

std::size_t encoded_size(const Frame& frame)
{
  const auto base = expected_size(frame.kind());
  return frame.kind() == FrameKind::Data ? base + frame.payload_bits : base;
}

BitString encode(const Frame& frame)
{
  if (frame.duration_us > kMaxDurationUs) {
    throw EncodeError("duration " + std::to_string(frame.duration_us) + " us does not fit the 15-bit Duration/ID field");
  }
  const FrameKind kind = frame.kind();
  if (kind != FrameKind::Data && frame.payload_bits != 0) {
    throw EncodeError(std::string(to_string(kind)) + " frames carry no payload");
  }

  const auto code = type_code(kind);
  BitString bits;
  bits.append(0, 2);  // protocol version
  bits.append(code.type, 2);
  bits.append(code.subtype, 4);
  bits.append(0, 6);  // toDS fromDS moreFrag retry pwrMgt moreData
  bits.append(frame.control.fd_flag ? 1 : 0, 1);
  bits.append(frame.control.fdti_flag ? 1 : 0, 1);
  bits.append(frame.duration_us, 16);
  bits.append(to_address(frame.dst), 48);
  bits.append(to_address(frame.src), 48);

  if (kind == FrameKind::Data) {
    bits.append_zeros(kMacHeaderBits - bits.size());
    bits.append_zeros(frame.payload_bits);
  } else if (is_management(kind)) {
    bits.append_zeros(kMacHeaderBits - bits.size());
    bits.append(frame.capability.raw, 16);
  } else {
    bits.append_zeros(expected_size(kind) - bits.size());
  }
  return bits;
}

namespace {

Frame decode_impl(const BitString& bits, bool honour_reserved)
{
  if (bits.size() < 128) {
    throw DecodeError("frame shorter than its fixed header (" + std::to_string(bits.size()) + " bits)");
  }
  if (bits.read(0, 2) != 0) {
    throw DecodeError("unsupported protocol version");
  }
  Frame frame;
  frame.control.kind =
      kind_from_code(static_cast<unsigned>(bits.read(2, 2)), static_cast<unsigned>(bits.read(4, 4)));
  const FrameKind kind = frame.kind();

  const std::size_t base = expected_size(kind);
  if (kind == FrameKind::Data ? bits.size() < base : bits.size() != base) {
    throw DecodeError(std::string("malformed ") + to_string(kind) + " length " + std::to_string(bits.size()));
  }

  if (honour_reserved) {
    frame.control.fd_flag = bits[kFdFlagPosition];
    frame.control.fdti_flag = bits[kFdtiFlagPosition];
  }
  const auto duration = bits.read(16, 16);
  if (duration > kMaxDurationUs) {
    throw DecodeError("Duration/ID field has its top bit set");
  }
  frame.duration_us = static_cast<std::uint32_t>(duration);
  frame.dst = from_address(bits.read(32, 48));
  frame.src = from_address(bits.read(80, 48));

  if (kind == FrameKind::Data) {
    frame.payload_bits = static_cast<std::uint32_t>(bits.size() - base);
  } else if (is_management(kind)) {
    frame.capability.raw = static_cast<std::uint16_t>(bits.read(kMacHeaderBits, 16));
    if (!honour_reserved) {
      frame.capability.set_fd_capable(false);
    }
  }
  return frame;
}

}  // namespace

Frame decode(const BitString& bits)
{
  return decode_impl(bits, true);
}

Frame decode_legacy(const BitString& bits)
{
  return decode_impl(bits, false);
}

Frame make_rts(NodeId src, NodeId dst, std::uint32_t duration_us)
{
  return Frame{{FrameKind::Rts}, duration_us, src, dst, 0, {}};
}

Frame make_cts(NodeId src, NodeId dst, std::uint32_t duration_us)
{
  return Frame{{FrameKind::Cts}, duration_us, src, dst, 0, {}};
}

Frame make_cts_fd(NodeId dst, std::uint32_t duration_us, NodeId src)
{
  Frame f = make_cts(src, dst, duration_us);
  f.control.fd_flag = true;
  return f;
}

Frame make_data(NodeId src, NodeId dst, std::uint32_t duration_us, std::uint32_t payload_bits)
{
  return Frame{{FrameKind::Data}, duration_us, src, dst, payload_bits, {}};
}

Frame make_ack(NodeId src, NodeId dst)
{
  return Frame{{FrameKind::Ack}, 0, src, dst, 0, {}};
}

Frame make_fdti(NodeId src)
{
  Frame f = make_ack(src, kBroadcast);
  f.control.fdti_flag = true;
  return f;
}

namespace {
Frame make_management(FrameKind kind, NodeId src, NodeId dst, bool fd_capable)
{
  Frame f{{kind}, 0, src, dst, 0, {}};
  f.capability.raw = 0x0001;  // ESS
  f.capability.set_fd_capable(fd_capable);
  return f;
}
}  // namespace

Frame make_beacon(NodeId ap, bool fd_capable)
{
  return make_management(FrameKind::Beacon, ap, kBroadcast, fd_capable);
}

Frame make_assoc_request(NodeId sta, NodeId ap, bool fd_capable)
{
  return make_management(FrameKind::AssocRequest, sta, ap, fd_capable);
}

Frame make_assoc_response(NodeId ap, NodeId sta, bool fd_capable)
{
  return make_management(FrameKind::AssocResponse, ap, sta, fd_capable);
}

std::string to_string(const Frame& frame)
{
  std::ostringstream os;
  os << to_string(frame.kind()) << " fd=" << (frame.control.fd_flag ? 1 : 0)
     << " fdti=" << (frame.control.fdti_flag ? 1 : 0) << " dur=" << frame.duration_us << " src=" << frame.src
     << " dst=" << frame.dst;
  if (frame.kind() == FrameKind::Data) {
    os << " bits=" << frame.payload_bits;
  }
  return os.str();
}

}  // namespace strmac
