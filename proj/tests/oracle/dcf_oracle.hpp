#pragma once

#include "strmac/engine.hpp"
#include "strmac/timing.hpp"

#include <memory>
#include <vector>

namespace strmac::oracle {

/// Plain IEEE 802.11 DCF with RTS/CTS, NAV and EIFS, written independently of
/// the STR MAC. Airtimes are computed from the raw parameters here.
std::vector<std::unique_ptr<MacNode>> make_dcf_macs(Simulator& sim, const TimingParams& timing);

}  // namespace strmac::oracle
