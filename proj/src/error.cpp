#include "dca/error.hpp"

namespace dca {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::non_fixed_background: return "NonFixedBackground";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::overlapping_islands: return "OverlappingIslands";
    case Errc::window_too_large: return "WindowTooLarge";
    case Errc::too_large: return "TooLarge";
    case Errc::alpha_not_less_than_one: return "AlphaNotLessThanOne";
    case Errc::io: return "IoError";
    case Errc::parse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dca
