#pragma once

#include <stdexcept>
#include <string>

namespace dca {

// Error categories shared by the C++ core and the C API status codes.
enum class Errc {
  invalid_argument = 1,
  non_fixed_background,
  domain_mismatch,
  overlapping_islands,
  window_too_large,
  too_large,
  alpha_not_less_than_one,
  io,
  parse,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code) noexcept;

}  // namespace dca
