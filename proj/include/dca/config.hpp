#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "dca/bitrow.hpp"
#include "dca/rule.hpp"

namespace dca {

// Closed integer interval [lo, hi]; empty when hi < lo.
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const noexcept { return hi < lo; }
  std::int64_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool contains(std::int64_t i) const noexcept { return lo <= i && i <= hi; }
  bool contains(const Interval& other) const noexcept {
    return other.empty() || (contains(other.lo) && contains(other.hi));
  }
  bool intersects(const Interval& other) const noexcept {
    return !empty() && !other.empty() && lo <= other.hi && other.lo <= hi;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// n cells on the ring Z_n.
class RingConfig {
 public:
  RingConfig() = default;
  explicit RingConfig(BitRow cells);
  RingConfig(std::size_t length, Symbol fill);
  static RingConfig from_string(std::string_view bits);

  std::size_t length() const noexcept { return cells_.size(); }
  // Cyclic indexing: cell(i) == cell(i mod n) for every integer i.
  Symbol cell(std::int64_t i) const noexcept;
  void set(std::int64_t i, Symbol s) noexcept;

  const BitRow& bits() const noexcept { return cells_; }
  BitRow& bits() noexcept { return cells_; }

  std::size_t count_ones() const noexcept { return cells_.count(); }
  bool is_uniform(Symbol s) const noexcept { return cells_.all(to_bit(s)); }
  std::string to_string() const { return cells_.to_string(); }

  friend bool operator==(const RingConfig&, const RingConfig&) = default;

 private:
  BitRow cells_;
};

// A finite perturbation of a uniform configuration: every site outside the support window
// holds the background symbol.
class WindowConfig {
 public:
  WindowConfig() = default;
  WindowConfig(Symbol background, std::int64_t start, BitRow cells);
  // The uniform configuration itself, with an empty window.
  static WindowConfig uniform(Symbol background);
  static WindowConfig from_string(Symbol background, std::int64_t start, std::string_view bits);

  Symbol background() const noexcept { return background_; }
  std::int64_t start() const noexcept { return start_; }
  Interval support_window() const noexcept {
    return {start_, start_ + static_cast<std::int64_t>(cells_.size()) - 1};
  }
  const BitRow& bits() const noexcept { return cells_; }

  Symbol cell(std::int64_t i) const noexcept;

  // True iff the configuration equals the background everywhere.
  bool is_background() const noexcept { return cells_.all(to_bit(background_)); }

  // Same configuration with background-valued cells trimmed from both ends of the window.
  WindowConfig normalized() const;

  std::string to_string() const { return cells_.to_string(); }

  // Value equality on Z: windows may differ as long as the configurations agree everywhere.
  friend bool operator==(const WindowConfig& a, const WindowConfig& b);

 private:
  Symbol background_ = Symbol::zero;
  std::int64_t start_ = 0;
  BitRow cells_;
};

}  // namespace dca
