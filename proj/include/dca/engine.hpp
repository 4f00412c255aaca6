#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dca/config.hpp"
#include "dca/rule.hpp"

namespace dca {

// Reduced non-negative fraction.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Applies the rule once to every site of the ring.
RingConfig step(const Rule& rule, const RingConfig& config);

// Applies the rule on Z. The result window is the input window widened by r on each side,
// so the result is exact everywhere. Throws Error(non_fixed_background) if the rule does not
// fix the background.
WindowConfig step(const Rule& rule, const WindowConfig& config);

// In-place variants that reuse scratch storage; used by the long-running loops.
void step_into(const Rule& rule, const RingConfig& config, RingConfig& out, BitRow& scratch);

RingConfig evolve(const Rule& rule, const RingConfig& config, std::uint64_t steps);
WindowConfig evolve(const Rule& rule, const WindowConfig& config, std::uint64_t steps);

// Rows Φ^0 x .. Φ^t x. For windows each row keeps the window it was computed on.
class SpaceTimeDiagram {
 public:
  using Row = std::variant<RingConfig, WindowConfig>;

  explicit SpaceTimeDiagram(std::vector<RingConfig> rows);
  explicit SpaceTimeDiagram(std::vector<WindowConfig> rows);

  std::size_t t_max() const noexcept { return row_count() - 1; }
  std::size_t row_count() const noexcept;
  bool is_ring() const noexcept { return std::holds_alternative<std::vector<RingConfig>>(rows_); }

  const std::vector<RingConfig>& ring_rows() const { return std::get<std::vector<RingConfig>>(rows_); }
  const std::vector<WindowConfig>& window_rows() const { return std::get<std::vector<WindowConfig>>(rows_); }

  // Image width: the ring length, or the width of the union of all row windows.
  std::size_t width() const noexcept;
  // Row t rendered at the common width. Window rows are padded with background so that
  // column c holds the same site in every row.
  BitRow image_row(std::size_t t) const;

  // Plain PBM (P1). Each comment line is written as "# <text>" after the magic number.
  void write_pbm(std::ostream& out, const std::vector<std::string>& comments = {}) const;

 private:
  std::variant<std::vector<RingConfig>, std::vector<WindowConfig>> rows_;
};

SpaceTimeDiagram evolve_recorded(const Rule& rule, const RingConfig& config, std::uint64_t steps);
SpaceTimeDiagram evolve_recorded(const Rule& rule, const WindowConfig& config, std::uint64_t steps);

// Exact fraction of 1-cells. Requires a non-empty ring.
Ratio density(const RingConfig& config);

// Sites where the two configurations differ, ascending. Rings must have equal length; windows
// must share a background (otherwise the difference set is infinite). Throws
// Error(domain_mismatch) when either precondition fails.
std::vector<std::int64_t> diff(const RingConfig& x, const RingConfig& y);
std::vector<std::int64_t> diff(const WindowConfig& x, const WindowConfig& y);

}  // namespace dca
