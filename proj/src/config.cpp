#include "dca/config.hpp"

#include <algorithm>

#include "dca/error.hpp"

namespace dca {

RingConfig::RingConfig(BitRow cells) : cells_(std::move(cells)) {}

RingConfig::RingConfig(std::size_t length, Symbol fill) : cells_(length, to_bit(fill)) {}

RingConfig RingConfig::from_string(std::string_view bits) { return RingConfig(BitRow::from_string(bits)); }

namespace {

std::size_t wrap(std::int64_t i, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

}  // namespace

Symbol RingConfig::cell(std::int64_t i) const noexcept { return to_symbol(cells_.get(wrap(i, cells_.size()))); }

void RingConfig::set(std::int64_t i, Symbol s) noexcept { cells_.set(wrap(i, cells_.size()), to_bit(s)); }

WindowConfig::WindowConfig(Symbol background, std::int64_t start, BitRow cells)
    : background_(background), start_(start), cells_(std::move(cells)) {}

WindowConfig WindowConfig::uniform(Symbol background) { return WindowConfig(background, 0, BitRow()); }

WindowConfig WindowConfig::from_string(Symbol background, std::int64_t start, std::string_view bits) {
  return WindowConfig(background, start, BitRow::from_string(bits));
}

Symbol WindowConfig::cell(std::int64_t i) const noexcept {
  if (!support_window().contains(i)) return background_;
  return to_symbol(cells_.get(static_cast<std::size_t>(i - start_)));
}

WindowConfig WindowConfig::normalized() const {
  const bool bg = to_bit(background_);
  std::size_t first = 0;
  std::size_t last = cells_.size();
  while (first < last && cells_.get(first) == bg) ++first;
  while (last > first && cells_.get(last - 1) == bg) --last;
  if (first == last) return uniform(background_);
  BitRow trimmed(last - first);
  trimmed.copy_from(cells_, first, 0, last - first);
  return WindowConfig(background_, start_ + static_cast<std::int64_t>(first), std::move(trimmed));
}

bool operator==(const WindowConfig& a, const WindowConfig& b) {
  if (a.background_ != b.background_) return false;
  const WindowConfig na = a.normalized();
  const WindowConfig nb = b.normalized();
  if (na.cells_.empty() && nb.cells_.empty()) return true;
  return na.start_ == nb.start_ && na.cells_ == nb.cells_;
}

}  // namespace dca
