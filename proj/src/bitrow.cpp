#include "dca/bitrow.hpp"

#include <algorithm>
#include <bit>

#include "dca/error.hpp"

namespace dca {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + BitRow::kWordBits - 1) / BitRow::kWordBits; }

}  // namespace

BitRow::BitRow(std::size_t size, bool value) : size_(size), words_(word_count(size), value ? ~Word{0} : Word{0}) {
  clear_tail();
}

BitRow BitRow::from_string(std::string_view bits) {
  BitRow row(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char c = bits[i];
    if (c != '0' && c != '1') {
      throw Error(Errc::parse, "expected '0' or '1' at position " + std::to_string(i));
    }
    row.set(i, c == '1');
  }
  return row;
}

void BitRow::fill(bool value) noexcept {
  std::fill(words_.begin(), words_.end(), value ? ~Word{0} : Word{0});
  clear_tail();
}

std::size_t BitRow::count() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitRow::all(bool value) const noexcept {
  if (size_ == 0) return true;
  const std::size_t full = size_ / kWordBits;
  const Word target = value ? ~Word{0} : Word{0};
  for (std::size_t i = 0; i < full; ++i) {
    if (words_[i] != target) return false;
  }
  const std::size_t rem = size_ % kWordBits;
  if (rem != 0) {
    const Word mask = (Word{1} << rem) - 1;
    if ((words_[full] & mask) != (target & mask)) return false;
  }
  return true;
}

BitRow::Word BitRow::extract(std::size_t pos) const noexcept {
  const std::size_t q = pos / kWordBits;
  const std::size_t s = pos % kWordBits;
  const Word lo = q < words_.size() ? words_[q] : 0;
  if (s == 0) return lo;
  const Word hi = q + 1 < words_.size() ? words_[q + 1] : 0;
  return (lo >> s) | (hi << (kWordBits - s));
}

void BitRow::copy_from(const BitRow& src, std::size_t src_pos, std::size_t dst_pos, std::size_t len) noexcept {
  while (len > 0) {
    const std::size_t dq = dst_pos / kWordBits;
    const std::size_t ds = dst_pos % kWordBits;
    const std::size_t chunk = std::min(len, kWordBits - ds);
    const Word mask = chunk == kWordBits ? ~Word{0} : ((Word{1} << chunk) - 1);
    const Word bits = src.extract(src_pos) & mask;
    words_[dq] = (words_[dq] & ~(mask << ds)) | (bits << ds);
    src_pos += chunk;
    dst_pos += chunk;
    len -= chunk;
  }
}

void BitRow::fill_range(std::size_t pos, std::size_t len, bool value) noexcept {
  while (len > 0) {
    const std::size_t q = pos / kWordBits;
    const std::size_t s = pos % kWordBits;
    const std::size_t chunk = std::min(len, kWordBits - s);
    const Word mask = (chunk == kWordBits ? ~Word{0} : ((Word{1} << chunk) - 1)) << s;
    if (value) {
      words_[q] |= mask;
    } else {
      words_[q] &= ~mask;
    }
    pos += chunk;
    len -= chunk;
  }
}

void BitRow::clear_tail() noexcept {
  const std::size_t rem = size_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

std::string BitRow::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

}  // namespace dca
