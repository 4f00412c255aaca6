#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dca {

// Fixed-length row of bits packed 64 per word, bit i of the row in word i/64 at position i%64.
// Bits past size() are kept zero so that word-level comparisons and counts are exact.
class BitRow {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitRow() = default;
  explicit BitRow(std::size_t size, bool value = false);

  // Parses a string of '0'/'1' characters; any other character throws Error(parse).
  static BitRow from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }

  void fill(bool value) noexcept;
  std::size_t count() const noexcept;
  // True iff every bit equals value (vacuously true for an empty row).
  bool all(bool value) const noexcept;

  // 64 bits starting at bit position pos; positions at or past size() read as zero.
  Word extract(std::size_t pos) const noexcept;

  // Copies len bits of src starting at src_pos into this row starting at dst_pos.
  void copy_from(const BitRow& src, std::size_t src_pos, std::size_t dst_pos, std::size_t len) noexcept;
  // Sets len bits starting at pos to value.
  void fill_range(std::size_t pos, std::size_t len, bool value) noexcept;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }
  // Re-zeroes the unused high bits of the last word after raw word writes.
  void clear_tail() noexcept;

  std::string to_string() const;

  friend bool operator==(const BitRow& a, const BitRow& b) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace dca
