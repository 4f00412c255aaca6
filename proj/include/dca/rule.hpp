#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dca/bitrow.hpp"

namespace dca {

enum class Symbol : std::uint8_t { zero = 0, one = 1 };

constexpr Symbol flip(Symbol s) noexcept { return s == Symbol::zero ? Symbol::one : Symbol::zero; }
constexpr bool to_bit(Symbol s) noexcept { return s == Symbol::one; }
constexpr Symbol to_symbol(bool bit) noexcept { return bit ? Symbol::one : Symbol::zero; }
constexpr char to_char(Symbol s) noexcept { return s == Symbol::one ? '1' : '0'; }

// Neighborhood words are indexed most-significant-first: x_{i-r} is bit 2r of the index,
// x_{i+r} is bit 0. So (0,0,0,1,1,0,1) is index 0b0001101.
std::uint32_t neighborhood_index(std::span<const Symbol> cells);
std::vector<Symbol> neighborhood_cells(std::uint32_t index, int width);

// Word-parallel evaluator for a rule table, a reduced ordered decision diagram over the
// neighborhood positions. Each node is a multiplexer on one position; nodes are stored
// children-first so evaluation is a single forward pass.
class MuxProgram {
 public:
  struct Node {
    int var;  // neighborhood position, 0 = leftmost
    int lo;   // node id when the position holds 0
    int hi;   // node id when the position holds 1
  };
  static constexpr int kZero = 0;
  static constexpr int kOne = 1;

  MuxProgram() = default;
  explicit MuxProgram(std::span<const std::uint8_t> table);

  // shifted[j] holds, at bit b, the neighborhood position j of output cell b.
  BitRow::Word evaluate(std::span<const BitRow::Word> shifted) const noexcept;

  std::size_t node_count() const noexcept { return nodes_.size(); }

 private:
  int build(std::span<const std::uint8_t> table, int var, std::map<std::tuple<int, int, int>, int>& unique);

  std::vector<Node> nodes_;  // ids 0 and 1 are the constants
  int root_ = kZero;
};

// A deterministic radius-r binary rule held as a total lookup table over 2^(2r+1) neighborhoods.
class Rule {
 public:
  static constexpr int kMaxRadius = 4;

  // table[i] is the output for neighborhood index i; entries must be 0 or 1.
  Rule(int radius, std::vector<std::uint8_t> table, std::string name);

  int radius() const noexcept { return radius_; }
  int width() const noexcept { return 2 * radius_ + 1; }
  std::size_t table_size() const noexcept { return table_.size(); }
  const std::vector<std::uint8_t>& table() const noexcept { return table_; }
  const std::string& name() const noexcept { return name_; }

  Symbol apply(std::uint32_t neighborhood) const { return to_symbol(table_.at(neighborhood) != 0); }
  Symbol apply(std::span<const Symbol> cells) const;

  // True iff the all-s neighborhood maps to s, i.e. the uniform configuration s is a fixed point.
  bool fixes(Symbol s) const noexcept;

  const MuxProgram& program() const noexcept { return program_; }

  // Table equality; names are labels and do not participate.
  friend bool operator==(const Rule& a, const Rule& b) noexcept {
    return a.radius_ == b.radius_ && a.table_ == b.table_;
  }

 private:
  int radius_;
  std::vector<std::uint8_t> table_;
  std::string name_;
  MuxProgram program_;
};

Rule make_rule_gkl();
// Rule 184: every 10 becomes 01 simultaneously.
Rule make_rule_traffic();
// Deletes the 1 in 0010 and fills the 0 in 1011.
Rule make_rule_smoothing();
// smoothing after traffic, materialized as one radius-3 table.
Rule make_rule_modified_traffic();
Rule make_rule_and_erosion();

// Site-wise composition: the result applies first, then second. Radius is the sum.
Rule compose_rules(const Rule& first, const Rule& second, std::string name);

// Exchange 0 with 1 and left with right.
Rule conjugate_rule(const Rule& rule);

// Built-in names: gkl, traffic, smoothing, modified_traffic, and_erosion, or_erosion.
Rule rule_by_name(std::string_view name);
std::vector<std::string> builtin_rule_names();

}  // namespace dca
