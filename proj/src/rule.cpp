#include "dca/rule.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "dca/error.hpp"

namespace dca {

std::uint32_t neighborhood_index(std::span<const Symbol> cells) {
  std::uint32_t index = 0;
  for (Symbol s : cells) index = (index << 1) | (to_bit(s) ? 1U : 0U);
  return index;
}

std::vector<Symbol> neighborhood_cells(std::uint32_t index, int width) {
  std::vector<Symbol> cells(static_cast<std::size_t>(width));
  for (int j = 0; j < width; ++j) cells[static_cast<std::size_t>(j)] = to_symbol((index >> (width - 1 - j)) & 1U);
  return cells;
}

// ---------------------------------------------------------------------------------------------
// MuxProgram

MuxProgram::MuxProgram(std::span<const std::uint8_t> table) {
  nodes_.push_back({-1, kZero, kZero});
  nodes_.push_back({-1, kOne, kOne});
  std::map<std::tuple<int, int, int>, int> unique;
  root_ = build(table, 0, unique);
}

int MuxProgram::build(std::span<const std::uint8_t> table, int var, std::map<std::tuple<int, int, int>, int>& unique) {
  if (std::all_of(table.begin(), table.end(), [](std::uint8_t v) { return v == 0; })) return kZero;
  if (std::all_of(table.begin(), table.end(), [](std::uint8_t v) { return v != 0; })) return kOne;
  const std::size_t half = table.size() / 2;
  const int lo = build(table.first(half), var + 1, unique);
  const int hi = build(table.subspan(half), var + 1, unique);
  if (lo == hi) return lo;
  const auto [it, inserted] = unique.try_emplace({var, lo, hi}, static_cast<int>(nodes_.size()));
  if (inserted) nodes_.push_back({var, lo, hi});
  return it->second;
}

BitRow::Word MuxProgram::evaluate(std::span<const BitRow::Word> shifted) const noexcept {
  // Rules have at most 2^9 table entries, so the diagram never exceeds 512 nodes.
  BitRow::Word values[520];
  values[kZero] = 0;
  values[kOne] = ~BitRow::Word{0};
  for (std::size_t i = 2; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const BitRow::Word s = shifted[static_cast<std::size_t>(n.var)];
    values[i] = (s & values[n.hi]) | (~s & values[n.lo]);
  }
  return values[root_];
}

// ---------------------------------------------------------------------------------------------
// Rule

Rule::Rule(int radius, std::vector<std::uint8_t> table, std::string name)
    : radius_(radius), table_(std::move(table)), name_(std::move(name)) {
  if (radius_ < 1 || radius_ > kMaxRadius) {
    throw Error(Errc::invalid_argument, "rule radius must be in [1, 4], got " + std::to_string(radius_));
  }
  const std::size_t expected = std::size_t{1} << width();
  if (table_.size() != expected) {
    throw Error(Errc::invalid_argument, "rule table must have " + std::to_string(expected) + " entries, got " +
                                            std::to_string(table_.size()));
  }
  for (std::uint8_t v : table_) {
    if (v > 1) throw Error(Errc::invalid_argument, "rule table entries must be 0 or 1");
  }
  program_ = MuxProgram(table_);
}

Symbol Rule::apply(std::span<const Symbol> cells) const {
  if (cells.size() != static_cast<std::size_t>(width())) {
    throw Error(Errc::invalid_argument, "neighborhood width mismatch");
  }
  return apply(neighborhood_index(cells));
}

bool Rule::fixes(Symbol s) const noexcept {
  const std::size_t index = to_bit(s) ? table_.size() - 1 : 0;
  return table_[index] == (to_bit(s) ? 1 : 0);
}

namespace {

template <typename F>
Rule tabulate(int radius, std::string name, F&& local) {
  const int width = 2 * radius + 1;
  std::vector<std::uint8_t> table(std::size_t{1} << width);
  for (std::uint32_t w = 0; w < table.size(); ++w) {
    const auto cells = neighborhood_cells(w, width);
    table[w] = to_bit(local(std::span<const Symbol>(cells))) ? 1 : 0;
  }
  return Rule(radius, std::move(table), std::move(name));
}

Symbol majority(Symbol a, Symbol b, Symbol c) {
  const int ones = int{to_bit(a)} + int{to_bit(b)} + int{to_bit(c)};
  return to_symbol(ones >= 2);
}

}  // namespace

Rule make_rule_gkl() {
  // x[0..6] = x_{i-3}..x_{i+3}
  return tabulate(3, "gkl", [](std::span<const Symbol> x) {
    return x[3] == Symbol::zero ? majority(x[0], x[2], x[3]) : majority(x[3], x[4], x[6]);
  });
}

Rule make_rule_traffic() {
  return tabulate(1, "traffic", [](std::span<const Symbol> x) {
    const bool left = to_bit(x[0]), self = to_bit(x[1]), right = to_bit(x[2]);
    return to_symbol((self && right) || (left && !self));
  });
}

Rule make_rule_smoothing() {
  return tabulate(2, "smoothing", [](std::span<const Symbol> x) {
    using enum Symbol;
    if (x[0] == zero && x[1] == zero && x[2] == one && x[3] == zero) return zero;
    if (x[1] == one && x[2] == zero && x[3] == one && x[4] == one) return one;
    return x[2];
  });
}

Rule compose_rules(const Rule& first, const Rule& second, std::string name) {
  const int r1 = first.radius();
  const int r2 = second.radius();
  return tabulate(r1 + r2, std::move(name), [&](std::span<const Symbol> x) {
    std::vector<Symbol> mid(static_cast<std::size_t>(second.width()));
    for (int j = 0; j < second.width(); ++j) {
      mid[static_cast<std::size_t>(j)] = first.apply(x.subspan(static_cast<std::size_t>(j), first.width()));
    }
    return second.apply(std::span<const Symbol>(mid));
  });
}

Rule make_rule_modified_traffic() {
  return compose_rules(make_rule_traffic(), make_rule_smoothing(), "modified_traffic");
}

Rule make_rule_and_erosion() {
  return tabulate(1, "and_erosion", [](std::span<const Symbol> x) {
    return to_symbol(to_bit(x[0]) && to_bit(x[1]) && to_bit(x[2]));
  });
}

Rule conjugate_rule(const Rule& rule) {
  const int width = rule.width();
  const std::uint32_t mask = (1U << width) - 1;
  std::vector<std::uint8_t> table(rule.table_size());
  for (std::uint32_t w = 0; w < table.size(); ++w) {
    std::uint32_t reversed = 0;
    for (int j = 0; j < width; ++j) reversed |= ((w >> j) & 1U) << (width - 1 - j);
    table[w] = static_cast<std::uint8_t>(1 - rule.table()[~reversed & mask]);
  }
  return Rule(rule.radius(), std::move(table), "conj(" + rule.name() + ")");
}

Rule rule_by_name(std::string_view name) {
  if (name == "gkl") return make_rule_gkl();
  if (name == "traffic") return make_rule_traffic();
  if (name == "smoothing") return make_rule_smoothing();
  if (name == "modified_traffic") return make_rule_modified_traffic();
  if (name == "and_erosion") return make_rule_and_erosion();
  if (name == "or_erosion") {
    Rule r = conjugate_rule(make_rule_and_erosion());
    return Rule(r.radius(), r.table(), "or_erosion");
  }
  throw Error(Errc::invalid_argument, "unknown rule '" + std::string(name) + "'");
}

std::vector<std::string> builtin_rule_names() {
  return {"gkl", "traffic", "smoothing", "modified_traffic", "and_erosion", "or_erosion"};
}

}  // namespace dca
