#include "dca/engine.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <ostream>

#include "dca/error.hpp"

namespace dca {

namespace {

// out[i] = f(src[i .. i+2r]); out.size() must equal src.size() - 2r.
void apply_linear(const Rule& rule, const BitRow& src, BitRow& out) {
  const auto width = static_cast<std::size_t>(rule.width());
  const MuxProgram& program = rule.program();
  std::array<BitRow::Word, 2 * Rule::kMaxRadius + 1> shifted{};
  auto words = out.words();
  for (std::size_t q = 0; q < words.size(); ++q) {
    const std::size_t base = q * BitRow::kWordBits;
    for (std::size_t j = 0; j < width; ++j) shifted[j] = src.extract(base + j);
    words[q] = program.evaluate(std::span<const BitRow::Word>(shifted.data(), width));
  }
  out.clear_tail();
}

void require_fixed_background(const Rule& rule, Symbol background) {
  if (!rule.fixes(background)) {
    throw Error(Errc::non_fixed_background, "rule '" + rule.name() + "' does not fix the uniform background " +
                                                std::string(1, to_char(background)));
  }
}

}  // namespace

void step_into(const Rule& rule, const RingConfig& config, RingConfig& out, BitRow& scratch) {
  const std::size_t n = config.length();
  const auto r = static_cast<std::size_t>(rule.radius());
  if (n == 0) {
    out = config;
    return;
  }
  if (scratch.size() != n + 2 * r) scratch = BitRow(n + 2 * r);
  const BitRow& cells = config.bits();
  // Cyclic halo of r cells on each side; per-bit so that rings shorter than r also wrap.
  for (std::size_t j = 0; j < r; ++j) {
    scratch.set(j, cells.get((n - (r - j) % n) % n));
    scratch.set(r + n + j, cells.get(j % n));
  }
  scratch.copy_from(cells, 0, r, n);
  if (out.length() != n) out = RingConfig(n, Symbol::zero);
  apply_linear(rule, scratch, out.bits());
}

RingConfig step(const Rule& rule, const RingConfig& config) {
  RingConfig out;
  BitRow scratch;
  step_into(rule, config, out, scratch);
  return out;
}

WindowConfig step(const Rule& rule, const WindowConfig& config) {
  const Symbol bg = config.background();
  require_fixed_background(rule, bg);
  const auto r = static_cast<std::size_t>(rule.radius());
  const std::size_t len = config.bits().size();
  BitRow src(len + 4 * r, to_bit(bg));
  src.copy_from(config.bits(), 0, 2 * r, len);
  BitRow out(len + 2 * r);
  apply_linear(rule, src, out);
  return WindowConfig(bg, config.start() - static_cast<std::int64_t>(r), std::move(out));
}

RingConfig evolve(const Rule& rule, const RingConfig& config, std::uint64_t steps) {
  RingConfig current = config;
  RingConfig next;
  BitRow scratch;
  for (std::uint64_t t = 0; t < steps; ++t) {
    step_into(rule, current, next, scratch);
    std::swap(current, next);
  }
  return current;
}

WindowConfig evolve(const Rule& rule, const WindowConfig& config, std::uint64_t steps) {
  require_fixed_background(rule, config.background());
  WindowConfig current = config;
  for (std::uint64_t t = 0; t < steps; ++t) current = step(rule, current);
  return current;
}

SpaceTimeDiagram evolve_recorded(const Rule& rule, const RingConfig& config, std::uint64_t steps) {
  std::vector<RingConfig> rows;
  rows.reserve(steps + 1);
  rows.push_back(config);
  BitRow scratch;
  for (std::uint64_t t = 0; t < steps; ++t) {
    RingConfig next;
    step_into(rule, rows.back(), next, scratch);
    rows.push_back(std::move(next));
  }
  return SpaceTimeDiagram(std::move(rows));
}

SpaceTimeDiagram evolve_recorded(const Rule& rule, const WindowConfig& config, std::uint64_t steps) {
  require_fixed_background(rule, config.background());
  std::vector<WindowConfig> rows;
  rows.reserve(steps + 1);
  rows.push_back(config);
  for (std::uint64_t t = 0; t < steps; ++t) rows.push_back(step(rule, rows.back()));
  return SpaceTimeDiagram(std::move(rows));
}

// ---------------------------------------------------------------------------------------------
// SpaceTimeDiagram

SpaceTimeDiagram::SpaceTimeDiagram(std::vector<RingConfig> rows) : rows_(std::move(rows)) {
  if (ring_rows().empty()) throw Error(Errc::invalid_argument, "a space-time diagram needs at least one row");
}

SpaceTimeDiagram::SpaceTimeDiagram(std::vector<WindowConfig> rows) : rows_(std::move(rows)) {
  if (window_rows().empty()) throw Error(Errc::invalid_argument, "a space-time diagram needs at least one row");
}

std::size_t SpaceTimeDiagram::row_count() const noexcept {
  return std::visit([](const auto& rows) { return rows.size(); }, rows_);
}

namespace {

Interval window_union(const std::vector<WindowConfig>& rows) {
  Interval u;
  for (const auto& row : rows) {
    const Interval w = row.support_window();
    if (w.empty()) continue;
    if (u.empty()) {
      u = w;
    } else {
      u.lo = std::min(u.lo, w.lo);
      u.hi = std::max(u.hi, w.hi);
    }
  }
  return u;
}

}  // namespace

std::size_t SpaceTimeDiagram::width() const noexcept {
  if (is_ring()) return ring_rows().front().length();
  return static_cast<std::size_t>(window_union(window_rows()).size());
}

BitRow SpaceTimeDiagram::image_row(std::size_t t) const {
  if (is_ring()) return ring_rows().at(t).bits();
  const auto& rows = window_rows();
  const WindowConfig& row = rows.at(t);
  const Interval u = window_union(rows);
  BitRow out(static_cast<std::size_t>(u.size()), to_bit(row.background()));
  const Interval w = row.support_window();
  if (!w.empty()) out.copy_from(row.bits(), 0, static_cast<std::size_t>(w.lo - u.lo), row.bits().size());
  return out;
}

void SpaceTimeDiagram::write_pbm(std::ostream& out, const std::vector<std::string>& comments) const {
  constexpr std::size_t kLineLimit = 70;
  const std::size_t w = width();
  out << "P1\n";
  for (const auto& c : comments) out << "# " << c << '\n';
  out << w << ' ' << row_count() << '\n';
  std::string line;
  for (std::size_t t = 0; t < row_count(); ++t) {
    const std::string row = image_row(t).to_string();
    for (std::size_t pos = 0; pos < row.size(); pos += kLineLimit) {
      out << std::string_view(row).substr(pos, kLineLimit) << '\n';
    }
    if (row.empty()) out << '\n';
  }
}

// ---------------------------------------------------------------------------------------------
// density / diff

Ratio density(const RingConfig& config) {
  if (config.length() == 0) throw Error(Errc::invalid_argument, "density of an empty ring is undefined");
  const std::uint64_t ones = config.count_ones();
  const std::uint64_t n = config.length();
  const std::uint64_t g = std::gcd(ones, n);
  return {ones / g, n / g};
}

std::vector<std::int64_t> diff(const RingConfig& x, const RingConfig& y) {
  if (x.length() != y.length()) {
    throw Error(Errc::domain_mismatch, "ring lengths differ: " + std::to_string(x.length()) + " vs " +
                                           std::to_string(y.length()));
  }
  std::vector<std::int64_t> sites;
  const auto xw = x.bits().words();
  const auto yw = y.bits().words();
  for (std::size_t q = 0; q < xw.size(); ++q) {
    BitRow::Word d = xw[q] ^ yw[q];
    while (d != 0) {
      const int b = std::countr_zero(d);
      sites.push_back(static_cast<std::int64_t>(q * BitRow::kWordBits + static_cast<std::size_t>(b)));
      d &= d - 1;
    }
  }
  return sites;
}

std::vector<std::int64_t> diff(const WindowConfig& x, const WindowConfig& y) {
  if (x.background() != y.background()) {
    throw Error(Errc::domain_mismatch, "windows over different backgrounds differ at infinitely many sites");
  }
  std::vector<std::int64_t> sites;
  const Interval a = x.support_window();
  const Interval b = y.support_window();
  if (a.empty() && b.empty()) return sites;
  const std::int64_t lo = a.empty() ? b.lo : (b.empty() ? a.lo : std::min(a.lo, b.lo));
  const std::int64_t hi = a.empty() ? b.hi : (b.empty() ? a.hi : std::max(a.hi, b.hi));
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (x.cell(i) != y.cell(i)) sites.push_back(i);
  }
  return sites;
}

}  // namespace dca
