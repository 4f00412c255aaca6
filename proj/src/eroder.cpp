#include "dca/eroder.hpp"

#include <algorithm>
#include <ostream>

#include "dca/engine.hpp"
#include "dca/error.hpp"
#include "parallel.hpp"

namespace dca {

namespace {

void require_fixed_background(const Rule& rule, Symbol background) {
  if (!rule.fixes(background)) {
    throw Error(Errc::non_fixed_background,
                "rule '" + rule.name() + "' does not fix background " + std::string(1, to_char(background)));
  }
}

}  // namespace

std::optional<std::uint64_t> washout_time(const Rule& rule, const WindowConfig& x, std::uint64_t t_max) {
  require_fixed_background(rule, x.background());
  WindowConfig current = x.normalized();
  for (std::uint64_t t = 0;; ++t) {
    if (current.is_background()) return t;
    if (t == t_max) return std::nullopt;
    // Trimming keeps the window at the true support; the configuration on Z is unchanged.
    current = step(rule, current).normalized();
  }
}

EroderReport verify_linear_eroder(const Rule& rule, Symbol background, int m, int n_max,
                                  const EroderOptions& options) {
  require_fixed_background(rule, background);
  if (n_max < 1) throw Error(Errc::invalid_argument, "n_max must be at least 1");
  if (n_max > 24) throw Error(Errc::too_large, "n_max above 24 is not enumerable");
  if (m < 1) throw Error(Errc::invalid_argument, "m must be at least 1");

  EroderReport report;
  report.rule_name = rule.name();
  report.background = background;
  report.m = m;
  report.n_max = n_max;
  report.slack = options.slack < 0 ? 4 * rule.radius() : options.slack;
  report.pass = true;

  for (int n = 1; n <= n_max; ++n) {
    const std::uint64_t patterns = std::uint64_t{1} << n;
    const std::uint64_t bound = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n);
    const std::uint64_t limit = bound + static_cast<std::uint64_t>(report.slack);

    struct Partial {
      std::uint64_t worst = 0;
      bool unresolved = false;
    };
    const unsigned workers = detail::resolve_threads(options.threads);
    std::vector<Partial> partials(workers);
    detail::parallel_chunks(patterns, workers, [&](std::size_t begin, std::size_t end, std::size_t w) {
      Partial& acc = partials[w];
      for (std::size_t pattern = begin; pattern < end; ++pattern) {
        BitRow cells(static_cast<std::size_t>(n));
        cells.words()[0] = pattern;
        cells.clear_tail();
        const auto t = washout_time(rule, WindowConfig(background, 0, std::move(cells)), limit);
        if (t) {
          acc.worst = std::max(acc.worst, *t);
        } else {
          acc.unresolved = true;
        }
      }
    });

    EroderRow row;
    row.n = n;
    row.patterns_tested = patterns;
    row.bound = bound;
    bool unresolved = false;
    std::uint64_t worst = 0;
    for (const auto& p : partials) {
      unresolved = unresolved || p.unresolved;
      worst = std::max(worst, p.worst);
    }
    if (!unresolved) row.max_washout_time = worst;
    row.pass = !unresolved && worst <= bound;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

void EroderReport::write_csv(std::ostream& out) const {
  out << "rule,background,n,patterns_tested,max_washout_time,bound_mn,pass\n";
  for (const auto& row : rows) {
    out << rule_name << ',' << to_char(background) << ',' << row.n << ',' << row.patterns_tested << ',';
    if (row.max_washout_time) {
      out << *row.max_washout_time;
    } else {
      out << "none";
    }
    out << ',' << row.bound << ',' << (row.pass ? "true" : "false") << '\n';
  }
}

std::optional<std::uint64_t> AttractionReport::fixation_time(std::int64_t site) const {
  if (!probe.contains(site)) throw Error(Errc::invalid_argument, "site outside the probe interval");
  if (std::binary_search(unresolved.begin(), unresolved.end(), site)) return std::nullopt;
  const auto& last = last_disagreement[static_cast<std::size_t>(site - probe.lo)];
  return last ? *last + 1 : 0;
}

AttractionReport attraction_check(const Rule& rule, const WindowConfig& x, Interval probe, std::uint64_t t_max) {
  require_fixed_background(rule, x.background());
  AttractionReport report;
  report.probe = probe;
  report.t_max = t_max;
  report.last_disagreement.assign(static_cast<std::size_t>(probe.size()), std::nullopt);

  const Symbol bg = x.background();
  WindowConfig current = x.normalized();
  for (std::uint64_t t = 0;; ++t) {
    const Interval w = current.support_window();
    if (w.intersects(probe)) {
      const std::int64_t lo = std::max(w.lo, probe.lo);
      const std::int64_t hi = std::min(w.hi, probe.hi);
      for (std::int64_t i = lo; i <= hi; ++i) {
        if (current.cell(i) != bg) report.last_disagreement[static_cast<std::size_t>(i - probe.lo)] = t;
      }
    }
    // The background is a fixed point, so nothing disagrees after this.
    if (t == t_max || current.is_background()) break;
    current = step(rule, current).normalized();
  }
  for (std::int64_t i = probe.lo; i <= probe.hi; ++i) {
    const auto& last = report.last_disagreement[static_cast<std::size_t>(i - probe.lo)];
    if (last && *last == t_max) report.unresolved.push_back(i);
  }
  return report;
}

}  // namespace dca
