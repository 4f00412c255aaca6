#include "dca/sparseness.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "dca/error.hpp"
#include "dca/random.hpp"

namespace dca {

SparsenessParams::SparsenessParams(std::int64_t k_value) : k(k_value) {
  if (k < 1) throw Error(Errc::invalid_argument, "sparseness parameter k must be at least 1");
}

std::string_view to_string(OutsideMode mode) noexcept { return mode == OutsideMode::empty ? "empty" : "unknown"; }

OutsideMode outside_mode_from_string(std::string_view text) {
  if (text == "empty") return OutsideMode::empty;
  if (text == "unknown") return OutsideMode::unknown;
  throw Error(Errc::invalid_argument, "outside mode must be 'empty' or 'unknown'");
}

// ---------------------------------------------------------------------------------------------
// SiteSet

SiteSet::SiteSet(Interval window, OutsideMode outside, std::vector<std::int64_t> sites)
    : window_(window), outside_(outside), sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
  for (std::int64_t s : sites_) {
    if (!window_.contains(s)) {
      throw Error(Errc::invalid_argument, "site " + std::to_string(s) + " lies outside the analysis window");
    }
  }
}

SiteSet SiteSet::from_string(std::string_view bits, std::int64_t origin, OutsideMode outside) {
  std::vector<std::int64_t> sites;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      sites.push_back(origin + static_cast<std::int64_t>(i));
    } else if (bits[i] != '0') {
      throw Error(Errc::parse, "expected '0' or '1' at position " + std::to_string(i));
    }
  }
  return SiteSet({origin, origin + static_cast<std::int64_t>(bits.size()) - 1}, outside, std::move(sites));
}

bool SiteSet::contains(std::int64_t site) const noexcept {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

std::size_t SiteSet::count_in(const Interval& iv) const noexcept {
  if (iv.empty()) return 0;
  const auto first = std::lower_bound(sites_.begin(), sites_.end(), iv.lo);
  const auto last = std::upper_bound(first, sites_.end(), iv.hi);
  return static_cast<std::size_t>(last - first);
}

SiteSet SiteSet::with_sites(std::vector<std::int64_t> sites) const {
  return SiteSet(window_, outside_, std::move(sites));
}

// ---------------------------------------------------------------------------------------------
// Islands

Interval territory(const Island& island, const SparsenessParams& params) {
  const std::int64_t reach = params.k * island.length;
  return {island.start - reach, island.last() + reach};
}

bool well_separated(const Island& a, const Island& b, const SparsenessParams& params) {
  if (a.interval().intersects(b.interval())) {
    throw Error(Errc::overlapping_islands, "well separation is defined for disjoint islands only");
  }
  if (a.length < b.length) return !b.interval().intersects(territory(a, params));
  if (b.length < a.length) return !a.interval().intersects(territory(b, params));
  return !b.interval().intersects(territory(a, params)) && !a.interval().intersects(territory(b, params));
}

StageResult erasure_stage(const SiteSet& e_prev, std::int64_t l, const SparsenessParams& params) {
  if (l < 1) throw Error(Errc::invalid_argument, "stage length must be at least 1");
  const auto& e = e_prev.sites();
  const std::size_t count = e.size();
  const std::int64_t reach = params.k * l;
  const bool confined = e_prev.outside() == OutsideMode::unknown;
  const Interval& window = e_prev.window();

  StageResult result;
  std::vector<char> erased(count, 0);
  // An admitted island holds exactly the members e[a..b]; the start s then ranges over an
  // interval fixed by the neighbouring members (which must stay outside the territory) and,
  // when the exterior is unknown, by the window.
  for (std::size_t a = 0; a < count; ++a) {
    if (a > 0 && e[a] - e[a - 1] <= reach) continue;
    for (std::size_t b = a; b < count && e[b] - e[a] <= l - 1; ++b) {
      std::int64_t s_lo = e[b] - l + 1;
      std::int64_t s_hi = e[a];
      if (a > 0) s_lo = std::max(s_lo, e[a - 1] + reach + 1);
      if (b + 1 < count) s_hi = std::min(s_hi, e[b + 1] - l - reach);
      if (confined) {
        s_lo = std::max(s_lo, window.lo + reach);
        s_hi = std::min(s_hi, window.hi - reach - l + 1);
      }
      if (s_lo > s_hi) continue;
      for (std::int64_t s = s_lo; s <= s_hi; ++s) result.islands.push_back({s, l});
      std::fill(erased.begin() + static_cast<std::ptrdiff_t>(a), erased.begin() + static_cast<std::ptrdiff_t>(b) + 1,
                char{1});
    }
  }
  std::sort(result.islands.begin(), result.islands.end());

  std::vector<std::int64_t> kept;
  kept.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!erased[i]) kept.push_back(e[i]);
  }
  result.next = e_prev.with_sites(std::move(kept));
  return result;
}

const SiteSet& ErasureTrace::residual_after(std::int64_t l) const {
  if (l < 0 || l > l_max) throw Error(Errc::invalid_argument, "stage outside the trace");
  return l == 0 ? initial : stages[static_cast<std::size_t>(l - 1)].residual;
}

ErasureTrace erase_up_to(const SiteSet& e, const SparsenessParams& params, std::int64_t l_max) {
  if (l_max < 1) throw Error(Errc::invalid_argument, "l_max must be at least 1");
  ErasureTrace trace;
  trace.params = params;
  trace.initial = e;
  trace.l_max = l_max;
  trace.stages.reserve(static_cast<std::size_t>(l_max));
  const SiteSet* previous = &trace.initial;
  for (std::int64_t l = 1; l <= l_max; ++l) {
    ErasureStage stage;
    stage.l = l;
    if (previous->empty()) {
      stage.residual = *previous;
    } else {
      StageResult r = erasure_stage(*previous, l, params);
      stage.islands = std::move(r.islands);
      stage.residual = std::move(r.next);
      std::set_difference(previous->sites().begin(), previous->sites().end(), stage.residual.sites().begin(),
                          stage.residual.sites().end(), std::back_inserter(stage.erased));
    }
    trace.stages.push_back(std::move(stage));
    previous = &trace.stages.back().residual;
  }
  return trace;
}

// ---------------------------------------------------------------------------------------------
// Certificates

std::uint32_t CoverCertificate::territory_multiplicity(std::int64_t site) const noexcept {
  if (!multiplicity_span.contains(site)) return 0;
  return multiplicity[static_cast<std::size_t>(site - multiplicity_span.lo)];
}

std::uint32_t CoverCertificate::max_territory_multiplicity() const noexcept {
  return multiplicity.empty() ? 0 : *std::max_element(multiplicity.begin(), multiplicity.end());
}

std::map<std::uint32_t, std::uint64_t> CoverCertificate::multiplicity_histogram() const {
  std::map<std::uint32_t, std::uint64_t> histogram;
  for (std::uint32_t v : multiplicity) {
    if (v > 0) ++histogram[v];
  }
  return histogram;
}

namespace {

Interval territory_hull(const std::vector<Island>& islands, const SparsenessParams& params) {
  Interval hull;
  for (const auto& island : islands) {
    const Interval t = territory(island, params);
    if (hull.empty()) {
      hull = t;
    } else {
      hull.lo = std::min(hull.lo, t.lo);
      hull.hi = std::max(hull.hi, t.hi);
    }
  }
  return hull;
}

bool pairwise_well_separated(const std::vector<Island>& islands, const SparsenessParams& params) {
  for (std::size_t i = 0; i < islands.size(); ++i) {
    for (std::size_t j = i + 1; j < islands.size(); ++j) {
      if (islands[i].interval().intersects(islands[j].interval())) return false;
      if (!well_separated(islands[i], islands[j], params)) return false;
    }
  }
  return true;
}

}  // namespace

CoverCertificate cover_certificate(const ErasureTrace& trace) {
  CoverCertificate cert;
  for (const auto& stage : trace.stages) cert.islands.insert(cert.islands.end(), stage.islands.begin(), stage.islands.end());
  std::sort(cert.islands.begin(), cert.islands.end());
  cert.separation_ok = pairwise_well_separated(cert.islands, trace.params);
  for (std::size_t i = 0; i < cert.islands.size(); ++i) {
    bool inside_another = false;
    for (std::size_t j = 0; j < cert.islands.size(); ++j) {
      if (i == j || !cert.islands[j].interval().contains(cert.islands[i].interval())) continue;
      inside_another = true;
      ++cert.contained_pairs;
    }
    if (!inside_another) cert.outer_islands.push_back(cert.islands[i]);
  }
  cert.outer_separation_ok = pairwise_well_separated(cert.outer_islands, trace.params);

  std::vector<std::int64_t> left;
  for (std::int64_t site : trace.initial.sites()) {
    const bool covered = std::any_of(cert.islands.begin(), cert.islands.end(),
                                     [&](const Island& isl) { return isl.interval().contains(site); });
    if (!covered) left.push_back(site);
  }
  cert.residual = trace.initial.with_sites(std::move(left));

  cert.multiplicity_span = territory_hull(cert.islands, trace.params);
  if (!cert.multiplicity_span.empty()) {
    std::vector<std::int64_t> delta(static_cast<std::size_t>(cert.multiplicity_span.size()) + 1, 0);
    for (const auto& island : cert.islands) {
      const Interval t = territory(island, trace.params);
      ++delta[static_cast<std::size_t>(t.lo - cert.multiplicity_span.lo)];
      --delta[static_cast<std::size_t>(t.hi - cert.multiplicity_span.lo) + 1];
    }
    cert.multiplicity.resize(static_cast<std::size_t>(cert.multiplicity_span.size()));
    std::int64_t running = 0;
    for (std::size_t i = 0; i < cert.multiplicity.size(); ++i) {
      running += delta[i];
      cert.multiplicity[i] = static_cast<std::uint32_t>(running);
    }
  }
  return cert;
}

void write_trace_csv(std::ostream& out, const ErasureTrace& trace, bool with_multiplicity) {
  out << "stage_l,islands_erased,sites_erased,residual_count";
  if (with_multiplicity) out << ",max_territory_multiplicity";
  out << '\n';

  std::vector<Island> all;
  for (const auto& stage : trace.stages) all.insert(all.end(), stage.islands.begin(), stage.islands.end());
  const Interval span = territory_hull(all, trace.params);
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(span.size()), 0);
  std::uint32_t running_max = 0;

  out << 0 << ',' << 0 << ',' << 0 << ',' << trace.initial.size();
  if (with_multiplicity) out << ',' << 0;
  out << '\n';
  for (const auto& stage : trace.stages) {
    if (with_multiplicity) {
      for (const auto& island : stage.islands) {
        const Interval t = territory(island, trace.params);
        for (std::int64_t i = t.lo; i <= t.hi; ++i) {
          running_max = std::max(running_max, ++counts[static_cast<std::size_t>(i - span.lo)]);
        }
      }
    }
    out << stage.l << ',' << stage.islands.size() << ',' << stage.erased.size() << ',' << stage.residual.size();
    if (with_multiplicity) out << ',' << running_max;
    out << '\n';
  }
}

// ---------------------------------------------------------------------------------------------
// Brute-force cover oracle

namespace {

constexpr std::int64_t kBruteForceWindowLimit = 24;

// Shrinking an island to the span of the members it covers keeps every pair well separated
// (distances grow, lengths shrink) and keeps territories inside any window that held them, so
// a cover exists iff one exists whose islands are spans of consecutive members. The search
// splits the sorted members into consecutive runs depth-first.
bool extend_cover(const std::vector<std::int64_t>& e, std::size_t next, const SparsenessParams& params,
                  std::int64_t l_cap, const SiteSet& set, std::vector<Island>& family) {
  if (next == e.size()) return true;
  for (std::size_t b = next; b < e.size(); ++b) {
    const Island candidate{e[next], e[b] - e[next] + 1};
    if (candidate.length > l_cap) break;
    if (set.outside() == OutsideMode::unknown && !set.window().contains(territory(candidate, params))) continue;
    const bool compatible = std::all_of(family.begin(), family.end(),
                                        [&](const Island& other) { return well_separated(other, candidate, params); });
    if (!compatible) continue;
    family.push_back(candidate);
    if (extend_cover(e, b + 1, params, l_cap, set, family)) return true;
    family.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<Island>> find_cover_bruteforce(const SiteSet& e, const SparsenessParams& params,
                                                         std::int64_t l_cap) {
  if (e.window().size() > kBruteForceWindowLimit) {
    throw Error(Errc::window_too_large, "brute-force cover search is limited to windows of 24 sites");
  }
  if (l_cap < 1) throw Error(Errc::invalid_argument, "l_cap must be at least 1");
  std::vector<Island> family;
  if (extend_cover(e.sites(), 0, params, l_cap, e, family)) return family;
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Sampling

SiteSet sample_site_set(double p, std::int64_t window_size, std::uint64_t seed, OutsideMode outside) {
  if (window_size < 1) throw Error(Errc::invalid_argument, "window size must be positive");
  BernoulliSource source(p, seed);
  std::vector<std::int64_t> sites;
  for (std::int64_t i = 0; i < window_size; ++i) {
    if (source.next()) sites.push_back(i);
  }
  return SiteSet({0, window_size - 1}, outside, std::move(sites));
}

SparsenessStats sample_sparseness_stats(double p, const SparsenessParams& params, std::int64_t window_size,
                                        std::int64_t l_max, std::uint64_t seed, OutsideMode outside) {
  const SiteSet e = sample_site_set(p, window_size, seed, outside);
  const ErasureTrace trace = erase_up_to(e, params, l_max);
  const CoverCertificate cert = cover_certificate(trace);

  SparsenessStats stats;
  stats.initial_count = e.size();
  stats.residual_counts.push_back(e.size());
  for (const auto& stage : trace.stages) stats.residual_counts.push_back(stage.residual.size());
  stats.multiplicity_histogram = cert.multiplicity_histogram();
  stats.max_multiplicity = cert.max_territory_multiplicity();
  stats.separation_ok = cert.separation_ok;
  stats.contained_pairs = cert.contained_pairs;
  stats.outer_separation_ok = cert.outer_separation_ok;
  return stats;
}

}  // namespace dca
