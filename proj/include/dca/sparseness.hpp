#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "dca/config.hpp"

namespace dca {

// The interval [start, start + length - 1].
struct Island {
  std::int64_t start = 0;
  std::int64_t length = 1;

  std::int64_t last() const noexcept { return start + length - 1; }
  Interval interval() const noexcept { return {start, last()}; }

  friend auto operator<=>(const Island&, const Island&) = default;
};

struct SparsenessParams {
  std::int64_t k = 1;

  explicit SparsenessParams(std::int64_t k_value);
};

// How sites outside the analysis window are treated.
//   empty:   they are not members (the window is embedded in an error-free background);
//   unknown: nothing is known, so no island whose territory leaves the window is admitted.
enum class OutsideMode { empty, unknown };

std::string_view to_string(OutsideMode mode) noexcept;
OutsideMode outside_mode_from_string(std::string_view text);

// Finite set of sites inside an analysis window; members kept sorted and unique.
class SiteSet {
 public:
  SiteSet() = default;
  SiteSet(Interval window, OutsideMode outside, std::vector<std::int64_t> sites);
  // Members are the positions of '1' characters, with position 0 at window.lo = origin.
  static SiteSet from_string(std::string_view bits, std::int64_t origin, OutsideMode outside);

  const Interval& window() const noexcept { return window_; }
  OutsideMode outside() const noexcept { return outside_; }
  const std::vector<std::int64_t>& sites() const noexcept { return sites_; }
  std::size_t size() const noexcept { return sites_.size(); }
  bool empty() const noexcept { return sites_.empty(); }
  bool contains(std::int64_t site) const noexcept;
  // Members inside [iv.lo, iv.hi].
  std::size_t count_in(const Interval& iv) const noexcept;

  // Same window and mode, members restricted to the given ones.
  SiteSet with_sites(std::vector<std::int64_t> sites) const;

  friend bool operator==(const SiteSet&, const SiteSet&) = default;

 private:
  Interval window_;
  OutsideMode outside_ = OutsideMode::empty;
  std::vector<std::int64_t> sites_;
};

// Sites within distance k*l of an island of length l.
Interval territory(const Island& island, const SparsenessParams& params);

// Disjoint islands are well separated when the larger does not meet the territory of the
// smaller; for equal lengths both directions are checked. Throws Error(overlapping_islands).
bool well_separated(const Island& a, const Island& b, const SparsenessParams& params);

struct StageResult {
  std::vector<Island> islands;  // J_l, ascending
  SiteSet next;                 // E_l
};

// All islands of length exactly l that meet e_prev and whose territory misses e_prev minus the
// island, and the set left after erasing their union.
StageResult erasure_stage(const SiteSet& e_prev, std::int64_t l, const SparsenessParams& params);

struct ErasureStage {
  std::int64_t l = 0;
  std::vector<Island> islands;      // J_l
  SiteSet residual;                 // E_l
  std::vector<std::int64_t> erased; // A_l = E_{l-1} \ E_l
};

struct ErasureTrace {
  SparsenessParams params{1};
  SiteSet initial;                   // E_0
  std::vector<ErasureStage> stages;  // stages[l-1] is stage l
  std::int64_t l_max = 0;

  const SiteSet& residual_after(std::int64_t l) const;  // E_l; E_0 for l == 0
  const SiteSet& residual() const { return residual_after(l_max); }
};

ErasureTrace erase_up_to(const SiteSet& e, const SparsenessParams& params, std::int64_t l_max);

struct CoverCertificate {
  std::vector<Island> islands;  // union of all J_l, ascending
  bool separation_ok = true;    // every pair disjoint and well separated
  // Pairs where one island lies inside another; a later stage can swallow an earlier island.
  std::size_t contained_pairs = 0;
  std::vector<Island> outer_islands;  // islands not contained in another one; same union
  bool outer_separation_ok = true;
  SiteSet residual;             // input minus the union of the islands
  // multiplicity[i] counts islands whose territory contains site span.lo + i.
  Interval multiplicity_span;
  std::vector<std::uint32_t> multiplicity;

  std::uint32_t territory_multiplicity(std::int64_t site) const noexcept;
  std::uint32_t max_territory_multiplicity() const noexcept;
  // count of sites (within the span) per multiplicity value >= 1.
  std::map<std::uint32_t, std::uint64_t> multiplicity_histogram() const;
};

CoverCertificate cover_certificate(const ErasureTrace& trace);

// Per-stage counts: stage_l,islands_erased,sites_erased,residual_count, starting with stage 0.
// With a certificate, adds max_territory_multiplicity of the islands erased up to each stage.
void write_trace_csv(std::ostream& out, const ErasureTrace& trace, bool with_multiplicity);

// Exhaustive search for a pairwise well-separated cover by disjoint islands of length <= l_cap.
// Windows larger than 24 sites throw Error(window_too_large).
std::optional<std::vector<Island>> find_cover_bruteforce(const SiteSet& e, const SparsenessParams& params,
                                                         std::int64_t l_cap);

struct SparsenessStats {
  std::size_t initial_count = 0;
  std::vector<std::size_t> residual_counts;  // |E_l| for l = 0..l_max
  std::map<std::uint32_t, std::uint64_t> multiplicity_histogram;
  std::uint32_t max_multiplicity = 0;
  bool separation_ok = true;
  std::size_t contained_pairs = 0;
  bool outer_separation_ok = true;
};

// Samples a Bernoulli(p) set on [0, window_size - 1] and runs the erasure up to l_max.
SparsenessStats sample_sparseness_stats(double p, const SparsenessParams& params, std::int64_t window_size,
                                        std::int64_t l_max, std::uint64_t seed,
                                        OutsideMode outside = OutsideMode::empty);

SiteSet sample_site_set(double p, std::int64_t window_size, std::uint64_t seed, OutsideMode outside);

}  // namespace dca
