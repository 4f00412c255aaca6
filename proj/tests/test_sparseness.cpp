#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "dca/eroder.hpp"
#include "dca/error.hpp"
#include "dca/rule.hpp"
#include "dca/sparseness.hpp"
#include "oracles.hpp"

using namespace dca;

namespace {

SiteSet make_set(std::vector<std::int64_t> sites, Interval window, OutsideMode mode = OutsideMode::empty) {
  return SiteSet(window, mode, std::move(sites));
}

std::set<std::int64_t> as_set(const SiteSet& s) { return {s.sites().begin(), s.sites().end()}; }

SiteSet random_set(std::mt19937_64& gen, std::int64_t width, double p, OutsideMode mode) {
  std::bernoulli_distribution coin(p);
  std::vector<std::int64_t> sites;
  for (std::int64_t i = 0; i < width; ++i) {
    if (coin(gen)) sites.push_back(i);
  }
  return make_set(sites, {0, width - 1}, mode);
}

}  // namespace

TEST_CASE("territory") {
  CHECK(territory({0, 1}, SparsenessParams(2)) == Interval{-2, 2});
  CHECK(territory({5, 5}, SparsenessParams(1)) == Interval{0, 14});
  CHECK(territory({3, 2}, SparsenessParams(12)) == Interval{-21, 28});
  CHECK_THROWS_AS(SparsenessParams(0), Error);
}

TEST_CASE("well separated") {
  const SparsenessParams k2(2);
  CHECK(well_separated({0, 1}, {5, 5}, k2));
  CHECK_FALSE(well_separated({0, 1}, {2, 5}, k2));
  CHECK(well_separated({0, 3}, {10, 3}, k2));
  CHECK_FALSE(well_separated({0, 3}, {8, 3}, k2));
  try {
    (void)well_separated({0, 3}, {2, 1}, k2);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::overlapping_islands);
  }
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::int64_t k = 1 + static_cast<std::int64_t>(gen() % 4);
    const Island a{static_cast<std::int64_t>(gen() % 40), 1 + static_cast<std::int64_t>(gen() % 6)};
    const Island b{static_cast<std::int64_t>(gen() % 40), 1 + static_cast<std::int64_t>(gen() % 6)};
    if (a.interval().intersects(b.interval())) continue;
    CHECK(well_separated(a, b, SparsenessParams(k)) ==
          oracle::separated({a.start, a.last()}, {b.start, b.last()}, k));
  }
}

TEST_CASE("erasure stage examples") {
  const SparsenessParams k2(2);
  const StageResult lone = erasure_stage(make_set({0}, {-10, 10}), 1, k2);
  CHECK(lone.islands == std::vector<Island>{{0, 1}});
  CHECK(lone.next.empty());

  for (std::int64_t k = 1; k <= 5; ++k) {
    CHECK(erasure_stage(make_set({0, 1}, {-10, 10}), 1, SparsenessParams(k)).islands.empty());
  }
  const StageResult pair = erasure_stage(make_set({0, 1}, {-10, 10}), 2, k2);
  CHECK(std::find(pair.islands.begin(), pair.islands.end(), Island{0, 2}) != pair.islands.end());
  CHECK(pair.next.empty());
}

TEST_CASE("erasure stage matches the literal definition") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 400; ++trial) {
    const OutsideMode mode = (trial % 2) ? OutsideMode::unknown : OutsideMode::empty;
    const std::int64_t width = 5 + static_cast<std::int64_t>(gen() % 60);
    const double p = 0.05 + 0.3 * static_cast<double>(gen() % 100) / 100.0;
    const SiteSet e = random_set(gen, width, p, mode);
    const std::int64_t k = 1 + static_cast<std::int64_t>(gen() % 3);
    for (std::int64_t l = 1; l <= 6; ++l) {
      const StageResult got = erasure_stage(e, l, SparsenessParams(k));
      const auto ref = oracle::stage_islands(as_set(e), l, k, mode == OutsideMode::unknown, 0, width - 1);
      REQUIRE(got.islands.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(got.islands[i].start == ref[i].lo);
        CHECK(got.islands[i].length == l);
      }
      std::set<std::int64_t> left = as_set(e);
      for (const auto& iv : ref) {
        for (std::int64_t s = iv.lo; s <= iv.hi; ++s) left.erase(s);
      }
      CHECK(as_set(got.next) == left);
    }
  }
}

TEST_CASE("erase_up_to examples") {
  const SparsenessParams k2(2);
  const ErasureTrace none = erase_up_to(make_set({}, {0, 9}), k2, 5);
  for (std::int64_t l = 0; l <= 5; ++l) CHECK(none.residual_after(l).empty());

  const ErasureTrace pair = erase_up_to(make_set({0, 1}, {-10, 10}), k2, 3);
  CHECK(pair.residual_after(1).size() == 2);
  CHECK(pair.residual_after(2).empty());

  std::vector<std::int64_t> all;
  for (std::int64_t i = 0; i < 100; ++i) all.push_back(i);
  const ErasureTrace dense = erase_up_to(make_set(all, {0, 99}, OutsideMode::unknown), k2, 10);
  CHECK(dense.residual().size() == 100);
  CHECK_THROWS_AS(erase_up_to(make_set({}, {0, 9}), k2, 0), Error);
}

TEST_CASE("trace invariants on random sets") {
  std::mt19937_64 gen(101);
  for (int trial = 0; trial < 300; ++trial) {
    const OutsideMode mode = (trial % 3 == 0) ? OutsideMode::unknown : OutsideMode::empty;
    const SiteSet e = random_set(gen, 50 + static_cast<std::int64_t>(gen() % 400), 0.02 + 0.1 * (trial % 5), mode);
    const SparsenessParams params(1 + static_cast<std::int64_t>(gen() % 4));
    const ErasureTrace trace = erase_up_to(e, params, 20);
    for (std::int64_t l = 1; l <= 20; ++l) {
      const auto prev = as_set(trace.residual_after(l - 1));
      const auto next = as_set(trace.residual_after(l));
      // nesting
      for (std::int64_t s : next) REQUIRE(prev.count(s) == 1);
      // islands re-derived from the recorded previous set
      const ErasureStage& st = trace.stages[static_cast<std::size_t>(l - 1)];
      CHECK(erasure_stage(trace.residual_after(l - 1), l, params).islands == st.islands);
      for (const Island& isl : st.islands) {
        CHECK(isl.length == l);
        CHECK(trace.residual_after(l - 1).count_in(isl.interval()) > 0);
        const Interval r = territory(isl, params);
        for (std::int64_t s : prev) {
          if (!isl.interval().contains(s)) CHECK_FALSE(r.contains(s));
        }
      }
      CHECK(st.erased.size() == prev.size() - next.size());
    }
    const CoverCertificate cert = cover_certificate(trace);
    std::size_t nested = 0;
    for (std::size_t a = 0; a < cert.islands.size(); ++a) {
      for (std::size_t b = a + 1; b < cert.islands.size(); ++b) {
        const Interval x = cert.islands[a].interval();
        const Interval y = cert.islands[b].interval();
        if (x.intersects(y)) {
          REQUIRE((x.contains(y) || y.contains(x)));
          ++nested;
        } else {
          CHECK(well_separated(cert.islands[a], cert.islands[b], params));
        }
      }
    }
    CHECK(cert.contained_pairs == nested);
    CHECK(cert.separation_ok == (nested == 0));
    CHECK(cert.outer_separation_ok);
    std::size_t outer_sites = 0;
    for (const Island& isl : cert.outer_islands) outer_sites += static_cast<std::size_t>(isl.length);
    std::set<std::int64_t> covered;
    for (const Island& isl : cert.islands) {
      for (std::int64_t s = isl.start; s < isl.start + isl.length; ++s) covered.insert(s);
    }
    CHECK(outer_sites == covered.size());
    CHECK(cert.residual == trace.residual());
  }
}

TEST_CASE("a later island can contain an earlier one") {
  const SparsenessParams k2(2);
  const ErasureTrace trace = erase_up_to(make_set({0, 2, 5, 8, 9, 10}, {-20, 30}), k2, 11);
  CHECK(trace.stages[0].islands == std::vector<Island>{{5, 1}});
  CHECK(trace.residual().empty());
  const CoverCertificate cert = cover_certificate(trace);
  CHECK(cert.islands.size() == 2);
  CHECK(cert.contained_pairs == 1);
  CHECK_FALSE(cert.separation_ok);
  CHECK(cert.outer_islands == std::vector<Island>{{0, 11}});
  CHECK(cert.outer_separation_ok);
}

TEST_CASE("certificate examples") {
  const SparsenessParams k2(2);
  const CoverCertificate none = cover_certificate(erase_up_to(make_set({}, {0, 9}), k2, 3));
  CHECK(none.islands.empty());
  CHECK(none.separation_ok);
  CHECK(none.residual.empty());
  CHECK(none.max_territory_multiplicity() == 0);

  const CoverCertificate two = cover_certificate(erase_up_to(make_set({0, 100}, {-10, 110}), k2, 1));
  CHECK(two.islands == std::vector<Island>{{0, 1}, {100, 1}});
  CHECK(two.max_territory_multiplicity() == 1);
  CHECK(two.territory_multiplicity(-2) == 1);
  CHECK(two.territory_multiplicity(3) == 0);
  CHECK(two.territory_multiplicity(102) == 1);
  const auto hist = two.multiplicity_histogram();
  CHECK(hist.at(1) == 10);
}

TEST_CASE("territory multiplicity matches direct counting") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const SiteSet e = random_set(gen, 300, 0.05, OutsideMode::empty);
    const SparsenessParams params(2);
    const CoverCertificate cert = cover_certificate(erase_up_to(e, params, 15));
    for (std::int64_t s = -60; s < 360; ++s) {
      std::uint32_t count = 0;
      for (const Island& isl : cert.islands) count += territory(isl, params).contains(s) ? 1U : 0U;
      REQUIRE(cert.territory_multiplicity(s) == count);
    }
  }
}

TEST_CASE("brute force cover examples") {
  const SparsenessParams k2(2);
  CHECK(find_cover_bruteforce(make_set({0}, {0, 3}), k2, 4) == std::vector<Island>{{0, 1}});
  CHECK(find_cover_bruteforce(make_set({0, 1}, {0, 3}), k2, 4) == std::vector<Island>{{0, 2}});
  CHECK_FALSE(find_cover_bruteforce(make_set({0, 1}, {0, 3}), k2, 1).has_value());
  std::vector<std::int64_t> all;
  for (std::int64_t i = 0; i < 12; ++i) all.push_back(i);
  CHECK(find_cover_bruteforce(make_set(all, {0, 11}), k2, 12) == std::vector<Island>{{0, 12}});
  std::vector<std::int64_t> wide;
  CHECK_THROWS_AS(find_cover_bruteforce(make_set(wide, {0, 24}), k2, 3), Error);
}

TEST_CASE("brute force cover agrees with the interval-family search") {
  for (std::int64_t width = 1; width <= 10; ++width) {
    for (std::uint32_t mask = 0; mask < (1U << width); ++mask) {
      std::vector<std::int64_t> sites;
      for (std::int64_t i = 0; i < width; ++i) {
        if ((mask >> i) & 1U) sites.push_back(i);
      }
      const SiteSet e = make_set(sites, {0, width - 1});
      for (std::int64_t k : {1, 2}) {
        for (std::int64_t cap : {2L, width}) {
          const auto found = find_cover_bruteforce(e, SparsenessParams(k), cap);
          REQUIRE(found.has_value() == oracle::cover_exists(as_set(e), k, cap, 0, width - 1));
          if (found) {
            std::set<std::int64_t> covered;
            for (std::size_t a = 0; a < found->size(); ++a) {
              CHECK((*found)[a].length <= cap);
              for (std::int64_t s = (*found)[a].start; s <= (*found)[a].last(); ++s) covered.insert(s);
              for (std::size_t b = a + 1; b < found->size(); ++b) {
                CHECK(well_separated((*found)[a], (*found)[b], SparsenessParams(k)));
              }
            }
            for (std::int64_t s : sites) CHECK(covered.count(s) == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("procedure erasure implies a brute force cover") {
  for (std::int64_t width = 1; width <= 12; ++width) {
    for (std::uint32_t mask = 0; mask < (1U << width); ++mask) {
      std::vector<std::int64_t> sites;
      for (std::int64_t i = 0; i < width; ++i) {
        if ((mask >> i) & 1U) sites.push_back(i);
      }
      const SiteSet e = make_set(sites, {0, width - 1});
      const ErasureTrace trace = erase_up_to(e, SparsenessParams(2), width);
      if (trace.residual().empty()) {
        REQUIRE(find_cover_bruteforce(e, SparsenessParams(2), width).has_value());
      }
    }
  }
}

TEST_CASE("site set parsing and sampling") {
  const SiteSet s = SiteSet::from_string("0100000000100", 5, OutsideMode::empty);
  CHECK(s.window() == Interval{5, 17});
  CHECK(s.sites() == std::vector<std::int64_t>{6, 15});
  CHECK_THROWS_AS(SiteSet::from_string("01x", 0, OutsideMode::empty), Error);
  CHECK_THROWS_AS(make_set({20}, {0, 9}), Error);
  CHECK(make_set({3, 1, 3}, {0, 9}).sites() == std::vector<std::int64_t>{1, 3});
  CHECK(outside_mode_from_string("unknown") == OutsideMode::unknown);
  CHECK_THROWS_AS(outside_mode_from_string("maybe"), Error);

  CHECK(sample_site_set(0.3, 1000, 9, OutsideMode::empty) == sample_site_set(0.3, 1000, 9, OutsideMode::empty));
  CHECK(sample_site_set(0.0, 1000, 9, OutsideMode::empty).empty());
  CHECK(sample_site_set(1.0, 1000, 9, OutsideMode::empty).size() == 1000);
}

TEST_CASE("sparseness statistics") {
  const SparsenessStats zero = sample_sparseness_stats(0.0, SparsenessParams(2), 1000, 5, 1);
  CHECK(zero.residual_counts.at(0) == 0);

  const SparsenessStats full = sample_sparseness_stats(1.0, SparsenessParams(3), 500, 20, 1, OutsideMode::unknown);
  CHECK(full.initial_count == 500);
  CHECK(full.residual_counts.back() == 500);

  const SparsenessStats s = sample_sparseness_stats(0.001, SparsenessParams(12), 1000000, 51, 7);
  CHECK(s.residual_counts.size() == 52);
  CHECK(s.separation_ok);
  for (std::size_t l = 1; l < s.residual_counts.size(); ++l) CHECK(s.residual_counts[l] <= s.residual_counts[l - 1]);
  CHECK(static_cast<double>(s.residual_counts.back()) < 0.1 * static_cast<double>(s.initial_count));
}

TEST_CASE("trace csv") {
  const ErasureTrace t = erase_up_to(make_set({0, 1, 10}, {0, 20}), SparsenessParams(2), 2);
  std::ostringstream out;
  write_trace_csv(out, t, true);
  CHECK(out.str() ==
        "stage_l,islands_erased,sites_erased,residual_count,max_territory_multiplicity\n"
        "0,0,0,3,0\n"
        "1,1,1,2,1\n"
        "2,1,2,0,1\n");
}

TEST_CASE("erased samples are attracted to the background under gkl") {
  // k = 2 r m with r = 3, m = 2
  const SparsenessParams params(12);
  const Rule gkl = make_rule_gkl();
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 40 && checked < 10; ++seed) {
    const SiteSet e = sample_site_set(0.002, 3000, seed, OutsideMode::unknown);
    const ErasureTrace trace = erase_up_to(e, params, 51);
    if (!trace.residual().empty() || e.empty()) continue;
    ++checked;
    BitRow row(3000);
    for (std::int64_t s : e.sites()) row.set(static_cast<std::size_t>(s), true);
    const AttractionReport report = attraction_check(gkl, WindowConfig(Symbol::zero, 0, row), {1000, 1999}, 6000);
    CHECK(report.unresolved.empty());
  }
  CHECK(checked > 0);
}
