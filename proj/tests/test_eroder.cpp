#include <doctest.h>

#include <random>
#include <sstream>

#include "dca/engine.hpp"
#include "dca/eroder.hpp"
#include "dca/error.hpp"
#include "dca/rule.hpp"
#include "oracles.hpp"

using namespace dca;

namespace {

// Washout time by the naive set-based stepper.
std::optional<std::uint64_t> naive_washout(const Rule& rule, oracle::Perturbation x, std::uint64_t t_max) {
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    if (x.sites.empty()) return t;
    x = oracle::line_step(rule.table(), rule.radius(), x);
  }
  return std::nullopt;
}

WindowConfig pattern(Symbol background, std::int64_t start, std::uint32_t bits, int n) {
  BitRow row(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) row.set(static_cast<std::size_t>(i), (bits >> i) & 1U);
  return WindowConfig(background, start, row);
}

}  // namespace

TEST_CASE("washout examples") {
  const Rule gkl = make_rule_gkl();
  CHECK(washout_time(gkl, WindowConfig::uniform(Symbol::zero), 5) == 0U);
  const auto t = washout_time(gkl, WindowConfig::from_string(Symbol::zero, 0, "1"), 10);
  REQUIRE(t.has_value());
  CHECK(*t <= 2);
  CHECK_FALSE(washout_time(make_rule_and_erosion(), WindowConfig::from_string(Symbol::one, 0, "0"), 200).has_value());
}

TEST_CASE("washout time agrees with the naive stepper") {
  std::mt19937_64 gen(4);
  for (const Rule& rule : {make_rule_gkl(), make_rule_modified_traffic()}) {
    for (int bg = 0; bg <= 1; ++bg) {
      for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 14);
        const auto bits = static_cast<std::uint32_t>(gen() & ((1U << n) - 1));
        const WindowConfig x = pattern(to_symbol(bg == 1), 0, bits, n);
        oracle::Perturbation ref;
        ref.background = bg;
        for (int i = 0; i < n; ++i) {
          if (static_cast<int>((bits >> i) & 1U) != bg) ref.sites.insert(i);
        }
        CHECK(washout_time(rule, x, 60) == naive_washout(rule, ref, 60));
      }
    }
  }
}

TEST_CASE("linear eroder reports") {
  const EroderReport gkl = verify_linear_eroder(make_rule_gkl(), Symbol::zero, 2, 12);
  CHECK(gkl.pass);
  REQUIRE(gkl.rows.size() == 12);
  for (const auto& row : gkl.rows) {
    CHECK(row.patterns_tested == (1U << row.n));
    CHECK(row.bound == static_cast<std::uint64_t>(2 * row.n));
    REQUIRE(row.max_washout_time.has_value());
    CHECK(*row.max_washout_time <= row.bound);
  }
  CHECK(verify_linear_eroder(make_rule_modified_traffic(), Symbol::one, 2, 12).pass);

  const EroderReport bad = verify_linear_eroder(make_rule_and_erosion(), Symbol::one, 2, 3);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.rows[0].max_washout_time.has_value());
}

TEST_CASE("eroder report is independent of the thread count") {
  EroderOptions one;
  one.threads = 1;
  EroderOptions many;
  many.threads = 7;
  const Rule mt = make_rule_modified_traffic();
  std::ostringstream a;
  std::ostringstream b;
  verify_linear_eroder(mt, Symbol::zero, 2, 10, one).write_csv(a);
  verify_linear_eroder(mt, Symbol::zero, 2, 10, many).write_csv(b);
  CHECK(a.str() == b.str());
}

TEST_CASE("eroder csv") {
  std::ostringstream out;
  verify_linear_eroder(make_rule_and_erosion(), Symbol::one, 2, 1).write_csv(out);
  CHECK(out.str() ==
        "rule,background,n,patterns_tested,max_washout_time,bound_mn,pass\n"
        "and_erosion,1,1,2,none,2,false\n");
}

TEST_CASE("eroder argument validation") {
  const Rule gkl = make_rule_gkl();
  CHECK_THROWS_AS(verify_linear_eroder(gkl, Symbol::zero, 2, 0), Error);
  CHECK_THROWS_AS(verify_linear_eroder(gkl, Symbol::zero, 0, 4), Error);
  CHECK_THROWS_AS(verify_linear_eroder(Rule(1, {1, 1, 1, 1, 1, 1, 1, 1}, "ones"), Symbol::zero, 2, 2), Error);
}

TEST_CASE("a rule that is not an eroder fails with a bounded time budget") {
  // identity never erases anything
  std::vector<std::uint8_t> id(8);
  for (std::uint32_t i = 0; i < 8; ++i) id[i] = static_cast<std::uint8_t>((i >> 1) & 1U);
  const EroderReport r = verify_linear_eroder(Rule(1, id, "identity"), Symbol::zero, 2, 4);
  CHECK_FALSE(r.pass);
}

TEST_CASE("washout is absorbing, translation invariant and conjugation symmetric") {
  const Rule gkl = make_rule_gkl();
  for (int n = 1; n <= 8; ++n) {
    for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
      const WindowConfig x = pattern(Symbol::zero, 0, bits, n);
      const auto t = washout_time(gkl, x, 2 * n);
      REQUIRE(t.has_value());
      CHECK(evolve(gkl, x, static_cast<std::uint64_t>(2 * n)) == WindowConfig::uniform(Symbol::zero));
      CHECK(washout_time(gkl, pattern(Symbol::zero, 37, bits, n), 2 * n) == t);
      // flip every cell and reverse the order
      std::uint32_t conj = 0;
      for (int i = 0; i < n; ++i) {
        if (((bits >> i) & 1U) == 0) conj |= 1U << (n - 1 - i);
      }
      CHECK(washout_time(gkl, pattern(Symbol::one, -3, conj, n), 2 * n) == t);
    }
  }
}

TEST_CASE("attraction check") {
  const Rule gkl = make_rule_gkl();
  const AttractionReport empty = attraction_check(gkl, WindowConfig::uniform(Symbol::zero), {-3, 3}, 5);
  CHECK(empty.unresolved.empty());
  for (std::int64_t s = -3; s <= 3; ++s) CHECK(empty.fixation_time(s) == 0U);

  const AttractionReport one = attraction_check(gkl, WindowConfig::from_string(Symbol::zero, 0, "1"), {-5, 5}, 10);
  CHECK(one.unresolved.empty());
  CHECK(one.fixation_time(0).value() >= 1);
  for (std::int64_t s = -5; s <= 5; ++s) CHECK(one.fixation_time(s).value() <= 2);

  const AttractionReport grow =
      attraction_check(make_rule_and_erosion(), WindowConfig::from_string(Symbol::one, 0, "0"), {-2, 2}, 10);
  CHECK(grow.unresolved.size() == 5);
  CHECK_FALSE(grow.fixation_time(0).has_value());
}
