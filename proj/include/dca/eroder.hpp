#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dca/config.hpp"
#include "dca/rule.hpp"

namespace dca {

// Smallest t <= t_max with Φ^t x equal to the background everywhere, or nullopt.
std::optional<std::uint64_t> washout_time(const Rule& rule, const WindowConfig& x, std::uint64_t t_max);

struct EroderRow {
  int n = 0;                                      // perturbation diameter
  std::uint64_t patterns_tested = 0;              // 2^n
  std::optional<std::uint64_t> max_washout_time;  // nullopt if some pattern outlived the step limit
  std::uint64_t bound = 0;                        // m * n
  bool pass = false;
};

struct EroderReport {
  std::string rule_name;
  Symbol background = Symbol::zero;
  int m = 0;
  int n_max = 0;
  int slack = 0;  // extra steps simulated beyond m*n before declaring a pattern unresolved
  std::vector<EroderRow> rows;  // rows[n-1] covers diameter n
  bool pass = false;

  // CSV header and one row per diameter: rule,background,n,patterns_tested,max_washout_time,bound_mn,pass
  void write_csv(std::ostream& out) const;
};

struct EroderOptions {
  // Steps beyond m*n simulated before a pattern counts as never washing out; negative means 4r.
  int slack = -1;
  // Worker threads for the enumeration; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

// Enumerates all 2^n contents of the interval [0, n-1] over the background for every n <= n_max
// and checks that each washes out within m*n steps.
EroderReport verify_linear_eroder(const Rule& rule, Symbol background, int m, int n_max,
                                  const EroderOptions& options = {});

struct AttractionReport {
  Interval probe;
  std::uint64_t t_max = 0;
  // Per probe site (probe.lo + index): last time in [0, t_max] the site disagreed with the
  // background, or nullopt if it never did.
  std::vector<std::optional<std::uint64_t>> last_disagreement;
  // Sites still disagreeing with the background at t_max.
  std::vector<std::int64_t> unresolved;

  // Time from which the site agrees with the background through t_max, or nullopt if unresolved.
  std::optional<std::uint64_t> fixation_time(std::int64_t site) const;
};

AttractionReport attraction_check(const Rule& rule, const WindowConfig& x, Interval probe, std::uint64_t t_max);

}  // namespace dca
