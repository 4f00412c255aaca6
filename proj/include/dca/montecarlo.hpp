#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dca/config.hpp"
#include "dca/engine.hpp"
#include "dca/rule.hpp"

namespace dca {

// Odd-length ring, so the initial majority is always strict.
struct RingTopology {
  std::size_t n = 0;
  friend bool operator==(const RingTopology&, const RingTopology&) = default;
};

// A Bernoulli window [0, width - 1] embedded in a uniform background.
struct WindowTopology {
  Symbol background = Symbol::zero;
  std::size_t width = 0;
  friend bool operator==(const WindowTopology&, const WindowTopology&) = default;
};

using Topology = std::variant<RingTopology, WindowTopology>;

// Throws Error(invalid_argument) for an even or empty ring or an empty window.
void validate(const Topology& topology);
std::size_t topology_size(const Topology& topology) noexcept;

using Configuration = std::variant<RingConfig, WindowConfig>;

// Every cell independently 1 with probability p, from the documented generator (see random.hpp).
Configuration sample_bernoulli(const Topology& topology, double p, std::uint64_t seed);

struct TrialSpec {
  Rule rule;
  Topology topology;
  double p = 0.0;
  std::uint64_t t_max = 0;
  std::uint64_t seed = 0;
};

enum class Verdict { fixed_to_0, fixed_to_1, unresolved };

const char* to_string(Verdict v) noexcept;

struct TrialRecord {
  std::string rule_name;
  Topology topology;
  double p = 0.0;
  std::uint64_t t_max = 0;
  std::uint64_t seed = 0;
  Ratio initial_density;  // fraction of 1-cells on the ring, or within the sampled window
  Verdict verdict = Verdict::unresolved;
  std::optional<std::uint64_t> fixation_time;
  // Whether the verdict symbol is the strict initial majority; on windows the majority on Z is
  // the background.
  std::optional<bool> correct;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

TrialRecord run_trial(const TrialSpec& spec);

void write_trial_csv_header(std::ostream& out);
void write_trial_csv_row(std::ostream& out, const TrialRecord& record);

struct SweepRow {
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t fixed0 = 0;
  std::uint64_t fixed1 = 0;
  std::uint64_t unresolved = 0;
  std::uint64_t fixation_time_sum = 0;

  double fraction_fixed_0() const noexcept { return static_cast<double>(fixed0) / static_cast<double>(trials); }
  double fraction_fixed_1() const noexcept { return static_cast<double>(fixed1) / static_cast<double>(trials); }
  double fraction_unresolved() const noexcept {
    return static_cast<double>(unresolved) / static_cast<double>(trials);
  }
  // Mean over the trials that fixed; nullopt when none did.
  std::optional<double> mean_fixation_time() const noexcept;
};

struct SweepResult {
  std::string rule_name;
  Topology topology;
  std::uint64_t t_max = 0;
  std::uint64_t base_seed = 0;
  std::vector<SweepRow> rows;
  std::vector<TrialRecord> records;  // p-major, trial-minor

  // p,trials,fixed0_frac,fixed1_frac,unresolved_frac,mean_fixation_time,base_seed,rule,n,t_max
  void write_csv(std::ostream& out) const;
};

struct SweepOptions {
  unsigned threads = 0;  // 0 picks the hardware concurrency
};

// Trial j at p_list[i] uses seed derive_seed(base_seed, i, j).
SweepResult sweep(const Rule& rule, const Topology& topology, const std::vector<double>& p_list,
                  std::uint64_t trials_per_p, std::uint64_t t_max, std::uint64_t base_seed,
                  const SweepOptions& options = {});

SpaceTimeDiagram render_diagram(const Rule& rule, const Topology& topology, double p, std::uint64_t seed,
                                std::uint64_t t_max);

// Writes the diagram as PBM; throws Error(io) if the file cannot be written.
void write_pbm_file(const SpaceTimeDiagram& diagram, const std::string& path,
                    const std::vector<std::string>& comments = {});

// Shortest decimal text that reads back as the same double.
std::string format_double(double value);

}  // namespace dca
