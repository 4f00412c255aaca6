#include "dca/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "dca/error.hpp"
#include "dca/random.hpp"
#include "parallel.hpp"

namespace dca {

void validate(const Topology& topology) {
  if (const auto* ring = std::get_if<RingTopology>(&topology)) {
    if (ring->n == 0 || ring->n % 2 == 0) {
      throw Error(Errc::invalid_argument, "ring length must be odd, got " + std::to_string(ring->n));
    }
  } else if (std::get<WindowTopology>(topology).width == 0) {
    throw Error(Errc::invalid_argument, "window width must be positive");
  }
}

std::size_t topology_size(const Topology& topology) noexcept {
  if (const auto* ring = std::get_if<RingTopology>(&topology)) return ring->n;
  return std::get<WindowTopology>(topology).width;
}

Configuration sample_bernoulli(const Topology& topology, double p, std::uint64_t seed) {
  validate(topology);
  if (const auto* ring = std::get_if<RingTopology>(&topology)) {
    return RingConfig(sample_bernoulli_bits(ring->n, p, seed));
  }
  const auto& window = std::get<WindowTopology>(topology);
  return WindowConfig(window.background, 0, sample_bernoulli_bits(window.width, p, seed));
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::fixed_to_0: return "fixed_to_0";
    case Verdict::fixed_to_1: return "fixed_to_1";
    case Verdict::unresolved: return "unresolved";
  }
  return "unresolved";
}

namespace {

Ratio reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

TrialRecord record_skeleton(const TrialSpec& spec) {
  TrialRecord record;
  record.rule_name = spec.rule.name();
  record.topology = spec.topology;
  record.p = spec.p;
  record.t_max = spec.t_max;
  record.seed = spec.seed;
  return record;
}

}  // namespace

TrialRecord run_trial(const TrialSpec& spec) {
  TrialRecord record = record_skeleton(spec);
  Configuration initial = sample_bernoulli(spec.topology, spec.p, spec.seed);

  if (auto* ring = std::get_if<RingConfig>(&initial)) {
    const std::uint64_t ones = ring->count_ones();
    const std::uint64_t n = ring->length();
    record.initial_density = reduced(ones, n);
    const Symbol majority = to_symbol(2 * ones > n);

    RingConfig current = std::move(*ring);
    RingConfig next;
    BitRow scratch;
    for (std::uint64_t t = 0;; ++t) {
      if (current.is_uniform(Symbol::zero) || current.is_uniform(Symbol::one)) {
        record.verdict = current.is_uniform(Symbol::zero) ? Verdict::fixed_to_0 : Verdict::fixed_to_1;
        record.fixation_time = t;
        break;
      }
      if (t == spec.t_max) break;
      step_into(spec.rule, current, next, scratch);
      std::swap(current, next);
    }
    const bool fixed_to_majority =
        record.fixation_time.has_value() &&
        (record.verdict == Verdict::fixed_to_1) == (majority == Symbol::one);
    record.correct = fixed_to_majority;
    return record;
  }

  auto& window = std::get<WindowConfig>(initial);
  const Symbol bg = window.background();
  if (!spec.rule.fixes(bg)) {
    throw Error(Errc::non_fixed_background, "rule '" + spec.rule.name() + "' does not fix the window background");
  }
  record.initial_density = reduced(window.bits().count(), window.bits().size());
  WindowConfig current = window.normalized();
  for (std::uint64_t t = 0;; ++t) {
    if (current.is_background()) {
      record.verdict = bg == Symbol::zero ? Verdict::fixed_to_0 : Verdict::fixed_to_1;
      record.fixation_time = t;
      break;
    }
    if (t == spec.t_max) break;
    current = step(spec.rule, current).normalized();
  }
  record.correct = record.fixation_time.has_value();
  return record;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void write_trial_csv_header(std::ostream& out) {
  out << "rule,topology,n,background,p,t_max,seed,initial_density,verdict,fixation_time,correct\n";
}

void write_trial_csv_row(std::ostream& out, const TrialRecord& record) {
  const bool ring = std::holds_alternative<RingTopology>(record.topology);
  out << record.rule_name << ',' << (ring ? "ring" : "window") << ',' << topology_size(record.topology) << ',';
  if (ring) {
    out << "NA";
  } else {
    out << to_char(std::get<WindowTopology>(record.topology).background);
  }
  out << ',' << format_double(record.p) << ',' << record.t_max << ',' << record.seed << ','
      << record.initial_density.num << '/' << record.initial_density.den << ',' << to_string(record.verdict) << ',';
  if (record.fixation_time) {
    out << *record.fixation_time;
  } else {
    out << "NA";
  }
  out << ',';
  if (record.correct) {
    out << (*record.correct ? "true" : "false");
  } else {
    out << "NA";
  }
  out << '\n';
}

std::optional<double> SweepRow::mean_fixation_time() const noexcept {
  const std::uint64_t fixed = fixed0 + fixed1;
  if (fixed == 0) return std::nullopt;
  return static_cast<double>(fixation_time_sum) / static_cast<double>(fixed);
}

void SweepResult::write_csv(std::ostream& out) const {
  out << "p,trials,fixed0_frac,fixed1_frac,unresolved_frac,mean_fixation_time,base_seed,rule,n,t_max\n";
  for (const auto& row : rows) {
    out << format_double(row.p) << ',' << row.trials << ',' << format_double(row.fraction_fixed_0()) << ','
        << format_double(row.fraction_fixed_1()) << ',' << format_double(row.fraction_unresolved()) << ',';
    if (const auto mean = row.mean_fixation_time()) {
      out << format_double(*mean);
    } else {
      out << "NA";
    }
    out << ',' << base_seed << ',' << rule_name << ',' << topology_size(topology) << ',' << t_max << '\n';
  }
}

SweepResult sweep(const Rule& rule, const Topology& topology, const std::vector<double>& p_list,
                  std::uint64_t trials_per_p, std::uint64_t t_max, std::uint64_t base_seed,
                  const SweepOptions& options) {
  validate(topology);
  if (p_list.empty()) throw Error(Errc::invalid_argument, "p_list must not be empty");
  if (trials_per_p == 0) throw Error(Errc::invalid_argument, "trials per p must be positive");
  for (double p : p_list) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_argument, "p values must lie in [0, 1]");
  }

  const std::size_t total = p_list.size() * trials_per_p;
  std::vector<std::uint64_t> seeds(total);
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    for (std::uint64_t j = 0; j < trials_per_p; ++j) seeds[i * trials_per_p + j] = derive_seed(base_seed, i, j);
  }
  {
    std::vector<std::uint64_t> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::logic_error("seed derivation produced a repeated stream");
    }
  }

  SweepResult result;
  result.rule_name = rule.name();
  result.topology = topology;
  result.t_max = t_max;
  result.base_seed = base_seed;
  result.records.resize(total);
  detail::parallel_chunks(total, options.threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const TrialSpec spec{rule, topology, p_list[idx / trials_per_p], t_max, seeds[idx]};
      result.records[idx] = run_trial(spec);
    }
  });

  for (std::size_t i = 0; i < p_list.size(); ++i) {
    SweepRow row;
    row.p = p_list[i];
    row.trials = trials_per_p;
    for (std::uint64_t j = 0; j < trials_per_p; ++j) {
      const TrialRecord& rec = result.records[i * trials_per_p + j];
      switch (rec.verdict) {
        case Verdict::fixed_to_0: ++row.fixed0; break;
        case Verdict::fixed_to_1: ++row.fixed1; break;
        case Verdict::unresolved: ++row.unresolved; break;
      }
      if (rec.fixation_time) row.fixation_time_sum += *rec.fixation_time;
    }
    result.rows.push_back(row);
  }
  return result;
}

SpaceTimeDiagram render_diagram(const Rule& rule, const Topology& topology, double p, std::uint64_t seed,
                                std::uint64_t t_max) {
  Configuration initial = sample_bernoulli(topology, p, seed);
  if (auto* ring = std::get_if<RingConfig>(&initial)) return evolve_recorded(rule, *ring, t_max);
  return evolve_recorded(rule, std::get<WindowConfig>(initial), t_max);
}

void write_pbm_file(const SpaceTimeDiagram& diagram, const std::string& path,
                    const std::vector<std::string>& comments) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  diagram.write_pbm(file, comments);
  file.flush();
  if (!file) throw Error(Errc::io, "failed writing '" + path + "'");
}

}  // namespace dca
