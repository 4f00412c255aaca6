// dca: command-line front end over the C API.
//
//   dca <subcommand> key=value ...
//
// Exit status: 0 on success, 2 on usage errors, 1 on runtime failures.

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dca/dca.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError {
  std::string message;
};

struct RuntimeError {
  std::string message;
};

struct StringFree {
  void operator()(char* s) const { dca_string_free(s); }
};
using CString = std::unique_ptr<char, StringFree>;

template <typename T, void (*Free)(T*)>
struct HandleFree {
  void operator()(T* p) const { Free(p); }
};
using Rule = std::unique_ptr<dca_rule, HandleFree<dca_rule, dca_rule_free>>;
using Ring = std::unique_ptr<dca_ring, HandleFree<dca_ring, dca_ring_free>>;
using Diagram = std::unique_ptr<dca_diagram, HandleFree<dca_diagram, dca_diagram_free>>;
using EroderReport = std::unique_ptr<dca_eroder_report, HandleFree<dca_eroder_report, dca_eroder_report_free>>;
using SiteSet = std::unique_ptr<dca_siteset, HandleFree<dca_siteset, dca_siteset_free>>;
using Trace = std::unique_ptr<dca_trace, HandleFree<dca_trace, dca_trace_free>>;
using Sweep = std::unique_ptr<dca_sweep, HandleFree<dca_sweep, dca_sweep_free>>;

void check(dca_status status) {
  if (status == DCA_OK) return;
  std::string message = std::string(dca_status_name(status)) + ": " + dca_last_error();
  if (status == DCA_ERR_INVALID_ARGUMENT) throw UsageError{message};
  throw RuntimeError{message};
}

std::string take(char* s) {
  CString owned(s);
  return owned.get();
}

const char* kUsage =
    "usage: dca <subcommand> key=value ...\n"
    "\n"
    "  simulate     rule= n= p= seed= t_max= [init=] [format=text|pbm] [output=]\n"
    "  erode-check  rule= background=0|1 n_max= [m=2] [slack=] [threads=] [output=]\n"
    "  sparseness   k= (p= window= seed= | input=) [l_max=] [outside=empty|unknown] [output=]\n"
    "  bounds       k= p= [n=5] [format=text|csv] [output=]\n"
    "  sweep        rule= n= p=a:step:b|p1,p2,... trials= seed= [t_max=4n] [threads=] [output=]\n"
    "               [trials_out=]\n"
    "  version\n"
    "\n"
    "rules: gkl traffic smoothing modified_traffic and_erosion or_erosion\n";

class Config {
 public:
  Config(std::string command, const std::vector<std::string>& args, const std::set<std::string>& allowed)
      : command_(std::move(command)) {
    for (const auto& arg : args) {
      const auto eq = arg.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError{"expected key=value, got '" + arg + "'"};
      std::string key = arg.substr(0, eq);
      if (allowed.count(key) == 0) throw UsageError{"unknown key '" + key + "' for " + command_};
      if (values_.count(key) != 0) throw UsageError{"key '" + key + "' given twice"};
      values_[key] = arg.substr(eq + 1);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // Records a default so the metadata echo shows the resolved value.
  void set_default(const std::string& key, const std::string& value) {
    if (!has(key)) values_[key] = value;
  }

  const std::string& str(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw UsageError{"missing required key '" + key + "'"};
    return it->second;
  }

  std::uint64_t u64(const std::string& key) const {
    const std::string& text = str(key);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw UsageError{key + " must be a non-negative integer, got '" + text + "'"};
    }
    return value;
  }

  std::int64_t i64(const std::string& key) const {
    const std::string& text = str(key);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw UsageError{key + " must be an integer, got '" + text + "'"};
    }
    return value;
  }

  double probability(const std::string& key) const { return parse_probability(key, str(key)); }

  static double parse_probability(const std::string& key, const std::string& text) {
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno != 0 || !(value >= 0.0 && value <= 1.0)) {
      throw UsageError{key + " must be a probability in [0, 1], got '" + text + "'"};
    }
    return value;
  }

  // "dca <command> k=v ..." with keys sorted; a single line that reproduces the run.
  std::string resolved() const {
    std::string line = "dca " + command_;
    for (const auto& [k, v] : values_) line += " " + k + "=" + v;
    return line;
  }

  std::vector<std::string> metadata(const std::optional<std::uint64_t>& seed) const {
    std::vector<std::string> lines;
    lines.push_back(std::string("tool: dca ") + dca_version());
    lines.push_back("config: " + resolved());
    lines.push_back("seed: " + (seed ? std::to_string(*seed) : std::string("none")));
    lines.push_back(std::string("prng: ") + dca_prng_id());
    return lines;
  }

 private:
  std::string command_;
  std::map<std::string, std::string> values_;
};

std::string comment_block(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) out += "# " + line + "\n";
  return out;
}

void emit(const Config& config, const std::string& text, const std::string& key = "output") {
  if (!config.has(key) || config.str(key) == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::string& path = config.str(key);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw RuntimeError{"cannot open '" + path + "' for writing"};
  file << text;
  file.flush();
  if (!file) throw RuntimeError{"failed writing '" + path + "'"};
}

Rule load_rule(const Config& config) {
  dca_rule* raw = nullptr;
  const dca_status status = dca_rule_builtin(config.str("rule").c_str(), &raw);
  if (status != DCA_OK) throw UsageError{std::string("unknown rule '") + config.str("rule") + "'"};
  return Rule(raw);
}

int symbol(const Config& config, const std::string& key) {
  const std::string& text = config.str(key);
  if (text != "0" && text != "1") throw UsageError{key + " must be 0 or 1"};
  return text == "1" ? 1 : 0;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

// ---- simulate

int cmd_simulate(const std::vector<std::string>& args) {
  Config config("simulate", args, {"rule", "n", "p", "seed", "t_max", "init", "format", "output"});
  const Rule rule = load_rule(config);
  const std::uint64_t t_max = config.u64("t_max");
  config.set_default("format", "text");
  const std::string format = config.str("format");
  if (format != "text" && format != "pbm") throw UsageError{"format must be text or pbm"};

  std::optional<std::uint64_t> seed;
  Ring initial;
  dca_ring* raw = nullptr;
  if (config.has("init")) {
    if (config.has("n") || config.has("p") || config.has("seed")) {
      throw UsageError{"init= excludes n=, p= and seed="};
    }
    check(dca_ring_from_string(config.str("init").c_str(), &raw));
  } else {
    const std::uint64_t n = config.u64("n");
    if (n == 0) throw UsageError{"n must be positive"};
    const double p = config.probability("p");
    // A degenerate p draws nothing from the generator, so no seed is needed.
    if (p > 0.0 && p < 1.0) seed = config.u64("seed");
    check(dca_ring_sample(n, p, seed.value_or(0), &raw));
  }
  initial.reset(raw);

  dca_diagram* diagram_raw = nullptr;
  check(dca_diagram_from_ring(rule.get(), initial.get(), t_max, &diagram_raw));
  const Diagram diagram(diagram_raw);

  const std::vector<std::string> meta = config.metadata(seed);
  if (format == "pbm") {
    std::vector<const char*> comments;
    for (const auto& line : meta) comments.push_back(line.c_str());
    comments.push_back(nullptr);
    char* pbm = nullptr;
    check(dca_diagram_pbm_string(diagram.get(), comments.data(), &pbm));
    emit(config, take(pbm));
  } else {
    char* row = nullptr;
    check(dca_diagram_final_row(diagram.get(), &row));
    emit(config, comment_block(meta) + take(row) + "\n");
  }
  return 0;
}

// ---- erode-check

int cmd_erode_check(const std::vector<std::string>& args) {
  Config config("erode-check", args, {"rule", "background", "m", "n_max", "slack", "threads", "output"});
  const Rule rule = load_rule(config);
  const int background = symbol(config, "background");
  config.set_default("m", "2");
  const std::int64_t m = config.i64("m");
  const std::int64_t n_max = config.i64("n_max");
  if (m < 1) throw UsageError{"m must be at least 1"};
  if (n_max < 1) throw UsageError{"n_max must be at least 1"};
  if (n_max > 24) throw UsageError{"n_max must be at most 24"};
  const std::int64_t slack = config.has("slack") ? config.i64("slack") : -1;
  if (config.has("slack") && slack < 0) throw UsageError{"slack must be non-negative"};
  const unsigned threads = config.has("threads") ? static_cast<unsigned>(config.u64("threads")) : 0;

  dca_eroder_report* raw = nullptr;
  check(dca_eroder_verify(rule.get(), background, static_cast<int>(m), static_cast<int>(n_max),
                          static_cast<int>(slack), threads, &raw));
  const EroderReport report(raw);
  char* csv = nullptr;
  check(dca_eroder_report_csv(report.get(), &csv));
  emit(config, comment_block(config.metadata(std::nullopt)) + take(csv));
  return 0;
}

// ---- sparseness

std::string read_bits_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw RuntimeError{"cannot open '" + path + "'"};
  std::ostringstream buffer;
  buffer << file.rdbuf();
  std::string bits;
  for (char c : buffer.str()) {
    if (c == '0' || c == '1') {
      bits.push_back(c);
    } else if (c != ' ' && c != '\n' && c != '\r' && c != '\t') {
      throw RuntimeError{"malformed input file '" + path + "': unexpected character"};
    }
  }
  if (bits.empty()) throw RuntimeError{"malformed input file '" + path + "': no cells"};
  return bits;
}

int cmd_sparseness(const std::vector<std::string>& args) {
  Config config("sparseness", args, {"p", "k", "window", "l_max", "seed", "outside", "input", "output"});
  const std::int64_t k = config.i64("k");
  if (k < 1) throw UsageError{"k must be at least 1"};
  config.set_default("l_max", std::to_string(4 * k + 3));
  const std::int64_t l_max = config.i64("l_max");
  if (l_max < 0) throw UsageError{"l_max must be non-negative"};
  config.set_default("outside", "empty");
  const std::string& outside_text = config.str("outside");
  if (outside_text != "empty" && outside_text != "unknown") throw UsageError{"outside must be empty or unknown"};
  const dca_outside_mode outside = outside_text == "empty" ? DCA_OUTSIDE_EMPTY : DCA_OUTSIDE_UNKNOWN;

  std::optional<std::uint64_t> seed;
  dca_siteset* raw = nullptr;
  if (config.has("input")) {
    if (config.has("p") || config.has("window") || config.has("seed")) {
      throw UsageError{"input= excludes p=, window= and seed="};
    }
    const std::string bits = read_bits_file(config.str("input"));
    check(dca_siteset_from_string(bits.c_str(), 0, outside, &raw));
  } else {
    const double p = config.probability("p");
    const std::int64_t window = config.i64("window");
    if (window < 1) throw UsageError{"window must be positive"};
    seed = config.u64("seed");
    check(dca_siteset_sample(window, p, *seed, outside, &raw));
  }
  const SiteSet set(raw);

  dca_trace* trace_raw = nullptr;
  check(dca_erase_up_to(set.get(), k, l_max, &trace_raw));
  const Trace trace(trace_raw);
  char* csv = nullptr;
  check(dca_trace_csv(trace.get(), 1, &csv));
  dca_certificate_summary cert{};
  check(dca_trace_certificate(trace.get(), &cert));

  std::ostringstream summary;
  summary << "# certificate: sites=" << dca_siteset_size(set.get()) << " islands=" << cert.islands
          << " separation_ok=" << (cert.separation_ok ? "true" : "false") << " residual=" << cert.residual
          << " max_territory_multiplicity=" << cert.max_territory_multiplicity
          << " contained_pairs=" << cert.contained_pairs << " outer_islands=" << cert.outer_islands
          << " outer_separation_ok=" << (cert.outer_separation_ok ? "true" : "false") << "\n";
  emit(config, comment_block(config.metadata(seed)) + take(csv) + summary.str());
  return 0;
}

// ---- bounds

int cmd_bounds(const std::vector<std::string>& args) {
  Config config("bounds", args, {"k", "p", "n", "format", "output"});
  const std::uint64_t k = config.u64("k");
  if (k < 1 || k > 1000000) throw UsageError{"k must lie in [1, 1000000]"};
  config.set_default("n", "5");
  const std::uint64_t n = config.u64("n");
  if (n > 20) throw UsageError{"n must be at most 20"};
  config.set_default("format", "text");
  const std::string format = config.str("format");
  if (format != "text" && format != "csv") throw UsageError{"format must be text or csv"};
  const std::string& p = config.str("p");

  int cmp = 0;
  const dca_status status = dca_bounds_alpha_compare_one(static_cast<std::uint32_t>(k), p.c_str(), &cmp);
  if (status == DCA_ERR_PARSE) throw UsageError{"p must be a rational such as 1/576 or 0.001"};
  check(status);
  char* alpha = nullptr;
  check(dca_bounds_alpha(static_cast<std::uint32_t>(k), p.c_str(), &alpha));
  char* threshold = nullptr;
  check(dca_bounds_p_threshold(static_cast<std::uint32_t>(k), &threshold));
  char* table = nullptr;
  check(dca_bounds_table(static_cast<std::uint32_t>(k), p.c_str(), static_cast<std::uint32_t>(n),
                         format == "csv" ? 1 : 0, &table));

  std::vector<std::string> meta = config.metadata(std::nullopt);
  meta.push_back("alpha: " + take(alpha));
  meta.push_back("p_threshold: " + take(threshold));
  meta.push_back(std::string("regime: ") +
                 (cmp < 0 ? "below threshold" : (cmp == 0 ? "at threshold (alpha = 1)" : "above threshold")));
  emit(config, comment_block(meta) + take(table));
  return 0;
}

// ---- sweep

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> values;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto colon2 = text.find(':', colon + 1);
    if (colon2 == std::string::npos || text.find(':', colon2 + 1) != std::string::npos) {
      throw UsageError{"p range must look like a:step:b"};
    }
    const double a = Config::parse_probability("p", text.substr(0, colon));
    const double step = std::strtod(text.substr(colon + 1, colon2 - colon - 1).c_str(), nullptr);
    const double b = Config::parse_probability("p", text.substr(colon2 + 1));
    if (!(step > 0.0) || b < a) throw UsageError{"p range needs step > 0 and a <= b"};
    const double span = (b - a) / step;
    const auto count = static_cast<std::uint64_t>(std::floor(span + 1e-9)) + 1;
    if (count > 100000) throw UsageError{"p range has too many points"};
    for (std::uint64_t i = 0; i < count; ++i) {
      // Round to 12 significant digits so 0.006 prints as 0.006, not 0.006000000000000001.
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.12g", a + static_cast<double>(i) * step);
      values.push_back(std::min(1.0, std::strtod(buffer, nullptr)));
    }
    return values;
  }
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto comma = text.find(',', begin);
    const auto end = comma == std::string::npos ? text.size() : comma;
    values.push_back(Config::parse_probability("p", text.substr(begin, end - begin)));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return values;
}

int cmd_sweep(const std::vector<std::string>& args) {
  Config config("sweep", args, {"rule", "n", "p", "trials", "seed", "t_max", "threads", "output", "trials_out"});
  const Rule rule = load_rule(config);
  const std::uint64_t n = config.u64("n");
  if (n == 0 || n % 2 == 0) throw UsageError{"n must be odd"};
  const std::vector<double> p_list = parse_p_list(config.str("p"));
  const std::uint64_t trials = config.u64("trials");
  if (trials == 0) throw UsageError{"trials must be positive"};
  const std::uint64_t seed = config.u64("seed");
  config.set_default("t_max", std::to_string(4 * n));
  const std::uint64_t t_max = config.u64("t_max");
  const unsigned threads = config.has("threads") ? static_cast<unsigned>(config.u64("threads")) : 0;

  dca_sweep* raw = nullptr;
  check(dca_sweep_ring(rule.get(), n, p_list.data(), p_list.size(), trials, t_max, seed, threads, &raw));
  const Sweep result(raw);

  std::string header = comment_block(config.metadata(seed));
  std::string p_line = "p_values:";
  for (double p : p_list) p_line += " " + format_double(p);
  header += "# " + p_line + "\n";

  char* csv = nullptr;
  check(dca_sweep_csv(result.get(), &csv));
  emit(config, header + take(csv));
  if (config.has("trials_out")) {
    char* trials_csv = nullptr;
    check(dca_sweep_trials_csv(result.get(), &trials_csv));
    emit(config, header + take(trials_csv), "trials_out");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << kUsage;
    return kExitUsage;
  }
  const std::string command = argv[1];
  const std::vector<std::string> args(argv + 2, argv + argc);
  try {
    if (command == "simulate") return cmd_simulate(args);
    if (command == "erode-check") return cmd_erode_check(args);
    if (command == "sparseness") return cmd_sparseness(args);
    if (command == "bounds") return cmd_bounds(args);
    if (command == "sweep") return cmd_sweep(args);
    if (command == "version") {
      std::cout << "dca " << dca_version() << " (" << dca_prng_id() << ")\n";
      return 0;
    }
    if (command == "help" || command == "--help" || command == "-h") {
      std::cout << kUsage;
      return 0;
    }
    throw UsageError{"unknown subcommand '" + command + "'"};
  } catch (const UsageError& e) {
    std::cerr << "dca: " << e.message << "\n\n" << kUsage;
    return kExitUsage;
  } catch (const RuntimeError& e) {
    std::cerr << "dca: " << e.message << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "dca: " << e.what() << "\n";
    return kExitFailure;
  }
}
