#include "dca/dca.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "dca/bounds.hpp"
#include "dca/engine.hpp"
#include "dca/eroder.hpp"
#include "dca/error.hpp"
#include "dca/montecarlo.hpp"
#include "dca/random.hpp"
#include "dca/rule.hpp"
#include "dca/sparseness.hpp"

struct dca_rule {
  dca::Rule value;
};
struct dca_ring {
  dca::RingConfig value;
};
struct dca_window {
  dca::WindowConfig value;
};
struct dca_diagram {
  dca::SpaceTimeDiagram value;
};
struct dca_eroder_report {
  dca::EroderReport value;
};
struct dca_siteset {
  dca::SiteSet value;
};
struct dca_trace {
  dca::ErasureTrace value;
};
struct dca_sweep {
  dca::SweepResult value;
};

namespace {

thread_local std::string last_error;

dca_status to_status(dca::Errc code) {
  switch (code) {
    case dca::Errc::invalid_argument: return DCA_ERR_INVALID_ARGUMENT;
    case dca::Errc::non_fixed_background: return DCA_ERR_NON_FIXED_BACKGROUND;
    case dca::Errc::domain_mismatch: return DCA_ERR_DOMAIN_MISMATCH;
    case dca::Errc::overlapping_islands: return DCA_ERR_OVERLAPPING_ISLANDS;
    case dca::Errc::window_too_large: return DCA_ERR_WINDOW_TOO_LARGE;
    case dca::Errc::too_large: return DCA_ERR_TOO_LARGE;
    case dca::Errc::alpha_not_less_than_one: return DCA_ERR_ALPHA_NOT_LESS_THAN_ONE;
    case dca::Errc::io: return DCA_ERR_IO;
    case dca::Errc::parse: return DCA_ERR_PARSE;
  }
  return DCA_ERR_INTERNAL;
}

dca_status fail(dca_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body and converts any exception into a status code plus thread-local message.
template <typename Body>
dca_status guarded(Body&& body) noexcept {
  try {
    body();
    return DCA_OK;
  } catch (const dca::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DCA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DCA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DCA_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw dca::Error(dca::Errc::invalid_argument, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dca::Symbol symbol_arg(int symbol) {
  require(symbol == 0 || symbol == 1, "symbol must be 0 or 1");
  return dca::to_symbol(symbol == 1);
}

dca::OutsideMode outside_arg(dca_outside_mode mode) {
  require(mode == DCA_OUTSIDE_EMPTY || mode == DCA_OUTSIDE_UNKNOWN, "unknown outside mode");
  return mode == DCA_OUTSIDE_EMPTY ? dca::OutsideMode::empty : dca::OutsideMode::unknown;
}

std::vector<std::string> comment_list(const char* const* comments) {
  std::vector<std::string> out;
  if (comments != nullptr) {
    for (const char* const* c = comments; *c != nullptr; ++c) out.emplace_back(*c);
  }
  return out;
}

std::uint32_t checked_k(std::uint32_t k) {
  require(k >= 1, "k must be at least 1");
  return k;
}

}  // namespace

extern "C" {

const char* dca_version(void) { return DCA_VERSION; }

const char* dca_prng_id(void) { return dca::kPrngId.data(); }

const char* dca_status_name(dca_status status) {
  switch (status) {
    case DCA_OK: return "OK";
    case DCA_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case DCA_ERR_NON_FIXED_BACKGROUND: return "NonFixedBackground";
    case DCA_ERR_DOMAIN_MISMATCH: return "DomainMismatch";
    case DCA_ERR_OVERLAPPING_ISLANDS: return "OverlappingIslands";
    case DCA_ERR_WINDOW_TOO_LARGE: return "WindowTooLarge";
    case DCA_ERR_TOO_LARGE: return "TooLarge";
    case DCA_ERR_ALPHA_NOT_LESS_THAN_ONE: return "AlphaNotLessThanOne";
    case DCA_ERR_IO: return "IoError";
    case DCA_ERR_PARSE: return "ParseError";
    case DCA_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* dca_last_error(void) { return last_error.c_str(); }

void dca_string_free(char* s) { std::free(s); }

// ---- rules

dca_status dca_rule_builtin(const char* name, dca_rule** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = new dca_rule{dca::rule_by_name(name)};
  });
}

dca_status dca_rule_from_table(int radius, const uint8_t* table, size_t table_len, const char* name,
                               dca_rule** out) {
  return guarded([&] {
    require(table != nullptr && out != nullptr, "null argument");
    *out = new dca_rule{dca::Rule(radius, std::vector<std::uint8_t>(table, table + table_len),
                                  name != nullptr ? name : "custom")};
  });
}

dca_status dca_rule_conjugate(const dca_rule* rule, dca_rule** out) {
  return guarded([&] {
    require(rule != nullptr && out != nullptr, "null argument");
    *out = new dca_rule{dca::conjugate_rule(rule->value)};
  });
}

void dca_rule_free(dca_rule* rule) { delete rule; }

int dca_rule_radius(const dca_rule* rule) { return rule != nullptr ? rule->value.radius() : -1; }

const char* dca_rule_name(const dca_rule* rule) { return rule != nullptr ? rule->value.name().c_str() : ""; }

dca_status dca_rule_output(const dca_rule* rule, uint32_t neighborhood, int* out) {
  return guarded([&] {
    require(rule != nullptr && out != nullptr, "null argument");
    require(neighborhood < rule->value.table_size(), "neighborhood index out of range");
    *out = dca::to_bit(rule->value.apply(neighborhood)) ? 1 : 0;
  });
}

int dca_rule_equal(const dca_rule* a, const dca_rule* b) {
  return a != nullptr && b != nullptr && a->value == b->value ? 1 : 0;
}

int dca_rule_fixes(const dca_rule* rule, int symbol) {
  if (rule == nullptr || (symbol != 0 && symbol != 1)) return 0;
  return rule->value.fixes(dca::to_symbol(symbol == 1)) ? 1 : 0;
}

// ---- rings

dca_status dca_ring_from_string(const char* bits, dca_ring** out) {
  return guarded([&] {
    require(bits != nullptr && out != nullptr, "null argument");
    *out = new dca_ring{dca::RingConfig::from_string(bits)};
  });
}

dca_status dca_ring_sample(size_t n, double p, uint64_t seed, dca_ring** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new dca_ring{dca::RingConfig(dca::sample_bernoulli_bits(n, p, seed))};
  });
}

void dca_ring_free(dca_ring* ring) { delete ring; }

size_t dca_ring_length(const dca_ring* ring) { return ring != nullptr ? ring->value.length() : 0; }

dca_status dca_ring_to_string(const dca_ring* ring, char** out) {
  return guarded([&] {
    require(ring != nullptr && out != nullptr, "null argument");
    *out = duplicate(ring->value.to_string());
  });
}

dca_status dca_ring_density(const dca_ring* ring, uint64_t* num, uint64_t* den) {
  return guarded([&] {
    require(ring != nullptr && num != nullptr && den != nullptr, "null argument");
    const dca::Ratio r = dca::density(ring->value);
    *num = r.num;
    *den = r.den;
  });
}

dca_status dca_ring_evolve(const dca_rule* rule, const dca_ring* ring, uint64_t steps, dca_ring** out) {
  return guarded([&] {
    require(rule != nullptr && ring != nullptr && out != nullptr, "null argument");
    *out = new dca_ring{dca::evolve(rule->value, ring->value, steps)};
  });
}

dca_status dca_ring_diff(const dca_ring* x, const dca_ring* y, int64_t** sites, size_t* count) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && sites != nullptr && count != nullptr, "null argument");
    const auto d = dca::diff(x->value, y->value);
    auto* buffer = static_cast<int64_t*>(std::malloc(std::max<std::size_t>(d.size(), 1) * sizeof(int64_t)));
    if (buffer == nullptr) throw std::bad_alloc();
    std::copy(d.begin(), d.end(), buffer);
    *sites = buffer;
    *count = d.size();
  });
}

void dca_sites_free(int64_t* sites) { std::free(sites); }

// ---- windows

dca_status dca_window_create(int background, int64_t start, const char* bits, dca_window** out) {
  return guarded([&] {
    require(bits != nullptr && out != nullptr, "null argument");
    *out = new dca_window{dca::WindowConfig::from_string(symbol_arg(background), start, bits)};
  });
}

void dca_window_free(dca_window* window) { delete window; }

int64_t dca_window_start(const dca_window* window) { return window != nullptr ? window->value.start() : 0; }

dca_status dca_window_to_string(const dca_window* window, char** out) {
  return guarded([&] {
    require(window != nullptr && out != nullptr, "null argument");
    *out = duplicate(window->value.to_string());
  });
}

dca_status dca_window_evolve(const dca_rule* rule, const dca_window* window, uint64_t steps, dca_window** out) {
  return guarded([&] {
    require(rule != nullptr && window != nullptr && out != nullptr, "null argument");
    *out = new dca_window{dca::evolve(rule->value, window->value, steps)};
  });
}

dca_status dca_washout_time(const dca_rule* rule, const dca_window* window, uint64_t t_max, int* washed,
                            uint64_t* time) {
  return guarded([&] {
    require(rule != nullptr && window != nullptr && washed != nullptr && time != nullptr, "null argument");
    const auto t = dca::washout_time(rule->value, window->value, t_max);
    *washed = t ? 1 : 0;
    *time = t.value_or(0);
  });
}

// ---- diagrams

dca_status dca_diagram_from_ring(const dca_rule* rule, const dca_ring* initial, uint64_t steps, dca_diagram** out) {
  return guarded([&] {
    require(rule != nullptr && initial != nullptr && out != nullptr, "null argument");
    *out = new dca_diagram{dca::evolve_recorded(rule->value, initial->value, steps)};
  });
}

dca_status dca_diagram_from_window(const dca_rule* rule, const dca_window* initial, uint64_t steps,
                                   dca_diagram** out) {
  return guarded([&] {
    require(rule != nullptr && initial != nullptr && out != nullptr, "null argument");
    *out = new dca_diagram{dca::evolve_recorded(rule->value, initial->value, steps)};
  });
}

dca_status dca_diagram_render(const dca_rule* rule, size_t n, double p, uint64_t seed, uint64_t t_max,
                              dca_diagram** out) {
  return guarded([&] {
    require(rule != nullptr && out != nullptr, "null argument");
    *out = new dca_diagram{dca::render_diagram(rule->value, dca::RingTopology{n}, p, seed, t_max)};
  });
}

void dca_diagram_free(dca_diagram* diagram) { delete diagram; }

size_t dca_diagram_width(const dca_diagram* diagram) { return diagram != nullptr ? diagram->value.width() : 0; }

size_t dca_diagram_rows(const dca_diagram* diagram) { return diagram != nullptr ? diagram->value.row_count() : 0; }

dca_status dca_diagram_final_row(const dca_diagram* diagram, char** out) {
  return guarded([&] {
    require(diagram != nullptr && out != nullptr, "null argument");
    *out = duplicate(diagram->value.image_row(diagram->value.t_max()).to_string());
  });
}

dca_status dca_diagram_write_pbm(const dca_diagram* diagram, const char* path, const char* const* comments) {
  return guarded([&] {
    require(diagram != nullptr && path != nullptr, "null argument");
    dca::write_pbm_file(diagram->value, path, comment_list(comments));
  });
}

dca_status dca_diagram_pbm_string(const dca_diagram* diagram, const char* const* comments, char** out) {
  return guarded([&] {
    require(diagram != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    diagram->value.write_pbm(s, comment_list(comments));
    *out = duplicate(s.str());
  });
}

// ---- eroder

dca_status dca_eroder_verify(const dca_rule* rule, int background, int m, int n_max, int slack, unsigned threads,
                             dca_eroder_report** out) {
  return guarded([&] {
    require(rule != nullptr && out != nullptr, "null argument");
    dca::EroderOptions options;
    options.slack = slack;
    options.threads = threads;
    *out = new dca_eroder_report{dca::verify_linear_eroder(rule->value, symbol_arg(background), m, n_max, options)};
  });
}

void dca_eroder_report_free(dca_eroder_report* report) { delete report; }

int dca_eroder_report_pass(const dca_eroder_report* report) {
  return report != nullptr && report->value.pass ? 1 : 0;
}

dca_status dca_eroder_report_csv(const dca_eroder_report* report, char** out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    report->value.write_csv(s);
    *out = duplicate(s.str());
  });
}

// ---- sparseness

dca_status dca_siteset_from_string(const char* bits, int64_t origin, dca_outside_mode outside, dca_siteset** out) {
  return guarded([&] {
    require(bits != nullptr && out != nullptr, "null argument");
    *out = new dca_siteset{dca::SiteSet::from_string(bits, origin, outside_arg(outside))};
  });
}

dca_status dca_siteset_sample(int64_t window_size, double p, uint64_t seed, dca_outside_mode outside,
                              dca_siteset** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new dca_siteset{dca::sample_site_set(p, window_size, seed, outside_arg(outside))};
  });
}

void dca_siteset_free(dca_siteset* set) { delete set; }

size_t dca_siteset_size(const dca_siteset* set) { return set != nullptr ? set->value.size() : 0; }

dca_status dca_erase_up_to(const dca_siteset* set, int64_t k, int64_t l_max, dca_trace** out) {
  return guarded([&] {
    require(set != nullptr && out != nullptr, "null argument");
    *out = new dca_trace{dca::erase_up_to(set->value, dca::SparsenessParams(k), l_max)};
  });
}

void dca_trace_free(dca_trace* trace) { delete trace; }

size_t dca_trace_residual_count(const dca_trace* trace, int64_t l) {
  if (trace == nullptr || l < 0 || l > trace->value.l_max) return 0;
  return trace->value.residual_after(l).size();
}

dca_status dca_trace_csv(const dca_trace* trace, int with_certificate, char** out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    dca::write_trace_csv(s, trace->value, with_certificate != 0);
    *out = duplicate(s.str());
  });
}

dca_status dca_trace_certificate(const dca_trace* trace, dca_certificate_summary* out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "null argument");
    const dca::CoverCertificate cert = dca::cover_certificate(trace->value);
    out->islands = cert.islands.size();
    out->separation_ok = cert.separation_ok ? 1 : 0;
    out->residual = cert.residual.size();
    out->max_territory_multiplicity = cert.max_territory_multiplicity();
    out->contained_pairs = cert.contained_pairs;
    out->outer_islands = cert.outer_islands.size();
    out->outer_separation_ok = cert.outer_separation_ok ? 1 : 0;
  });
}

// ---- bounds

dca_status dca_bounds_table(uint32_t k, const char* p, uint32_t n, int csv, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const dca::bounds::BoundParams params(checked_k(k), dca::bounds::parse_rational(p));
    std::ostringstream s;
    dca::bounds::write_bounds_table(s, params, n, csv != 0);
    *out = duplicate(s.str());
  });
}

dca_status dca_bounds_alpha_compare_one(uint32_t k, const char* p, int* cmp) {
  return guarded([&] {
    require(p != nullptr && cmp != nullptr, "null argument");
    const dca::bounds::BoundParams params(checked_k(k), dca::bounds::parse_rational(p));
    const mpq_class a = dca::bounds::alpha(params);
    *cmp = a < 1 ? -1 : (a == 1 ? 0 : 1);
  });
}

dca_status dca_bounds_alpha(uint32_t k, const char* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const dca::bounds::BoundParams params(checked_k(k), dca::bounds::parse_rational(p));
    *out = duplicate(dca::bounds::alpha(params).get_str());
  });
}

dca_status dca_bounds_p_threshold(uint32_t k, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = duplicate(dca::bounds::p_threshold(checked_k(k)).get_str());
  });
}

// ---- Monte Carlo

dca_status dca_trial_run_ring(const dca_rule* rule, size_t n, double p, uint64_t t_max, uint64_t seed,
                              dca_trial_record* out) {
  return guarded([&] {
    require(rule != nullptr && out != nullptr, "null argument");
    const dca::TrialRecord rec = dca::run_trial({rule->value, dca::RingTopology{n}, p, t_max, seed});
    out->p = rec.p;
    out->seed = rec.seed;
    out->density_num = rec.initial_density.num;
    out->density_den = rec.initial_density.den;
    out->verdict = rec.verdict == dca::Verdict::fixed_to_0
                       ? DCA_FIXED_TO_0
                       : (rec.verdict == dca::Verdict::fixed_to_1 ? DCA_FIXED_TO_1 : DCA_UNRESOLVED);
    out->fixed = rec.fixation_time ? 1 : 0;
    out->fixation_time = rec.fixation_time.value_or(0);
    out->correct = rec.correct.value_or(false) ? 1 : 0;
  });
}

dca_status dca_sweep_ring(const dca_rule* rule, size_t n, const double* p_list, size_t p_count,
                          uint64_t trials_per_p, uint64_t t_max, uint64_t base_seed, unsigned threads,
                          dca_sweep** out) {
  return guarded([&] {
    require(rule != nullptr && out != nullptr && (p_list != nullptr || p_count == 0), "null argument");
    dca::SweepOptions options;
    options.threads = threads;
    *out = new dca_sweep{dca::sweep(rule->value, dca::RingTopology{n}, std::vector<double>(p_list, p_list + p_count),
                                    trials_per_p, t_max, base_seed, options)};
  });
}

void dca_sweep_free(dca_sweep* sweep) { delete sweep; }

size_t dca_sweep_rows(const dca_sweep* sweep) { return sweep != nullptr ? sweep->value.rows.size() : 0; }

dca_status dca_sweep_row_counts(const dca_sweep* sweep, size_t row, uint64_t* fixed0, uint64_t* fixed1,
                                uint64_t* unresolved) {
  return guarded([&] {
    require(sweep != nullptr && fixed0 != nullptr && fixed1 != nullptr && unresolved != nullptr, "null argument");
    require(row < sweep->value.rows.size(), "row out of range");
    const dca::SweepRow& r = sweep->value.rows[row];
    *fixed0 = r.fixed0;
    *fixed1 = r.fixed1;
    *unresolved = r.unresolved;
  });
}

dca_status dca_sweep_csv(const dca_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    sweep->value.write_csv(s);
    *out = duplicate(s.str());
  });
}

dca_status dca_sweep_trials_csv(const dca_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    dca::write_trial_csv_header(s);
    for (const auto& rec : sweep->value.records) dca::write_trial_csv_row(s, rec);
    *out = duplicate(s.str());
  });
}

}  // extern "C"
