#include "dca/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <ostream>

#include "dca/error.hpp"

namespace dca::bounds {

namespace {

// Exponents 2^n beyond this make exact powers impractically large.
constexpr std::uint32_t kMaxDoublingDepth = 20;

mpz_class pow_ui(const mpz_class& base, unsigned long exponent) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

mpq_class pow_ui(const mpq_class& base, unsigned long exponent) {
  mpq_class out(pow_ui(base.get_num(), exponent), pow_ui(base.get_den(), exponent));
  out.canonicalize();
  return out;
}

mpq_class pow_two_to_the(const mpq_class& base, std::uint32_t n) {
  if (n > kMaxDoublingDepth) throw Error(Errc::too_large, "depth above 20 makes exact powers impractical");
  return pow_ui(base, 1UL << n);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto fail = [&] { return Error(Errc::parse, "not a rational number: '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();

  if (s.find('/') != std::string_view::npos) {
    const auto slash = s.find('/');
    const std::string num(trim(s.substr(0, slash)));
    const std::string den(trim(s.substr(slash + 1)));
    const auto is_int = [](const std::string& v) {
      const std::size_t start = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
      return v.size() > start && std::all_of(v.begin() + static_cast<std::ptrdiff_t>(start), v.end(),
                                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (!is_int(num) || !is_int(den)) throw fail();
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
    if (d == 0) throw Error(Errc::parse, "zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  }

  // [sign] digits [. digits] [(e|E) [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --scale;
      any = true;
    }
  }
  if (!any) throw fail();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool neg_exp = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg_exp = s[i++] == '-';
    std::string exp_digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) exp_digits += s[i++];
    if (exp_digits.empty() || exp_digits.size() > 6) throw fail();
    const long e = std::stol(exp_digits);
    scale += neg_exp ? -e : e;
  }
  if (i != s.size()) throw fail();

  mpz_class num(digits, 10);
  if (negative) num = -num;
  mpq_class q;
  if (scale >= 0) {
    q = mpq_class(num * pow_ui(mpz_class(10), static_cast<unsigned long>(scale)));
  } else {
    q = mpq_class(num, pow_ui(mpz_class(10), static_cast<unsigned long>(-scale)));
  }
  q.canonicalize();
  return q;
}

std::string to_scientific(const mpq_class& value, int digits) {
  if (value == 0) return "0";
  digits = std::max(digits, 1);
  mpf_class f(0, static_cast<mp_bitcnt_t>(digits * 4 + 128));
  f = value;
  mp_exp_t exponent = 0;
  char* raw = mpf_get_str(nullptr, &exponent, 10, static_cast<std::size_t>(digits), f.get_mpf_t());
  std::string mantissa(raw);
  void (*free_fn)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(raw, mantissa.size() + 1);

  std::string sign;
  if (!mantissa.empty() && mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  mantissa.resize(static_cast<std::size_t>(digits), '0');
  const long e = static_cast<long>(exponent) - 1;
  std::string out = sign + mantissa.substr(0, 1);
  if (digits > 1) out += "." + mantissa.substr(1);
  const long magnitude = e < 0 ? -e : e;
  out += e < 0 ? "e-" : "e+";
  if (magnitude < 10) out += '0';
  out += std::to_string(magnitude);
  return out;
}

std::string to_display(const mpz_class& value, std::size_t max_digits) {
  std::string exact = value.get_str();
  if (exact.size() <= max_digits) return exact;
  return to_scientific(mpq_class(value));
}

BoundParams::BoundParams(std::uint32_t k_value, mpq_class p_value) : k(k_value), p(std::move(p_value)) {
  p.canonicalize();
  if (k < 1) throw Error(Errc::invalid_argument, "k must be at least 1");
  if (p < 0 || p > 1) throw Error(Errc::invalid_argument, "p must lie in [0, 1]");
}

std::vector<mpz_class> checkpoint_lengths(std::uint32_t k, std::uint32_t n) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be at least 1");
  if (n < 1) throw Error(Errc::invalid_argument, "n must be at least 1");
  const mpz_class base = 4 * mpz_class(k) + 3;
  std::vector<mpz_class> lengths;
  lengths.reserve(n);
  mpz_class l = 1;
  for (std::uint32_t m = 1; m <= n; ++m) {
    lengths.push_back(l);
    l *= base;
  }
  return lengths;
}

bool separation_system_holds(std::uint32_t k, const std::vector<mpz_class>& lengths) {
  const mpz_class factor = 4 * mpz_class(k) + 2;
  mpz_class sum = 0;
  for (const auto& l : lengths) {
    if (l < factor * sum) return false;
    sum += l;
  }
  return true;
}

TreeCount tree_count_bound(std::uint32_t k, std::uint32_t m) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be at least 1");
  if (m + 1 > kMaxDoublingDepth) throw Error(Errc::too_large, "tree depth above 19 is not supported");
  TreeCount count;
  count.k = k;
  count.m = m;
  count.recursion = 1;
  const mpz_class two_k = 2 * mpz_class(k);
  if (m > 0) {
    const auto lengths = checkpoint_lengths(k, m);
    for (std::uint32_t j = 1; j <= m; ++j) count.recursion = two_k * lengths[j - 1] * count.recursion * count.recursion;
  }
  count.closed_form = pow_ui(two_k, 1UL << (m + 1));
  return count;
}

namespace {

struct TreeEnumerator {
  std::int64_t k;
  std::uint32_t depth;
  std::vector<std::int64_t> lengths;  // lengths[j] = l_{j+1}
  std::uint64_t count = 0;

  void level(const std::vector<std::int64_t>& nodes, std::uint32_t j) {
    if (j == depth) {
      ++count;
      return;
    }
    std::vector<std::int64_t> children(nodes.size() * 2);
    place(nodes, children, 0, j);
  }

  void place(const std::vector<std::int64_t>& nodes, std::vector<std::int64_t>& children, std::size_t i,
             std::uint32_t j) {
    if (i == nodes.size()) {
      level(children, j + 1);
      return;
    }
    const std::int64_t l = lengths[depth - j - 1];
    const std::int64_t reach = (k + 1) * l;
    children[2 * i] = nodes[i];
    for (std::int64_t d = -reach; d <= reach; ++d) {
      const std::int64_t twice = 2 * (d < 0 ? -d : d);
      if (twice > l && twice <= (2 * k + 1) * l) {
        children[2 * i + 1] = nodes[i] + d;
        place(nodes, children, i + 1, j);
      }
    }
  }
};

}  // namespace

mpz_class brute_count_candidate_trees(std::uint32_t k, std::uint32_t m) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be at least 1");
  if (m > 2 || k > 4) throw Error(Errc::too_large, "enumeration is limited to m <= 2 and k <= 4");
  TreeEnumerator e{static_cast<std::int64_t>(k), m, {}, 0};
  for (const auto& l : checkpoint_lengths(k, std::max<std::uint32_t>(m, 1))) e.lengths.push_back(l.get_si());
  e.level({0}, 0);
  return mpz_class(static_cast<unsigned long>(e.count));
}

mpq_class alpha(const BoundParams& params) {
  const mpz_class two_k = 2 * mpz_class(params.k);
  mpq_class a = params.p * mpq_class(two_k * two_k);
  a.canonicalize();
  return a;
}

mpq_class p_threshold(std::uint32_t k) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be at least 1");
  const mpz_class two_k = 2 * mpz_class(k);
  return mpq_class(mpz_class(1), two_k * two_k);
}

UnerasedBound unerased_prob_bound(const BoundParams& params, std::uint32_t n) {
  UnerasedBound bound;
  bound.alpha_power = pow_two_to_the(alpha(params), n);
  bound.sharper = pow_two_to_the(params.p, n) * mpq_class(tree_count_bound(params.k, n).recursion);
  bound.sharper.canonicalize();
  return bound;
}

namespace {

// (2k (4k+3)^(n-1) + 1) alpha^(2^n), n >= 1.
mpq_class tail_term(std::uint32_t k, const mpq_class& alpha_power, std::uint32_t n) {
  const mpz_class coeff = 2 * mpz_class(k) * pow_ui(mpz_class(4 * mpz_class(k) + 3), n - 1) + 1;
  mpq_class t = mpq_class(coeff) * alpha_power;
  t.canonicalize();
  return t;
}

}  // namespace

TailBound borel_cantelli_tail(const BoundParams& params, std::uint32_t m, std::uint32_t n_stop) {
  if (m < 1) throw Error(Errc::invalid_argument, "the tail starts at m >= 1");
  const mpq_class a = alpha(params);
  if (a >= 1) throw Error(Errc::alpha_not_less_than_one, "alpha = " + a.get_str() + " is not below 1");

  TailBound tail;
  tail.partial = 0;
  tail.remainder = 0;
  const std::uint32_t first_rest = std::max(n_stop + 1, m);
  if (a == 0) {
    tail.majorant_start = first_rest;
    tail.majorant_term = 0;
    tail.ratio = 0;
    return tail;
  }

  for (std::uint32_t n = m; n <= n_stop; ++n) tail.partial += tail_term(params.k, pow_two_to_the(a, n), n);

  // term(n+1) / term(n) <= (4k+3) alpha^(2^n), which is decreasing in n; the first N past the
  // partial sum where it drops below 1 starts a geometric majorant.
  const mpq_class growth(4 * mpz_class(params.k) + 3);
  for (std::uint32_t n = first_rest;; ++n) {
    const mpq_class ap = pow_two_to_the(a, n);
    const mpq_class term = tail_term(params.k, ap, n);
    mpq_class ratio = growth * ap;
    ratio.canonicalize();
    if (ratio < 1) {
      tail.majorant_start = n;
      tail.majorant_term = term;
      tail.ratio = ratio;
      tail.remainder += term / (1 - ratio);
      break;
    }
    tail.remainder += term;
  }
  tail.partial.canonicalize();
  tail.remainder.canonicalize();
  return tail;
}

void write_bounds_table(std::ostream& out, const BoundParams& params, std::uint32_t n_max, bool csv) {
  if (n_max < 1) throw Error(Errc::invalid_argument, "n must be at least 1");
  const std::vector<std::string> header = {"n",         "l_n",         "f_n",       "closed_form_bound",
                                           "f_n_within_bound", "alpha_pow", "p_pow_f_n", "tail_bound"};
  std::vector<std::vector<std::string>> rows;
  const auto lengths = checkpoint_lengths(params.k, n_max);
  const bool convergent = alpha(params) < 1;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const TreeCount count = tree_count_bound(params.k, n);
    const UnerasedBound unerased = unerased_prob_bound(params, n);
    std::string tail = "divergent";
    if (convergent) tail = to_scientific(borel_cantelli_tail(params, n, n_max).total());
    rows.push_back({std::to_string(n), to_display(lengths[n - 1]), to_display(count.recursion),
                    to_display(count.closed_form), count.closed_form_holds() ? "true" : "false",
                    to_scientific(unerased.alpha_power), to_scientific(unerased.sharper), tail});
  }

  if (csv) {
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
    return;
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
  }
  const auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "  " : "") << std::setw(static_cast<int>(widths[c])) << row[c];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

}  // namespace dca::bounds
