#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dca::bounds {

// Parses "a/b", an integer, or a plain decimal such as "0.001" into an exact rational.
mpq_class parse_rational(std::string_view text);

// Scientific rendering with the given number of significant digits, e.g. "5.76000e-01".
std::string to_scientific(const mpq_class& value, int digits = 6);
// Exact digits when short, otherwise scientific.
std::string to_display(const mpz_class& value, std::size_t max_digits = 24);

struct BoundParams {
  std::uint32_t k = 1;
  mpq_class p;

  // Throws Error(invalid_argument) unless k >= 1 and 0 <= p <= 1.
  BoundParams(std::uint32_t k_value, mpq_class p_value);
};

// l_1..l_n with l_m = (4k+3)^(m-1).
std::vector<mpz_class> checkpoint_lengths(std::uint32_t k, std::uint32_t n);

// Checks l_m >= (4k+2)(l_{m-1} + ... + l_1) for every m, the integer form of
// l_m / 2 >= 2 (k + 1/2)(l_{m-1} + ... + l_1).
bool separation_system_holds(std::uint32_t k, const std::vector<mpz_class>& lengths);

struct TreeCount {
  std::uint32_t k = 1;
  std::uint32_t m = 0;
  mpz_class recursion;    // f_0 = 1, f_m = 2k l_m f_{m-1}^2
  mpz_class closed_form;  // (2k)^(2^(m+1))

  bool closed_form_holds() const { return recursion <= closed_form; }
};

TreeCount tree_count_bound(std::uint32_t k, std::uint32_t m);

// Counts candidate explanation trees of depth m rooted at 0 by enumerating every position
// assignment: a node at level j keeps its position in its first child and places its second
// child at distance d with l/2 < |d| <= (k + 1/2) l, l = l_{m-j}. Leaves need not be distinct.
// Throws Error(too_large) unless m <= 2 and k <= 4.
mpz_class brute_count_candidate_trees(std::uint32_t k, std::uint32_t m);

// p (2k)^2
mpq_class alpha(const BoundParams& params);
// (2k)^-2
mpq_class p_threshold(std::uint32_t k);

struct UnerasedBound {
  mpq_class alpha_power;  // alpha^(2^n)
  mpq_class sharper;      // p^(2^n) f_n
};

UnerasedBound unerased_prob_bound(const BoundParams& params, std::uint32_t n);

// sum over n >= m of (2k (4k+3)^(n-1) + 1) alpha^(2^n).
struct TailBound {
  mpq_class partial;    // terms n = m .. n_stop
  mpq_class remainder;  // certified upper bound on the terms n > n_stop
  // Geometric majorant for n >= majorant_start: term(n) <= majorant_term * ratio^(n - majorant_start).
  std::uint32_t majorant_start = 0;
  mpq_class majorant_term;
  mpq_class ratio;

  mpq_class total() const { return partial + remainder; }
};

// Throws Error(alpha_not_less_than_one) if alpha >= 1.
TailBound borel_cantelli_tail(const BoundParams& params, std::uint32_t m, std::uint32_t n_stop);

// Table of n, l_n, f_n, closed-form bound, whether f_n is within it, alpha^(2^n), p^(2^n) f_n and
// the tail bound from n, for n = 1..n_max. csv selects comma-separated output, otherwise aligned text.
void write_bounds_table(std::ostream& out, const BoundParams& params, std::uint32_t n_max, bool csv);

}  // namespace dca::bounds
