#include <doctest.h>

#include <sstream>

#include "dca/bounds.hpp"
#include "dca/error.hpp"
#include "oracles.hpp"

using namespace dca;
using namespace dca::bounds;

namespace {

mpq_class q(const char* text) {
  mpq_class out(text);
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/576") == q("1/576"));
  CHECK(parse_rational("0.001") == q("1/1000"));
  CHECK(parse_rational("2") == 2);
  CHECK(parse_rational("1e-3") == q("1/1000"));
  CHECK(parse_rational("2.5E1") == 25);
  CHECK(parse_rational("4/8") == q("1/2"));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("checkpoint lengths") {
  const auto l = checkpoint_lengths(12, 3);
  CHECK(l == std::vector<mpz_class>{1, 51, 2601});
  CHECK(checkpoint_lengths(1, 2)[1] == 7);
  for (std::uint32_t k = 1; k <= 20; ++k) {
    CHECK(checkpoint_lengths(k, 1)[0] == 1);
    CHECK(separation_system_holds(k, checkpoint_lengths(k, 10)));
  }
  // a system that grows too slowly fails
  CHECK_FALSE(separation_system_holds(2, {1, 5, 30}));
}

TEST_CASE("tree count recursion") {
  CHECK(tree_count_bound(5, 0).recursion == 1);
  const TreeCount t = tree_count_bound(1, 1);
  CHECK(t.recursion == 2);
  CHECK(t.closed_form == 16);
  CHECK(t.closed_form_holds());
  const TreeCount t12 = tree_count_bound(12, 2);
  CHECK(t12.recursion == 705024);
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 24, 8);
  CHECK(t12.closed_form == bound);
  CHECK(t12.closed_form_holds());
}

TEST_CASE("tree count recursion has the closed form (2k)^(2^m-1) (4k+3)^(2^m-m-1)") {
  for (std::uint32_t k = 1; k <= 20; ++k) {
    for (std::uint32_t m = 0; m <= 10; ++m) CHECK(tree_count_bound(k, m).recursion == oracle::tree_count_closed_form(k, m));
  }
}

TEST_CASE("the doubly exponential bound holds up to depth 2 and fails beyond") {
  for (std::uint32_t k = 1; k <= 20; ++k) {
    for (std::uint32_t m = 0; m <= 2; ++m) CHECK(tree_count_bound(k, m).closed_form_holds());
  }
  // k = 1, m = 3: 2^7 * 7^4 = 307328 exceeds 2^16 = 65536.
  const TreeCount c = tree_count_bound(1, 3);
  CHECK(c.recursion == 307328);
  CHECK(c.closed_form == 65536);
  CHECK_FALSE(c.closed_form_holds());
  CHECK_FALSE(tree_count_bound(12, 6).closed_form_holds());
  CHECK(tree_count_bound(12, 5).closed_form_holds());
  for (std::uint32_t k = 1; k <= 20; ++k) CHECK_FALSE(tree_count_bound(k, 8).closed_form_holds());
}

TEST_CASE("brute count of candidate trees") {
  for (std::uint32_t k = 1; k <= 4; ++k) {
    CHECK(brute_count_candidate_trees(k, 0) == 1);
    CHECK(brute_count_candidate_trees(k, 1) == 2 * k);
    CHECK(brute_count_candidate_trees(k, 1) == oracle::offsets_in_shell(k, 1));
  }
  CHECK(brute_count_candidate_trees(1, 2) == 56);
  for (std::uint32_t k = 1; k <= 4; ++k) {
    // two offsets at level 1 times one at level 2, each count taken from the shell scan
    const auto l2 = checkpoint_lengths(k, 2)[1].get_si();
    const mpz_class expected = mpz_class(oracle::offsets_in_shell(k, l2)) * oracle::offsets_in_shell(k, 1) *
                               oracle::offsets_in_shell(k, 1);
    CHECK(brute_count_candidate_trees(k, 2) == expected);
    CHECK(brute_count_candidate_trees(k, 2) <= tree_count_bound(k, 2).recursion);
  }
  CHECK_THROWS_AS(brute_count_candidate_trees(5, 1), Error);
  CHECK_THROWS_AS(brute_count_candidate_trees(1, 3), Error);
}

TEST_CASE("alpha and the threshold") {
  CHECK(alpha(BoundParams(12, q("1/1000"))) == q("576/1000"));
  CHECK(alpha(BoundParams(7, 0)) == 0);
  for (std::uint32_t k = 1; k <= 50; ++k) {
    CHECK(alpha(BoundParams(k, p_threshold(k))) == 1);
    CHECK(p_threshold(k + 1) < p_threshold(k));
  }
  CHECK(p_threshold(12) == q("1/576"));
  CHECK(p_threshold(1) == q("1/4"));
  CHECK_THROWS_AS(BoundParams(12, 2), Error);
  CHECK_THROWS_AS(BoundParams(0, q("1/2")), Error);
}

TEST_CASE("unerased probability bound") {
  const BoundParams params(12, q("1/1000"));
  CHECK(unerased_prob_bound(params, 0).alpha_power == alpha(params));
  mpq_class expected;
  mpz_class num;
  mpz_class den;
  mpz_ui_pow_ui(num.get_mpz_t(), 576, 8);
  mpz_ui_pow_ui(den.get_mpz_t(), 1000, 8);
  expected = mpq_class(num, den);
  expected.canonicalize();
  CHECK(unerased_prob_bound(params, 3).alpha_power == expected);
  // p^(2^n) f_n <= alpha^(2^n) is f_n <= (2k)^(2^(n+1)) after dividing by p^(2^n).
  for (std::uint32_t k = 1; k <= 20; ++k) {
    const BoundParams pk(k, q("1/1000"));
    for (std::uint32_t n = 1; n <= 6; ++n) {
      const UnerasedBound b = unerased_prob_bound(pk, n);
      CHECK((b.sharper <= b.alpha_power) == tree_count_bound(k, n).closed_form_holds());
    }
  }
  const UnerasedBound k1 = unerased_prob_bound(BoundParams(1, q("1/1000")), 3);
  CHECK(k1.sharper > k1.alpha_power);
}

TEST_CASE("tail bound") {
  const TailBound zero = borel_cantelli_tail(BoundParams(12, 0), 1, 5);
  CHECK(zero.total() == 0);

  const BoundParams params(12, q("1/1000"));
  const TailBound t = borel_cantelli_tail(params, 1, 8);
  CHECK(t.partial > 0);
  CHECK(t.remainder < t.partial / 1000000);
  CHECK(t.ratio < 1);

  // the remainder really dominates the next terms
  mpq_class direct = 0;
  const mpq_class a = alpha(params);
  for (std::uint32_t n = 9; n <= 14; ++n) {
    mpz_class c;
    mpz_ui_pow_ui(c.get_mpz_t(), 51, n - 1);
    mpq_class ap = a;
    for (std::uint32_t i = 0; i < n; ++i) ap *= ap;
    direct += mpq_class(24 * c + 1) * ap;
  }
  CHECK(direct <= t.remainder);

  for (std::uint32_t m = 1; m <= 6; ++m) {
    CHECK(borel_cantelli_tail(params, m + 1, 8).total() <= borel_cantelli_tail(params, m, 8).total());
  }
  CHECK_THROWS_AS(borel_cantelli_tail(BoundParams(12, q("1/576")), 1, 3), Error);
  CHECK_THROWS_AS(borel_cantelli_tail(params, 0, 3), Error);
}

TEST_CASE("tail bound when the geometric phase starts late") {
  // alpha close to 1 needs many terms before (4k+3) alpha^(2^n) drops below 1
  const BoundParams params(1, q("99/400"));
  const TailBound t = borel_cantelli_tail(params, 1, 1);
  CHECK(t.majorant_start > 2);
  CHECK(t.ratio < 1);
  CHECK(t.total() > t.partial);
}

TEST_CASE("scientific rendering") {
  CHECK(to_scientific(q("576/1000")) == "5.76000e-01");
  CHECK(to_scientific(q("1/3"), 3) == "3.33e-01");
  CHECK(to_display(mpz_class(705024)) == "705024");
}

TEST_CASE("bounds table") {
  std::ostringstream out;
  write_bounds_table(out, BoundParams(12, q("1/1000")), 2, true);
  std::string header;
  std::istringstream in(out.str());
  std::getline(in, header);
  CHECK(header == "n,l_n,f_n,closed_form_bound,f_n_within_bound,alpha_pow,p_pow_f_n,tail_bound");
  std::string row1;
  std::getline(in, row1);
  CHECK(row1.rfind("1,1,24,331776,true,3.31776e-01,2.40000e-05,", 0) == 0);

  std::ostringstream div;
  write_bounds_table(div, BoundParams(12, q("1/576")), 2, true);
  CHECK(div.str().find("divergent") != std::string::npos);
}
