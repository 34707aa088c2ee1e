#include <random>

#include <catch_amalgamated.hpp>

#include "bcbp/arithmetic.hpp"

using namespace bcbp;

TEST_CASE("binomial_row small rows") {
  const PascalRow r4 = binomial_row(4);
  REQUIRE(r4.coefficients == std::vector<Int>{1, 4, 6, 4, 1});

  const PascalRow r14 = binomial_row(14);
  CHECK(r14[7] == 3432);

  const PascalRow r19 = binomial_row(19);
  const std::vector<Int> expected_head{1,     19,    171,   969,   3876,
                                       11628, 27132, 50388, 75582, 92378};
  for (int k = 0; k < 10; ++k) CHECK(r19[k] == expected_head[static_cast<size_t>(k)]);

  CHECK_THROWS_AS(binomial_row(-1), std::invalid_argument);
}

TEST_CASE("pascal row invariants up to n=200") {
  PascalRow prev = binomial_row(0);
  for (int n = 1; n <= 200; ++n) {
    const PascalRow row = binomial_row(n);
    Int sum = 0;
    for (int k = 0; k <= n; ++k) {
      CHECK(row[k] == row[n - k]);
      sum += row[k];
      if (k >= 1 && k <= n - 1) CHECK(row[k] == prev[k - 1] + prev[k]);
    }
    CHECK(row[0] == 1);
    CHECK(sum == pow2(n));
    prev = row;
  }
}

TEST_CASE("gcd_chain n=19 matches the worked example") {
  const ModulusChain chain = gcd_chain(19);
  REQUIRE(chain.moduli == std::vector<Int>{19, 323, 646, 8398, 92378, 524288});
  CHECK(chain.prefix_lengths[0] == 1);  // only x_0 live mod 19
  CHECK(chain.prefix_lengths[1] == 3);  // x_0..x_2 live mod 323
  CHECK(chain.prefix_lengths.back() == 10);
  CHECK(chain.variable_count() == 10);
}

TEST_CASE("gcd_chain n=4") {
  const ModulusChain chain = gcd_chain(4);
  REQUIRE(chain.moduli == std::vector<Int>{2, 6, 16});
  CHECK(chain.prefix_lengths.back() == 2);
  CHECK_THROWS_AS(gcd_chain(0), std::invalid_argument);
}

TEST_CASE("gcd_chain invariants up to n=200") {
  for (int n = 1; n <= 200; ++n) {
    const ModulusChain chain = gcd_chain(n);
    const PascalRow row = binomial_row(n);
    const int m = folded_length(n) - 1;
    REQUIRE(chain.moduli.back() == pow2(n));
    REQUIRE(chain.prefix_lengths.back() == m + 1);
    for (size_t i = 0; i + 1 < chain.moduli.size(); ++i) {
      CHECK(chain.moduli[i] < chain.moduli[i + 1]);
      // gcd-chain divisibility among the gcd part (the appended 2^n is exempt)
      if (i + 2 < chain.moduli.size())
        CHECK(mpz_divisible_p(chain.moduli[i + 1].get_mpz_t(), chain.moduli[i].get_mpz_t()));
      const int t = chain.prefix_lengths[i];
      CHECK(t >= 0);
      if (i > 0) CHECK(t >= chain.prefix_lengths[i - 1]);
      for (int j = t; j <= m; ++j)
        CHECK(mpz_divisible_p(row[j].get_mpz_t(), chain.moduli[i].get_mpz_t()));
      if (t >= 1)
        CHECK_FALSE(mpz_divisible_p(row[t - 1].get_mpz_t(), chain.moduli[i].get_mpz_t()));
    }
  }
}

TEST_CASE("finite_difference_degree") {
  CHECK(finite_difference_degree(std::vector<Int>{1, 1, 1}) == 0);
  CHECK(finite_difference_degree(std::vector<Int>{0, 1, 4, 9}) == 2);
  CHECK(finite_difference_degree(std::vector<Int>{1, 1, -1, -1, 1, 1, -1, 1, 1}) == 7);
  CHECK(finite_difference_degree(std::vector<Int>{0, 0, 0}) == -1);
  CHECK(finite_difference_degree(std::vector<Rat>{Rat(1, 2), Rat(1, 2)}) == 0);
  CHECK_THROWS_AS(finite_difference_degree(std::vector<Int>{}), std::invalid_argument);
}

namespace {

Rat q(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("lagrange_coefficients reproduces the degree-7 polynomial") {
  const auto poly = lagrange_coefficients({1, 1, -1, -1, 1, 1, -1, 1, 1});
  const std::vector<Rat> expected{q(1, 1),   q(0, 1),   q(28, 9),  q(-481, 90),
                                  q(203, 72), q(-47, 72), q(5, 72), q(-1, 360)};
  REQUIRE(poly.coefficients == expected);
  CHECK(poly.degree() == 7);
}

TEST_CASE("lagrange_coefficients trivial data") {
  const auto constant = lagrange_coefficients({5, 5, 5});
  REQUIRE(constant.coefficients == std::vector<Rat>{Rat(5)});

  const auto identity = lagrange_coefficients({0, 1, 2, 3});
  REQUIRE(identity.coefficients == std::vector<Rat>{Rat(0), Rat(1)});

  const auto zero = lagrange_coefficients({0, 0});
  CHECK(zero.degree() == -1);

  CHECK_THROWS_AS(lagrange_coefficients({}), std::invalid_argument);
}

TEST_CASE("interpolation degree agrees with finite differences on random data") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> len_dist(1, 12);
  std::uniform_int_distribution<int> val_dist(-30, 30);
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = len_dist(rng);
    std::vector<Int> values;
    for (int i = 0; i < len; ++i) values.emplace_back(val_dist(rng));
    const auto poly = lagrange_coefficients(values);
    CHECK(poly.degree() == finite_difference_degree(values));
    for (int x = 0; x < len; ++x)
      CHECK(poly.evaluate(Rat(x)) == Rat(values[static_cast<size_t>(x)]));
  }
}
