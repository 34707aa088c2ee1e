#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bcbp {

using Int = mpz_class;
using Rat = mpq_class;

/// One row of Pascal's triangle, exact.
struct PascalRow {
  int n = 0;
  std::vector<Int> coefficients;  // C(n,0)..C(n,n)

  const Int& operator[](int k) const { return coefficients[static_cast<size_t>(k)]; }
};

inline PascalRow binomial_row(int n) {
  if (n < 0) throw std::invalid_argument("binomial_row: n must be nonnegative");
  PascalRow row;
  row.n = n;
  row.coefficients.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    mpz_bin_uiui(row.coefficients[static_cast<size_t>(k)].get_mpz_t(),
                 static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return row;
}

inline Int pow2(int n) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return r;
}

inline bool is_perfect_square(const Int& v) {
  return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& v) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

/// Number of folded variables is folded_length(n) = m + 1 where
/// m = n/2 - 1 for even n and m = (n-1)/2 for odd n.
inline int folded_length(int n) { return n % 2 == 0 ? n / 2 : (n + 1) / 2; }

/// Strictly increasing modulus list d_1 < ... < d_r (d_r = 2^n) together
/// with the active-prefix length at each modulus.  At modulus d_i every
/// variable with index >= prefix_lengths[i] has its coefficient divisible
/// by d_i, so only the prefix matters for the congruence at that step.
struct ModulusChain {
  int n = 0;
  std::vector<Int> moduli;
  std::vector<int> prefix_lengths;

  int variable_count() const { return folded_length(n); }
};

inline ModulusChain gcd_chain(int n) {
  if (n < 1) throw std::invalid_argument("gcd_chain: n must be >= 1");
  const PascalRow row = binomial_row(n);
  const int m = folded_length(n) - 1;
  const int top = n / 2;

  // Tail gcds D_i = gcd{C(n,j) : j = i..top}, nondecreasing in i.
  std::vector<Int> tail_gcd(static_cast<size_t>(top) + 1);
  Int g = 0;
  for (int i = top; i >= 0; --i) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[i].get_mpz_t());
    tail_gcd[static_cast<size_t>(i)] = g;
  }

  ModulusChain chain;
  chain.n = n;
  for (int i = 1; i <= top; ++i) {
    const Int& d = tail_gcd[static_cast<size_t>(i)];
    if (d == 1) continue;  // a unit modulus filters nothing
    if (chain.moduli.empty() || d != chain.moduli.back()) chain.moduli.push_back(d);
  }
  const Int full = pow2(n);
  if (chain.moduli.empty() || chain.moduli.back() != full) chain.moduli.push_back(full);

  chain.prefix_lengths.resize(chain.moduli.size());
  for (size_t i = 0; i + 1 < chain.moduli.size(); ++i) {
    // Smallest t such that d divides C(n,j) for every variable index j >= t.
    int t = m + 1;
    while (t > 0 && mpz_divisible_p(row[t - 1].get_mpz_t(), chain.moduli[i].get_mpz_t()))
      --t;
    chain.prefix_lengths[i] = t;
  }
  chain.prefix_lengths.back() = m + 1;
  return chain;
}

/// Degree of the unique polynomial interpolating `values` on {0,1,...};
/// -1 for identically zero data.
template <typename T>
int finite_difference_degree(std::vector<T> values) {
  if (values.empty())
    throw std::invalid_argument("finite_difference_degree: empty input");
  int degree = -1;
  for (int level = 0; !values.empty(); ++level) {
    for (const T& v : values)
      if (v != 0) {
        degree = level;
        break;
      }
    for (size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
  }
  return degree;
}

/// Dense polynomial with exact rational coefficients, index = power.
/// Trailing zeros are stripped; the zero polynomial stores nothing.
struct RationalPolynomial {
  std::vector<Rat> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }

  Rat evaluate(const Rat& x) const {
    Rat acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

  void normalize() {
    while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
  }
};

/// Exact interpolation on nodes 0..len-1 via the Newton forward form
/// P(x) = sum_k D^k f(0) * binom(x, k).
inline RationalPolynomial lagrange_coefficients(const std::vector<Int>& values) {
  if (values.empty())
    throw std::invalid_argument("lagrange_coefficients: empty input");
  std::vector<Int> diffs(values);  // successive forward differences in place
  RationalPolynomial poly;
  poly.coefficients.assign(values.size(), Rat(0));

  std::vector<Rat> basis{Rat(1)};  // binom(x, k) * k!, grown incrementally
  Int k_factorial = 1;
  for (size_t k = 0; k < values.size(); ++k) {
    if (diffs[0] != 0) {
      Rat lead(diffs[0], k_factorial);
      lead.canonicalize();
      for (size_t i = 0; i < basis.size(); ++i) poly.coefficients[i] += lead * basis[i];
    }
    // basis *= (x - k); factorial tracks k!.
    basis.push_back(0);
    for (size_t i = basis.size() - 1; i > 0; --i)
      basis[i] = basis[i - 1] - Rat(static_cast<long>(k)) * basis[i];
    basis[0] = -Rat(static_cast<long>(k)) * basis[0];
    k_factorial *= static_cast<long>(k + 1);

    for (size_t i = 0; i + 1 < diffs.size() - k; ++i) diffs[i] = diffs[i + 1] - diffs[i];
  }
  poly.normalize();
  return poly;
}

}  // namespace bcbp
