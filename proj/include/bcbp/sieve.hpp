#pragma once

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bcbp/arithmetic.hpp"

namespace bcbp {

/// Thrown when a computation contradicts a proved statement.  Must never
/// fire on valid inputs; it exists so violations abort loudly instead of
/// producing silent garbage.
struct TheoremViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Trit vector over the folded variables x_0..x_m.  When the solution flag
/// applies it satisfies sum_i entries[i]*C(n,i) = rhs_constant(n).
struct FoldedVector {
  int n = 0;
  std::vector<int8_t> entries;

  bool operator==(const FoldedVector&) const = default;
  auto operator<=>(const FoldedVector&) const = default;

  int zero_count() const {
    return static_cast<int>(std::count(entries.begin(), entries.end(), 0));
  }
  FoldedVector negated() const {
    FoldedVector r{n, entries};
    for (auto& e : r.entries) e = static_cast<int8_t>(-e);
    return r;
  }
};

/// Full +-1 vector of length n+1; a solution when sum_k entries[k]*C(n,k) = 0.
struct SignVector {
  int n = 0;
  std::vector<int8_t> entries;

  bool operator==(const SignVector&) const = default;
  auto operator<=>(const SignVector&) const = default;

  SignVector negated() const {
    SignVector r{n, entries};
    for (auto& e : r.entries) e = static_cast<int8_t>(-e);
    return r;
  }
};

inline Int rhs_constant(int n) {
  if (n < 1) throw std::invalid_argument("rhs_constant: n must be >= 1");
  if (n % 2 == 1) return 0;
  Int central;
  mpz_bin_uiui(central.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(n / 2));
  Int half = central / 2;
  return (n / 2 + 1) % 2 == 0 ? half : -half;
}

/// Trivial folded solution: alternating for even n, all zero for odd n.
inline FoldedVector trivial_folded(int n) {
  FoldedVector t{n, std::vector<int8_t>(static_cast<size_t>(folded_length(n)), 0)};
  if (n % 2 == 0)
    for (size_t i = 0; i < t.entries.size(); ++i)
      t.entries[i] = static_cast<int8_t>(i % 2 == 0 ? 1 : -1);
  return t;
}

inline bool verify_folded(const FoldedVector& v, const PascalRow& row) {
  Int sum = 0;
  for (size_t i = 0; i < v.entries.size(); ++i)
    if (v.entries[i] == 1)
      sum += row[static_cast<int>(i)];
    else if (v.entries[i] == -1)
      sum -= row[static_cast<int>(i)];
  return sum == rhs_constant(v.n);
}

inline bool verify_folded(const FoldedVector& v) {
  return verify_folded(v, binomial_row(v.n));
}

inline bool verify_full(const SignVector& v, const PascalRow& row) {
  Int sum = 0;
  for (size_t k = 0; k < v.entries.size(); ++k)
    if (v.entries[k] == 1)
      sum += row[static_cast<int>(k)];
    else
      sum -= row[static_cast<int>(k)];
  return sum == 0;
}

inline bool verify_full(const SignVector& v) { return verify_full(v, binomial_row(v.n)); }

struct SolveLimits {
  size_t max_frontier = 50'000'000;
  unsigned threads = 1;
};

struct FrontierLimitError : std::runtime_error {
  int step_index;
  std::vector<size_t> profile_so_far;

  FrontierLimitError(int step, std::vector<size_t> profile)
      : std::runtime_error("frontier limit exceeded at chain step " +
                           std::to_string(step)),
        step_index(step),
        profile_so_far(std::move(profile)) {}
};

struct SolveReport {
  int n = 0;
  long j_hat = 0;    // nontrivial count, odd n up to global negation
  long j_tilde = 0;  // nontrivial count before odd-n halving
  Int j_full = 0;    // J_n, filled in by analysis (0 until then)
  std::vector<FoldedVector> solutions;  // canonical nontrivial, lex order
  std::vector<size_t> step_profile;     // frontier size after each congruence step
  ModulusChain chain;
  double elapsed_seconds = 0.0;
};

namespace detail {

struct Partial {
  std::vector<int8_t> values;
  Int residue;  // exact partial sum over assigned variables
};

// Extends one partial over variables [from, to) and keeps assignments whose
// residue matches rhs modulo d.  Extension order -1 < 0 < 1 preserves the
// frontier's lexicographic order.
inline void extend_partial(const Partial& p, const PascalRow& row, int from, int to,
                           const Int& modulus, const Int& rhs, std::vector<Partial>& out) {
  struct Rec {
    const PascalRow& row;
    int to;
    const Int& modulus;
    const Int& rhs;
    std::vector<Partial>& out;
    std::vector<int8_t> values;

    void go(int j, const Int& residue) {
      if (j == to) {
        Int rem = residue - rhs;
        if (mpz_divisible_p(rem.get_mpz_t(), modulus.get_mpz_t())) {
          out.push_back(Partial{values, residue});
        }
        return;
      }
      for (int trit = -1; trit <= 1; ++trit) {
        values.push_back(static_cast<int8_t>(trit));
        if (trit == 0)
          go(j + 1, residue);
        else {
          Int next = residue;
          if (trit > 0)
            next += row[j];
          else
            next -= row[j];
          go(j + 1, next);
        }
        values.pop_back();
      }
    }
  };
  Rec rec{row, to, modulus, rhs, out, p.values};
  rec.go(from, p.residue);
}

}  // namespace detail

/// Progressive congruence sieve over the gcd modulus chain.  Enumerates all
/// folded solutions (including the trivial one) and reports the nontrivial
/// ones, canonicalized for odd n.
inline SolveReport solve_folded(int n, const SolveLimits& limits = {}) {
  if (n < 1) throw std::invalid_argument("solve_folded: n must be >= 1");
  if (limits.max_frontier < 1)
    throw std::invalid_argument("solve_folded: max_frontier must be >= 1");
  const auto t_start = std::chrono::steady_clock::now();

  SolveReport report;
  report.n = n;
  report.chain = gcd_chain(n);
  const PascalRow row = binomial_row(n);
  const Int rhs = rhs_constant(n);
  const int m = folded_length(n) - 1;

  // The final congruence is modulo 2^n; it implies exact equality only
  // because every reachable residue stays within one modulus width of rhs.
  {
    Int reach = 0;
    for (int j = 0; j <= m; ++j) reach += row[j];
    reach += abs(rhs);
    if (reach >= pow2(n))
      throw TheoremViolation("solve_folded: range bound for the final congruence fails");
  }

  std::vector<detail::Partial> frontier{detail::Partial{{}, Int(0)}};
  int prev_t = 0;
  for (size_t step = 0; step < report.chain.moduli.size(); ++step) {
    const Int& d = report.chain.moduli[step];
    const int t = report.chain.prefix_lengths[step];

    std::vector<detail::Partial> next;
    const unsigned threads =
        std::max(1u, std::min<unsigned>(limits.threads,
                                        static_cast<unsigned>(frontier.size())));
    if (threads == 1) {
      for (const auto& p : frontier) {
        detail::extend_partial(p, row, prev_t, t, d, rhs, next);
        if (next.size() > limits.max_frontier)
          throw FrontierLimitError(static_cast<int>(step), report.step_profile);
      }
    } else {
      // Contiguous chunks merged in chunk order keep the result identical
      // to the single-threaded run.
      std::vector<std::vector<detail::Partial>> parts(threads);
      std::vector<std::thread> pool;
      const size_t chunk = (frontier.size() + threads - 1) / threads;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          const size_t lo = w * chunk;
          const size_t hi = std::min(frontier.size(), lo + chunk);
          for (size_t i = lo; i < hi; ++i)
            detail::extend_partial(frontier[i], row, prev_t, t, d, rhs, parts[w]);
        });
      }
      for (auto& th : pool) th.join();
      for (auto& part : parts) {
        next.insert(next.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
        if (next.size() > limits.max_frontier)
          throw FrontierLimitError(static_cast<int>(step), report.step_profile);
      }
    }
    frontier = std::move(next);
    report.step_profile.push_back(frontier.size());
    prev_t = t;
  }

  // After the 2^n step the congruence is an equality; check it outright.
  const FoldedVector trivial = trivial_folded(n);
  std::vector<FoldedVector> nontrivial;
  for (const auto& p : frontier) {
    if (p.residue != rhs)
      throw TheoremViolation("solve_folded: final congruence did not force equality");
    FoldedVector v{n, p.values};
    if (!verify_folded(v, row))
      throw TheoremViolation("solve_folded: emitted vector fails re-verification");
    if (v != trivial) nontrivial.push_back(std::move(v));
  }

  report.j_tilde = static_cast<long>(nontrivial.size());
  if (n % 2 == 1) {
    if (report.j_tilde % 2 != 0)
      throw TheoremViolation("solve_folded: odd-n nontrivial count must be even");
    report.j_hat = report.j_tilde / 2;
    // Keep one representative per +- pair: first nonzero entry is +1.
    for (auto& v : nontrivial) {
      for (int8_t e : v.entries) {
        if (e != 0) {
          if (e == 1) report.solutions.push_back(std::move(v));
          break;
        }
      }
    }
    std::sort(report.solutions.begin(), report.solutions.end());
  } else {
    report.j_hat = report.j_tilde;
    report.solutions = std::move(nontrivial);
  }
  if (static_cast<long>(report.solutions.size()) != report.j_hat)
    throw TheoremViolation("solve_folded: canonical solution count mismatch");
  if (!std::is_sorted(report.solutions.begin(), report.solutions.end()))
    throw TheoremViolation("solve_folded: output must be lexicographically sorted");

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

/// Exhaustive enumeration of {-1,0,1}^(m+1); includes the trivial solution.
inline std::vector<FoldedVector> brute_force_folded(int n, long cap = 200'000'000) {
  if (n < 1) throw std::invalid_argument("brute_force_folded: n must be >= 1");
  const int vars = folded_length(n);
  long total = 1;
  for (int i = 0; i < vars; ++i) {
    if (total > cap / 3) throw std::invalid_argument("brute_force_folded: 3^vars exceeds cap");
    total *= 3;
  }
  const PascalRow row = binomial_row(n);
  const Int rhs = rhs_constant(n);

  std::vector<FoldedVector> out;
  std::vector<int8_t> values;
  values.reserve(static_cast<size_t>(vars));
  Int sum = 0;
  auto rec = [&](auto&& self, int j) -> void {
    if (j == vars) {
      if (sum == rhs) out.push_back(FoldedVector{n, values});
      return;
    }
    for (int trit = -1; trit <= 1; ++trit) {
      values.push_back(static_cast<int8_t>(trit));
      if (trit != 0) sum += trit > 0 ? row[j] : -row[j];
      self(self, j + 1);
      if (trit != 0) sum -= trit > 0 ? row[j] : -row[j];
      values.pop_back();
    }
  };
  rec(rec, 0);
  return out;  // lexicographic by construction
}

/// All full +-1 solutions of the bisection equation, by 2^(n+1) enumeration.
inline std::vector<SignVector> brute_force_full(int n) {
  if (n < 0 || n > 20)
    throw std::invalid_argument("brute_force_full: n must be in [0, 20]");
  const PascalRow row = binomial_row(n);
  std::vector<SignVector> out;
  std::vector<int8_t> values;
  Int sum = 0;
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n + 1) {
      if (sum == 0) out.push_back(SignVector{n, values});
      return;
    }
    for (int sign = -1; sign <= 1; sign += 2) {
      values.push_back(static_cast<int8_t>(sign));
      sum += sign > 0 ? row[k] : -row[k];
      self(self, k + 1);
      sum -= sign > 0 ? row[k] : -row[k];
      values.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace bcbp
