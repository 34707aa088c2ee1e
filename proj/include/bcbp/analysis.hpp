#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcbp/arithmetic.hpp"
#include "bcbp/sieve.hpp"

namespace bcbp {

// ---------------------------------------------------------------------------
// Folded <-> full expansion (Proposition 1 machinery)
// ---------------------------------------------------------------------------

/// Expands one folded solution into the full +-1 solutions it encodes.
/// Every zero entry branches two ways, so the result has 2^(zero count)
/// vectors.  Negations of the results are NOT included.
inline std::vector<SignVector> expand_folded(const FoldedVector& folded) {
  const PascalRow row = binomial_row(folded.n);
  if (!verify_folded(folded, row))
    throw std::invalid_argument("expand_folded: input is not a folded solution");
  const int n = folded.n;
  const int half = n % 2 == 0 ? n / 2 - 1 : (n - 1) / 2;

  std::vector<SignVector> out;
  SignVector w{n, std::vector<int8_t>(static_cast<size_t>(n) + 1, 0)};
  if (n % 2 == 0) w.entries[static_cast<size_t>(n / 2)] = (n / 2) % 2 == 0 ? 1 : -1;

  auto rec = [&](auto&& self, int i) -> void {
    if (i > half) {
      out.push_back(w);
      return;
    }
    const int8_t e = folded.entries[static_cast<size_t>(i)];
    if (e != 0) {
      w.entries[static_cast<size_t>(i)] = e;
      w.entries[static_cast<size_t>(n - i)] = e;
      self(self, i + 1);
    } else {
      for (int first : {-1, 1}) {
        w.entries[static_cast<size_t>(i)] = static_cast<int8_t>(first);
        w.entries[static_cast<size_t>(n - i)] = static_cast<int8_t>(-first);
        self(self, i + 1);
      }
    }
  };
  rec(rec, 0);

  for (const auto& v : out)
    if (!verify_full(v, row))
      throw TheoremViolation("expand_folded: expansion fails the bisection equation");
  std::sort(out.begin(), out.end());
  return out;
}

/// J_n from the canonical nontrivial solutions:
/// even n: 2 + 2 * sum 2^zeros; odd n: 2^((n+1)/2) + 2 * sum 2^zeros.
inline Int compute_Jn(const SolveReport& report) {
  Int total = report.n % 2 == 0 ? Int(2) : pow2((report.n + 1) / 2);
  for (const auto& s : report.solutions) total += 2 * pow2(s.zero_count());
  return total;
}

/// Every full +-1 solution for row n, assembled from the folded solutions.
/// Feasible only while 2^((n+1)/2) stays desk-sized.
inline std::vector<SignVector> full_solution_set(const SolveReport& report) {
  const int n = report.n;
  if (n > 40)
    throw std::invalid_argument("full_solution_set: n > 40 not enumerable");
  std::vector<SignVector> out;
  for (const auto& w : expand_folded(trivial_folded(n))) out.push_back(w);
  std::vector<SignVector> from_nontrivial;
  for (const auto& s : report.solutions)
    for (const auto& w : expand_folded(s)) from_nontrivial.push_back(w);
  // Expansions pin the middle entry (even n) or the canonical sign (odd n);
  // global negation supplies the other half.  The odd-n trivial expansion is
  // antisymmetric and already closed under negation.
  for (const auto& w : from_nontrivial) out.push_back(w.negated());
  if (n % 2 == 0) {
    const size_t trivial_count = out.size() - from_nontrivial.size();
    for (size_t i = 0; i < trivial_count; ++i) out.push_back(out[i].negated());
  }
  out.insert(out.end(), std::make_move_iterator(from_nontrivial.begin()),
             std::make_move_iterator(from_nontrivial.end()));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw TheoremViolation("full_solution_set: duplicate expansion");
  if (Int(static_cast<long>(out.size())) != compute_Jn(report))
    throw TheoremViolation("full_solution_set: size disagrees with the J_n formula");
  return out;
}

// ---------------------------------------------------------------------------
// Family classification
// ---------------------------------------------------------------------------

enum class FamilyTag { heart, sharp, spade, club, flat, dagger, a005383 };

inline const char* family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::heart: return "heart";
    case FamilyTag::sharp: return "sharp";
    case FamilyTag::spade: return "spade";
    case FamilyTag::club: return "club";
    case FamilyTag::flat: return "flat";
    case FamilyTag::dagger: return "dagger";
    case FamilyTag::a005383: return "a005383";
  }
  return "?";
}

inline const char* family_glyph(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::heart: return "♥";
    case FamilyTag::sharp: return "♯";
    case FamilyTag::spade: return "♠";
    case FamilyTag::club: return "♣";
    case FamilyTag::flat: return "♭";
    case FamilyTag::dagger: return "†";
    case FamilyTag::a005383: return "A005383";
  }
  return "?";
}

/// Deterministic trial-division primality; exact for all 64-bit inputs.
inline bool is_prime_u64(unsigned long long v) {
  if (v < 2) return false;
  for (unsigned long long p : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (v == p) return true;
    if (v % p == 0) return false;
  }
  for (unsigned long long f = 11; f * f <= v; f += 6) {
    if (v % f == 0 || v % (f + 2) == 0) return false;
  }
  return true;
}

inline bool is_heart(long n) { return n >= 8 && n % 6 == 2; }

inline bool is_sharp(long n) {  // n = 4k^2 - 3, k >= 2
  if ((n + 3) % 4 != 0) return false;
  const Int q = Int(n + 3) / 4;
  return q >= 4 && is_perfect_square(q);
}

inline bool is_spade(long n) {  // n = 4k^2 - 2, k >= 2
  if ((n + 2) % 4 != 0) return false;
  const Int q = Int(n + 2) / 4;
  return q >= 4 && is_perfect_square(q);
}

// The quadratic conditions also admit degenerate roots below the first
// published member (n=1 for both, plus even n for the 8n^2+1 family);
// those rows carry no nontrivial solution and are excluded.
inline bool is_club(long n) {
  if (n < 14) return false;
  const Int nn(n);
  return is_perfect_square(5 * nn * nn + 12 * nn + 8);
}

inline bool is_flat(long n) {
  if (n < 35 || n % 2 == 0) return false;
  const Int nn(n);
  return is_perfect_square(8 * nn * nn + 1);
}

inline bool is_dagger(long n) {  // n + 1 an odd prime
  return n >= 2 && is_prime_u64(static_cast<unsigned long long>(n) + 1);
}

inline bool is_a005383(long n) {  // n and (n+1)/2 both prime
  return n % 2 == 1 && is_prime_u64(static_cast<unsigned long long>(n)) &&
         is_prime_u64(static_cast<unsigned long long>((n + 1) / 2));
}

inline std::set<FamilyTag> classify_families(long n) {
  if (n < 1) throw std::invalid_argument("classify_families: n must be >= 1");
  std::set<FamilyTag> tags;
  if (is_heart(n)) tags.insert(FamilyTag::heart);
  if (is_sharp(n)) tags.insert(FamilyTag::sharp);
  if (is_spade(n)) tags.insert(FamilyTag::spade);
  if (is_club(n)) tags.insert(FamilyTag::club);
  if (is_flat(n)) tags.insert(FamilyTag::flat);
  if (is_dagger(n)) tags.insert(FamilyTag::dagger);
  if (is_a005383(n)) tags.insert(FamilyTag::a005383);
  return tags;
}

/// Ascending members of a square-condition family up to `bound`, by direct
/// scan with exact square tests.
inline std::vector<long> pell_members(FamilyTag tag, long bound) {
  if (bound < 1) throw std::invalid_argument("pell_members: bound must be >= 1");
  bool (*pred)(long) = nullptr;
  switch (tag) {
    case FamilyTag::sharp: pred = is_sharp; break;
    case FamilyTag::spade: pred = is_spade; break;
    case FamilyTag::club: pred = is_club; break;
    case FamilyTag::flat: pred = is_flat; break;
    default:
      throw std::invalid_argument("pell_members: tag has no square condition");
  }
  std::vector<long> out;
  for (long n = 1; n <= bound; ++n)
    if (pred(n)) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Identities and witnesses
// ---------------------------------------------------------------------------

/// sum_{j=0..l} (-1)^j C(n,j) == (-1)^l C(n-1,l), checked exactly.
inline bool check_identity_alt_sum(int n, int l) {
  if (n < 1 || l < 0 || l > n - 1)
    throw std::invalid_argument("check_identity_alt_sum: need 0 <= l <= n-1");
  const PascalRow row = binomial_row(n);
  Int lhs = 0;
  for (int j = 0; j <= l; ++j) lhs += j % 2 == 0 ? row[j] : -row[j];
  Int rhs;
  mpz_bin_uiui(rhs.get_mpz_t(), static_cast<unsigned long>(n - 1),
               static_cast<unsigned long>(l));
  if (l % 2 == 1) rhs = -rhs;
  return lhs == rhs;
}

/// The nontrivial solution that exists for every n = 6k + 2: alternating
/// signs up to index 2k-1, then -1, 0, and alternating signs again.
inline FoldedVector heart_witness(int k) {
  if (k < 1) throw std::invalid_argument("heart_witness: k must be >= 1");
  const int n = 6 * k + 2;
  FoldedVector v{n, std::vector<int8_t>(static_cast<size_t>(folded_length(n)), 0)};
  for (int j = 0; j <= 2 * k - 1; ++j)
    v.entries[static_cast<size_t>(j)] = static_cast<int8_t>(j % 2 == 0 ? 1 : -1);
  v.entries[static_cast<size_t>(2 * k)] = -1;
  v.entries[static_cast<size_t>(2 * k + 1)] = 0;
  for (int j = 2 * k + 2; j <= 3 * k; ++j)
    v.entries[static_cast<size_t>(j)] = static_cast<int8_t>(j % 2 == 0 ? 1 : -1);
  if (!verify_folded(v))
    throw TheoremViolation("heart_witness: identity failed for k=" + std::to_string(k));
  return v;
}

/// The nontrivial solution for n = 4k^2 - 3: a +1,-1,-1,+1 block ending at
/// index s = 2k^2 - k, zero elsewhere.
inline FoldedVector sharp_witness(int k) {
  if (k < 2) throw std::invalid_argument("sharp_witness: k must be >= 2");
  const int n = 4 * k * k - 3;
  const int s = 2 * k * k - k;
  FoldedVector v{n, std::vector<int8_t>(static_cast<size_t>(folded_length(n)), 0)};
  v.entries[static_cast<size_t>(s - 3)] = 1;
  v.entries[static_cast<size_t>(s - 2)] = -1;
  v.entries[static_cast<size_t>(s - 1)] = -1;
  v.entries[static_cast<size_t>(s)] = 1;
  if (!verify_folded(v))
    throw TheoremViolation("sharp_witness: identity failed for k=" + std::to_string(k));
  return v;
}

// ---------------------------------------------------------------------------
// Balance property (n and (n+1)/2 both prime)
// ---------------------------------------------------------------------------

struct BalanceRecord {
  int n = 0;
  std::vector<int8_t> eta;  // eta_j = (-1)^j (d_j + d_{n-j}) / 2
  int plus_count = 0;
  int minus_count = 0;
};

inline BalanceRecord check_balance(int n, const SignVector& full, const PascalRow& row) {
  if (n % 2 != 1) throw std::invalid_argument("check_balance: n must be odd");
  if (full.n != n || !verify_full(full, row))
    throw std::invalid_argument("check_balance: input is not a verified solution");
  BalanceRecord rec;
  rec.n = n;
  for (int j = 0; j <= (n - 1) / 2; ++j) {
    int folded = (full.entries[static_cast<size_t>(j)] +
                  full.entries[static_cast<size_t>(n - j)]) / 2;
    if (j % 2 == 1) folded = -folded;
    rec.eta.push_back(static_cast<int8_t>(folded));
    if (folded == 1) ++rec.plus_count;
    if (folded == -1) ++rec.minus_count;
  }
  if (is_a005383(n)) {
    if (rec.plus_count != rec.minus_count || rec.eta[0] != 0)
      throw TheoremViolation("check_balance: balance property violated at n=" +
                             std::to_string(n));
  }
  return rec;
}

inline BalanceRecord check_balance(int n, const SignVector& full) {
  return check_balance(n, full, binomial_row(n));
}

/// #{k <= N : j_hat(k) = 0} / N as an exact rational.  `j_hats[i]` is the
/// count for n = i + 1.
inline Rat density_stat(const std::vector<long>& j_hats) {
  if (j_hats.empty()) throw std::invalid_argument("density_stat: no reports");
  long zeros = static_cast<long>(std::count(j_hats.begin(), j_hats.end(), 0L));
  Rat r(zeros, static_cast<long>(j_hats.size()));
  r.canonicalize();
  return r;
}

}  // namespace bcbp
