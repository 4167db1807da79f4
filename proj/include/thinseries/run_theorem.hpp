#ifndef THINSERIES_RUN_THEOREM_HPP
#define THINSERIES_RUN_THEOREM_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "thinseries/bigint.hpp"
#include "thinseries/error.hpp"
#include "thinseries/series.hpp"
#include "thinseries/size_set.hpp"
#include "thinseries/spec.hpp"

namespace thinseries {

struct Composition {
  std::vector<long> parts;

  long total() const {
    long n = 0;
    for (long p : parts) n += p;
    return n;
  }

  friend bool operator==(const Composition&, const Composition&) = default;
};

// Maximal increasing run lengths of a permutation, left to right.
inline Composition run_composition(const std::vector<int>& sigma) {
  Composition out;
  long run = sigma.empty() ? 0 : 1;
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    if (sigma[i] > sigma[i - 1]) {
      ++run;
    } else {
      out.parts.push_back(run);
      run = 1;
    }
  }
  if (run > 0) out.parts.push_back(run);
  return out;
}

namespace detail {

// gamma_j = number of permutations of the first s_j elements whose descent
// set is exactly {s_1, ..., s_{j-1}}; computed by the O(k^2) alternating
// recurrence gamma_j = sum_{i<j} (-1)^{j-1-i} C(s_j, s_i) gamma_i.
inline Int beta_descent_dp(const std::vector<long>& parts) {
  std::vector<long> s{0};
  for (long p : parts) s.push_back(s.back() + p);
  const std::size_t k = parts.size();
  std::vector<Int> gamma(k + 1);
  gamma[0] = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    Int acc = 0;
    for (std::size_t i = 0; i < j; ++i) {
      Int c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(s[j]),
                   static_cast<unsigned long>(s[i]));
      if ((j - 1 - i) % 2 == 0)
        mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), gamma[i].get_mpz_t());
      else
        mpz_submul(acc.get_mpz_t(), c.get_mpz_t(), gamma[i].get_mpz_t());
    }
    gamma[j] = acc;
  }
  return gamma[k];
}

// Inclusion-exclusion over the 2^(k-1) coarsenings (merge adjacent parts):
// beta(L) = sum_M (-1)^(len L - len M) multinomial(n; M).
inline Int beta_coarsening(const std::vector<long>& parts) {
  const std::size_t k = parts.size();
  if (k == 0) return 1;
  Int total = 0;
  const unsigned long masks = 1ul << (k - 1);
  std::vector<long> merged;
  for (unsigned long mask = 0; mask < masks; ++mask) {
    merged.clear();
    long cur = parts[0];
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (mask & (1ul << i)) {
        cur += parts[i + 1]; // cut removed: merge adjacent parts
      } else {
        merged.push_back(cur);
        cur = parts[i + 1];
      }
    }
    merged.push_back(cur);
    Int multinomial = 1;
    long consumed = 0;
    for (long part : merged) {
      consumed += part;
      Int c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(consumed),
                   static_cast<unsigned long>(part));
      multinomial *= c;
    }
    if ((k - merged.size()) % 2 == 0)
      total += multinomial;
    else
      total -= multinomial;
  }
  return total;
}

} // namespace detail

// beta(L): number of permutations with run composition exactly L.
inline Int beta(const Composition& L, std::size_t coarsening_limit = 20) {
  for (long p : L.parts)
    if (p < 1) throw Error("invalid_argument", "composition parts must be >= 1");
  if (L.parts.size() <= coarsening_limit)
    return detail::beta_coarsening(L.parts);
  return detail::beta_descent_dp(L.parts);
}

// Direct composition sum b_n = sum_{L |= n} w_L beta(L).
inline Int weighted_composition_sum(const std::vector<Int>& w, long n) {
  if (n == 0) return 1;
  Int total = 0;
  std::vector<long> parts;
  auto rec = [&](auto&& self, long remaining, const Int& weight) -> void {
    if (remaining == 0) {
      total += weight * beta(Composition{parts});
      return;
    }
    for (long p = 1; p <= remaining; ++p) {
      const Int& wp = w[static_cast<std::size_t>(p)];
      if (wp == 0) continue;
      parts.push_back(p);
      self(self, remaining - p, weight * wp);
      parts.pop_back();
    }
  };
  rec(rec, n, Int(1));
  return total;
}

// Equivalent descent-set DP for the same sum.  With V = W/(1+W) (so that
// v_m = w_m - sum_{j<m} v_j w_{m-j}), the run-weighted permutation sum
// satisfies b_n = sum_m C(n,m) v_m b_{n-m}.
inline Int weighted_perm_total_dp(const std::vector<Int>& w, long n) {
  std::vector<Int> v(static_cast<std::size_t>(n) + 1);
  for (long m = 1; m <= n; ++m) {
    Int acc = w[static_cast<std::size_t>(m)];
    for (long j = 1; j < m; ++j)
      mpz_submul(acc.get_mpz_t(), v[static_cast<std::size_t>(j)].get_mpz_t(),
                 w[static_cast<std::size_t>(m - j)].get_mpz_t());
    v[static_cast<std::size_t>(m)] = acc;
  }
  std::vector<Int> bseq(static_cast<std::size_t>(n) + 1);
  bseq[0] = 1;
  PascalRow row;
  for (long t = 1; t <= n; ++t) {
    row.advance();
    Int acc = 0;
    for (long m = 1; m <= t; ++m) {
      if (v[static_cast<std::size_t>(m)] == 0) continue;
      Int term = row.choose(m) * v[static_cast<std::size_t>(m)];
      mpz_addmul(acc.get_mpz_t(), term.get_mpz_t(),
                 bseq[static_cast<std::size_t>(t - m)].get_mpz_t());
    }
    bseq[static_cast<std::size_t>(t)] = acc;
  }
  return bseq[static_cast<std::size_t>(n)];
}

struct RunTheoremResult {
  CoeffSeq w; // ogf reciprocal of g(x) = 1 - sum_A x^a + sum_B x^b
  CoeffSeq b; // egf coefficients b_n = sum_{L |= n} w_L beta(L)
  bool w_all_nonneg = true;
  std::optional<long> first_negative_w;
};

// The run-theorem pipeline: w from the ordinary reciprocal, then b_n by the
// direct composition sum up to `direct_cap` and by the descent-set DP beyond.
// Negative w_n values are reported, not rejected.
inline RunTheoremResult run_theorem_coeffs(const ThinnedSpec& spec, long N,
                                           long direct_cap = 12) {
  RunTheoremResult out;
  out.w = ogf_reciprocal(thinned_ogf(spec, N), N);
  for (long n = 0; n <= N; ++n) {
    if (out.w[n] < 0) {
      out.w_all_nonneg = false;
      out.first_negative_w = n;
      break;
    }
  }
  out.b.kind = Kind::egf;
  out.b.values.reserve(static_cast<std::size_t>(N) + 1);
  for (long n = 0; n <= N; ++n) {
    if (n <= direct_cap)
      out.b.values.push_back(weighted_composition_sum(out.w.values, n));
    else
      out.b.values.push_back(weighted_perm_total_dp(out.w.values, n));
  }
  return out;
}

struct StructuredS {
  SizeSet S;
  std::vector<long> first_block_extras; // b, 2b, ..., (r-1)b
};

// Composition-count construction behind the run-theorem weights: for an
// odd-ended spec with b in A, w_n equals the number of compositions of n
// with all parts in S, where the first part may additionally come from
// {b, ..., (r-1)b}.  S collects, per maximal interval, the bounded top's
// successor value and (for later intervals) the bottom value shifted by
// 0..r-2 group sizes.  Valid for n up to the horizon.
inline StructuredS structured_S(const ThinnedSpec& spec, long horizon) {
  if (!spec.b_in_A())
    throw Error("invalid_spec", "construction needs b in A");
  if (!is_odd_ended(spec, horizon + spec.r() * spec.b()))
    throw Error("not_odd_ended", "construction needs an odd-ended spec");

  const long b = spec.b();
  const long r = spec.r();
  IntervalDecomp decomp = maximal_intervals(spec, horizon);
  std::vector<long> values;
  for (std::size_t k = 0; k < decomp.intervals.size(); ++k) {
    const Interval& iv = decomp.intervals[k];
    if (k == 0 && iv.bottom != b)
      throw Error("invalid_spec", "construction needs b in A");
    if (k >= 1)
      for (long j = 0; j <= r - 2; ++j) values.push_back(iv.bottom + j * b);
    if (!iv.unbounded && !iv.truncated)
      values.push_back(iv.top + (r - 1) * b);
  }
  StructuredS out{SizeSet(std::move(values)), {}};
  for (long j = 1; j <= r - 1; ++j) out.first_block_extras.push_back(j * b);
  return out;
}

// Number of compositions of n with parts in S, the first part optionally
// drawn from `extras` instead.
inline Int structured_composition_count(long n, const StructuredS& s) {
  if (n < 0) return 0;
  std::vector<long> parts = s.S.enumerate(n);
  std::vector<Int> dp(static_cast<std::size_t>(n) + 1);
  dp[0] = 1;
  for (long t = 1; t <= n; ++t) {
    Int acc = 0;
    for (long p : parts) {
      if (p > t) break;
      acc += dp[static_cast<std::size_t>(t - p)];
    }
    dp[static_cast<std::size_t>(t)] = acc;
  }
  Int total = dp[static_cast<std::size_t>(n)];
  for (long e : s.first_block_extras)
    if (e <= n) total += dp[static_cast<std::size_t>(n - e)];
  return total;
}

} // namespace thinseries

#endif
