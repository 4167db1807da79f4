#ifndef THINSERIES_WEIGHTS_HPP
#define THINSERIES_WEIGHTS_HPP

#include <algorithm>
#include <vector>

#include "thinseries/bigint.hpp"
#include "thinseries/error.hpp"
#include "thinseries/involution.hpp"
#include "thinseries/spec.hpp"

namespace thinseries {

// w_ell = number of good ordered set partitions of an increasing run of ell
// elements.  Computed by a right-to-left DP over block-size sequences whose
// state is the count of trailing single chunks not yet absorbed into a
// freeze-skip tuple -- the same automaton as the structural goodness check,
// here run over all size compositions at once.  Odd-ended specs only.
inline Int weight_ell(long ell, const ThinnedSpec& spec) {
  if (ell < 0) throw Error("invalid_argument", "run length must be >= 0");
  const long b = spec.b();
  const long r = spec.r();
  if (!is_odd_ended(spec, std::max<long>(ell + r * b, r * b)))
    throw Error("not_odd_ended", "run weights need an odd-ended spec");
  if (ell % b != 0) return 0;

  const std::vector<long> sizes = spec.sizes_up_to(ell);
  const bool single_is_top = spec.is_top(b);

  // dp[t][q]: accepted suffixes of total size t with q pending single chunks.
  std::vector<std::vector<Int>> dp(static_cast<std::size_t>(ell) + 1,
                                   std::vector<Int>(static_cast<std::size_t>(r)));
  dp[0][0] = 1;
  for (long t = 0; t < ell; ++t) {
    for (long q = 0; q < r; ++q) {
      const Int& ways = dp[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
      if (ways == 0) continue;
      for (long s : sizes) {
        if (t + s > ell) break;
        const long sigma = s / b;
        if (sigma % r == 0) continue; // such a block always moves
        long q2;
        if (sigma == 1) {
          if (q == r - 1) {
            if (!single_is_top) continue;
            q2 = 0; // freeze-skip tuple of single chunks
          } else {
            q2 = q + 1;
          }
        } else {
          if (q == r - 1) {
            if (!spec.is_top(s)) continue; // an (r-1)-merge would fire
            q2 = 0;                        // freeze-skip tuple
          } else {
            if (!spec.is_bottom(s)) continue; // a split would fire
            q2 = 0;
          }
        }
        dp[static_cast<std::size_t>(t + s)][static_cast<std::size_t>(q2)] += ways;
      }
    }
  }
  Int total = 0;
  for (long q = 0; q < r; ++q)
    total += dp[static_cast<std::size_t>(ell)][static_cast<std::size_t>(q)];
  return total;
}

struct WeightTable {
  ThinnedSpec spec;
  std::vector<Int> w; // w[0..N]
};

inline WeightTable make_weight_table(const ThinnedSpec& spec, long N) {
  WeightTable table{spec, {}};
  table.w.reserve(static_cast<std::size_t>(N) + 1);
  for (long ell = 0; ell <= N; ++ell) table.w.push_back(weight_ell(ell, spec));
  return table;
}

inline std::vector<long> run_lengths(const std::vector<int>& sigma) {
  std::vector<long> runs;
  long run = sigma.empty() ? 0 : 1;
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    if (sigma[i] > sigma[i - 1]) {
      ++run;
    } else {
      runs.push_back(run);
      run = 1;
    }
  }
  if (run > 0) runs.push_back(run);
  return runs;
}

// w_sigma: product of the weights of the maximal increasing run lengths.
inline Int weight_sigma(const std::vector<int>& sigma, const WeightTable& table) {
  Int out = 1;
  for (long len : run_lengths(sigma)) {
    if (len >= static_cast<long>(table.w.size()))
      throw Error("invalid_argument",
                  "weight table does not cover run length " +
                      std::to_string(len));
    out *= table.w[static_cast<std::size_t>(len)];
  }
  return out;
}

// Sum of w_sigma over all permutations of [n], by direct enumeration.
inline Int weighted_perm_sum_bruteforce(int n, const WeightTable& table,
                                        int max_n = 10) {
  if (n > max_n)
    throw Error("budget_exceeded",
                "permutation enumeration capped at n = " + std::to_string(max_n));
  if (n == 0) return 1;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  Int total = 0;
  do {
    total += weight_sigma(perm, table);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

} // namespace thinseries

#endif
