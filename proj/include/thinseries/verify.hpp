#ifndef THINSERIES_VERIFY_HPP
#define THINSERIES_VERIFY_HPP

#include <string>
#include <vector>

#include "thinseries/format.hpp"
#include "thinseries/involution.hpp"
#include "thinseries/partitions.hpp"
#include "thinseries/series.hpp"
#include "thinseries/spec.hpp"

namespace thinseries {

struct SuiteViolation {
  int n = 0;
  std::string property;
  std::string detail;
};

struct SuiteResult {
  bool ok = true;
  long partitions_checked = 0;
  std::vector<SuiteViolation> violations;
};

// Exhaustive involution property sweep over all admissible partitions of [n]
// for n <= n_max: involution law, underlying-permutation preservation, sign
// reversal on moved partitions, positive parity of fixed points, agreement
// of the structural goodness checker with fixedness (odd-ended specs), and
// fixed-point count against the reciprocal coefficients (odd-ended, b in A).
inline SuiteResult run_involution_suite(const ThinnedSpec& spec, int n_max,
                                        const EnumerationBudget& budget = {},
                                        std::size_t max_violations = 8) {
  SuiteResult result;
  const bool odd_ended =
      is_odd_ended(spec, n_max + spec.r() * spec.b());
  const bool counts_match_c = odd_ended && spec.b_in_A();
  CoeffSeq c = egf_reciprocal_coeffs(spec, n_max);

  auto report = [&](int n, const std::string& property, std::string detail) {
    result.ok = false;
    if (result.violations.size() < max_violations)
      result.violations.push_back({n, property, std::move(detail)});
  };

  std::vector<char> in_b(static_cast<std::size_t>(n_max) + 1, 0);
  for (long b : spec.B().enumerate(n_max)) in_b[static_cast<std::size_t>(b)] = 1;
  auto b_blocks = [&](const OrderedSetPartition& p) {
    int count = 0;
    for (const auto& blk : p.blocks()) count += in_b[blk.size()];
    return count;
  };

  for (int n = 0; n <= n_max; ++n) {
    Int fixed = 0;
    for_each_partition(
        n, spec,
        [&](const std::vector<std::vector<int>>& blocks) {
          ++result.partitions_checked;
          OrderedSetPartition p(n, blocks);
          InvolutionTrace t = involute(p, spec);
          InvolutionTrace back = involute(t.output, spec);
          if (back.output != p)
            report(n, "involution", "i(i(P)) != P for P = " +
                                        partition_to_string(p));
          if (t.output.underlying_permutation() != p.underlying_permutation())
            report(n, "permutation_preserved",
                   "underlying permutation changed for P = " +
                       partition_to_string(p));
          const int before = b_blocks(p);
          if (t.fixed()) {
            ++fixed;
            if (before % 2 != 0)
              report(n, "fixed_in_pos",
                     "fixed point with odd B-block count: " +
                         partition_to_string(p));
          } else {
            const int after = b_blocks(t.output);
            if (after - before != 1 && before - after != 1)
              report(n, "sign_reversing",
                     "B-block count changed by " +
                         std::to_string(after - before) + " for P = " +
                         partition_to_string(p));
          }
          if (odd_ended) {
            if (is_good_structural(p, spec) != t.fixed())
              report(n, "structural_checker",
                     "structural and fixedness checkers disagree on P = " +
                         partition_to_string(p));
          }
        },
        budget);
    if (counts_match_c && fixed != c[n])
      report(n, "fixed_point_count",
             "fixed points = " + to_decimal(fixed) + " but c_n = " +
                 to_decimal(c[n]));
  }
  return result;
}

} // namespace thinseries

#endif
