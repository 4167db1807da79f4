#ifndef THINSERIES_PARTITIONS_HPP
#define THINSERIES_PARTITIONS_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

#include "thinseries/bigint.hpp"
#include "thinseries/error.hpp"
#include "thinseries/spec.hpp"

namespace thinseries {

// Ordered set partition of [n]: a sequence of disjoint non-empty blocks
// covering {1..n}; block order matters, elements within a block are stored
// in increasing order.
class OrderedSetPartition {
public:
  OrderedSetPartition() = default; // the empty partition of [0]

  OrderedSetPartition(int n, std::vector<std::vector<int>> blocks)
      : n_(n), blocks_(std::move(blocks)) {
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    int total = 0;
    for (const auto& block : blocks_) {
      if (block.empty()) throw Error("bad_partition", "empty block");
      for (std::size_t i = 0; i < block.size(); ++i) {
        int e = block[i];
        if (e < 1 || e > n)
          throw Error("bad_partition", "element out of range");
        if (seen[static_cast<std::size_t>(e)])
          throw Error("bad_partition", "repeated element");
        if (i > 0 && block[i] <= block[i - 1])
          throw Error("bad_partition", "block not strictly increasing");
        seen[static_cast<std::size_t>(e)] = 1;
        ++total;
      }
    }
    if (total != n) throw Error("bad_partition", "blocks do not cover [n]");
  }

  int ground_size() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  std::vector<int> underlying_permutation() const {
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(n_));
    for (const auto& block : blocks_)
      perm.insert(perm.end(), block.begin(), block.end());
    return perm;
  }

  friend bool operator==(const OrderedSetPartition&,
                         const OrderedSetPartition&) = default;

private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
};

inline std::vector<int> underlying_permutation(const OrderedSetPartition& p) {
  return p.underlying_permutation();
}

// Enumeration guard.  The default cap is the unrestricted count at n = 10
// (Fubini(10) ~ 1.03e8), rounded up; restricted specs reach further.
struct EnumerationBudget {
  Int max_partitions = Int(110000000);
};

// Number of ordered set partitions of a t-set with block sizes drawn from
// `sizes`: U(t) = sum_s C(t,s) U(t-s).
inline Int restricted_partition_count(long n, const std::vector<long>& sizes) {
  std::vector<Int> u(static_cast<std::size_t>(n) + 1);
  u[0] = 1;
  PascalRow row;
  for (long t = 1; t <= n; ++t) {
    row.advance();
    Int acc = 0;
    for (long s : sizes) {
      if (s > t) break;
      mpz_addmul(acc.get_mpz_t(), row.choose(s).get_mpz_t(),
                 u[static_cast<std::size_t>(t - s)].get_mpz_t());
    }
    u[static_cast<std::size_t>(t)] = acc;
  }
  return u[static_cast<std::size_t>(n)];
}

inline Int restricted_partition_count(long n, const ThinnedSpec& spec) {
  return restricted_partition_count(n, spec.sizes_up_to(n));
}

namespace detail {

// Visit all ordered set partitions of `remaining` (ascending) with block
// sizes in `sizes`.  The first block is an arbitrary size-s subset; recursing
// on the rest yields each partition exactly once.
template <typename Visitor>
void visit_partitions(std::vector<int>& remaining, const std::vector<long>& sizes,
                      std::vector<std::vector<int>>& prefix, Visitor&& visit) {
  if (remaining.empty()) {
    visit(prefix);
    return;
  }
  const int m = static_cast<int>(remaining.size());
  std::vector<int> block;
  std::vector<int> rest;
  std::vector<int> idx;
  for (long s : sizes) {
    if (s > m) break;
    // iterate over size-s index subsets of `remaining`
    idx.assign(static_cast<std::size_t>(s), 0);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      block.clear();
      rest.clear();
      std::size_t at = 0;
      for (int i = 0; i < m; ++i) {
        if (at < idx.size() && idx[at] == i) {
          block.push_back(remaining[static_cast<std::size_t>(i)]);
          ++at;
        } else {
          rest.push_back(remaining[static_cast<std::size_t>(i)]);
        }
      }
      prefix.push_back(block);
      visit_partitions(rest, sizes, prefix, visit);
      prefix.pop_back();
      // next combination
      long j = s - 1;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] ==
                           m - static_cast<int>(s) + static_cast<int>(j))
        --j;
      if (j < 0) break;
      ++idx[static_cast<std::size_t>(j)];
      for (long t = j + 1; t < s; ++t)
        idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
}

} // namespace detail

// Stream every admissible ordered set partition of [n] through `visit`
// (called with the block list).  n = 0 yields the empty partition once.
template <typename Visitor>
void for_each_partition(int n, const ThinnedSpec& spec, Visitor&& visit,
                        const EnumerationBudget& budget = {}) {
  const std::vector<long> sizes = spec.sizes_up_to(n);
  if (n > 0) {
    Int total = restricted_partition_count(n, sizes);
    if (total > budget.max_partitions)
      throw Error("budget_exceeded",
                  "enumeration would visit " + to_decimal(total) +
                      " partitions, over the cap of " +
                      to_decimal(budget.max_partitions));
  }
  std::vector<int> elements(static_cast<std::size_t>(n));
  std::iota(elements.begin(), elements.end(), 1);
  std::vector<std::vector<int>> prefix;
  detail::visit_partitions(elements, sizes, prefix, visit);
}

// Materialised variant for small n.
inline std::vector<OrderedSetPartition> enumerate_partitions(
    int n, const ThinnedSpec& spec, const EnumerationBudget& budget = {}) {
  std::vector<OrderedSetPartition> out;
  for_each_partition(
      n, spec,
      [&](const std::vector<std::vector<int>>& blocks) {
        out.emplace_back(n, blocks);
      },
      budget);
  return out;
}

struct SignedCount {
  Int pos;
  Int neg;

  Int difference() const { return pos - neg; }
};

// |P^pos| and |P^neg|: partitions with an even / odd number of blocks whose
// size lies in B.  Workers > 1 split the enumeration by first block; the
// reduction is a sum, so the result does not depend on the split.
inline SignedCount signed_count(int n, const ThinnedSpec& spec, int workers = 1,
                                const EnumerationBudget& budget = {}) {
  if (n == 0) return SignedCount{1, 0};
  const std::vector<long> sizes = spec.sizes_up_to(n);
  Int total = restricted_partition_count(n, sizes);
  if (total > budget.max_partitions)
    throw Error("budget_exceeded",
                "enumeration would visit " + to_decimal(total) +
                    " partitions, over the cap of " +
                    to_decimal(budget.max_partitions));

  std::vector<char> in_b(static_cast<std::size_t>(n) + 1, 0);
  for (long b : spec.B().enumerate(n)) in_b[static_cast<std::size_t>(b)] = 1;

  auto count_from = [&](std::vector<int> remaining, int parity_start,
                        Int& pos, Int& neg) {
    std::vector<std::vector<int>> prefix;
    long p = 0, q = 0;
    detail::visit_partitions(
        remaining, sizes, prefix,
        [&](const std::vector<std::vector<int>>& blocks) {
          int parity = parity_start;
          for (const auto& blk : blocks)
            parity ^= in_b[blk.size()];
          (parity ? q : p) += 1;
        });
    pos += p;
    neg += q;
  };

  std::vector<int> elements(static_cast<std::size_t>(n));
  std::iota(elements.begin(), elements.end(), 1);

  if (workers <= 1) {
    Int pos = 0, neg = 0;
    count_from(elements, 0, pos, neg);
    return SignedCount{pos, neg};
  }

  // Materialise the first-block choices, then farm the completions out.
  struct Job {
    std::vector<int> rest;
    int parity;
  };
  std::vector<Job> jobs;
  std::vector<std::vector<int>> prefix;
  for (long s : sizes) {
    if (s > n) break;
    std::vector<int> idx(static_cast<std::size_t>(s));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Job job;
      std::size_t at = 0;
      for (int i = 0; i < n; ++i) {
        if (at < idx.size() && idx[at] == i)
          ++at;
        else
          job.rest.push_back(elements[static_cast<std::size_t>(i)]);
      }
      job.parity = in_b[static_cast<std::size_t>(s)];
      jobs.push_back(std::move(job));
      long j = s - 1;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] ==
                           n - static_cast<int>(s) + static_cast<int>(j))
        --j;
      if (j < 0) break;
      ++idx[static_cast<std::size_t>(j)];
      for (long t = j + 1; t < s; ++t)
        idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
    }
  }

  const int k = std::min<int>(workers, static_cast<int>(jobs.size()));
  std::vector<Int> pos_by_worker(static_cast<std::size_t>(k), Int(0));
  std::vector<Int> neg_by_worker(static_cast<std::size_t>(k), Int(0));
  std::vector<std::thread> pool;
  for (int w = 0; w < k; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t j = static_cast<std::size_t>(w); j < jobs.size();
           j += static_cast<std::size_t>(k))
        count_from(jobs[j].rest, jobs[j].parity,
                   pos_by_worker[static_cast<std::size_t>(w)],
                   neg_by_worker[static_cast<std::size_t>(w)]);
    });
  }
  for (auto& t : pool) t.join();
  Int pos = 0, neg = 0;
  for (int w = 0; w < k; ++w) {
    pos += pos_by_worker[static_cast<std::size_t>(w)];
    neg += neg_by_worker[static_cast<std::size_t>(w)];
  }
  return SignedCount{pos, neg};
}

// Number of permutations of [n] all of whose maximal increasing run lengths
// satisfy `allowed`.  Enumeration-backed; n is capped.
inline Int count_perms_by_run_rule(int n, const std::function<bool(long)>& allowed,
                                   int max_n = 10) {
  if (n > max_n)
    throw Error("budget_exceeded",
                "permutation enumeration capped at n = " + std::to_string(max_n));
  if (n == 0) return 1;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  Int count = 0;
  do {
    long run = 1;
    bool ok = true;
    for (int i = 1; i < n && ok; ++i) {
      if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(i - 1)]) {
        ++run;
      } else {
        ok = allowed(run);
        run = 1;
      }
    }
    if (ok && allowed(run)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

} // namespace thinseries

#endif
