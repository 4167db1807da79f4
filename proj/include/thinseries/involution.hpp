#ifndef THINSERIES_INVOLUTION_HPP
#define THINSERIES_INVOLUTION_HPP

#include <string>
#include <vector>

#include "thinseries/bigint.hpp"
#include "thinseries/error.hpp"
#include "thinseries/partitions.hpp"
#include "thinseries/spec.hpp"

namespace thinseries {

// Case labels of the two algorithms.  A..E belong to the r = 2 machine,
// A1..D_stretched to the r > 2 machine.
enum class StepCase {
  A, B, C, D, E,
  A1, A2, B1, B2, B3, B4, B5, C1, C2, D_stretched,
};

inline const char* to_string(StepCase c) {
  switch (c) {
    case StepCase::A: return "A";
    case StepCase::B: return "B";
    case StepCase::C: return "C";
    case StepCase::D: return "D";
    case StepCase::E: return "E";
    case StepCase::A1: return "A1";
    case StepCase::A2: return "A2";
    case StepCase::B1: return "B1";
    case StepCase::B2: return "B2";
    case StepCase::B3: return "B3";
    case StepCase::B4: return "B4";
    case StepCase::B5: return "B5";
    case StepCase::C1: return "C1";
    case StepCase::C2: return "C2";
    case StepCase::D_stretched: return "D-stretched";
  }
  return "?";
}

inline bool is_move_case(StepCase c) {
  switch (c) {
    case StepCase::A:
    case StepCase::D:
    case StepCase::A2:
    case StepCase::B2:
    case StepCase::C1:
    case StepCase::C2:
      return true;
    default:
      return false;
  }
}

struct InvolutionStep {
  StepCase step_case;
  int block_index; // 1-based position of the block the decision was made at

  friend bool operator==(const InvolutionStep&, const InvolutionStep&) = default;
};

struct InvolutionTrace {
  OrderedSetPartition input;
  OrderedSetPartition output;
  std::vector<InvolutionStep> steps; // skips, then at most one move
  bool moved = false;

  bool fixed() const { return !moved; }
};

namespace detail {

inline void check_block_sizes(const OrderedSetPartition& p,
                              const ThinnedSpec& spec) {
  for (const auto& block : p.blocks()) {
    const long s = static_cast<long>(block.size());
    if (!spec.contains(s))
      throw Error("bad_partition",
                  "block size " + std::to_string(s) + " is not in A u B");
    if (s % spec.b() != 0)
      throw Error("bad_partition",
                  "block size " + std::to_string(s) +
                      " is not a multiple of the group size b");
  }
}

// Blocks act at chunk granularity: each block's increasing list is cut into
// consecutive groups of b elements, and merges/splits move whole chunks.
// For b = 1 a chunk is a single element.
inline long chunk_count(const std::vector<int>& block, long b) {
  return static_cast<long>(block.size()) / b;
}

// right block follows left block in increasing order
inline bool in_order(const std::vector<int>& left,
                     const std::vector<int>& right) {
  return right.front() > left.back();
}

// Split `count` chunks off the right end of blocks[i] into new single-chunk
// blocks, in increasing order.
inline std::vector<std::vector<int>> split_chunks(
    std::vector<std::vector<int>> blocks, std::size_t i, long count, long b) {
  std::vector<int>& block = blocks[i];
  std::vector<std::vector<int>> tail;
  for (long c = 0; c < count; ++c) {
    tail.emplace_back(block.end() - b, block.end());
    block.erase(block.end() - b, block.end());
  }
  // chunks were peeled right-to-left; emit them left-to-right
  blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                tail.rbegin(), tail.rend());
  return blocks;
}

// Merge blocks [first, last] (inclusive), whose elements are collectively in
// increasing order, into one block.
inline std::vector<std::vector<int>> merge_blocks(
    std::vector<std::vector<int>> blocks, std::size_t first, std::size_t last) {
  std::vector<int> merged;
  for (std::size_t i = first; i <= last; ++i)
    merged.insert(merged.end(), blocks[i].begin(), blocks[i].end());
  blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(first),
               blocks.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(first),
                std::move(merged));
  return blocks;
}

} // namespace detail

// The r = 2 involution (cases A-E), run at chunk granularity so that b > 1 is
// the blow-up of the b = 1 machine.  Iterative right-to-left: skips shrink
// the active prefix, then at most one merge or split fires.
inline InvolutionTrace involute_r2_impl(const OrderedSetPartition& p,
                                        const ThinnedSpec& spec) {
  detail::check_block_sizes(p, spec);
  const long b = spec.b();
  const auto& blocks = p.blocks();
  InvolutionTrace trace{p, p, {}, false};

  std::size_t end = blocks.size();
  while (end >= 1) {
    const std::vector<int>& last = blocks[end - 1];
    const int index = static_cast<int>(end);
    if (detail::chunk_count(last, b) == 1) {
      if (end == 1) break; // lone single chunk: fixed
      const std::vector<int>& left = blocks[end - 2];
      if (!detail::in_order(left, last)) {
        trace.steps.push_back({StepCase::B, index});
        end -= 1;
      } else if (spec.contains(static_cast<long>(left.size()) + b)) {
        trace.steps.push_back({StepCase::A, index});
        trace.output = OrderedSetPartition(
            p.ground_size(), detail::merge_blocks(blocks, end - 2, end - 1));
        trace.moved = true;
        return trace;
      } else {
        trace.steps.push_back({StepCase::C, index});
        end -= 2;
      }
    } else {
      if (spec.contains(static_cast<long>(last.size()) - b)) {
        trace.steps.push_back({StepCase::D, index});
        trace.output = OrderedSetPartition(
            p.ground_size(), detail::split_chunks(blocks, end - 1, 1, b));
        trace.moved = true;
        return trace;
      }
      trace.steps.push_back({StepCase::E, index});
      end -= 1;
    }
  }
  return trace;
}

inline InvolutionTrace involute_r2(const OrderedSetPartition& p,
                                   const ThinnedSpec& spec) {
  if (spec.b() != 1 || spec.r() != 2)
    throw Error("invalid_argument", "involute_r2 needs b = 1 and r = 2");
  return involute_r2_impl(p, spec);
}

// The r > 2 machine (cases A1..D).  Its guards lean on odd-endedness (the
// 1-merge of case A2 is only size-safe there), so non-odd-ended input is
// rejected for r > 2.  At r = 2 the chunked A-E machine is used instead,
// which is total.
inline InvolutionTrace involute_stretched(const OrderedSetPartition& p,
                                          const ThinnedSpec& spec) {
  if (spec.r() == 2) return involute_r2_impl(p, spec);

  if (!is_odd_ended(spec, std::max<long>(p.ground_size() + spec.r() * spec.b(),
                                         spec.r() * spec.b())))
    throw Error("not_odd_ended",
                "the r > 2 algorithm is defined for odd-ended specs only");
  detail::check_block_sizes(p, spec);

  const long b = spec.b();
  const long r = spec.r();
  const auto& blocks = p.blocks();
  InvolutionTrace trace{p, p, {}, false};

  auto move = [&](StepCase c, std::size_t at,
                  std::vector<std::vector<int>> result) {
    trace.steps.push_back({c, static_cast<int>(at)});
    trace.output = OrderedSetPartition(p.ground_size(), std::move(result));
    trace.moved = true;
  };

  std::size_t end = blocks.size();
  while (end >= 1) {
    const std::vector<int>& last = blocks[end - 1];
    const int index = static_cast<int>(end);
    const long sigma = detail::chunk_count(last, b);

    if (sigma == 1) {
      if (end == 1) break;
      const std::vector<int>& left = blocks[end - 2];
      const long left_sigma = detail::chunk_count(left, b);

      if (left_sigma % r == 0) {
        if (!detail::in_order(left, last)) {
          trace.steps.push_back({StepCase::A1, index});
          end -= 1;
        } else {
          move(StepCase::A2, end,
               detail::merge_blocks(blocks, end - 2, end - 1));
          return trace;
        }
        continue;
      }

      // left block is 1 mod r: examine the window of r-1 single chunks
      // ending here, followed by a block of size 1 mod r.
      long singles = 0;
      std::size_t pos = end - 1;
      while (pos >= 1 && detail::chunk_count(blocks[pos - 1], b) == 1) {
        ++singles;
        --pos;
      }
      const bool have_window = singles >= r - 2 && end >= static_cast<std::size_t>(r);
      if (have_window) {
        const std::vector<int>& w = blocks[end - static_cast<std::size_t>(r)];
        const long w_sigma = detail::chunk_count(w, b);
        if (w_sigma % r == 1) {
          bool chain = true;
          for (std::size_t j = end - static_cast<std::size_t>(r); j + 1 < end;
               ++j)
            if (!detail::in_order(blocks[j], blocks[j + 1])) {
              chain = false;
              break;
            }
          if (!chain) {
            trace.steps.push_back({StepCase::B1, index});
            end -= 1;
          } else if (spec.is_top(static_cast<long>(w.size()))) {
            trace.steps.push_back({StepCase::B3, index});
            end -= static_cast<std::size_t>(r);
          } else {
            move(StepCase::B2, end,
                 detail::merge_blocks(blocks, end - static_cast<std::size_t>(r),
                                      end - 1));
            return trace;
          }
        } else {
          trace.steps.push_back({StepCase::B4, index});
          end -= 1;
        }
      } else {
        trace.steps.push_back({StepCase::B5, index});
        end -= 1;
      }
    } else {
      if (spec.is_bottom(static_cast<long>(last.size()))) {
        trace.steps.push_back({StepCase::D_stretched, index});
        end -= 1;
      } else if (sigma % r == 0) {
        move(StepCase::C1, end,
             detail::split_chunks(blocks, end - 1, r - 1, b));
        return trace;
      } else {
        move(StepCase::C2, end, detail::split_chunks(blocks, end - 1, 1, b));
        return trace;
      }
    }
  }
  return trace;
}

// Dispatch on the stretch parameters.
inline InvolutionTrace involute(const OrderedSetPartition& p,
                                const ThinnedSpec& spec) {
  if (spec.r() == 2) return involute_r2_impl(p, spec);
  return involute_stretched(p, spec);
}

// Fixed-point check via the involution itself.
inline bool is_good(const OrderedSetPartition& p, const ThinnedSpec& spec) {
  return involute(p, spec).fixed();
}

// Structural fixed-point characterisation: blocks have size 1 (one chunk) or
// an interval endpoint; within each increasing run of the underlying
// permutation, top-but-not-bottom blocks sit in freeze-skip r-tuples and
// bottom-but-not-top blocks lack the forbidden trailing singleton pattern.
// Scanning a run right-to-left, `pending` counts trailing single chunks not
// yet absorbed into a freeze tuple.  Only valid for odd-ended specs.
inline bool is_good_structural(const OrderedSetPartition& p,
                               const ThinnedSpec& spec) {
  if (!is_odd_ended(spec, std::max<long>(p.ground_size() + spec.r() * spec.b(),
                                         spec.r() * spec.b())))
    throw Error("not_odd_ended",
                "the structural characterisation needs an odd-ended spec");
  detail::check_block_sizes(p, spec);

  const long b = spec.b();
  const long r = spec.r();
  const auto& blocks = p.blocks();

  std::size_t run_end = blocks.size();
  while (run_end >= 1) {
    std::size_t run_begin = run_end - 1;
    while (run_begin >= 1 &&
           detail::in_order(blocks[run_begin - 1], blocks[run_begin]))
      --run_begin;

    long pending = 0;
    for (std::size_t i = run_end; i-- > run_begin;) {
      const long s = static_cast<long>(blocks[i].size());
      const long sigma = s / b;
      if (sigma % r == 0) return false; // would split (or absorb a merge)
      if (sigma == 1) {
        if (pending == r - 1) {
          if (!spec.is_top(b)) return false;
          pending = 0; // freeze-skip r-tuple of single chunks
        } else {
          ++pending;
        }
      } else {
        if (pending == r - 1) {
          if (!spec.is_top(s)) return false; // a merge would fire
          pending = 0;                       // freeze-skip r-tuple
        } else {
          if (!spec.is_bottom(s)) return false; // a split would fire
          pending = 0;
        }
      }
    }
    run_end = run_begin;
  }
  return true;
}

// Number of involution fixed points among the admissible partitions of [n];
// equals the reciprocal coefficient c_n for odd-ended specs with b in A.
inline Int fixed_point_count(int n, const ThinnedSpec& spec,
                             const EnumerationBudget& budget = {}) {
  Int count = 0;
  for_each_partition(
      n, spec,
      [&](const std::vector<std::vector<int>>& blocks) {
        OrderedSetPartition p(n, blocks);
        if (is_good(p, spec)) ++count;
      },
      budget);
  return count;
}

} // namespace thinseries

#endif
