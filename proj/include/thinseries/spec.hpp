#ifndef THINSERIES_SPEC_HPP
#define THINSERIES_SPEC_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "thinseries/error.hpp"
#include "thinseries/size_set.hpp"

namespace thinseries {

// Block-size specification (A, B, b, r).  A lives in the stretched odds
// O* = {(kr+1)b : k >= 0} and B in the stretched evens E* = {krb : k >= 1};
// the support N* = O* u E* generalises the positive integers, which it equals
// when b = 1 and r = 2.
class ThinnedSpec {
public:
  ThinnedSpec(SizeSet a, SizeSet b_set, long b = 1, long r = 2)
      : a_(std::move(a)), b_(std::move(b_set)), stretch_b_(b), stretch_r_(r) {
    if (stretch_b_ < 1) throw Error("invalid_spec", "b must be >= 1");
    if (stretch_r_ < 2) throw Error("invalid_spec", "r must be >= 2");
    const long rb = stretch_r_ * stretch_b_;
    for (long v : a_.explicit_values())
      if (v % rb != stretch_b_ % rb)
        throw Error("invalid_spec", "A entry " + std::to_string(v) +
                                        " lies outside the stretched odds");
    for (const Progression& t : a_.tails()) {
      if (t.start % rb != stretch_b_ % rb)
        throw Error("invalid_spec", "A tail start outside the stretched odds");
      if (t.step % rb != 0)
        throw Error("invalid_spec", "A tail step must be a multiple of r*b");
    }
    for (long v : b_.explicit_values())
      if (v % rb != 0)
        throw Error("invalid_spec", "B entry " + std::to_string(v) +
                                        " lies outside the stretched evens");
    for (const Progression& t : b_.tails()) {
      if (t.start % rb != 0)
        throw Error("invalid_spec", "B tail start outside the stretched evens");
      if (t.step % rb != 0)
        throw Error("invalid_spec", "B tail step must be a multiple of r*b");
    }
  }

  const SizeSet& A() const { return a_; }
  const SizeSet& B() const { return b_; }
  long b() const { return stretch_b_; }
  long r() const { return stretch_r_; }

  bool contains(long k) const { return a_.contains(k) || b_.contains(k); }
  bool b_in_A() const { return a_.contains(stretch_b_); }

  // ---- stretched support N* ----
  bool in_support(long k) const {
    if (k < stretch_b_) return false;
    const long rb = stretch_r_ * stretch_b_;
    return k % rb == 0 || k % rb == stretch_b_ % rb;
  }

  bool in_stretched_odds(long k) const {
    const long rb = stretch_r_ * stretch_b_;
    return k >= stretch_b_ && k % rb == stretch_b_ % rb;
  }

  // Successor of k within N*.
  long support_next(long k) const {
    const long rb = stretch_r_ * stretch_b_;
    if (k % rb == 0) return k + stretch_b_;
    return k - stretch_b_ + rb; // from (kr+1)b to (k+1)rb
  }

  // Predecessor of k within N*; nullopt for the least element b.
  std::optional<long> support_prev(long k) const {
    if (k == stretch_b_) return std::nullopt;
    const long rb = stretch_r_ * stretch_b_;
    if (k % rb == 0) return k - (stretch_r_ - 1) * stretch_b_;
    return k - stretch_b_;
  }

  // Top / bottom element of a maximal interval of A u B inside N*.
  bool is_top(long k) const {
    return contains(k) && !contains(support_next(k));
  }

  bool is_bottom(long k) const {
    if (!contains(k)) return false;
    auto prev = support_prev(k);
    return !prev || !contains(*prev);
  }

  // Members of A u B up to n, sorted.
  std::vector<long> sizes_up_to(long n) const {
    std::vector<long> out = a_.enumerate(n);
    std::vector<long> eb = b_.enumerate(n);
    out.insert(out.end(), eb.begin(), eb.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const ThinnedSpec&, const ThinnedSpec&) = default;

private:
  SizeSet a_;
  SizeSet b_;
  long stretch_b_;
  long stretch_r_;
};

struct Interval {
  long bottom = 0;
  long top = 0;        // last covered element; meaningful unless unbounded
  bool unbounded = false;
  bool truncated = false; // extends past the horizon but tail coverage unproven

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct IntervalDecomp {
  std::vector<Interval> intervals;
  std::vector<long> tops;    // tops of provably bounded intervals
  std::vector<long> bottoms; // bottoms of all intervals
};

// Decompose (A u B) n [1, horizon] into maximal runs of consecutive
// N*-elements.  The final run is flagged unbounded when progression tails
// provably cover every later N*-element, and truncated when it reaches past
// the horizon without such a proof.
inline IntervalDecomp maximal_intervals(const ThinnedSpec& spec, long horizon) {
  const long largest_explicit =
      std::max(spec.A().max_explicit(), spec.B().max_explicit());
  if (horizon < largest_explicit)
    throw Error("invalid_argument",
                "horizon " + std::to_string(horizon) +
                    " is smaller than the largest explicit element " +
                    std::to_string(largest_explicit));

  IntervalDecomp out;
  std::optional<Interval> open;
  auto close = [&](long top) {
    open->top = top;
    out.intervals.push_back(*open);
    open.reset();
  };

  long last_in_support = 0;
  for (long x = spec.b(); x <= horizon; x = spec.support_next(x)) {
    last_in_support = x;
    if (spec.contains(x)) {
      if (!open) open = Interval{x, x, false, false};
    } else if (open) {
      close(*spec.support_prev(x));
    }
  }

  if (open) {
    const long top = last_in_support;
    const long next = spec.support_next(top);
    if (!spec.contains(next)) {
      close(top);
    } else {
      // The run continues past the horizon.  It is provably unbounded when
      // tails with step r*b cover both residue classes of N* from here on.
      const long rb = spec.r() * spec.b();
      const long next_odd = spec.in_stretched_odds(next)
                                ? next
                                : spec.support_next(next);
      const long next_even = spec.in_stretched_odds(next)
                                 ? spec.support_next(next)
                                 : next;
      const bool covered = spec.A().tail_covers_from(next_odd, rb) &&
                           spec.B().tail_covers_from(next_even, rb);
      open->unbounded = covered;
      open->truncated = !covered;
      close(top);
    }
  }

  for (const Interval& iv : out.intervals) {
    out.bottoms.push_back(iv.bottom);
    if (!iv.unbounded && !iv.truncated) out.tops.push_back(iv.top);
  }
  return out;
}

// Odd-ended: every maximal interval of A u B has both endpoints in the
// stretched odds.  Equivalently, krb in B implies (kr+1)b in A and
// ((k-1)r+1)b in A; checked for every B-element <= horizon.
inline bool is_odd_ended(const ThinnedSpec& spec, long horizon) {
  for (long e : spec.B().enumerate(horizon)) {
    if (!spec.A().contains(spec.support_next(e))) return false;
    auto prev = spec.support_prev(e);
    if (!prev || !spec.A().contains(*prev)) return false;
  }
  return true;
}

} // namespace thinseries

#endif
