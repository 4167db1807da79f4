#ifndef THINSERIES_SIZE_SET_HPP
#define THINSERIES_SIZE_SET_HPP

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "thinseries/error.hpp"

namespace thinseries {

// Arithmetic-progression tail {start, start+step, start+2*step, ...}.
struct Progression {
  long start = 0;
  long step = 0;

  bool contains(long k) const {
    return k >= start && (k - start) % step == 0;
  }

  friend bool operator==(const Progression&, const Progression&) = default;
};

// A set of positive integers given by a finite explicit part plus
// arithmetic-progression tails.  Membership is decidable for every k and
// enumeration up to any horizon terminates.
class SizeSet {
public:
  SizeSet() = default;

  SizeSet(std::vector<long> explicit_values, std::vector<Progression> tails = {})
      : explicit_(std::move(explicit_values)), tails_(std::move(tails)) {
    std::sort(explicit_.begin(), explicit_.end());
    explicit_.erase(std::unique(explicit_.begin(), explicit_.end()),
                    explicit_.end());
    for (long v : explicit_)
      if (v < 1) throw Error("invalid_spec", "size set entries must be >= 1");
    for (const Progression& t : tails_)
      if (t.start < 1 || t.step < 1)
        throw Error("invalid_spec",
                    "progression tails need start >= 1 and step >= 1");
  }

  SizeSet(std::initializer_list<long> values)
      : SizeSet(std::vector<long>(values)) {}

  bool contains(long k) const {
    if (k < 1) return false;
    if (std::binary_search(explicit_.begin(), explicit_.end(), k)) return true;
    for (const Progression& t : tails_)
      if (t.contains(k)) return true;
    return false;
  }

  // Sorted, deduplicated members <= horizon.
  std::vector<long> enumerate(long horizon) const {
    std::vector<long> out;
    for (long v : explicit_)
      if (v <= horizon) out.push_back(v);
    for (const Progression& t : tails_)
      for (long v = t.start; v <= horizon; v += t.step) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool empty() const { return explicit_.empty() && tails_.empty(); }

  long max_explicit() const {
    return explicit_.empty() ? 0 : explicit_.back();
  }

  // True when some tail with the given step covers its whole residue class
  // from `at` on, i.e. has step `step` and starts at or before `at`.
  bool tail_covers_from(long at, long step) const {
    for (const Progression& t : tails_)
      if (t.step == step && t.start <= at && t.contains(at)) return true;
    return false;
  }

  const std::vector<long>& explicit_values() const { return explicit_; }
  const std::vector<Progression>& tails() const { return tails_; }

  friend bool operator==(const SizeSet&, const SizeSet&) = default;

private:
  std::vector<long> explicit_;
  std::vector<Progression> tails_;
};

} // namespace thinseries

#endif
