#ifndef THINSERIES_BIGINT_HPP
#define THINSERIES_BIGINT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace thinseries {

using Int = mpz_class;
using Rat = mpq_class;

// Row of binomial coefficients C(n,0..n), advanced in place one n at a time.
// Addition-only (no divisions), so every intermediate stays an exact integer.
class PascalRow {
public:
  PascalRow() : row_{Int(1)} {}

  long n() const { return static_cast<long>(row_.size()) - 1; }

  void advance() {
    row_.emplace_back(1);
    for (std::size_t k = row_.size() - 2; k >= 1; --k)
      row_[k] += row_[k - 1];
  }

  void advance_to(long n) {
    while (this->n() < n) advance();
  }

  const Int& choose(long k) const { return row_[static_cast<std::size_t>(k)]; }

private:
  std::vector<Int> row_;
};

inline Int factorial(long n) {
  Int f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

inline std::string to_decimal(const Int& v) { return v.get_str(); }

inline std::string to_decimal(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  return c.get_str();
}

} // namespace thinseries

#endif
