#ifndef THINSERIES_SERIES_HPP
#define THINSERIES_SERIES_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "thinseries/bigint.hpp"
#include "thinseries/error.hpp"
#include "thinseries/spec.hpp"

namespace thinseries {

enum class Kind : std::uint8_t { egf, ogf };

// Exact coefficient sequence: values[n] is the coefficient of x^n (ogf) or of
// x^n/n! (egf).
struct CoeffSeq {
  Kind kind = Kind::egf;
  std::vector<Int> values;

  long degree() const { return static_cast<long>(values.size()) - 1; }
  const Int& operator[](long n) const {
    return values[static_cast<std::size_t>(n)];
  }

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;
};

// F itself: 1 - sum_{a in A} x^a/a! + sum_{b in B} x^b/b!, egf-normalised.
inline CoeffSeq thinned_egf(const ThinnedSpec& spec, long N) {
  CoeffSeq f{Kind::egf, std::vector<Int>(static_cast<std::size_t>(N) + 1)};
  f.values[0] = 1;
  for (long a : spec.A().enumerate(N)) f.values[static_cast<std::size_t>(a)] = -1;
  for (long b : spec.B().enumerate(N)) f.values[static_cast<std::size_t>(b)] = 1;
  return f;
}

// The ordinary counterpart g(x) = 1 - sum x^a + sum x^b.
inline CoeffSeq thinned_ogf(const ThinnedSpec& spec, long N) {
  CoeffSeq g = thinned_egf(spec, N);
  g.kind = Kind::ogf;
  return g;
}

// Reciprocal of an arbitrary normalised sequence (a_0 = 1), same kind.
// All arithmetic stays in exact integers: the egf case is the binomial
// convolution c_n = -sum_{k>=1} C(n,k) a_k c_{n-k}.
inline CoeffSeq reciprocal(const CoeffSeq& a, long N) {
  if (a.values.empty() || a.values[0] != 1)
    throw Error("invalid_argument", "reciprocal needs a constant term of 1");
  CoeffSeq c{a.kind, std::vector<Int>(static_cast<std::size_t>(N) + 1)};
  c.values[0] = 1;
  PascalRow row;
  for (long n = 1; n <= N; ++n) {
    if (a.kind == Kind::egf) row.advance();
    Int acc = 0;
    const long kmax = std::min<long>(n, a.degree());
    for (long k = 1; k <= kmax; ++k) {
      const Int& ak = a[k];
      if (ak == 0) continue;
      if (a.kind == Kind::egf) {
        Int term = row.choose(k) * ak;
        mpz_submul(acc.get_mpz_t(), term.get_mpz_t(),
                   c[n - k].get_mpz_t());
      } else {
        mpz_submul(acc.get_mpz_t(), ak.get_mpz_t(), c[n - k].get_mpz_t());
      }
    }
    c.values[static_cast<std::size_t>(n)] = acc;
  }
  return c;
}

// Coefficients (c_0..c_N) of 1/F via the convolution identity F*G = 1:
// c_n = sum_{a in A, a<=n} C(n,a) c_{n-a} - sum_{b in B, b<=n} C(n,b) c_{n-b}.
// A and B memberships are resolved once into a sign table.
inline CoeffSeq egf_reciprocal_coeffs(const ThinnedSpec& spec, long N) {
  if (N < 0) throw Error("invalid_argument", "N must be >= 0");
  std::vector<int> sign(static_cast<std::size_t>(N) + 1, 0);
  for (long a : spec.A().enumerate(N)) sign[static_cast<std::size_t>(a)] = 1;
  for (long b : spec.B().enumerate(N)) sign[static_cast<std::size_t>(b)] = -1;

  CoeffSeq c{Kind::egf, std::vector<Int>(static_cast<std::size_t>(N) + 1)};
  c.values[0] = 1;
  PascalRow row;
  for (long n = 1; n <= N; ++n) {
    row.advance();
    Int acc = 0;
    for (long k = 1; k <= n; ++k) {
      if (sign[static_cast<std::size_t>(k)] == 0) continue;
      if (sign[static_cast<std::size_t>(k)] > 0)
        mpz_addmul(acc.get_mpz_t(), row.choose(k).get_mpz_t(),
                   c[n - k].get_mpz_t());
      else
        mpz_submul(acc.get_mpz_t(), row.choose(k).get_mpz_t(),
                   c[n - k].get_mpz_t());
    }
    c.values[static_cast<std::size_t>(n)] = acc;
  }
  return c;
}

// Ordinary reciprocal of a normalised sequence; w convolved with a gives the
// unit sequence, and w_n equals the signed composition sum over L |= n.
inline CoeffSeq ogf_reciprocal(const CoeffSeq& a, long N) {
  if (a.kind != Kind::ogf)
    throw Error("kind_mismatch", "ogf_reciprocal needs an ogf sequence");
  return reciprocal(a, N);
}

// Truncated exact product; binomial convolution for egf pairs, plain
// convolution for ogf pairs.
inline CoeffSeq series_product(const CoeffSeq& p, const CoeffSeq& q, long N) {
  if (p.kind != q.kind)
    throw Error("kind_mismatch", "cannot multiply egf and ogf sequences");
  CoeffSeq out{p.kind, std::vector<Int>(static_cast<std::size_t>(N) + 1)};
  PascalRow row;
  for (long n = 0; n <= N; ++n) {
    if (p.kind == Kind::egf) row.advance_to(n);
    Int acc = 0;
    for (long k = 0; k <= n; ++k) {
      if (k > p.degree() || n - k > q.degree()) continue;
      if (p[k] == 0 || q[n - k] == 0) continue;
      if (p.kind == Kind::egf) {
        Int term = row.choose(k) * p[k];
        mpz_addmul(acc.get_mpz_t(), term.get_mpz_t(), q[n - k].get_mpz_t());
      } else {
        mpz_addmul(acc.get_mpz_t(), p[k].get_mpz_t(), q[n - k].get_mpz_t());
      }
    }
    out.values[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

inline bool is_unit_sequence(const CoeffSeq& s) {
  if (s.values.empty() || s.values[0] != 1) return false;
  for (std::size_t i = 1; i < s.values.size(); ++i)
    if (s.values[i] != 0) return false;
  return true;
}

// ---- finite analytic certificates ----
//
// The m-family pairs f and g with ordinary rational coefficients:
//   f_k = (-1)^k / k!          for k <= 2m-1,
//   f_k = 1 / k!               for even k >= 2m+2,  0 otherwise;
//   g_n = a^n                  for m = 1,
//   g_n = 1/n! (n <= 2m-1), a^n (n >= 2m)   for m >= 2.
// Returns the coefficients of 1 - f*g for degrees 0..N, exactly.
inline std::vector<Rat> certificate_product(int m, const Rat& a, long N) {
  if (m < 1) throw Error("invalid_argument", "certificate family needs m >= 1");
  if (a <= 0) throw Error("invalid_argument", "certificate rate a must be > 0");

  std::vector<Rat> f(static_cast<std::size_t>(N) + 1, Rat(0));
  f[0] = 1;
  Int kfact = 1;
  for (long k = 1; k <= N; ++k) {
    kfact *= k;
    if (k <= 2 * m - 1)
      f[static_cast<std::size_t>(k)] = Rat((k % 2 == 0) ? 1 : -1) / Rat(kfact);
    else if (k >= 2 * m + 2 && k % 2 == 0)
      f[static_cast<std::size_t>(k)] = Rat(1) / Rat(kfact);
  }

  std::vector<Rat> g(static_cast<std::size_t>(N) + 1, Rat(0));
  Rat apow = 1;
  Int nfact = 1;
  for (long n = 0; n <= N; ++n) {
    if (n > 0) {
      apow *= a;
      nfact *= n;
    }
    if (m >= 2 && n <= 2 * m - 1)
      g[static_cast<std::size_t>(n)] = Rat(1) / Rat(nfact);
    else
      g[static_cast<std::size_t>(n)] = apow;
  }

  std::vector<Rat> p(static_cast<std::size_t>(N) + 1, Rat(0));
  for (long n = 0; n <= N; ++n) {
    Rat acc = 0;
    for (long k = 0; k <= n; ++k) {
      if (f[static_cast<std::size_t>(k)] == 0) continue;
      acc += f[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(n - k)];
    }
    p[static_cast<std::size_t>(n)] = (n == 0 ? Rat(Rat(1) - acc) : Rat(-acc));
    p[static_cast<std::size_t>(n)].canonicalize();
  }
  return p;
}

} // namespace thinseries

#endif
