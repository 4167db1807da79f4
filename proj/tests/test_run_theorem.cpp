#include <algorithm>
#include <map>
#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include "thinseries/run_theorem.hpp"
#include "thinseries/series.hpp"

using namespace thinseries;

namespace {

// Enumeration oracle: count permutations of [n] by run composition.
std::map<std::vector<long>, Int> run_census(int n) {
  std::map<std::vector<long>, Int> census;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    census[run_composition(perm).parts] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return census;
}

template <typename F>
void for_each_composition(long n, F&& f) {
  std::vector<long> parts;
  auto rec = [&](auto&& self, long remaining) -> void {
    if (remaining == 0) {
      f(parts);
      return;
    }
    for (long p = 1; p <= remaining; ++p) {
      parts.push_back(p);
      self(self, remaining - p);
      parts.pop_back();
    }
  };
  rec(rec, n);
}

} // namespace

TEST_CASE("run compositions") {
  CHECK(run_composition({1, 3, 2}).parts == std::vector<long>{2, 1});
  CHECK(run_composition({1, 2, 3, 4}).parts == std::vector<long>{4});
  CHECK(run_composition({4, 3, 2, 1}).parts == std::vector<long>{1, 1, 1, 1});
  CHECK(run_composition({}).parts.empty());
}

TEST_CASE("beta on boundary compositions") {
  CHECK(beta(Composition{{5}}) == 1);
  CHECK(beta(Composition{{1, 1, 1, 1, 1}}) == 1);
  CHECK(beta(Composition{{2, 1}}) == 2);
}

TEST_CASE("beta equals the permutation census up to n = 7") {
  for (int n = 1; n <= 7; ++n) {
    auto census = run_census(n);
    for_each_composition(n, [&](const std::vector<long>& parts) {
      Int expected = census.count(parts) ? census[parts] : Int(0);
      CAPTURE(n, parts);
      CHECK(beta(Composition{parts}) == expected);
    });
  }
}

TEST_CASE("coarsening and descent-DP beta paths agree") {
  for (int n = 1; n <= 9; ++n) {
    for_each_composition(n, [&](const std::vector<long>& parts) {
      CHECK(detail::beta_coarsening(parts) == detail::beta_descent_dp(parts));
    });
  }
}

TEST_CASE("betas over all compositions sum to n!") {
  for (long n = 0; n <= 10; ++n) {
    Int total = 0;
    for_each_composition(n, [&](const std::vector<long>& parts) {
      total += beta(Composition{parts});
    });
    Int expect = factorial(n);
    CHECK(total == expect);
  }
}

TEST_CASE("run-theorem coefficients match the recurrence on the corpus") {
  std::vector<ThinnedSpec> corpus = {
      ThinnedSpec(SizeSet{1, 3}, SizeSet{2}),
      ThinnedSpec(SizeSet{1, 3}, SizeSet{}),
      ThinnedSpec(SizeSet{1, 3, 5}, SizeSet{2}),
      ThinnedSpec(SizeSet{1}, SizeSet({4}, {Progression{6, 2}})),
      ThinnedSpec(SizeSet{1, 4}, SizeSet{3}, 1, 3),
      ThinnedSpec(SizeSet{2, 6}, SizeSet{4}, 2, 2),
  };
  for (const ThinnedSpec& spec : corpus) {
    const long N = 12;
    RunTheoremResult r = run_theorem_coeffs(spec, N);
    CoeffSeq c = egf_reciprocal_coeffs(spec, N);
    CHECK(r.b.values == c.values);
  }
}

TEST_CASE("direct composition sum and DP agree past the cap") {
  ThinnedSpec spec(SizeSet{1, 3}, SizeSet{2});
  CoeffSeq w = ogf_reciprocal(thinned_ogf(spec, 14), 14);
  for (long n = 0; n <= 14; ++n)
    CHECK(weighted_composition_sum(w.values, n) ==
          weighted_perm_total_dp(w.values, n));
}

TEST_CASE("w sequence of {1,5,6,7} begins 1,1,1,1,1,2") {
  ThinnedSpec spec(SizeSet{1, 5, 7}, SizeSet{6});
  RunTheoremResult r = run_theorem_coeffs(spec, 5);
  std::vector<Int> expect{Int(1), Int(1), Int(1), Int(1), Int(1), Int(2)};
  CHECK(r.w.values == expect);
  CHECK(r.w_all_nonneg);
}

TEST_CASE("initial-even-segment specs report negative w") {
  // A u B = [2]: w = 1, 1, 0, -1, ...
  ThinnedSpec spec(SizeSet{1}, SizeSet{2});
  RunTheoremResult r = run_theorem_coeffs(spec, 6);
  CHECK_FALSE(r.w_all_nonneg);
  REQUIRE(r.first_negative_w.has_value());
  CHECK(*r.first_negative_w == 3);
  CHECK(r.w[3] == -1);
  // the egf identity still holds
  CHECK(r.b.values == egf_reciprocal_coeffs(spec, 6).values);
}

TEST_CASE("structured S for an initial segment is the single top successor") {
  // A u B = [2m-1], m = 3: S = {6}, first block may have size 1
  ThinnedSpec spec(SizeSet{1, 3, 5}, SizeSet{2, 4});
  StructuredS s = structured_S(spec, 40);
  CHECK(s.S.enumerate(40) == std::vector<long>{6});
  CHECK(s.first_block_extras == std::vector<long>{1});
  CoeffSeq w = ogf_reciprocal(thinned_ogf(spec, 30), 30);
  for (long n = 0; n <= 30; ++n) {
    CAPTURE(n);
    CHECK(structured_composition_count(n, s) == w[n]);
  }
}

TEST_CASE("structured S of {1} u [5,inf) is {2,5}") {
  ThinnedSpec spec(SizeSet({1, 5}, {Progression{7, 2}}),
                   SizeSet({}, {Progression{6, 2}}));
  StructuredS s = structured_S(spec, 40);
  CHECK(s.S.enumerate(40) == std::vector<long>{2, 5});
  CoeffSeq w = ogf_reciprocal(thinned_ogf(spec, 30), 30);
  for (long n = 0; n <= 30; ++n)
    CHECK(structured_composition_count(n, s) == w[n]);
}

TEST_CASE("structured S composition counts across a stretched corpus") {
  std::vector<ThinnedSpec> corpus = {
      ThinnedSpec(SizeSet{1, 4}, SizeSet{3}, 1, 3),
      ThinnedSpec(SizeSet{2, 6}, SizeSet{4}, 2, 2),
      ThinnedSpec(SizeSet{1, 7, 13}, SizeSet{12}, 1, 6),
      ThinnedSpec(SizeSet({1, 5}, {Progression{9, 4}}),
                  SizeSet({4}, {Progression{8, 4}}), 1, 4),
  };
  for (const ThinnedSpec& spec : corpus) {
    StructuredS s = structured_S(spec, 60);
    CoeffSeq w = ogf_reciprocal(thinned_ogf(spec, 30), 30);
    for (long n = 0; n <= 30; ++n) {
      CAPTURE(spec.r(), spec.b(), n);
      CHECK(structured_composition_count(n, s) == w[n]);
    }
  }
}

TEST_CASE("all of N* yields the bare first-block allowance") {
  // r = 3, b = 1, A u B = N*: 1/g = 1 + x + x^2
  ThinnedSpec spec(SizeSet({1}, {Progression{1, 3}}),
                   SizeSet({}, {Progression{3, 3}}), 1, 3);
  StructuredS s = structured_S(spec, 40);
  CHECK(s.S.enumerate(40).empty());
  CHECK(s.first_block_extras == std::vector<long>{1, 2});
  CoeffSeq w = ogf_reciprocal(thinned_ogf(spec, 10), 10);
  std::vector<Int> expect{Int(1), Int(1), Int(1), Int(0), Int(0), Int(0),
                          Int(0), Int(0), Int(0), Int(0), Int(0)};
  CHECK(w.values == expect);
  for (long n = 0; n <= 10; ++n)
    CHECK(structured_composition_count(n, s) == w[n]);
}

TEST_CASE("structured S rejects unsuitable specs") {
  CHECK_THROWS_AS(structured_S(ThinnedSpec(SizeSet{1}, SizeSet{2}), 30), Error);
  CHECK_THROWS_AS(structured_S(ThinnedSpec(SizeSet{3}, SizeSet{}), 30), Error);
}
