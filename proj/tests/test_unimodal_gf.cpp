#include <gtest/gtest.h>

#include <sstream>

#include "oddbal/unimodal_gf.hpp"

using namespace oddbal;

namespace {
// Independent oracle: multiply out the defining sum directly with dense Laurent
// arithmetic and full q-Pochhammer products, no incremental updates.
RankTable direct_expansion(std::size_t N) {
  using L = Laurent<BigInt>;
  const L one(BigInt(1));
  TruncatedSeries<L> total(N, one);
  for (std::size_t n = 0; n <= N; ++n) {
    auto term = TruncatedSeries<L>::one(N, one);
    for (std::size_t k = 1; k <= n; ++k) {
      TruncatedSeries<L> f1(N, one), f2(N, one);
      f1[0] = one;
      f2[0] = one;
      if (k <= N) {
        f1[k] = L::monomial(1, 1);
        f2[k] = L::monomial(1, -1);
      }
      term = series_mul(series_mul(term, f1), f2);
    }
    for (std::size_t k = 0; k <= n; ++k) {  // 1/(1 - q^{2k+1})
      TruncatedSeries<L> g(N, one);
      for (std::size_t j = 0; j <= N; j += 2 * k + 1) g[j] = one;
      term = series_mul(term, g);
    }
    for (std::size_t k = N + 1; k-- > n;) total[k] = total[k] + term[k - n];
  }
  return RankTable::from_series(total);
}
}  // namespace

TEST(ExpandV, KnownSmallValues) {
  const auto t = expand_V_rank(5);
  EXPECT_EQ(t.total(0), 1);
  EXPECT_EQ(t.total(1), 2);
  EXPECT_EQ(t.total(2), 5);
  EXPECT_EQ(t.count(-1, 2), 1);
  EXPECT_EQ(t.count(0, 2), 3);
  EXPECT_EQ(t.count(1, 2), 1);
  EXPECT_EQ(t.count(2, 2), 0);
  EXPECT_THROW(t.total(6), index_out_of_range);
}

TEST(ExpandV, MatchesDirectProductExpansion) { EXPECT_TRUE(expand_V_rank(14) == direct_expansion(14)); }

TEST(ExpandV, RankSymmetry) {
  const auto t = expand_V_rank(60);
  for (std::size_t n = 0; n <= 60; ++n) {
    for (int m = 0; m <= static_cast<int>(n) + 1; ++m) EXPECT_EQ(t.count(m, n), t.count(-m, n));
  }
}

TEST(ExpandV, ScalarAndComplexAgreeWithRankTable) {
  const std::size_t N = 80;
  const auto t = expand_V_rank(N);
  const auto s = expand_V_scalar(N);
  const Complex w = std::polar(1.0, 0.9);
  const auto cx = expand_V_complex(w, N);
  for (std::size_t n = 0; n <= N; ++n) {
    EXPECT_EQ(s[n], t.total(n));
    Complex expect(0.0, 0.0);
    for (int m = -static_cast<int>(n) - 1; m <= static_cast<int>(n) + 1; ++m) {
      expect += t.count(m, n).convert_to<double>() * std::pow(w, m);
    }
    EXPECT_NEAR(std::abs(cx[n] - expect), 0.0, 1e-11 * std::abs(expect) + 1e-12) << n;
  }
}

TEST(ResidueTwist, OrthogonalityMatchesBucketing) {
  const std::size_t N = 90;
  const auto t = expand_V_rank(N);
  for (int c : {1, 2, 3, 5, 7}) {
    BigInt check = 0;
    for (int a = 0; a < c; ++a) {
      EXPECT_EQ(residue_twist_orthogonality(a, c, N), residue_twist(a, c, t)) << a << " mod " << c;
    }
    for (int a = 0; a < c; ++a) check += t.residue_count(a, c, N);
    EXPECT_EQ(check, t.total(N));
  }
}

TEST(ResidueTwist, RootSubstitutionAgrees) {
  const std::size_t N = 40;
  const auto t = expand_V_rank(N);
  for (int j = 0; j < 5; ++j) {
    const auto direct = expand_V_at_root(j, 5, N);
    const auto subst = substitute_root(t, j, 5);
    for (std::size_t n = 0; n <= N; ++n) EXPECT_TRUE(direct[n].equivalent(subst[n])) << j << ' ' << n;
  }
  EXPECT_THROW(expand_V_at_root(5, 5, 3), std::invalid_argument);
  EXPECT_THROW(residue_twist(3, 3, t), std::invalid_argument);
}

TEST(Partitions, KnownValues) {
  const auto p = expand_partition(100);
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[4], 5);
  EXPECT_EQ(p[10], 42);
  EXPECT_EQ(p[100], BigInt("190569292"));
  const auto pb = expand_overpartition(10);
  const std::vector<BigInt> expect{1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232};
  EXPECT_EQ(pb, expect);
}

TEST(Serialisation, CsvAndJson) {
  const auto t = expand_V_rank(2);
  std::ostringstream os;
  write_rank_table_csv(os, t);
  EXPECT_EQ(os.str(), "n,m,count\n0,0,1\n1,0,2\n2,-1,1\n2,0,3\n2,1,1\n");
  const auto j = rank_table_json(t);
  EXPECT_EQ(j["rows"][2]["total"], "5");
  EXPECT_EQ(j["rows"][2]["counts"]["0"], "3");
}

TEST(RankTable, RejectsMalformedRows) {
  EXPECT_THROW(RankTable({{BigInt(1)}}), std::invalid_argument);
  EXPECT_THROW(RankTable({}), std::invalid_argument);
}
