#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "coauthor/cohort.hpp"

using namespace coauthor;

namespace {

long double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  long double n = x.size(), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double a = x[i], b = y[i];
    sx += a;
    sy += b;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

long double chi_square_oracle(const std::vector<std::vector<long long>>& t) {
  long double total = 0;
  std::vector<long double> rows(t.size(), 0), cols(t[0].size(), 0);
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      rows[r] += t[r][c];
      cols[c] += t[r][c];
      total += t[r][c];
    }
  long double s = 0;
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      long double e = rows[r] * cols[c] / total;
      s += (t[r][c] - e) * (t[r][c] - e) / e;
    }
  return s;
}

double rel_err(long double got, long double want) {
  return static_cast<double>(std::fabs(got - want) / std::max<long double>(std::fabs(want), 1e-300L));
}

}  // namespace

TEST(SizeCategory, Boundaries) {
  EXPECT_EQ(size_category(10), SizeCategory::small);
  EXPECT_EQ(size_category(40), SizeCategory::medium);
  EXPECT_EQ(size_category(41), SizeCategory::large);
  for (int n = 1; n <= 200; ++n) {
    auto expected = n <= 10 ? SizeCategory::small : n <= 40 ? SizeCategory::medium : SizeCategory::large;
    EXPECT_EQ(size_category(n), expected) << n;
  }
  EXPECT_THROW(size_category(0), Error);
}

TEST(AgeCohort, AllPatterns) {
  EXPECT_EQ(age_cohort({true, true, true}), (AgeClass{AgeCohort::continuous, false}));
  EXPECT_EQ(age_cohort({true, true, false}), (AgeClass{AgeCohort::extinct, false}));
  EXPECT_EQ(age_cohort({true, false, true}), (AgeClass{AgeCohort::continuous, true}));
  EXPECT_EQ(age_cohort({false, true, true}), (AgeClass{AgeCohort::recent, false}));
  EXPECT_EQ(age_cohort({false, false, true}), (AgeClass{AgeCohort::newcomer, false}));
  EXPECT_EQ(age_cohort({false, true, false}), (AgeClass{AgeCohort::extinct, false}));
  EXPECT_EQ(age_cohort({true, false, false}), (AgeClass{AgeCohort::extinct, false}));
  EXPECT_THROW(age_cohort({false, false, false}), Error);
}

TEST(Pearson, Examples) {
  std::vector<double> x = {1, 2, 3};
  EXPECT_NEAR(pearson_r(x, std::vector<double>{2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(pearson_r(x, std::vector<double>{6, 4, 2}), -1.0, 1e-15);
  EXPECT_NEAR(pearson_r(x, std::vector<double>{1, 3, 2}), 0.5, 1e-15);
  EXPECT_THROW(pearson_r(x, std::vector<double>{5, 5, 5}), Error);
  EXPECT_THROW(pearson_r(x, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(pearson_r(x, std::vector<double>{0, 1, 2}, true), Error);
}

TEST(Pearson, MatchesOracleAndProperties) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.5, 200.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 3 + rng() % 60;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = 0.3 * x[i] + u(rng);
    }
    double r = pearson_r(x, y);
    EXPECT_LT(rel_err(r, pearson_oracle(x, y)), 1e-9);
    EXPECT_NEAR(r, pearson_r(y, x), 1e-15);
    std::vector<double> affine(n), flipped(n), lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
      affine[i] = 3.5 * x[i] + 7;
      flipped[i] = -2 * x[i] + 1;
      lx[i] = std::log(x[i]);
      ly[i] = std::log(y[i]);
    }
    EXPECT_NEAR(pearson_r(affine, y), r, 1e-12);
    EXPECT_NEAR(pearson_r(flipped, y), -r, 1e-12);
    EXPECT_NEAR(pearson_r(x, y, true), pearson_r(lx, ly), 1e-12);
  }
}

TEST(ChiSquare, HandCases) {
  auto r = chi_square(ContingencyTable({{10, 20}, {20, 10}}));
  EXPECT_NEAR(r.statistic, 20.0 / 3.0, 1e-12);
  EXPECT_EQ(text::format_fixed(r.statistic, 4), "6.6667");
  EXPECT_EQ(r.df, 1);
  EXPECT_EQ(r.n, 60);
  auto zero = chi_square(ContingencyTable({{5, 5}, {5, 5}}));
  EXPECT_EQ(zero.statistic, 0.0);
  EXPECT_EQ(zero.p, 1.0);
  EXPECT_NEAR(chi_square(ContingencyTable({{2, 4, 6}, {3, 6, 9}})).statistic, 0.0, 1e-12);
  EXPECT_THROW(chi_square(ContingencyTable({{0, 0}, {1, 2}})), Error);
  EXPECT_THROW(ContingencyTable({{1, 2}}), Error);
  EXPECT_THROW(ContingencyTable({{1, 2}, {3}}), Error);
  EXPECT_THROW(ContingencyTable({{1, -2}, {3, 4}}), Error);
}

TEST(ChiSquare, MatchesOracles) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 2 + rng() % 4, cols = 2 + rng() % 4;
    std::vector<std::vector<long long>> t(rows, std::vector<long long>(cols));
    for (auto& row : t)
      for (auto& v : row) v = 1 + static_cast<long long>(rng() % 50);
    auto r = chi_square(ContingencyTable(t));
    EXPECT_LT(rel_err(r.statistic, chi_square_oracle(t)), 1e-9);
    EXPECT_EQ(r.df, static_cast<int>((rows - 1) * (cols - 1)));
    double p = boost::math::gamma_q(0.5 * r.df, 0.5 * r.statistic);
    EXPECT_NEAR(r.p, p, 1e-12 + 1e-9 * p);
  }
}

TEST(GammaQ, AgainstBoostOverGrid) {
  for (double a : {0.5, 1.0, 1.5, 2.0, 4.5, 10.0, 30.0})
    for (double x : {1e-6, 0.01, 0.3, 1.0, 2.5, 7.0, 20.0, 60.0, 150.0}) {
      double want = boost::math::gamma_q(a, x);
      EXPECT_NEAR(gamma_q(a, x), want, 1e-13 + 1e-9 * want) << a << " " << x;
    }
  EXPECT_THROW(gamma_q(0, 1), Error);
  EXPECT_EQ(gamma_q(2, 0), 1.0);
}

TEST(Percentile, RankRule) {
  std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_DOUBLE_EQ(percentile(v, 0.25), 2.5);
  EXPECT_DOUBLE_EQ(percentile(v, 0.5), 5.0);
  EXPECT_DOUBLE_EQ(percentile(v, 0.75), 7.5);
  EXPECT_DOUBLE_EQ(percentile(v, 0.05), 1.0);
  EXPECT_DOUBLE_EQ(percentile(v, 0.99), 9.0);
  EXPECT_DOUBLE_EQ(percentile({4, 1, 3, 2}, 0.5), 2.5);
  EXPECT_THROW(percentile({}, 0.5), Error);
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> s(1 + rng() % 30);
    for (auto& x : s) x = static_cast<double>(rng() % 100);
    double prev = -1;
    for (double p = 0; p <= 1.0; p += 0.05) {
      double q = percentile(s, p);
      EXPECT_GE(q, prev);
      EXPECT_GE(q, *std::min_element(s.begin(), s.end()));
      EXPECT_LE(q, *std::max_element(s.begin(), s.end()));
      prev = q;
    }
  }
}

TEST(PValue, Formatting) {
  EXPECT_EQ(format_p_value(0.0123456), "0.01235");
  EXPECT_EQ(format_p_value(1e-20), "< 1e-16");
}
