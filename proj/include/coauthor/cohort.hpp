// Categorical and statistical helpers for cluster populations: size classes,
// age cohorts over three time slices, Pearson correlation, percentiles and
// the Pearson chi-square test of independence.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coauthor/text.hpp"

namespace coauthor {

enum class SizeCategory { small, medium, large };

inline constexpr std::array kSizeCategories = {SizeCategory::small, SizeCategory::medium, SizeCategory::large};

/// small: n <= 10, medium: 10 < n <= 40, large: n > 40.
inline SizeCategory size_category(long long n) {
  if (n < 1) throw Error("cluster size must be positive");
  if (n <= 10) return SizeCategory::small;
  if (n <= 40) return SizeCategory::medium;
  return SizeCategory::large;
}

inline std::string_view to_string(SizeCategory c) {
  switch (c) {
    case SizeCategory::small: return "small";
    case SizeCategory::medium: return "medium";
    case SizeCategory::large: return "large";
  }
  return "?";
}

enum class AgeCohort { continuous, recent, newcomer, extinct };

inline constexpr std::array kAgeCohorts = {AgeCohort::continuous, AgeCohort::recent, AgeCohort::newcomer,
                                           AgeCohort::extinct};

inline std::string_view to_string(AgeCohort c) {
  switch (c) {
    case AgeCohort::continuous: return "continuous";
    case AgeCohort::recent: return "recent";
    case AgeCohort::newcomer: return "new";
    case AgeCohort::extinct: return "extinct";
  }
  return "?";
}

struct AgeClass {
  AgeCohort cohort = AgeCohort::continuous;
  bool gap = false;  // active in the first and last slice but not the middle one
  friend bool operator==(const AgeClass&, const AgeClass&) = default;
};

/// Cohort of a cluster from its activity in three consecutive time slices.
/// The pattern (1,0,1) counts as continuous and sets `gap`.
inline AgeClass age_cohort(std::array<bool, 3> active) {
  auto [first, second, third] = active;
  if (!first && !second && !third) throw Error("cluster with no activity");
  if (!third) return {AgeCohort::extinct, false};
  if (first && second) return {AgeCohort::continuous, false};
  if (first) return {AgeCohort::continuous, true};
  if (second) return {AgeCohort::recent, false};
  return {AgeCohort::newcomer, false};
}

/// Product-moment correlation. With `log_scale` both series are log-transformed
/// first (all values must then be positive).
inline double pearson_r(std::span<const double> x, std::span<const double> y, bool log_scale = false) {
  if (x.size() != y.size()) throw Error("series lengths differ");
  if (x.size() < 3) throw Error("at least three observations required");
  const std::size_t n = x.size();
  std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
  if (log_scale) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] <= 0 || b[i] <= 0) throw Error("log scale requires positive values");
      a[i] = std::log(a[i]);
      b[i] = std::log(b[i]);
    }
  }
  double mean_a = 0, mean_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double da = a[i] - mean_a, db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0 || sbb == 0) throw Error("degenerate series");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

/// Percentile by the (n+1)p rank rule with linear interpolation, clamped to the
/// sample range. `p` in [0,1].
inline double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw Error("percentile of empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double rank = p * (n + 1.0);
  if (rank <= 1.0) return values.front();
  if (rank >= n) return values.back();
  auto lo = static_cast<std::size_t>(std::floor(rank));
  double frac = rank - static_cast<double>(lo);
  return values[lo - 1] + frac * (values[lo] - values[lo - 1]);
}

namespace detail {

// Regularized lower incomplete gamma P(a, x) by its power series (x < a + 1).
inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a, sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz's continued fraction (x >= a + 1).
inline double gamma_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 100000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

/// Regularized upper incomplete gamma function Q(a, x).
inline double gamma_q(double a, double x) {
  if (a <= 0) throw Error("gamma_q requires a > 0");
  if (x <= 0) return 1.0;
  if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
  return detail::gamma_q_fraction(a, x);
}

/// Upper tail probability of the chi-square distribution.
inline double chi_square_survival(double statistic, int df) {
  if (df < 1) throw Error("degrees of freedom must be positive");
  return gamma_q(0.5 * df, 0.5 * statistic);
}

/// Non-negative integer counts with row and column labels.
class ContingencyTable {
 public:
  ContingencyTable(std::vector<std::vector<long long>> counts, std::vector<std::string> row_labels = {},
                   std::vector<std::string> col_labels = {})
      : counts_(std::move(counts)), row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
    if (counts_.size() < 2) throw Error("contingency table needs at least 2 rows");
    const std::size_t cols = counts_.front().size();
    if (cols < 2) throw Error("contingency table needs at least 2 columns");
    for (const auto& row : counts_) {
      if (row.size() != cols) throw Error("ragged contingency table");
      for (auto v : row)
        if (v < 0) throw Error("negative count in contingency table");
    }
    if (row_labels_.empty())
      for (std::size_t r = 0; r < rows(); ++r) row_labels_.push_back(std::to_string(r + 1));
    if (col_labels_.empty())
      for (std::size_t c = 0; c < cols; ++c) col_labels_.push_back(std::to_string(c + 1));
    if (row_labels_.size() != rows() || col_labels_.size() != cols) throw Error("label count mismatch");
  }

  std::size_t rows() const noexcept { return counts_.size(); }
  std::size_t cols() const noexcept { return counts_.front().size(); }
  long long at(std::size_t r, std::size_t c) const { return counts_[r][c]; }
  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

  long long row_total(std::size_t r) const {
    long long s = 0;
    for (auto v : counts_[r]) s += v;
    return s;
  }
  long long col_total(std::size_t c) const {
    long long s = 0;
    for (const auto& row : counts_) s += row[c];
    return s;
  }
  long long total() const {
    long long s = 0;
    for (std::size_t r = 0; r < rows(); ++r) s += row_total(r);
    return s;
  }

  bool has_zero_marginal() const {
    for (std::size_t r = 0; r < rows(); ++r)
      if (row_total(r) == 0) return true;
    for (std::size_t c = 0; c < cols(); ++c)
      if (col_total(c) == 0) return true;
    return false;
  }

 private:
  std::vector<std::vector<long long>> counts_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p = 1.0;
  long long n = 0;
};

/// Pearson chi-square test of independence with expected counts from the marginals.
inline ChiSquareResult chi_square(const ContingencyTable& table) {
  if (table.has_zero_marginal()) throw Error("contingency table has a zero marginal");
  ChiSquareResult out;
  out.n = table.total();
  const double total = static_cast<double>(out.n);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const double rt = static_cast<double>(table.row_total(r));
    for (std::size_t c = 0; c < table.cols(); ++c) {
      double expected = rt * static_cast<double>(table.col_total(c)) / total;
      double diff = static_cast<double>(table.at(r, c)) - expected;
      out.statistic += diff * diff / expected;
    }
  }
  out.df = static_cast<int>((table.rows() - 1) * (table.cols() - 1));
  out.p = chi_square_survival(out.statistic, out.df);
  return out;
}

/// p-value text: four significant digits, or "< 1e-16" below that.
inline std::string format_p_value(double p) {
  if (p < 1e-16) return "< 1e-16";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", p);
  return buf;
}

}  // namespace coauthor
