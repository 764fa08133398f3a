#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace slidefuse {

enum class Significance { none, p05, p01 };

/// "", "*" or "**".
std::string_view significance_marker(Significance level);

struct TTestResult {
  /// Infinite when the differences have zero variance and nonzero mean.
  double t = 0.0;
  std::size_t df = 0;
  Significance level = Significance::none;
  /// Set for the zero-variance, nonzero-mean case, reported as significant
  /// at 1% without a finite statistic.
  bool degenerate = false;

  bool significant_at_5() const noexcept { return level != Significance::none; }
  bool significant_at_1() const noexcept { return level == Significance::p01; }
};

/// Two-tailed paired t-test on a[i] - b[i], df = n - 1, compared against
/// Student-t critical values at the 5% and 1% levels.
/// Throws std::invalid_argument when sizes differ or n < 2.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// Two-tailed critical value t* with P(|T| > t*) = alpha for `df` degrees of
/// freedom.
double student_t_critical(double alpha, std::size_t df);

double mean(std::span<const double> values);

/// Population standard deviation divided by the mean.
/// Throws std::invalid_argument on empty input or zero mean.
double coefficient_of_variation(std::span<const double> values);

}  // namespace slidefuse
