#include "slidefuse/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace slidefuse {

std::string_view significance_marker(Significance level) {
  switch (level) {
    case Significance::none: return "";
    case Significance::p05: return "*";
    case Significance::p01: return "**";
  }
  return "";
}

double student_t_critical(double alpha, std::size_t df) {
  if (df == 0) throw std::invalid_argument("student_t_critical: df must be positive");
  boost::math::students_t_distribution<double> dist(static_cast<double>(df));
  return boost::math::quantile(dist, 1.0 - alpha / 2.0);
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired_t_test: samples differ in length");
  }
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("paired_t_test: need at least two pairs");

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] - b[i];
  const double mean_diff = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = (a[i] - b[i]) - mean_diff;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult result;
  result.df = n - 1;
  if (mean_diff == 0.0) return result;
  // Differences that are equal up to rounding count as zero variance.
  if (sd <= std::fabs(mean_diff) * 1e-12) {
    result.t = std::copysign(std::numeric_limits<double>::infinity(), mean_diff);
    result.level = Significance::p01;
    result.degenerate = true;
    return result;
  }
  result.t = mean_diff / (sd / std::sqrt(static_cast<double>(n)));
  const double abs_t = std::fabs(result.t);
  if (abs_t > student_t_critical(0.01, result.df)) {
    result.level = Significance::p01;
  } else if (abs_t > student_t_critical(0.05, result.df)) {
    result.level = Significance::p05;
  }
  return result;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean: no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double coefficient_of_variation(std::span<const double> values) {
  const double mu = mean(values);
  if (mu == 0.0) throw std::invalid_argument("coefficient_of_variation: mean is zero");
  // The rounded mean of identical values can differ from them by an ulp.
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size())) / mu;
}

}  // namespace slidefuse
