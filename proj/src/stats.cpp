#include "psi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psi {

std::optional<double> cohen_kappa(const Confusion2x2& c) {
  if (c.truePos < 0 || c.falsePos < 0 || c.falseNeg < 0 || c.trueNeg < 0) {
    throw std::domain_error("confusion counts must be non-negative");
  }
  const double n = static_cast<double>(c.total());
  if (n == 0) throw std::domain_error("confusion table is empty");
  const double po = (c.truePos + c.trueNeg) / n;
  // Rater A says positive in TP + FP cases, rater B in TP + FN.
  const double aPos = (c.truePos + c.falsePos) / n;
  const double bPos = (c.truePos + c.falseNeg) / n;
  const double pe = aPos * bPos + (1 - aPos) * (1 - bPos);
  if (pe >= 1.0) return std::nullopt;
  return (po - pe) / (1 - pe);
}

PrecisionRecall precision_recall(const Confusion2x2& c) {
  PrecisionRecall r;
  if (c.truePos + c.falsePos > 0) r.precision = static_cast<double>(c.truePos) / (c.truePos + c.falsePos);
  if (c.truePos + c.falseNeg > 0) r.recall = static_cast<double>(c.truePos) / (c.truePos + c.falseNeg);
  return r;
}

std::optional<double> icc_absolute_agreement(const RaterMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw std::invalid_argument("ICC needs at least two subjects");
  const std::size_t k = m[0].size();
  if (k < 2) throw std::invalid_argument("ICC needs at least two raters");
  for (const auto& row : m) {
    if (row.size() != k) throw std::invalid_argument("ICC rater matrix has missing cells");
  }
  double grand = 0.0;
  std::vector<double> rowMean(n, 0.0);
  std::vector<double> colMean(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      grand += m[i][j];
      rowMean[i] += m[i][j] / k;
      colMean[j] += m[i][j] / n;
    }
  }
  grand /= static_cast<double>(n * k);
  double ssRows = 0.0, ssCols = 0.0, ssTotal = 0.0;
  for (std::size_t i = 0; i < n; ++i) ssRows += k * (rowMean[i] - grand) * (rowMean[i] - grand);
  for (std::size_t j = 0; j < k; ++j) ssCols += n * (colMean[j] - grand) * (colMean[j] - grand);
  for (const auto& row : m) {
    for (double x : row) ssTotal += (x - grand) * (x - grand);
  }
  if (ssTotal <= 0.0) return std::nullopt;
  const double ssErr = ssTotal - ssRows - ssCols;
  const double msr = ssRows / (n - 1);
  const double msc = ssCols / (k - 1);
  const double mse = ssErr / ((n - 1) * (k - 1));
  const double denom = msr + (k - 1) * mse + k * (msc - mse) / n;
  if (denom == 0.0) return std::nullopt;
  return (msr - mse) / denom;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal quantile needs p in (0, 1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                             1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                             6.680131188771972e+01,  -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                             -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                             3.754408661907416e+00};
  constexpr double pLow = 0.02425;
  double x;
  if (p < pLow) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - pLow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // Halley refinement against the exact CDF.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

int power_sample_size(double r, double alpha, double power) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("correlation must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  if (!(power > 0.0 && power < 1.0)) throw std::domain_error("power must lie in (0, 1)");
  const double c = 0.5 * std::log((1 + r) / (1 - r));
  const double z = normal_quantile(1 - alpha / 2) + normal_quantile(power);
  return static_cast<int>(std::ceil((z / c) * (z / c) + 3));
}

double quantile_sorted(const std::vector<double>& s, double q) {
  if (s.empty()) throw std::domain_error("quantile of an empty list");
  const double h = (s.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - lo) * (s[hi] - s[lo]);
}

MedianIqr median_iqr(std::vector<double> values) {
  if (values.empty()) throw std::domain_error("median of an empty list");
  std::sort(values.begin(), values.end());
  return {quantile_sorted(values, 0.5), quantile_sorted(values, 0.25), quantile_sorted(values, 0.75)};
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::domain_error("median of an empty list");
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, 0.5);
}

}  // namespace psi
