#pragma once

// Agreement, classification and planning statistics.

#include <optional>
#include <vector>

namespace psi {

struct Confusion2x2 {
  long truePos = 0;
  long falsePos = 0;
  long falseNeg = 0;
  long trueNeg = 0;

  long total() const { return truePos + falsePos + falseNeg + trueNeg; }
};

// (po - pe) / (1 - pe). Empty when pe == 1 (degenerate). Throws
// std::domain_error on an empty or negative table.
std::optional<double> cohen_kappa(const Confusion2x2& c);

struct PrecisionRecall {
  std::optional<double> precision;  // empty when TP + FP == 0
  std::optional<double> recall;     // empty when TP + FN == 0
};
PrecisionRecall precision_recall(const Confusion2x2& c);

// scores[subject][rater].
using RaterMatrix = std::vector<std::vector<double>>;

// ICC(2,1): two-way random effects, absolute agreement, single rater.
// Empty when the matrix has no variance at all. Throws
// std::invalid_argument unless n >= 2, k >= 2 and every row has k cells.
std::optional<double> icc_absolute_agreement(const RaterMatrix& m);

// Standard normal quantile: Acklam's rational approximation polished by
// one Halley step (absolute error well below 1e-9). p in (0, 1).
double normal_quantile(double p);

// Participants needed to detect correlation |r| with a two-tailed test:
// ceil(((z_{1-alpha/2} + z_power) / atanh(r))^2 + 3). Throws
// std::domain_error for arguments outside (0, 1).
int power_sample_size(double r, double alpha, double power);

struct MedianIqr {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

// Type-7 quantile of ascending `sorted`, q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q);
// Throw std::domain_error on empty input.
MedianIqr median_iqr(std::vector<double> values);
double median(std::vector<double> values);

}  // namespace psi
