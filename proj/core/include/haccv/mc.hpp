#ifndef HACCV_MC_HPP
#define HACCV_MC_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "haccv/cvll.hpp"
#include "haccv/dgp.hpp"
#include "haccv/regress.hpp"

namespace haccv {

enum class DgpKind { kAr1, kAr2, kAr3, kMa2 };

/// Monte Carlo scenario. AR(p) DGPs split phi evenly across the p lags, the
/// design used throughout the simulation grids; MA(2) uses (theta1, theta2).
struct McConfig {
  DgpKind dgp = DgpKind::kAr1;
  double phi = 0.3;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double alpha = 0.0;       // regressor intercept; the error never has one
  int d = 3;
  int n = 100;
  int repetitions = 1000;
  std::vector<EstimatorTag> estimators{EstimatorTag::kAm, EstimatorTag::kAmPw,
                                       EstimatorTag::kAmPwUnadj, EstimatorTag::kCvll};
  int target_coef = 1;
  std::uint64_t seed = 20240501;
  double c = 0.8;
  LooRefitPolicy cvll_refit = LooRefitPolicy::kFullSampleCoefficients;
  int threads = 0;  // 0 = hardware concurrency

  std::vector<SeriesSpec> regressor_specs() const;
  SeriesSpec error_spec() const;
};

struct EstimatorMetrics {
  int included = 0;
  int excluded = 0;  // repetitions dropped for this estimator (non-finite or failed)
  double mean_estimate = 0.0;
  double bias = 0.0;
  double variance = 0.0;  // population divisor, so mse = bias^2 + variance exactly
  double mse = 0.0;
  std::array<double, 3> coverage{0.0, 0.0, 0.0};  // 90 / 95 / 99 percent
  double mean_ci_width_95 = 0.0;
  // AM-PW diagnostics
  double trigger_frequency = 0.0;
  double mean_distortion = 0.0;
  // CVLL diagnostics
  double mean_selected_order = 0.0;
  std::map<int, int> bandwidth_histogram;
  std::map<int, int> order_histogram;
};

struct McReport {
  McConfig config;
  double true_value = 0.0;  // n times the cross-repetition variance of beta_hat_1
  std::vector<EstimatorTag> estimators;
  std::vector<EstimatorMetrics> metrics;  // parallel to estimators

  const EstimatorMetrics& for_estimator(EstimatorTag tag) const;
  std::string to_csv() const;
  std::string to_markdown() const;
};

McReport run_monte_carlo(const McConfig& config);

/// Deterministic index-parallel loop: every index writes only its own slot.
void parallel_for_index(int count, int threads, const std::function<void(int)>& body);

}  // namespace haccv

#endif
