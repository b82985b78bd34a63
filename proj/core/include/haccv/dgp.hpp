#ifndef HACCV_DGP_HPP
#define HACCV_DGP_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

#include "haccv/rng.hpp"

namespace haccv {

/// AR(p) process: x_t = intercept + sum_k coeffs[k-1] x_{t-k} + e_t, e_t ~ N(0, sd^2).
struct ArSpec {
  double intercept = 0.0;
  std::vector<double> coeffs;
  double innovation_sd = 1.0;

  bool stationary() const;
  /// Stationary mean: intercept / (1 - sum of coefficients).
  double mean() const;
  int order() const { return static_cast<int>(coeffs.size()); }
};

/// MA(2) process: x_t = intercept + e_t + coeffs[0] e_{t-1} + coeffs[1] e_{t-2}.
struct MaSpec {
  double intercept = 0.0;
  std::array<double, 2> coeffs{0.0, 0.0};
  double innovation_sd = 1.0;
};

using SeriesSpec = std::variant<ArSpec, MaSpec>;

struct RegressionDataset {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;  // n x (d+1), first column all ones
  Eigen::VectorXd true_beta;

  int n() const { return static_cast<int>(X.rows()); }
  int d() const { return static_cast<int>(X.cols()) - 1; }
};

/// Draw from the stationary AR(p); 1000 burn-in steps from the process mean.
Eigen::VectorXd simulate_ar(const ArSpec& spec, int n, RngStream& stream);

/// Exact stationary MA(2) draw (innovations pre-sampled for lags -2, -1).
Eigen::VectorXd simulate_ma(const MaSpec& spec, int n, RngStream& stream);

Eigen::VectorXd simulate(const SeriesSpec& spec, int n, RngStream& stream);

/// Builds y = X beta + u with independent regressor/error streams keyed by
/// (master_seed, repetition, series); regressor i uses series i, the error d.
RegressionDataset make_dataset(const std::vector<SeriesSpec>& regressor_specs,
                               const SeriesSpec& error_spec, const Eigen::VectorXd& beta,
                               int n, std::uint64_t master_seed, std::uint64_t repetition);

/// Exact AR autocovariances gamma(0..max_lag) from the Yule-Walker system.
Eigen::VectorXd acvf_ar(const ArSpec& spec, int max_lag);

/// Exact MA(2) autocovariances gamma(0..max_lag).
Eigen::VectorXd acvf_ma(const MaSpec& spec, int max_lag);

/// Gamma_V(r) = gamma_u(r) * (Gamma_X(r) + mu_X mu_X') for V_t = u_t X_t with
/// X and u independent and Gaussian. gamma_X holds Gamma_X(0..L); negative r
/// uses Gamma_X(-r)' and gamma_u(|r|).
Eigen::MatrixXd gamma_v_oracle(const Eigen::VectorXd& gamma_u,
                               const std::vector<Eigen::MatrixXd>& gamma_X,
                               const Eigen::VectorXd& mu_X, int r);

}  // namespace haccv

#endif
