#ifndef HACCV_REGRESS_HPP
#define HACCV_REGRESS_HPP

#include <Eigen/Dense>
#include <string>

#include "haccv/dgp.hpp"

namespace haccv {

struct OlsFit {
  Eigen::VectorXd beta_hat;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd xtx_over_n;  // S_n = X'X / n
};

/// Moment series V_t = u_hat_t * X_t, the object every LRV estimator consumes.
struct MomentSeries {
  Eigen::MatrixXd V;  // n x (d+1)

  int n() const { return static_cast<int>(V.rows()); }
  int d() const { return static_cast<int>(V.cols()) - 1; }
};

enum class EstimatorTag { kAm, kAmPw, kAmPwUnadj, kCvll };

std::string estimator_name(EstimatorTag tag);

/// LRV estimate of the moment series plus provenance.
struct HacEstimate {
  Eigen::MatrixXd s_hat;  // symmetric (d+1)x(d+1)
  EstimatorTag tag = EstimatorTag::kAm;
  int selected_order = 0;          // 0 when no prewhitening
  double selected_bandwidth = 0.0;
  bool adjustment_triggered = false;
  double adjustment_distortion = 0.0;  // ||A_adj - A||_{1,1} / ||A||_{1,1}
  double prewhitener_spectral_radius = 0.0;
};

/// Least squares via normal equations with a conditioning guard; throws
/// SingularMatrixError on collinear regressors instead of pseudo-inverting.
OlsFit ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);
OlsFit ols_fit(const RegressionDataset& data);

MomentSeries moment_series(const OlsFit& fit, const Eigen::MatrixXd& X);

/// S_n^{-1} S_hat S_n^{-1}, symmetrized.
Eigen::MatrixXd sandwich(const Eigen::MatrixXd& s_n, const Eigen::MatrixXd& s_hat);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// [beta_i - z_{alpha/2} se, beta_i + z_{alpha/2} se] with normal critical values.
Interval confidence_interval(double beta_i, double se_i, double alpha);

/// SE(beta_i) = sqrt(sandwich_ii / n); the sandwich estimates n Var(beta_hat).
double standard_error(const Eigen::MatrixXd& sandwich_matrix, int i, int n);

}  // namespace haccv

#endif
