#include "haccv/regress.hpp"

#include <cmath>

#include "haccv/common.hpp"
#include "haccv/stats.hpp"

namespace haccv {

std::string estimator_name(EstimatorTag tag) {
  switch (tag) {
    case EstimatorTag::kAm: return "AM";
    case EstimatorTag::kAmPw: return "AM-PW";
    case EstimatorTag::kAmPwUnadj: return "AM-PW-unadj";
    case EstimatorTag::kCvll: return "CVLL";
  }
  return "?";
}

OlsFit ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  const int n = static_cast<int>(X.rows());
  if (y.size() != n) throw ConfigError("ols_fit: y and X row counts differ");
  if (n <= X.cols()) throw DataError("ols_fit: fewer observations than parameters");
  if (!y.allFinite() || !X.allFinite()) throw DataError("ols_fit: non-finite values in inputs");

  Eigen::MatrixXd xtx = X.transpose() * X;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xtx);
  const double lmax = es.eigenvalues().maxCoeff();
  const double lmin = es.eigenvalues().minCoeff();
  if (!(lmin > 0.0) || lmax / lmin > 1e12)
    throw SingularMatrixError("ols_fit: X'X is singular or badly conditioned (collinear regressors?)");

  OlsFit fit;
  fit.beta_hat = es.eigenvectors() *
                 (es.eigenvalues().cwiseInverse().asDiagonal() *
                  (es.eigenvectors().transpose() * (X.transpose() * y)));
  fit.residuals = y - X * fit.beta_hat;
  fit.xtx_over_n = xtx / static_cast<double>(n);
  return fit;
}

OlsFit ols_fit(const RegressionDataset& data) { return ols_fit(data.y, data.X); }

MomentSeries moment_series(const OlsFit& fit, const Eigen::MatrixXd& X) {
  if (X.rows() != fit.residuals.size())
    throw ConfigError("moment_series: residual length and X rows differ");
  MomentSeries series;
  series.V = X.array().colwise() * fit.residuals.array();
  return series;
}

Eigen::MatrixXd sandwich(const Eigen::MatrixXd& s_n, const Eigen::MatrixXd& s_hat) {
  if (s_n.rows() != s_n.cols() || s_hat.rows() != s_hat.cols() || s_n.rows() != s_hat.rows())
    throw ConfigError("sandwich: dimension mismatch");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(s_n);
  if (!lu.isInvertible()) throw SingularMatrixError("sandwich: S_n is singular");
  Eigen::MatrixXd inv = lu.inverse();
  Eigen::MatrixXd out = inv * s_hat * inv;
  return 0.5 * (out + out.transpose());
}

Interval confidence_interval(double beta_i, double se_i, double alpha) {
  if (se_i < 0.0) throw ConfigError("confidence_interval: negative standard error");
  const double z = two_sided_critical_value(alpha);
  return Interval{beta_i - z * se_i, beta_i + z * se_i};
}

double standard_error(const Eigen::MatrixXd& sandwich_matrix, int i, int n) {
  return std::sqrt(sandwich_matrix(i, i) / static_cast<double>(n));
}

}  // namespace haccv
