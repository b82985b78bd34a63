#include "haccv/lrv.hpp"

#include <cmath>
#include <complex>

#include "haccv/common.hpp"

namespace haccv {

namespace {
using Complex = std::complex<double>;

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& M) { return 0.5 * (M + M.transpose()); }

Eigen::MatrixXcd transfer_inverse(const std::vector<Eigen::MatrixXd>& coeffs, double omega) {
  const int p = static_cast<int>(coeffs.front().rows());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(p, p);
  const Complex z = std::polar(1.0, -omega);
  Complex zk = 1.0;
  for (const auto& A : coeffs) {
    zk *= z;
    M -= zk * A.cast<Complex>();
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
  if (!lu.isInvertible()) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    const double smallest = es.eigenvalues().cwiseAbs().minCoeff();
    throw SingularMatrixError("prewhitened spectrum: I - sum A_k z^k is singular (eigenvalue magnitude " +
                              std::to_string(smallest) + ")");
  }
  return lu.inverse();
}
}  // namespace

double parzen_weight(double x) {
  const double ax = std::fabs(x);
  if (ax <= 0.5) return 1.0 - 6.0 * x * x + 6.0 * ax * ax * ax;
  if (ax <= 1.0) {
    const double t = 1.0 - ax;
    return 2.0 * t * t * t;
  }
  return 0.0;
}

double qs_weight(double x) {
  const double z = 6.0 * kPi * x / 5.0;
  if (std::fabs(z) < 1e-2) {
    // series expansion of 25/(12 pi^2 x^2) [sin(z)/z - cos(z)] around 0
    const double z2 = z * z;
    return 1.0 - z2 / 10.0 + z2 * z2 / 280.0;
  }
  return 25.0 / (12.0 * kPi * kPi * x * x) * (std::sin(z) / z - std::cos(z));
}

double kernel_weight(KernelTag kernel, double x) {
  return kernel == KernelTag::kParzen ? parzen_weight(x) : qs_weight(x);
}

Eigen::MatrixXd sample_autocov(const Eigen::MatrixXd& V, int r, int divisor) {
  const int rows = static_cast<int>(V.rows());
  if (std::abs(r) >= rows) throw ConfigError("sample_autocov: |r| must be < number of rows");
  if (divisor < 0) divisor = rows;
  if (r < 0) return sample_autocov(V, -r, divisor).transpose().eval();
  return V.bottomRows(rows - r).transpose() * V.topRows(rows - r) / static_cast<double>(divisor);
}

Eigen::MatrixXcd kernel_spectrum(const Eigen::MatrixXd& V, KernelTag kernel, double m,
                                 double omega, int dof_d, int sample_size) {
  if (m <= 0.0) throw ConfigError("kernel_spectrum: bandwidth must be positive");
  const int rows = static_cast<int>(V.rows());
  const int n = sample_size < 0 ? rows : sample_size;
  if (n <= dof_d + 1) throw ConfigError("kernel_spectrum: need n > d+1");
  const double dof = static_cast<double>(n) / static_cast<double>(n - dof_d - 1);
  const int p = static_cast<int>(V.cols());

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(p, p);
  for (int r = -(rows - 1); r <= rows - 1; ++r) {
    const double w = kernel_weight(kernel, static_cast<double>(r) / m);
    if (w == 0.0) continue;
    acc += (w * std::polar(1.0, -omega * r)) * sample_autocov(V, r, n).cast<Complex>();
  }
  return dof / (2.0 * kPi) * acc;
}

Eigen::MatrixXcd prewhitened_spectrum_with_model(const VarModel& model,
                                                 const Eigen::MatrixXd& residuals,
                                                 KernelTag kernel, double m, double omega,
                                                 int dof_d, int sample_size) {
  Eigen::MatrixXcd mid = kernel_spectrum(residuals, kernel, m, omega, dof_d, sample_size);
  Eigen::MatrixXcd phi = transfer_inverse(model.coeffs, omega);
  return phi * mid * phi.adjoint();
}

Eigen::MatrixXcd prewhitened_spectrum(const Eigen::MatrixXd& V, int q, double m, double omega,
                                      VarFitMethod fit_method, bool adjust, KernelTag kernel,
                                      int dof_d) {
  if (adjust && q != 1)
    throw ConfigError("prewhitened_spectrum: eigen adjustment is defined for VAR(1) only");
  const int n = static_cast<int>(V.rows());
  VarModel model = fit_method == VarFitMethod::kOls ? ols_var(V, q) : burg_var(V, q);
  if (adjust) {
    AdjustmentReport report = eigen_adjust(model.coeffs[0]);
    if (report.triggered) {
      model.coeffs[0] = report.adjusted;
      model.residuals = V.bottomRows(n - 1) - V.topRows(n - 1) * report.adjusted.transpose();
    }
  }
  return prewhitened_spectrum_with_model(model, model.residuals, kernel, m, omega, dof_d, n);
}

double plugin_bandwidth_qs(const Eigen::MatrixXd& V, int sample_size) {
  const int rows = static_cast<int>(V.rows());
  const int n = sample_size < 0 ? rows : sample_size;
  if (rows < 3) throw ConfigError("plugin_bandwidth_qs: series too short");
  const int p = static_cast<int>(V.cols());

  double num = 0.0, den = 0.0;
  for (int a = 0; a < p; ++a) {
    // zero weight on the intercept-product column, unless it is the only one
    if (a == 0 && p > 1) continue;
    Eigen::VectorXd lead = V.col(a).tail(rows - 1);
    Eigen::VectorXd lag = V.col(a).head(rows - 1);
    const double denom = lag.squaredNorm();
    if (denom <= 0.0) throw NumericalError("plugin_bandwidth_qs: constant-zero column");
    const double rho = lead.dot(lag) / denom;
    if (std::fabs(1.0 - rho) < 1e-12)
      throw NumericalError("plugin_bandwidth_qs: unit-root AR(1) fit in column " + std::to_string(a));
    const double s2 = (lead - rho * lag).squaredNorm() / static_cast<double>(rows - 1);
    const double omr = 1.0 - rho;
    num += 4.0 * rho * rho * s2 * s2 / (omr * omr * omr * omr * omr * omr * omr * omr);
    den += s2 * s2 / (omr * omr * omr * omr);
  }
  if (den <= 0.0) throw NumericalError("plugin_bandwidth_qs: degenerate columns");
  const double alpha2 = num / den;
  const double m = 1.3221 * std::pow(alpha2 * static_cast<double>(n), 0.2);
  return std::min(std::max(m, 1.0), static_cast<double>(n - 1));
}

HacEstimate estimate_am(const MomentSeries& V) {
  const double m = plugin_bandwidth_qs(V.V);
  Eigen::MatrixXcd f0 = kernel_spectrum(V.V, KernelTag::kQs, m, 0.0, V.d());
  HacEstimate est;
  est.tag = EstimatorTag::kAm;
  est.selected_order = 0;
  est.selected_bandwidth = m;
  est.s_hat = symmetrize(2.0 * kPi * f0.real());
  return est;
}

HacEstimate estimate_prewhitened_qs(const MomentSeries& V, int q, VarFitMethod fit_method,
                                    bool adjust) {
  if (adjust && q != 1)
    throw ConfigError("estimate_prewhitened_qs: eigen adjustment is defined for VAR(1) only");
  const int n = V.n();
  VarModel model = fit_method == VarFitMethod::kOls ? ols_var(V.V, q) : burg_var(V.V, q);

  HacEstimate est;
  est.tag = adjust ? EstimatorTag::kAmPw : EstimatorTag::kAmPwUnadj;
  if (adjust) {
    AdjustmentReport report = eigen_adjust(model.coeffs[0]);
    est.adjustment_triggered = report.triggered;
    est.adjustment_distortion = report.relative_distortion;
    if (report.triggered) {
      model.coeffs[0] = report.adjusted;
      model.residuals = V.V.bottomRows(n - 1) - V.V.topRows(n - 1) * report.adjusted.transpose();
    }
  }
  est.selected_order = q;
  est.prewhitener_spectral_radius = spectral_radius(companion(model));

  // Andrews-Monahan order: whiten, then bandwidth on residuals, smooth, recolor.
  const double m = plugin_bandwidth_qs(model.residuals, n);
  est.selected_bandwidth = m;
  Eigen::MatrixXcd f0 =
      prewhitened_spectrum_with_model(model, model.residuals, KernelTag::kQs, m, 0.0, V.d(), n);
  est.s_hat = symmetrize(2.0 * kPi * f0.real());
  return est;
}

HacEstimate estimate_am_pw(const MomentSeries& V) {
  return estimate_prewhitened_qs(V, 1, VarFitMethod::kOls, /*adjust=*/true);
}

HacEstimate estimate_am_pw_unadj(const MomentSeries& V) {
  return estimate_prewhitened_qs(V, 1, VarFitMethod::kOls, /*adjust=*/false);
}

}  // namespace haccv
