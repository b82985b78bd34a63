#ifndef HACCV_VARFIT_HPP
#define HACCV_VARFIT_HPP

#include <Eigen/Dense>
#include <vector>

namespace haccv {

enum class VarFitMethod { kOls, kBurg };

/// Prewhitening VAR(q) without intercept: V_t = sum_k A_k V_{t-k} + resid_t.
struct VarModel {
  int order = 0;
  std::vector<Eigen::MatrixXd> coeffs;  // A_1..A_q
  Eigen::MatrixXd residuals;            // (n-q) x (d+1), rows t = q..n-1
  VarFitMethod method = VarFitMethod::kOls;
  Eigen::MatrixXd innovation_cov;

  int dim() const { return static_cast<int>(residuals.cols()); }
};

/// Multivariate least squares fit (no intercept; the moment series is mean-zero).
VarModel ols_var(const Eigen::MatrixXd& V, int q);

/// Multichannel Burg fit: per-stage reflection matrices chosen by minimizing the
/// summed forward and backward prediction errors of the normalized residuals
/// (Vieira-Morf), combined with Levinson-Whittle order updates. The resulting
/// companion matrix always has spectral radius < 1.
VarModel burg_var(const Eigen::MatrixXd& V, int q);

/// Block companion matrix; eigenvalues are the VAR characteristic roots.
Eigen::MatrixXd companion(const VarModel& model);

double spectral_radius(const Eigen::MatrixXd& B);

struct AdjustmentReport {
  Eigen::VectorXd singular_values;  // descending, of the input matrix
  bool triggered = false;
  Eigen::MatrixXd adjusted;
  double relative_distortion = 0.0;  // ||A_adj - A||_{1,1} / ||A||_{1,1}
  Eigen::VectorXd eigenvalue_magnitudes;
  Eigen::VectorXd adjusted_eigenvalue_magnitudes;
};

/// Andrews-Monahan rule: clamp the singular values of A at the threshold via
/// the SVD, leaving A unchanged when none exceed it.
AdjustmentReport eigen_adjust(const Eigen::MatrixXd& A, double threshold = 0.97);

/// VAR(1) coefficient matrix of V_t = u_t X_t when the regressors and error are
/// AR(1) with common coefficient phi and regressor intercept alpha:
/// [[phi, 0], [alpha phi 1_d, phi^2 I_d]].
Eigen::MatrixXd moment_var1_coefficient(double phi, double alpha, int d);

/// Closed-form singular values of moment_var1_coefficient, descending:
/// |s1|, |s2| = |(phi/2) sqrt(alpha^2 d + (phi+1)^2) +- (phi/2) sqrt(alpha^2 d + (phi-1)^2)|
/// plus phi^2 with multiplicity d-1.
Eigen::VectorXd moment_var1_singular_values(double phi, double alpha, int d);

}  // namespace haccv

#endif
