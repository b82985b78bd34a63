#ifndef HACCV_LRV_HPP
#define HACCV_LRV_HPP

#include <Eigen/Dense>

#include "haccv/regress.hpp"
#include "haccv/varfit.hpp"

namespace haccv {

enum class KernelTag { kParzen, kQs };

/// Parzen kernel: piecewise cubic with support [-1, 1].
double parzen_weight(double x);

/// Quadratic spectral kernel of Andrews (1991); k(0) = 1 by continuity.
double qs_weight(double x);

double kernel_weight(KernelTag kernel, double x);

/// Gamma_hat(r) = (1/divisor) sum_{t=r}^{rows-1} V_t V_{t-r}'; divisor defaults
/// to the row count. Negative r returns the transpose.
Eigen::MatrixXd sample_autocov(const Eigen::MatrixXd& V, int r, int divisor = -1);

/// Kernel spectral density estimate at omega:
/// (1/2pi) (n/(n-d-1)) sum_r k(r/m) Gamma_hat(r) e^{-i omega r},
/// with n = sample_size (defaults to rows; pass the original length when V
/// holds prewhitened residuals so the divisor and dof factor stay anchored).
Eigen::MatrixXcd kernel_spectrum(const Eigen::MatrixXd& V, KernelTag kernel, double m,
                                 double omega, int dof_d, int sample_size = -1);

/// Prewhitened kernel estimate f(omega) for a prefitted VAR: smooth the
/// residuals, then recolor with Phi(z) = (I - sum A_k z^k)^{-1} at z = e^{-i omega}.
Eigen::MatrixXcd prewhitened_spectrum_with_model(const VarModel& model,
                                                 const Eigen::MatrixXd& residuals,
                                                 KernelTag kernel, double m, double omega,
                                                 int dof_d, int sample_size);

/// Fits the VAR(q) on V by fit_method (eigen-adjusting A_1 when adjust is set,
/// VAR(1) only) and evaluates the prewhitened kernel spectrum.
Eigen::MatrixXcd prewhitened_spectrum(const Eigen::MatrixXd& V, int q, double m, double omega,
                                      VarFitMethod fit_method, bool adjust, KernelTag kernel,
                                      int dof_d);

/// Andrews (1991) AR(1) plug-in bandwidth for the QS kernel,
/// m = 1.3221 (alpha_hat(2) n)^{1/5}, floored at 1 and capped at n-1.
/// sample_size overrides the n used in the rate (for prewhitened residuals).
double plugin_bandwidth_qs(const Eigen::MatrixXd& V, int sample_size = -1);

/// QS kernel estimator with plug-in bandwidth (Andrews 1991).
HacEstimate estimate_am(const MomentSeries& V);

/// VAR(1) prewhitened QS estimator, OLS fit with eigen adjustment (Andrews-Monahan 1992).
HacEstimate estimate_am_pw(const MomentSeries& V);

/// Same pipeline without the eigen adjustment.
HacEstimate estimate_am_pw_unadj(const MomentSeries& V);

/// Shared prewhitened-QS pipeline with a chosen fit method, order, and
/// adjustment flag; backs the three named estimators and the order sweep.
HacEstimate estimate_prewhitened_qs(const MomentSeries& V, int q, VarFitMethod fit_method,
                                    bool adjust);

}  // namespace haccv

#endif
