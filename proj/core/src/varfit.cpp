#include "haccv/varfit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "haccv/common.hpp"

namespace haccv {

namespace {

void check_fit_inputs(const Eigen::MatrixXd& V, int q) {
  if (q < 1) throw ConfigError("var fit: order must be >= 1");
  const int n = static_cast<int>(V.rows());
  const int p = static_cast<int>(V.cols());
  if (n <= p * q + q) throw ConfigError("var fit: not enough observations for the requested order");
  if (!V.allFinite()) throw NumericalError("var fit: non-finite values in input");
}

Eigen::MatrixXd residuals_from(const Eigen::MatrixXd& V, const std::vector<Eigen::MatrixXd>& coeffs) {
  const int n = static_cast<int>(V.rows());
  const int q = static_cast<int>(coeffs.size());
  Eigen::MatrixXd resid = V.bottomRows(n - q);
  for (int k = 1; k <= q; ++k)
    resid -= V.middleRows(q - k, n - q) * coeffs[static_cast<std::size_t>(k - 1)].transpose();
  return resid;
}

struct SymmetricRoots {
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd inv_sqrt;
};

// Symmetric PSD square root and inverse square root with a relative
// eigenvalue floor; throws on a zero matrix (degenerate input).
SymmetricRoots symmetric_roots(const Eigen::MatrixXd& M, double floor_rel) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  const double top = es.eigenvalues().maxCoeff();
  if (!(top > 0.0)) throw NumericalError("burg_var: degenerate (constant-zero) input");
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(floor_rel * top);
  SymmetricRoots out;
  out.sqrt = es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  out.inv_sqrt =
      es.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  return out;
}

}  // namespace

VarModel ols_var(const Eigen::MatrixXd& V, int q) {
  check_fit_inputs(V, q);
  const int n = static_cast<int>(V.rows());
  const int p = static_cast<int>(V.cols());

  Eigen::MatrixXd Y = V.bottomRows(n - q);
  Eigen::MatrixXd Z(n - q, p * q);
  for (int k = 1; k <= q; ++k) Z.middleCols((k - 1) * p, p) = V.middleRows(q - k, n - q);

  Eigen::MatrixXd ztz = Z.transpose() * Z;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ztz);
  if (!lu.isInvertible()) throw SingularMatrixError("ols_var: singular regressor cross-product");
  Eigen::MatrixXd stacked = lu.solve(Z.transpose() * Y).transpose();  // p x (p q)

  VarModel model;
  model.order = q;
  model.method = VarFitMethod::kOls;
  for (int k = 0; k < q; ++k) model.coeffs.push_back(stacked.middleCols(k * p, p));
  model.residuals = residuals_from(V, model.coeffs);
  model.innovation_cov =
      model.residuals.transpose() * model.residuals / static_cast<double>(n - q);
  return model;
}

namespace {
std::vector<Eigen::MatrixXd> burg_coefficients(const Eigen::MatrixXd& V, int q, double margin,
                                               double floor_rel) {
  const int n = static_cast<int>(V.rows());
  const int p = static_cast<int>(V.cols());

  Eigen::MatrixXd fwd = V;  // forward errors, valid rows k..n-1 at stage k
  Eigen::MatrixXd bwd = V;  // backward errors, b_k(t) predicts V_{t-k}
  std::vector<Eigen::MatrixXd> phi, psi;
  Eigen::MatrixXd cov0 = V.transpose() * V / static_cast<double>(n);
  Eigen::MatrixXd sig_f = cov0, sig_b = cov0;

  for (int k = 1; k <= q; ++k) {
    Eigen::MatrixXd U = fwd.middleRows(k, n - k);       // f_{k-1}(t), t = k..n-1
    Eigen::MatrixXd W = bwd.middleRows(k - 1, n - k);   // b_{k-1}(t-1)
    Eigen::MatrixXd F = U.transpose() * U;
    Eigen::MatrixXd B = W.transpose() * W;
    Eigen::MatrixXd C = U.transpose() * W;

    SymmetricRoots rf = symmetric_roots(F, floor_rel);
    SymmetricRoots rb = symmetric_roots(B, floor_rel);
    Eigen::MatrixXd rho = rf.inv_sqrt * C * rb.inv_sqrt;
    // exact arithmetic gives singular values <= 1; keep them strictly inside
    // so the fitted model never sits on the unit circle
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rho, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd s = svd.singularValues().cwiseMin(1.0 - margin);
    rho = svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();

    SymmetricRoots sf = symmetric_roots(sig_f, floor_rel);
    SymmetricRoots sb = symmetric_roots(sig_b, floor_rel);
    Eigen::MatrixXd refl_f = sf.sqrt * rho * sb.inv_sqrt;             // Phi_kk
    Eigen::MatrixXd refl_b = sb.sqrt * rho.transpose() * sf.inv_sqrt;  // Psi_kk

    std::vector<Eigen::MatrixXd> phi_next(static_cast<std::size_t>(k));
    std::vector<Eigen::MatrixXd> psi_next(static_cast<std::size_t>(k));
    for (int i = 0; i + 1 < k; ++i) {
      phi_next[static_cast<std::size_t>(i)] =
          phi[static_cast<std::size_t>(i)] - refl_f * psi[static_cast<std::size_t>(k - 2 - i)];
      psi_next[static_cast<std::size_t>(i)] =
          psi[static_cast<std::size_t>(i)] - refl_b * phi[static_cast<std::size_t>(k - 2 - i)];
    }
    phi_next[static_cast<std::size_t>(k - 1)] = refl_f;
    psi_next[static_cast<std::size_t>(k - 1)] = refl_b;

    Eigen::MatrixXd fwd_next = Eigen::MatrixXd::Zero(n, p);
    Eigen::MatrixXd bwd_next = Eigen::MatrixXd::Zero(n, p);
    fwd_next.bottomRows(n - k) = U - W * refl_f.transpose();
    bwd_next.bottomRows(n - k) = W - U * refl_b.transpose();
    fwd.swap(fwd_next);
    bwd.swap(bwd_next);

    sig_f = sf.sqrt * (Eigen::MatrixXd::Identity(p, p) - rho * rho.transpose()) * sf.sqrt;
    sig_b = sb.sqrt * (Eigen::MatrixXd::Identity(p, p) - rho.transpose() * rho) * sb.sqrt;
    phi.swap(phi_next);
    psi.swap(psi_next);
  }
  return phi;
}
}  // namespace

VarModel burg_var(const Eigen::MatrixXd& V, int q) {
  check_fit_inputs(V, q);
  const int n = static_cast<int>(V.rows());

  // In exact arithmetic the clamped reflection coefficients guarantee a
  // companion radius < 1. Rank-degenerate inputs (condition numbers near
  // 1/eps) can break that through rounding alone, so verify the radius and
  // refit with a coarser contraction margin and eigenvalue floor if needed.
  constexpr double kMargins[3] = {1e-8, 1e-4, 1e-2};
  constexpr double kFloors[3] = {1e-14, 1e-8, 1e-6};

  VarModel model;
  model.order = q;
  model.method = VarFitMethod::kBurg;
  for (int attempt = 0; attempt < 3; ++attempt) {
    model.coeffs = burg_coefficients(V, q, kMargins[attempt], kFloors[attempt]);
    if (spectral_radius(companion(model)) < 1.0) {
      model.residuals = residuals_from(V, model.coeffs);
      model.innovation_cov =
          model.residuals.transpose() * model.residuals / static_cast<double>(n - q);
      return model;
    }
  }
  throw NumericalError("burg_var: input too degenerate for a stationary fit");
}

Eigen::MatrixXd companion(const VarModel& model) {
  const int q = model.order;
  if (q < 1) throw ConfigError("companion: order must be >= 1");
  const int p = static_cast<int>(model.coeffs.front().rows());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(p * q, p * q);
  for (int k = 0; k < q; ++k) B.block(0, k * p, p, p) = model.coeffs[static_cast<std::size_t>(k)];
  if (q > 1) B.block(p, 0, p * (q - 1), p * (q - 1)).setIdentity();
  return B;
}

double spectral_radius(const Eigen::MatrixXd& B) {
  if (B.rows() != B.cols()) throw ConfigError("spectral_radius: matrix must be square");
  if (!B.allFinite()) throw NumericalError("spectral_radius: non-finite entries");
  Eigen::EigenSolver<Eigen::MatrixXd> es(B, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

AdjustmentReport eigen_adjust(const Eigen::MatrixXd& A, double threshold) {
  if (A.rows() != A.cols()) throw ConfigError("eigen_adjust: matrix must be square");
  if (!A.allFinite()) throw NumericalError("eigen_adjust: non-finite entries");
  if (threshold <= 0.0) throw ConfigError("eigen_adjust: threshold must be positive");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  AdjustmentReport report;
  report.singular_values = svd.singularValues();
  // relative slack keeps re-adjustment of an already-clamped matrix a no-op
  report.triggered = report.singular_values.size() > 0 &&
                     report.singular_values.maxCoeff() > threshold * (1.0 + 1e-12);
  if (report.triggered) {
    Eigen::VectorXd clamped = report.singular_values.cwiseMin(threshold);
    report.adjusted = svd.matrixU() * clamped.asDiagonal() * svd.matrixV().transpose();
    const double denom = A.cwiseAbs().sum();
    report.relative_distortion =
        denom > 0.0 ? (report.adjusted - A).cwiseAbs().sum() / denom : 0.0;
  } else {
    report.adjusted = A;
    report.relative_distortion = 0.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> orig(A, false), adj(report.adjusted, false);
  report.eigenvalue_magnitudes = orig.eigenvalues().cwiseAbs();
  report.adjusted_eigenvalue_magnitudes = adj.eigenvalues().cwiseAbs();
  std::sort(report.eigenvalue_magnitudes.data(),
            report.eigenvalue_magnitudes.data() + report.eigenvalue_magnitudes.size(),
            std::greater<double>());
  std::sort(report.adjusted_eigenvalue_magnitudes.data(),
            report.adjusted_eigenvalue_magnitudes.data() + report.adjusted_eigenvalue_magnitudes.size(),
            std::greater<double>());
  return report;
}

Eigen::MatrixXd moment_var1_coefficient(double phi, double alpha, int d) {
  if (d < 1) throw ConfigError("moment_var1_coefficient: d must be >= 1");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d + 1, d + 1);
  A(0, 0) = phi;
  A.block(1, 0, d, 1).setConstant(alpha * phi);
  A.block(1, 1, d, d) = phi * phi * Eigen::MatrixXd::Identity(d, d);
  return A;
}

Eigen::VectorXd moment_var1_singular_values(double phi, double alpha, int d) {
  if (d < 1) throw ConfigError("moment_var1_singular_values: d must be >= 1");
  const double a = std::sqrt(alpha * alpha * d + (phi + 1.0) * (phi + 1.0));
  const double b = std::sqrt(alpha * alpha * d + (phi - 1.0) * (phi - 1.0));
  Eigen::VectorXd out(d + 1);
  out(0) = std::fabs(0.5 * phi * (a + b));
  out(1) = std::fabs(0.5 * phi * (a - b));
  for (int i = 2; i <= d; ++i) out(i) = phi * phi;
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

}  // namespace haccv
