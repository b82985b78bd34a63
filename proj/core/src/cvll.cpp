#include "haccv/cvll.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>

#include "haccv/common.hpp"
#include "haccv/spectral.hpp"

namespace haccv {

namespace {
using Complex = std::complex<double>;

Eigen::MatrixXcd transfer_inverse_at(const std::vector<Eigen::MatrixXd>& coeffs, double omega) {
  const int p = static_cast<int>(coeffs.front().rows());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(p, p);
  const Complex z = std::polar(1.0, -omega);
  Complex zk = 1.0;
  for (const auto& A : coeffs) {
    zk *= z;
    M -= zk * A.cast<Complex>();
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
  if (!lu.isInvertible()) throw SingularMatrixError("cvll: singular VAR transfer at evaluation frequency");
  return lu.inverse();
}

Eigen::MatrixXd filter_residuals(const Eigen::MatrixXd& V,
                                 const std::vector<Eigen::MatrixXd>& coeffs) {
  const int n = static_cast<int>(V.rows());
  const int q = static_cast<int>(coeffs.size());
  Eigen::MatrixXd resid = V.bottomRows(n - q);
  for (int k = 1; k <= q; ++k)
    resid -= V.middleRows(q - k, n - q) * coeffs[static_cast<std::size_t>(k - 1)].transpose();
  return resid;
}

// log det and tr[I f^{-1}] from a Hermitian Cholesky factorization; nullopt
// when f is not numerically positive definite.
struct ScoreTerms {
  double logdet;
  double trace;
};

std::optional<ScoreTerms> score_terms(const Eigen::MatrixXcd& f, const Eigen::VectorXcd& Jj,
                                      double periodogram_scale) {
  Eigen::LLT<Eigen::MatrixXcd> llt(f);
  if (llt.info() != Eigen::Success) return std::nullopt;
  double logdet = 0.0;
  for (int i = 0; i < f.rows(); ++i) {
    const double pivot = llt.matrixL()(i, i).real();
    if (!(pivot > 0.0) || !std::isfinite(pivot)) return std::nullopt;
    logdet += std::log(pivot);
  }
  logdet *= 2.0;
  // I(omega_j) is rank one, so tr[I f^{-1}] = scale * J^* f^{-1} J
  const double trace = periodogram_scale * Jj.dot(llt.solve(Jj)).real();
  if (!std::isfinite(logdet) || !std::isfinite(trace)) return std::nullopt;
  return ScoreTerms{logdet, trace};
}

std::vector<CvllScore> score_grid(const MomentSeries& V, const CandidateGrid& grid) {
  const int n = V.n();
  const int d = V.d();
  const int dim = d + 1;
  if (grid.orders.empty()) throw ConfigError("cvll: empty order grid");
  std::vector<int> bandwidths = grid.bandwidths;
  if (bandwidths.empty())
    for (int m = 1; m <= default_bandwidth_cap(n); ++m) bandwidths.push_back(m);
  for (int m : bandwidths)
    if (m < 1) throw ConfigError("cvll: bandwidths must be >= 1");

  const int count = frequency_count(n, grid.c);
  const double dof = static_cast<double>(n) / static_cast<double>(n - d - 1);
  const double pgram_scale = static_cast<double>(n) / (2.0 * kPi);
  int max_m = 1;
  for (int m : bandwidths) max_m = std::max(max_m, m);

  std::vector<CvllScore> scores;
  for (int q : grid.orders)
    for (int m : bandwidths) scores.push_back(CvllScore{q, m, 0.0, false, ""});
  auto slot = [&](int qi, int mi) -> CvllScore& {
    return scores[static_cast<std::size_t>(qi) * bandwidths.size() + static_cast<std::size_t>(mi)];
  };

  // full-sample prewhiteners, one per order
  std::vector<VarModel> full_fits;
  if (grid.refit == LooRefitPolicy::kFullSampleCoefficients)
    for (int q : grid.orders)
      full_fits.push_back(grid.fit_method == VarFitMethod::kOls ? ols_var(V.V, q)
                                                                : burg_var(V.V, q));

  DftSequence J = dft(V.V);
  for (int j = 1; j <= count; ++j) {
    const double omega = J.omega(j);
    Eigen::MatrixXd Vj = idft_real(leave_one_out(J, j));
    const Eigen::VectorXcd Jj = J.J.row(j).transpose();

    for (std::size_t qi = 0; qi < grid.orders.size(); ++qi) {
      const int q = grid.orders[qi];
      std::vector<Eigen::MatrixXd> coeffs;
      Eigen::MatrixXd resid;
      try {
        if (grid.refit == LooRefitPolicy::kPerFrequency) {
          VarModel model =
              grid.fit_method == VarFitMethod::kOls ? ols_var(Vj, q) : burg_var(Vj, q);
          coeffs = std::move(model.coeffs);
          resid = std::move(model.residuals);
        } else {
          coeffs = full_fits[qi].coeffs;
          resid = filter_residuals(Vj, coeffs);
        }
      } catch (const std::exception& e) {
        for (std::size_t mi = 0; mi < bandwidths.size(); ++mi) {
          auto& s = slot(static_cast<int>(qi), static_cast<int>(mi));
          if (!s.excluded) {
            s.excluded = true;
            s.exclusion_reason = "VAR fit failed at frequency " + std::to_string(j) + ": " + e.what();
          }
        }
        continue;
      }

      std::vector<Eigen::MatrixXd> acvs;
      for (int r = 0; r < max_m; ++r) acvs.push_back(sample_autocov(resid, r, n));
      Eigen::MatrixXcd phi;
      try {
        phi = transfer_inverse_at(coeffs, omega);
      } catch (const std::exception& e) {
        for (std::size_t mi = 0; mi < bandwidths.size(); ++mi) {
          auto& s = slot(static_cast<int>(qi), static_cast<int>(mi));
          if (!s.excluded) {
            s.excluded = true;
            s.exclusion_reason = std::string(e.what()) + " at frequency " + std::to_string(j);
          }
        }
        continue;
      }

      for (std::size_t mi = 0; mi < bandwidths.size(); ++mi) {
        auto& s = slot(static_cast<int>(qi), static_cast<int>(mi));
        if (s.excluded) continue;
        const int m = bandwidths[mi];
        Eigen::MatrixXcd mid = Eigen::MatrixXcd::Zero(dim, dim);
        for (int r = -(m - 1); r <= m - 1; ++r) {
          const double w = parzen_weight(static_cast<double>(r) / m);
          if (w == 0.0) continue;
          Eigen::MatrixXd g = acvs[static_cast<std::size_t>(std::abs(r))];
          if (r < 0) g.transposeInPlace();
          mid += (w * std::polar(1.0, -omega * r)) * g.cast<Complex>();
        }
        mid *= dof / (2.0 * kPi);
        Eigen::MatrixXcd f = phi * mid * phi.adjoint();
        f = 0.5 * (f + f.adjoint()).eval();
        auto terms = score_terms(f, Jj, pgram_scale);
        if (!terms) {
          s.excluded = true;
          s.exclusion_reason =
              "leave-one-out spectrum not positive definite at frequency " + std::to_string(j);
          continue;
        }
        s.score += terms->logdet + terms->trace;
      }
    }
  }
  return scores;
}
}  // namespace

int default_bandwidth_cap(int n) {
  if (n < 1) throw ConfigError("default_bandwidth_cap: n must be >= 1");
  const int cap = static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
  return std::max(cap, 1);
}

int frequency_count(int n, double c) {
  if (n < 4) throw ConfigError("frequency_count: n must be >= 4");
  if (!(c > 0.0 && c < 1.0)) throw ConfigError("frequency_count: c must be in (0,1)");
  const int count = static_cast<int>(std::floor(std::pow(n / 2.0, c)));
  return std::min(count, (n - 1) / 2);
}

CvllScore cvll_score(const MomentSeries& V, int q, int m, double c, VarFitMethod fit_method,
                     LooRefitPolicy refit) {
  CandidateGrid grid;
  grid.orders = {q};
  grid.bandwidths = {m};
  grid.c = c;
  grid.fit_method = fit_method;
  grid.refit = refit;
  return score_grid(V, grid).front();
}

CvllSelection select(const MomentSeries& V, const CandidateGrid& grid) {
  CvllSelection sel;
  sel.scores = score_grid(V, grid);
  const CvllScore* best = nullptr;
  for (const auto& s : sel.scores) {
    if (s.excluded) continue;
    if (best == nullptr || s.score < best->score ||
        (s.score == best->score && std::make_pair(s.q, s.m) < std::make_pair(best->q, best->m)))
      best = &s;
  }
  if (best == nullptr) {
    std::string detail;
    for (const auto& s : sel.scores)
      detail += " (q=" + std::to_string(s.q) + ",m=" + std::to_string(s.m) + "): " +
                s.exclusion_reason + ";";
    throw NumericalError("cvll: every candidate was excluded --" + detail);
  }
  sel.q = best->q;
  sel.m = best->m;
  return sel;
}

HacEstimate estimate_cvll(const MomentSeries& V, const CandidateGrid& grid) {
  CvllSelection sel = select(V, grid);
  const int n = V.n();
  VarModel model = grid.fit_method == VarFitMethod::kOls ? ols_var(V.V, sel.q)
                                                         : burg_var(V.V, sel.q);
  Eigen::MatrixXcd f0 = prewhitened_spectrum_with_model(
      model, model.residuals, KernelTag::kParzen, sel.m, 0.0, V.d(), n);
  HacEstimate est;
  est.tag = EstimatorTag::kCvll;
  est.selected_order = sel.q;
  est.selected_bandwidth = sel.m;
  est.prewhitener_spectral_radius = spectral_radius(companion(model));
  Eigen::MatrixXd s = 2.0 * kPi * f0.real();
  est.s_hat = 0.5 * (s + s.transpose());
  return est;
}

}  // namespace haccv
