#include "haccv/dgp.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "haccv/common.hpp"

namespace haccv {

namespace {
constexpr int kBurnIn = 1000;

void check_finite_spec(double intercept, double sd) {
  if (!std::isfinite(intercept) || !std::isfinite(sd) || sd <= 0.0)
    throw ConfigError("series spec: intercept must be finite and innovation_sd > 0");
}
}  // namespace

bool ArSpec::stationary() const {
  const int p = order();
  if (p == 0) return true;
  for (double c : coeffs)
    if (!std::isfinite(c)) return false;
  // roots of 1 - phi_1 z - ... - phi_p z^p outside the unit circle
  // <=> eigenvalues of the AR companion matrix inside it
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(p, p);
  for (int k = 0; k < p; ++k) B(0, k) = coeffs[static_cast<std::size_t>(k)];
  if (p > 1) B.block(1, 0, p - 1, p - 1).setIdentity();
  Eigen::EigenSolver<Eigen::MatrixXd> es(B, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff() < 1.0;
}

double ArSpec::mean() const {
  double s = 0.0;
  for (double c : coeffs) s += c;
  return intercept / (1.0 - s);
}

Eigen::VectorXd simulate_ar(const ArSpec& spec, int n, RngStream& stream) {
  if (n < 1) throw ConfigError("simulate_ar: n must be >= 1");
  check_finite_spec(spec.intercept, spec.innovation_sd);
  if (!spec.stationary()) throw ConfigError("simulate_ar: non-stationary AR specification");
  const int p = spec.order();
  const double mean = spec.mean();
  std::vector<double> buf(static_cast<std::size_t>(p + kBurnIn + n), mean);
  for (int t = 0; t < kBurnIn + n; ++t) {
    double v = spec.intercept + spec.innovation_sd * stream.normal();
    for (int k = 0; k < p; ++k)
      v += spec.coeffs[static_cast<std::size_t>(k)] * buf[static_cast<std::size_t>(p + t - 1 - k)];
    buf[static_cast<std::size_t>(p + t)] = v;
  }
  Eigen::VectorXd out(n);
  for (int t = 0; t < n; ++t) out(t) = buf[static_cast<std::size_t>(p + kBurnIn + t)];
  return out;
}

Eigen::VectorXd simulate_ma(const MaSpec& spec, int n, RngStream& stream) {
  if (n < 1) throw ConfigError("simulate_ma: n must be >= 1");
  check_finite_spec(spec.intercept, spec.innovation_sd);
  if (!std::isfinite(spec.coeffs[0]) || !std::isfinite(spec.coeffs[1]))
    throw ConfigError("simulate_ma: coefficients must be finite");
  std::vector<double> eps(static_cast<std::size_t>(n + 2));
  for (auto& e : eps) e = spec.innovation_sd * stream.normal();
  Eigen::VectorXd out(n);
  for (int t = 0; t < n; ++t)
    out(t) = spec.intercept + eps[static_cast<std::size_t>(t + 2)] +
             spec.coeffs[0] * eps[static_cast<std::size_t>(t + 1)] +
             spec.coeffs[1] * eps[static_cast<std::size_t>(t)];
  return out;
}

Eigen::VectorXd simulate(const SeriesSpec& spec, int n, RngStream& stream) {
  if (const auto* ar = std::get_if<ArSpec>(&spec)) return simulate_ar(*ar, n, stream);
  return simulate_ma(std::get<MaSpec>(spec), n, stream);
}

RegressionDataset make_dataset(const std::vector<SeriesSpec>& regressor_specs,
                               const SeriesSpec& error_spec, const Eigen::VectorXd& beta,
                               int n, std::uint64_t master_seed, std::uint64_t repetition) {
  const int d = static_cast<int>(regressor_specs.size());
  if (beta.size() != d + 1)
    throw ConfigError("make_dataset: beta must have length d+1");
  if (n <= d + 1) throw ConfigError("make_dataset: need n > d+1");

  RegressionDataset data;
  data.X.resize(n, d + 1);
  data.X.col(0).setOnes();
  for (int i = 0; i < d; ++i) {
    RngStream stream(master_seed, repetition, static_cast<std::uint64_t>(i));
    data.X.col(i + 1) = simulate(regressor_specs[static_cast<std::size_t>(i)], n, stream);
  }
  RngStream error_stream(master_seed, repetition, static_cast<std::uint64_t>(d));
  Eigen::VectorXd u = simulate(error_spec, n, error_stream);
  data.y = data.X * beta + u;
  data.true_beta = beta;
  return data;
}

Eigen::VectorXd acvf_ar(const ArSpec& spec, int max_lag) {
  if (max_lag < 0) throw ConfigError("acvf_ar: max_lag must be >= 0");
  if (!spec.stationary()) throw ConfigError("acvf_ar: non-stationary AR specification");
  const int p = spec.order();
  const double s2 = spec.innovation_sd * spec.innovation_sd;
  // Yule-Walker: gamma(k) - sum_j phi_j gamma(|k-j|) = s2 * 1{k=0}, k=0..p
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p + 1, p + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p + 1);
  for (int k = 0; k <= p; ++k) {
    A(k, k) += 1.0;
    for (int j = 1; j <= p; ++j) A(k, std::abs(k - j)) -= spec.coeffs[static_cast<std::size_t>(j - 1)];
  }
  b(0) = s2;
  Eigen::VectorXd head = A.fullPivLu().solve(b);
  Eigen::VectorXd out(max_lag + 1);
  for (int r = 0; r <= std::min(max_lag, p); ++r) out(r) = head(r);
  for (int r = p + 1; r <= max_lag; ++r) {
    double v = 0.0;
    for (int j = 1; j <= p; ++j) v += spec.coeffs[static_cast<std::size_t>(j - 1)] * out(r - j);
    out(r) = v;
  }
  return out;
}

Eigen::VectorXd acvf_ma(const MaSpec& spec, int max_lag) {
  if (max_lag < 0) throw ConfigError("acvf_ma: max_lag must be >= 0");
  const double s2 = spec.innovation_sd * spec.innovation_sd;
  const double t1 = spec.coeffs[0], t2 = spec.coeffs[1];
  Eigen::VectorXd out = Eigen::VectorXd::Zero(max_lag + 1);
  out(0) = s2 * (1.0 + t1 * t1 + t2 * t2);
  if (max_lag >= 1) out(1) = s2 * (t1 + t1 * t2);
  if (max_lag >= 2) out(2) = s2 * t2;
  return out;
}

Eigen::MatrixXd gamma_v_oracle(const Eigen::VectorXd& gamma_u,
                               const std::vector<Eigen::MatrixXd>& gamma_X,
                               const Eigen::VectorXd& mu_X, int r) {
  const int lag = std::abs(r);
  if (lag >= gamma_u.size() || lag >= static_cast<int>(gamma_X.size()))
    throw ConfigError("gamma_v_oracle: lag exceeds available autocovariances");
  const auto& gx = gamma_X[static_cast<std::size_t>(lag)];
  if (gx.rows() != mu_X.size() || gx.cols() != mu_X.size())
    throw ConfigError("gamma_v_oracle: dimension mismatch between gamma_X and mu_X");
  Eigen::MatrixXd base = gx;
  if (r < 0) base.transposeInPlace();
  return gamma_u(lag) * (base + mu_X * mu_X.transpose());
}

}  // namespace haccv
