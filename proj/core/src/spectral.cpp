#include "haccv/spectral.hpp"

#include <cmath>
#include <complex>

#include "haccv/common.hpp"

namespace haccv {

namespace {
using Complex = std::complex<double>;

// e^{i 2 pi k / n} with k reduced mod n; keeps twiddles exactly periodic.
Complex unit_root(long long k, int n) {
  long long r = k % n;
  if (r < 0) r += n;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n));
}
}  // namespace

double DftSequence::omega(int j) const { return 2.0 * kPi * j / static_cast<double>(n()); }

DftSequence dft(const Eigen::MatrixXd& V) {
  const int n = static_cast<int>(V.rows());
  if (n < 2) throw ConfigError("dft: need n >= 2");
  const int p = static_cast<int>(V.cols());
  DftSequence seq;
  seq.J.setZero(n, p);
  for (int j = 0; j < n; ++j) {
    Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(p);
    for (int t = 0; t < n; ++t)
      acc += unit_root(-static_cast<long long>(j) * t, n) * V.row(t);
    seq.J.row(j) = acc / static_cast<double>(n);
  }
  return seq;
}

Eigen::MatrixXcd idft(const DftSequence& seq) {
  const int n = seq.n();
  const int p = seq.dim();
  Eigen::MatrixXcd out(n, p);
  for (int t = 0; t < n; ++t) {
    Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(p);
    for (int j = 0; j < n; ++j)
      acc += unit_root(static_cast<long long>(j) * t, n) * seq.J.row(j);
    out.row(t) = acc;
  }
  return out;
}

Eigen::MatrixXd idft_real(const DftSequence& seq) {
  Eigen::MatrixXcd full = idft(seq);
  const double scale = 1.0 + full.real().cwiseAbs().maxCoeff();
  if (full.imag().cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw NumericalError("idft_real: sequence is not conjugate-symmetric");
  return full.real();
}

Eigen::MatrixXcd periodogram_matrix(const DftSequence& seq, int j) {
  const double scale = static_cast<double>(seq.n()) / (2.0 * kPi);
  Eigen::VectorXcd v = seq.J.row(j).transpose();
  return scale * (v * v.adjoint());
}

PeriodogramSequence periodogram(const DftSequence& seq) {
  PeriodogramSequence out;
  out.I.reserve(static_cast<std::size_t>(seq.n()));
  for (int j = 0; j < seq.n(); ++j) out.I.push_back(periodogram_matrix(seq, j));
  return out;
}

DftSequence leave_one_out(const DftSequence& seq, int j, LeaveOneOutVariant variant) {
  const int n = seq.n();
  if (j < 1 || j > n - 1)
    throw ConfigError("leave_one_out: j must be in 1..n-1 (frequency zero is never left out)");
  DftSequence out = seq;
  auto at = [&](int k) { return seq.J.row(((k % n) + n) % n); };

  if (variant == LeaveOneOutVariant::kDemeaned && (j == 1 || j == n - 1)) {
    out.J.row(1) = at(2);
    out.J.row(n - 1) = at(n - 2);
    return out;
  }
  out.J.row(j) = 0.5 * (at(j - 1) + at(j + 1));
  if (n - j != j)  // conjugate-symmetric counterpart, so the recovered series is real
    out.J.row(n - j) = 0.5 * (at(n - j - 1) + at(n - j + 1));
  return out;
}

}  // namespace haccv
