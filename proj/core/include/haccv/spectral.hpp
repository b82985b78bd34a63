#ifndef HACCV_SPECTRAL_HPP
#define HACCV_SPECTRAL_HPP

#include <Eigen/Dense>
#include <vector>

namespace haccv {

/// DFT of a real multichannel series, 1/n-normalized:
/// row j holds J(omega_j) = (1/n) sum_t V_t e^{-i omega_j t}, omega_j = 2 pi j / n.
struct DftSequence {
  Eigen::MatrixXcd J;  // n x (d+1)

  int n() const { return static_cast<int>(J.rows()); }
  int dim() const { return static_cast<int>(J.cols()); }
  double omega(int j) const;
};

DftSequence dft(const Eigen::MatrixXd& V);

/// Exact inverse transform; complex output.
Eigen::MatrixXcd idft(const DftSequence& seq);

/// Inverse transform of a conjugate-symmetric sequence; throws NumericalError
/// if the imaginary residue is not negligible.
Eigen::MatrixXd idft_real(const DftSequence& seq);

/// Rank-1 periodogram matrix I(omega_j) = (n / 2 pi) J(omega_j) J(omega_j)^*.
Eigen::MatrixXcd periodogram_matrix(const DftSequence& seq, int j);

struct PeriodogramSequence {
  std::vector<Eigen::MatrixXcd> I;
};

PeriodogramSequence periodogram(const DftSequence& seq);

enum class LeaveOneOutVariant { kStandard, kDemeaned };

/// Frequency-j surgery: positions j and n-j are replaced by the average of
/// their own neighbours (with J(omega_n) := J(omega_0)), so conjugate symmetry
/// is preserved and the recovered series stays real. The demeaned variant
/// substitutes untouched neighbours for j in {1, n-1} and never uses J(omega_0).
DftSequence leave_one_out(const DftSequence& seq, int j,
                          LeaveOneOutVariant variant = LeaveOneOutVariant::kStandard);

}  // namespace haccv

#endif
