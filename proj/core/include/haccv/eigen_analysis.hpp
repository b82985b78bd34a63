#ifndef HACCV_EIGEN_ANALYSIS_HPP
#define HACCV_EIGEN_ANALYSIS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace haccv {

/// One grid point of the eigen-adjustment analysis: eigenvalue and singular
/// value magnitudes of the prewhitening VAR(1) coefficient, how often the
/// Andrews-Monahan rule fires, and how much it distorts the matrix.
struct EigenAnalysisRow {
  double phi = 0.0;
  Eigen::VectorXd eigen_magnitudes;    // descending
  Eigen::VectorXd singular_values;     // descending
  double trigger_pct = 0.0;            // 0 or 100 in the theoretical table
  double distortion_pct = 0.0;
};

struct EigenAnalysisTable {
  std::string mode;  // "theoretical" | "empirical"
  double alpha = 0.0;
  int n = 0;     // empirical only
  int reps = 0;  // empirical only
  std::vector<EigenAnalysisRow> rows;

  std::string to_csv() const;
  std::string to_markdown() const;
};

/// Closed-form analysis on the true VAR(1) coefficient of V_t = u_t X_t.
EigenAnalysisTable eigen_analysis_theoretical(double alpha, const std::vector<double>& phis,
                                              int d = 1, double threshold = 0.97);

/// Simulation analysis on the OLS VAR(1) fitted to the estimated moment series
/// (d = 1, beta = 0), averaged over repetitions.
EigenAnalysisTable eigen_analysis_empirical(double alpha, const std::vector<double>& phis, int n,
                                            int reps, std::uint64_t seed, int threads = 0,
                                            double threshold = 0.97);

}  // namespace haccv

#endif
