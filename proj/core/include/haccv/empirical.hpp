#ifndef HACCV_EMPIRICAL_HPP
#define HACCV_EMPIRICAL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "haccv/cvll.hpp"
#include "haccv/regress.hpp"

namespace haccv {

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // throws DataError when missing
};

/// Reads a comma-separated file with a mandatory header row.
CsvTable read_csv(const std::string& path);

/// Extracts named numeric columns; rejects empty and non-numeric cells with the
/// offending row and column in the message.
Eigen::MatrixXd numeric_columns(const CsvTable& table, const std::vector<std::string>& names);

struct EmpiricalOptions {
  std::vector<EstimatorTag> estimators{EstimatorTag::kAm, EstimatorTag::kAmPw,
                                       EstimatorTag::kAmPwUnadj, EstimatorTag::kCvll};
  CandidateGrid grid;          // CVLL settings
  double threshold = 0.97;     // eigen-adjustment trigger
};

struct EmpiricalDiagnostics {
  Eigen::VectorXd ols_var1_eigen_magnitudes;
  Eigen::VectorXd ols_var1_singular_values;
  bool adjustment_triggered = false;
  double adjustment_distortion = 0.0;
  Eigen::VectorXd burg_var1_eigen_magnitudes;
  double burg_var1_spectral_radius = 0.0;
  int cvll_order = 0;
  int cvll_bandwidth = 0;
};

/// Coefficient table with one SE column per estimator, significance stars per
/// two-sided normal p-values (* p<0.05, ** p<0.01, *** p<0.001), plus the
/// prewhitening diagnostics discussed alongside the empirical examples.
struct EmpiricalResult {
  int n = 0;
  std::vector<std::string> coef_names;
  Eigen::VectorXd beta;
  std::vector<EstimatorTag> estimators;
  std::vector<Eigen::VectorXd> se;                 // parallel to estimators
  std::vector<std::vector<std::string>> stars;
  EmpiricalDiagnostics diagnostics;

  std::string to_markdown() const;
  std::string to_csv() const;
};

std::string significance_stars(double z);

EmpiricalResult fit_regression(const Eigen::VectorXd& y, const Eigen::MatrixXd& x_columns,
                               const std::vector<std::string>& x_names,
                               const EmpiricalOptions& options = {});

EmpiricalResult fit_csv(const std::string& path, const std::string& y_column,
                        const std::vector<std::string>& x_columns,
                        const EmpiricalOptions& options = {});

struct OrderSweepResult {
  int coef = 0;
  std::vector<int> orders;      // 0..max_order, 0 = no prewhitening
  std::vector<double> se;       // one SE per order
  std::string to_csv() const;
};

/// SE of one coefficient per OLS prewhitening order (no eigen adjustment),
/// QS kernel with plug-in bandwidth on the residuals; order 0 is the plain
/// kernel estimator.
OrderSweepResult order_sweep(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, int max_order,
                             int coef);

OrderSweepResult order_sweep_csv(const std::string& path, const std::string& y_column,
                                 const std::vector<std::string>& x_columns, int max_order,
                                 int coef);

}  // namespace haccv

#endif
