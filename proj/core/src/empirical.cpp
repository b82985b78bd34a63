#include "haccv/empirical.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "haccv/common.hpp"
#include "haccv/stats.hpp"
#include "haccv/varfit.hpp"

namespace haccv {

namespace {
std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}
}  // namespace

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  throw DataError("csv: missing column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw DataError("csv: empty file '" + path + "'");
  for (auto& c : split_line(line)) table.columns.push_back(trim(c));
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != table.columns.size())
      throw DataError("csv: row " + std::to_string(table.rows.size() + 2) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(table.columns.size()));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

Eigen::MatrixXd numeric_columns(const CsvTable& table, const std::vector<std::string>& names) {
  std::vector<int> idx;
  for (const auto& name : names) idx.push_back(table.column_index(name));
  Eigen::MatrixXd out(static_cast<int>(table.rows.size()), static_cast<int>(names.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const std::string cell = trim(table.rows[r][static_cast<std::size_t>(idx[c])]);
      if (cell.empty())
        throw DataError("csv: empty cell at row " + std::to_string(r + 2) + ", column '" +
                        names[c] + "'");
      errno = 0;
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (errno != 0 || end == cell.c_str() || *end != '\0' || !std::isfinite(value))
        throw DataError("csv: non-numeric cell '" + cell + "' at row " + std::to_string(r + 2) +
                        ", column '" + names[c] + "'");
      out(static_cast<int>(r), static_cast<int>(c)) = value;
    }
  }
  return out;
}

std::string significance_stars(double z) {
  const double p = two_sided_p_value(z);
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

EmpiricalResult fit_regression(const Eigen::VectorXd& y, const Eigen::MatrixXd& x_columns,
                               const std::vector<std::string>& x_names,
                               const EmpiricalOptions& options) {
  const int n = static_cast<int>(y.size());
  const int d = static_cast<int>(x_columns.cols());
  if (n <= d + 1) throw DataError("fit: need n > d+1 observations");

  Eigen::MatrixXd X(n, d + 1);
  X.col(0).setOnes();
  X.rightCols(d) = x_columns;

  OlsFit fit = ols_fit(y, X);
  MomentSeries V = moment_series(fit, X);

  EmpiricalResult result;
  result.n = n;
  result.coef_names.push_back("const");
  for (const auto& name : x_names) result.coef_names.push_back(name);
  result.beta = fit.beta_hat;
  result.estimators = options.estimators;

  CandidateGrid grid = options.grid;
  for (EstimatorTag tag : options.estimators) {
    HacEstimate est;
    switch (tag) {
      case EstimatorTag::kAm: est = estimate_am(V); break;
      case EstimatorTag::kAmPw: est = estimate_am_pw(V); break;
      case EstimatorTag::kAmPwUnadj: est = estimate_am_pw_unadj(V); break;
      case EstimatorTag::kCvll: est = estimate_cvll(V, grid); break;
    }
    Eigen::MatrixXd sw = sandwich(fit.xtx_over_n, est.s_hat);
    Eigen::VectorXd se(d + 1);
    std::vector<std::string> stars;
    for (int i = 0; i <= d; ++i) {
      se(i) = standard_error(sw, i, n);
      stars.push_back(se(i) > 0.0 ? significance_stars(fit.beta_hat(i) / se(i)) : "");
    }
    result.se.push_back(std::move(se));
    result.stars.push_back(std::move(stars));
    if (tag == EstimatorTag::kCvll) {
      result.diagnostics.cvll_order = est.selected_order;
      result.diagnostics.cvll_bandwidth = static_cast<int>(std::lround(est.selected_bandwidth));
    }
  }

  VarModel ols1 = ols_var(V.V, 1);
  AdjustmentReport report = eigen_adjust(ols1.coeffs[0], options.threshold);
  result.diagnostics.ols_var1_eigen_magnitudes = report.eigenvalue_magnitudes;
  result.diagnostics.ols_var1_singular_values = report.singular_values;
  result.diagnostics.adjustment_triggered = report.triggered;
  result.diagnostics.adjustment_distortion = report.relative_distortion;

  VarModel burg1 = burg_var(V.V, 1);
  Eigen::MatrixXd B = companion(burg1);
  AdjustmentReport burg_report = eigen_adjust(burg1.coeffs[0], options.threshold);
  result.diagnostics.burg_var1_eigen_magnitudes = burg_report.eigenvalue_magnitudes;
  result.diagnostics.burg_var1_spectral_radius = spectral_radius(B);
  return result;
}

EmpiricalResult fit_csv(const std::string& path, const std::string& y_column,
                        const std::vector<std::string>& x_columns,
                        const EmpiricalOptions& options) {
  CsvTable table = read_csv(path);
  Eigen::MatrixXd y = numeric_columns(table, {y_column});
  Eigen::MatrixXd x = numeric_columns(table, x_columns);
  return fit_regression(y.col(0), x, x_columns, options);
}

OrderSweepResult order_sweep(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, int max_order,
                             int coef) {
  if (max_order < 0) throw ConfigError("order_sweep: max order must be >= 0");
  if (coef < 0 || coef >= X.cols()) throw ConfigError("order_sweep: coefficient index out of range");
  const int n = static_cast<int>(X.rows());
  OlsFit fit = ols_fit(y, X);
  MomentSeries V = moment_series(fit, X);

  OrderSweepResult result;
  result.coef = coef;
  for (int q = 0; q <= max_order; ++q) {
    HacEstimate est = q == 0 ? estimate_am(V)
                             : estimate_prewhitened_qs(V, q, VarFitMethod::kOls, /*adjust=*/false);
    Eigen::MatrixXd sw = sandwich(fit.xtx_over_n, est.s_hat);
    result.orders.push_back(q);
    result.se.push_back(standard_error(sw, coef, n));
  }
  return result;
}

OrderSweepResult order_sweep_csv(const std::string& path, const std::string& y_column,
                                 const std::vector<std::string>& x_columns, int max_order,
                                 int coef) {
  CsvTable table = read_csv(path);
  Eigen::MatrixXd y = numeric_columns(table, {y_column});
  Eigen::MatrixXd x = numeric_columns(table, x_columns);
  const int d = static_cast<int>(x.cols());
  Eigen::MatrixXd X(x.rows(), d + 1);
  X.col(0).setOnes();
  X.rightCols(d) = x;
  return order_sweep(y.col(0), X, max_order, coef);
}

std::string EmpiricalResult::to_markdown() const {
  std::ostringstream os;
  os.precision(4);
  os << "| Coefficient | OLS |";
  for (EstimatorTag tag : estimators) os << ' ' << estimator_name(tag) << " |";
  os << "\n|---|---|";
  for (std::size_t i = 0; i < estimators.size(); ++i) os << "---|";
  os << "\n";
  for (std::size_t i = 0; i < coef_names.size(); ++i) {
    os << "| " << coef_names[i] << " | " << beta(static_cast<int>(i)) << " |";
    for (std::size_t e = 0; e < estimators.size(); ++e)
      os << ' ' << se[e](static_cast<int>(i)) << stars[e][i] << " |";
    os << "\n";
  }
  os << "\nDiagnostics: |eig(A_ols)| = {" << diagnostics.ols_var1_eigen_magnitudes.transpose()
     << "}, sv(A_ols) = {" << diagnostics.ols_var1_singular_values.transpose()
     << "}, adjustment " << (diagnostics.adjustment_triggered ? "TRIGGERED" : "not triggered");
  if (diagnostics.adjustment_triggered)
    os << " (distortion " << 100.0 * diagnostics.adjustment_distortion << "%)";
  os << "; |eig(B_burg)| = {" << diagnostics.burg_var1_eigen_magnitudes.transpose()
     << "}, burg spectral radius = " << diagnostics.burg_var1_spectral_radius;
  if (diagnostics.cvll_order > 0)
    os << "; CVLL selected (q*, m*) = (" << diagnostics.cvll_order << ", "
       << diagnostics.cvll_bandwidth << ")";
  os << "\n";
  return os.str();
}

std::string EmpiricalResult::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "coefficient,beta";
  for (EstimatorTag tag : estimators) os << ",se_" << estimator_name(tag) << ",stars_" << estimator_name(tag);
  os << "\n";
  for (std::size_t i = 0; i < coef_names.size(); ++i) {
    os << coef_names[i] << ',' << beta(static_cast<int>(i));
    for (std::size_t e = 0; e < estimators.size(); ++e)
      os << ',' << se[e](static_cast<int>(i)) << ',' << stars[e][i];
    os << "\n";
  }
  return os.str();
}

std::string OrderSweepResult::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "order,se\n";
  for (std::size_t i = 0; i < orders.size(); ++i) os << orders[i] << ',' << se[i] << "\n";
  return os.str();
}

}  // namespace haccv
