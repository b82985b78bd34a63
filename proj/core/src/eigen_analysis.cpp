#include "haccv/eigen_analysis.hpp"

#include <algorithm>
#include <sstream>

#include "haccv/common.hpp"
#include "haccv/dgp.hpp"
#include "haccv/mc.hpp"
#include "haccv/regress.hpp"
#include "haccv/varfit.hpp"

namespace haccv {

EigenAnalysisTable eigen_analysis_theoretical(double alpha, const std::vector<double>& phis,
                                              int d, double threshold) {
  EigenAnalysisTable table;
  table.mode = "theoretical";
  table.alpha = alpha;
  for (double phi : phis) {
    if (std::fabs(phi) >= 1.0) throw ConfigError("eigen_analysis: |phi| must be < 1");
    Eigen::MatrixXd A = moment_var1_coefficient(phi, alpha, d);
    AdjustmentReport report = eigen_adjust(A, threshold);
    EigenAnalysisRow row;
    row.phi = phi;
    row.eigen_magnitudes = report.eigenvalue_magnitudes;
    row.singular_values = report.singular_values;
    row.trigger_pct = report.triggered ? 100.0 : 0.0;
    row.distortion_pct = 100.0 * report.relative_distortion;
    table.rows.push_back(std::move(row));
  }
  return table;
}

EigenAnalysisTable eigen_analysis_empirical(double alpha, const std::vector<double>& phis, int n,
                                            int reps, std::uint64_t seed, int threads,
                                            double threshold) {
  if (reps < 1) throw ConfigError("eigen_analysis_empirical: reps must be >= 1");
  EigenAnalysisTable table;
  table.mode = "empirical";
  table.alpha = alpha;
  table.n = n;
  table.reps = reps;

  for (double phi : phis) {
    ArSpec regressor{alpha, {phi}, 1.0};
    ArSpec error{0.0, {phi}, 1.0};
    const std::vector<SeriesSpec> regressors{regressor};
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(2);

    struct Draw {
      Eigen::VectorXd eig, sv;
      bool triggered;
      double distortion;
    };
    std::vector<Draw> draws(static_cast<std::size_t>(reps));
    parallel_for_index(reps, threads, [&](int rep) {
      RegressionDataset data =
          make_dataset(regressors, error, beta, n, seed, static_cast<std::uint64_t>(rep));
      OlsFit fit = ols_fit(data);
      MomentSeries V = moment_series(fit, data.X);
      VarModel model = ols_var(V.V, 1);
      AdjustmentReport report = eigen_adjust(model.coeffs[0], threshold);
      draws[static_cast<std::size_t>(rep)] =
          Draw{report.eigenvalue_magnitudes, report.singular_values, report.triggered,
               report.relative_distortion};
    });

    EigenAnalysisRow row;
    row.phi = phi;
    row.eigen_magnitudes = Eigen::VectorXd::Zero(2);
    row.singular_values = Eigen::VectorXd::Zero(2);
    for (const auto& d : draws) {
      row.eigen_magnitudes += d.eig;
      row.singular_values += d.sv;
      row.trigger_pct += d.triggered ? 1.0 : 0.0;
      row.distortion_pct += d.distortion;
    }
    row.eigen_magnitudes /= reps;
    row.singular_values /= reps;
    row.trigger_pct *= 100.0 / reps;
    row.distortion_pct *= 100.0 / reps;
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {
std::string vec_str(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os.precision(4);
  os << "{";
  for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << "}";
  return os.str();
}
}  // namespace

std::string EigenAnalysisTable::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "mode,alpha,n,reps\n" << mode << ',' << alpha << ',' << n << ',' << reps << "\n";
  os << "phi,eig_mag_1,eig_mag_2,sv_1,sv_2,trigger_pct,distortion_pct\n";
  for (const auto& r : rows)
    os << r.phi << ',' << r.eigen_magnitudes(0) << ',' << r.eigen_magnitudes(1) << ','
       << r.singular_values(0) << ',' << r.singular_values(1) << ',' << r.trigger_pct << ','
       << r.distortion_pct << "\n";
  return os.str();
}

std::string EigenAnalysisTable::to_markdown() const {
  std::ostringstream os;
  os << "### eigen adjustment (" << mode << "), alpha=" << alpha;
  if (mode == "empirical") os << ", n=" << n << ", reps=" << reps;
  os << "\n\n| phi | |eig| | singular values | trigger | distortion |\n|---|---|---|---|---|\n";
  os.precision(4);
  for (const auto& r : rows)
    os << "| " << r.phi << " | " << vec_str(r.eigen_magnitudes) << " | "
       << vec_str(r.singular_values) << " | " << r.trigger_pct << "% | " << r.distortion_pct
       << "% |\n";
  return os.str();
}

}  // namespace haccv
