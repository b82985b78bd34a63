// Command-line front end: Monte Carlo scenarios, eigen-adjustment analysis,
// CSV regression with the four HAC standard errors, and the prewhitening
// order sweep.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "haccv/common.hpp"
#include "haccv/eigen_analysis.hpp"
#include "haccv/empirical.hpp"
#include "haccv/mc.hpp"

namespace {

using namespace haccv;

std::vector<EstimatorTag> parse_estimators(const std::string& spec) {
  if (spec == "all")
    return {EstimatorTag::kAm, EstimatorTag::kAmPw, EstimatorTag::kAmPwUnadj, EstimatorTag::kCvll};
  std::vector<EstimatorTag> out;
  std::istringstream is(spec);
  std::string token;
  while (std::getline(is, token, ',')) {
    if (token == "am") out.push_back(EstimatorTag::kAm);
    else if (token == "ampw") out.push_back(EstimatorTag::kAmPw);
    else if (token == "ampw-unadj") out.push_back(EstimatorTag::kAmPwUnadj);
    else if (token == "cvll") out.push_back(EstimatorTag::kCvll);
    else throw ConfigError("unknown estimator '" + token + "'");
  }
  if (out.empty()) throw ConfigError("estimator list is empty");
  return out;
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string token;
  while (std::getline(is, token, ',')) out.push_back(token);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw DataError("cannot open output file '" + out_path + "'");
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"HAC covariance estimation with cross-validated VAR prewhitening"};
  app.require_subcommand(1);

  // ---- mc ----
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo scenario");
  std::string mc_dgp = "ar1", mc_estimators = "all", mc_out, mc_format = "md";
  McConfig cfg;
  mc_cmd->add_option("--dgp", mc_dgp, "ar1|ar2|ar3|ma2")
      ->check(CLI::IsMember({"ar1", "ar2", "ar3", "ma2"}));
  mc_cmd->add_option("--phi", cfg.phi, "AR coefficient parameter");
  mc_cmd->add_option("--theta1", cfg.theta1, "MA(2) first coefficient");
  mc_cmd->add_option("--theta2", cfg.theta2, "MA(2) second coefficient");
  mc_cmd->add_option("--alpha", cfg.alpha, "regressor intercept");
  mc_cmd->add_option("--n", cfg.n, "sample size");
  mc_cmd->add_option("--reps", cfg.repetitions, "repetitions");
  mc_cmd->add_option("--d", cfg.d, "number of nonconstant regressors");
  mc_cmd->add_option("--estimators", mc_estimators, "all or comma list of am,ampw,ampw-unadj,cvll");
  mc_cmd->add_option("--seed", cfg.seed, "master seed");
  mc_cmd->add_option("--c", cfg.c, "CVLL localization exponent");
  mc_cmd->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
  mc_cmd->add_option("--out", mc_out, "output path (default stdout)");
  mc_cmd->add_option("--format", mc_format, "csv|md")->check(CLI::IsMember({"csv", "md"}));

  // ---- eigen-analysis ----
  auto* ea_cmd = app.add_subcommand("eigen-analysis", "Eigen-adjustment trigger analysis");
  std::string ea_mode = "theoretical", ea_phis = "0.3,0.5,0.7,0.9", ea_out, ea_format = "md";
  double ea_alpha = 2.0;
  int ea_n = 500, ea_reps = 1000;
  std::uint64_t ea_seed = 20240502;
  ea_cmd->add_option("--mode", ea_mode, "theoretical|empirical")
      ->check(CLI::IsMember({"theoretical", "empirical"}));
  ea_cmd->add_option("--alpha", ea_alpha, "regressor intercept");
  ea_cmd->add_option("--phis", ea_phis, "comma list of AR coefficients");
  ea_cmd->add_option("--n", ea_n, "sample size (empirical)");
  ea_cmd->add_option("--reps", ea_reps, "repetitions (empirical)");
  ea_cmd->add_option("--seed", ea_seed, "master seed (empirical)");
  ea_cmd->add_option("--out", ea_out, "output path (default stdout)");
  ea_cmd->add_option("--format", ea_format, "csv|md")->check(CLI::IsMember({"csv", "md"}));

  // ---- fit ----
  auto* fit_cmd = app.add_subcommand("fit", "OLS with HAC standard errors on a CSV");
  std::string fit_csv_path, fit_y, fit_x, fit_estimator = "all", fit_out, fit_format = "md";
  int fit_q = 0, fit_m = 0;
  double fit_c = 0.8;
  fit_cmd->add_option("--csv", fit_csv_path, "input CSV path")->required();
  fit_cmd->add_option("--y", fit_y, "response column name")->required();
  fit_cmd->add_option("--x", fit_x, "comma list of regressor column names")->required();
  fit_cmd->add_option("--estimator", fit_estimator, "all|am|ampw|ampw-unadj|cvll");
  fit_cmd->add_option("--q", fit_q, "fix the CVLL prewhitening order");
  fit_cmd->add_option("--m", fit_m, "fix the CVLL bandwidth");
  fit_cmd->add_option("--c", fit_c, "CVLL localization exponent");
  fit_cmd->add_option("--out", fit_out, "output path (default stdout)");
  fit_cmd->add_option("--format", fit_format, "csv|md")->check(CLI::IsMember({"csv", "md"}));

  // ---- order-sweep ----
  auto* sweep_cmd = app.add_subcommand("order-sweep", "SE per OLS prewhitening order");
  std::string sw_csv, sw_y, sw_x, sw_out;
  int sw_max_order = 16, sw_coef = 1;
  sweep_cmd->add_option("--csv", sw_csv, "input CSV path")->required();
  sweep_cmd->add_option("--y", sw_y, "response column name")->required();
  sweep_cmd->add_option("--x", sw_x, "comma list of regressor column names")->required();
  sweep_cmd->add_option("--max-order", sw_max_order, "largest prewhitening order");
  sweep_cmd->add_option("--coef", sw_coef, "coefficient index (0 = intercept)");
  sweep_cmd->add_option("--out", sw_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (mc_cmd->parsed()) {
    if (mc_dgp == "ar1") cfg.dgp = DgpKind::kAr1;
    else if (mc_dgp == "ar2") cfg.dgp = DgpKind::kAr2;
    else if (mc_dgp == "ar3") cfg.dgp = DgpKind::kAr3;
    else cfg.dgp = DgpKind::kMa2;
    cfg.estimators = parse_estimators(mc_estimators);
    McReport report = run_monte_carlo(cfg);
    emit(mc_format == "csv" ? report.to_csv() : report.to_markdown(), mc_out);
    return 0;
  }

  if (ea_cmd->parsed()) {
    std::vector<double> phis;
    for (const auto& tok : split_csv_list(ea_phis)) phis.push_back(std::stod(tok));
    EigenAnalysisTable table =
        ea_mode == "theoretical"
            ? eigen_analysis_theoretical(ea_alpha, phis)
            : eigen_analysis_empirical(ea_alpha, phis, ea_n, ea_reps, ea_seed);
    emit(ea_format == "csv" ? table.to_csv() : table.to_markdown(), ea_out);
    return 0;
  }

  if (fit_cmd->parsed()) {
    EmpiricalOptions options;
    if (fit_estimator != "all") options.estimators = parse_estimators(fit_estimator);
    options.grid.c = fit_c;
    if (fit_q > 0) options.grid.orders = {fit_q};
    if (fit_m > 0) options.grid.bandwidths = {fit_m};
    EmpiricalResult result = fit_csv(fit_csv_path, fit_y, split_csv_list(fit_x), options);
    emit(fit_format == "csv" ? result.to_csv() : result.to_markdown(), fit_out);
    return 0;
  }

  OrderSweepResult result = order_sweep_csv(sw_csv, sw_y, split_csv_list(sw_x), sw_max_order, sw_coef);
  emit(result.to_csv(), sw_out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
