#ifndef HACCV_CVLL_HPP
#define HACCV_CVLL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "haccv/lrv.hpp"
#include "haccv/regress.hpp"
#include "haccv/varfit.hpp"

namespace haccv {

/// How the prewhitening coefficients behave inside the leave-one-out spectra.
///
/// kFullSampleCoefficients fits the VAR(q) once per order on the full moment
/// series and applies the frequency surgery only to the residual smoothing
/// stage. kPerFrequency refits the VAR on every surgered series. The refit
/// variant lets a higher-order fit chase the energy of the modified bin, which
/// systematically penalizes larger orders; the full-sample default reproduces
/// the published order-selection behavior.
enum class LooRefitPolicy { kFullSampleCoefficients, kPerFrequency };

/// floor(4 (n/100)^{2/9}), the bandwidth-grid cap (at least 1).
int default_bandwidth_cap(int n);

/// floor((n/2)^c), additionally capped at floor((n-1)/2).
int frequency_count(int n, double c);

struct CandidateGrid {
  std::vector<int> orders{1, 2};
  std::vector<int> bandwidths;  // empty -> 1..default_bandwidth_cap(n)
  double c = 0.8;
  VarFitMethod fit_method = VarFitMethod::kBurg;
  LooRefitPolicy refit = LooRefitPolicy::kFullSampleCoefficients;
};

struct CvllScore {
  int q = 0;
  int m = 0;
  double score = 0.0;
  bool excluded = false;
  std::string exclusion_reason;
};

/// Localized multivariate CVLL for one (q, m) candidate:
/// sum over j = 1..floor((n/2)^c) of log det f_{-j}(omega_j) + tr[I(omega_j) f_{-j}^{-1}],
/// where I is always the periodogram of the original moment series.
CvllScore cvll_score(const MomentSeries& V, int q, int m, double c,
                     VarFitMethod fit_method = VarFitMethod::kBurg,
                     LooRefitPolicy refit = LooRefitPolicy::kFullSampleCoefficients);

struct CvllSelection {
  int q = 0;
  int m = 0;
  std::vector<CvllScore> scores;
};

/// Argmin of the criterion over the grid; ties break lexicographically by
/// (q, m) ascending, excluded candidates are skipped, and an all-excluded grid
/// is a hard error carrying the per-candidate reasons.
CvllSelection select(const MomentSeries& V, const CandidateGrid& grid);

/// Full pipeline: select (q*, m*), then the full-sample prewhitened Parzen
/// spectrum at frequency zero, scaled to an LRV estimate 2 pi f(0).
HacEstimate estimate_cvll(const MomentSeries& V, const CandidateGrid& grid = {});

}  // namespace haccv

#endif
