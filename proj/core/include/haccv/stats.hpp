#ifndef HACCV_STATS_HPP
#define HACCV_STATS_HPP

namespace haccv {

/// Standard normal quantile (inverse CDF), Wichura's AS 241 (double precision).
double normal_quantile(double p);

/// Two-sided critical value z_{alpha/2}; alpha in (0,1).
double two_sided_critical_value(double alpha);

/// Standard normal CDF.
double normal_cdf(double z);

/// Two-sided p-value for a z statistic.
double two_sided_p_value(double z);

}  // namespace haccv

#endif
