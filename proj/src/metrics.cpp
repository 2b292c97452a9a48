#include "mmirp/metrics.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "mmirp/error.hpp"

namespace mmirp {

GapMetrics compute_metrics(std::optional<double> lb, std::optional<double> ub, std::optional<double> hbv) {
  if (ub && !(*ub > 0.0)) throw DomainError("upper bound must be positive");
  if (hbv && !(*hbv > 0.0)) throw DomainError("heuristic best value must be positive");

  GapMetrics m;
  if (lb && ub) m.difficulty = (*ub - *lb) / *ub;
  if (lb && hbv) m.closeness = (*hbv - *lb) / *hbv;
  if (ub && hbv) m.saving = (*ub - *hbv) / *ub;
  return m;
}

double student_t_two_sided_p(double t, double dof) {
  if (!(dof > 0.0)) throw DomainError("degrees of freedom must be positive");
  boost::math::students_t dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ValidationError("paired series differ in length (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  const std::size_t n = a.size();
  if (n < 2) throw ValidationError("paired t-test needs at least two pairs");

  double mean = 0.0;
  for (std::size_t k = 0; k < n; ++k) mean += a[k] - b[k];
  mean /= static_cast<double>(n);

  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dev = (a[k] - b[k]) - mean;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw DegenerateDataError("differences have zero variance");

  const double se = sd / std::sqrt(static_cast<double>(n));
  const double dof = static_cast<double>(n - 1);

  TTestResult r;
  r.n = n;
  r.mean_difference = mean;
  r.t_statistic = mean / se;
  r.p_value = student_t_two_sided_p(r.t_statistic, dof);
  const double crit = boost::math::quantile(boost::math::students_t(dof), 0.975);
  r.confidence_interval_95 = {mean - crit * se, mean + crit * se};
  return r;
}

}  // namespace mmirp
