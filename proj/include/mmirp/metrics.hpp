#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace mmirp {

struct GapMetrics {
  std::optional<double> difficulty;  // (UB - LB) / UB
  std::optional<double> closeness;   // (HBV - LB) / HBV
  std::optional<double> saving;      // (UB - HBV) / UB
};

// A metric is present only when both of its inputs are. Throws DomainError
// when a present UB or HBV is not positive.
GapMetrics compute_metrics(std::optional<double> lb, std::optional<double> ub, std::optional<double> hbv);

struct TTestResult {
  double t_statistic = 0.0;
  double p_value = 1.0;  // two-sided
  double mean_difference = 0.0;
  std::pair<double, double> confidence_interval_95;
  std::size_t n = 0;
};

// Classical paired t-test on a - b. Throws ValidationError on length
// mismatch or n < 2, DegenerateDataError when the differences have zero
// variance.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

// Two-sided tail probability P(|T| >= |t|) for Student's t with `dof` degrees
// of freedom.
double student_t_two_sided_p(double t, double dof);

}  // namespace mmirp
