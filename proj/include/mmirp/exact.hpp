#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mmirp/core.hpp"
#include "mmirp/routing.hpp"

namespace mmirp {

inline constexpr std::size_t kMaxOracleGenes = 20;

// Minimum-cost feasible schedule over all 2^(|I| |T|) matrices, routed with
// tsp_exact. Ties go to the lexicographically smallest bit string. This is the
// optimum of the decode-rule search space, not of the full MILP. Throws
// SizeLimitError when |I| |T| > kMaxOracleGenes.
Solution oracle_enumerate(const Instance& instance);

// Deliver every period: zero inventory, one visit per customer-period.
// Propagates PackingInfeasibleError.
Solution baseline_direct(const Instance& instance);

enum class Sense { LessEqual, GreaterEqual, Equal };
enum class VarDomain { Binary, Continuous };

struct LinearTerm {
  double coef = 0.0;
  std::string var;
};

struct LpConstraint {
  std::string name;
  std::string family;  // "C2".."C7", or "SF" for flow subtour rows
  std::vector<LinearTerm> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

struct LpVariable {
  std::string name;
  VarDomain domain = VarDomain::Continuous;
  bool fixed_zero = false;
};

struct LpModel {
  std::vector<LinearTerm> objective;  // minimised
  std::vector<LpConstraint> constraints;
  std::vector<LpVariable> variables;

  std::size_t count_family(const std::string& family) const;
  std::size_t count_prefix(const std::string& prefix) const;  // variables
};

struct LpExportOptions {
  // Keep the supplier (i = 0) rows of the printed flow inequality. Those rows
  // forbid any net outflow from the supplier, so a model with positive demand
  // is infeasible while they are present.
  bool c5_supplier_rows = true;
  // Add single-commodity flow subtour elimination (variables g_v*_i*_j*_t*).
  bool flow_subtour = false;
};

// Variable names (all indices 1-based except node i/j, where 0 is the supplier
// and customer k is node k):
//   x_v{v}_i{i}_j{j}_t{t}          binary, edge (i, j) used by vehicle v in t
//   y_v{v}_p{p}_i{i}_j{j}_t{t}     product p carried on that edge
//   r_p{p}_i{i}_t{t}               end-of-period inventory, t >= 1; the supplier
//                                  also has r_p{p}_i0_t0 (opening stock, free)
// Self-loops x_v*_i{k}_j{k}_t* are fixed to zero in the Bounds section.
LpModel build_lp(const Instance& instance, const LpExportOptions& options = {});
void write_lp(std::ostream& os, const LpModel& model);
LpModel export_lp(const Instance& instance, const std::filesystem::path& path, const LpExportOptions& options = {});

// x, y, r and flow g values of a Solution under the naming scheme above
// (zeros omitted).
std::map<std::string, double> lp_values(const Instance& instance, const Solution& solution);

}  // namespace mmirp
