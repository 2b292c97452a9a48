#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmirp/core.hpp"
#include "mmirp/ga.hpp"
#include "mmirp/metrics.hpp"

namespace mmirp {

// Cartesian grid of generator settings, replicated by seed.
struct SuiteSpec {
  std::vector<int> customers{5, 10, 20, 30};
  std::vector<int> periods{5, 7};
  std::vector<int> vehicles{3, 5};
  std::vector<int> products{2, 5};
  int replicates = 3;
  std::uint64_t base_seed = 1;  // replicate r uses seed base_seed + r
};

struct SuiteCase {
  std::string id;  // e.g. "I5_T5_V3_P2_s1"
  GenConfig config;
};

std::vector<SuiteCase> enumerate_suite(const SuiteSpec& spec);

struct Bounds {
  std::optional<double> lb;
  std::optional<double> ub;
};

using BoundsTable = std::map<std::string, Bounds>;

// CSV with header "instance_id,LB,UB"; either bound may be blank.
BoundsTable read_bounds_csv(std::istream& is);
BoundsTable read_bounds_csv(const std::filesystem::path& path);

struct MetricsRecord {
  std::string instance_id;
  GenConfig config;
  std::optional<double> lb;
  std::optional<double> ub;
  std::optional<double> hbv_maga;  // mean over repeats
  std::optional<double> hbv_baseline;
  std::optional<double> hbv_oracle;
  GapMetrics maga;
  double runtime_maga_s = 0.0;  // mean over repeats
  double runtime_baseline_s = 0.0;
  std::vector<std::vector<GenerationRecord>> logs;  // one per repeat
};

struct BenchOptions {
  GaConfig ga;
  int repeats = 1;  // GA runs per instance with seeds ga.seed + k
  bool run_oracle = true;  // only where |I| x |T| is within the oracle bound
};

// Runs every case; rows sorted by difficulty descending, rows without a
// difficulty last, ties by instance id. Throws ValidationError when the bounds
// table names an instance outside the suite.
std::vector<MetricsRecord> run_benchmark(const SuiteSpec& suite, const BenchOptions& options,
                                         const BoundsTable& bounds = {},
                                         const std::function<void(const MetricsRecord&)>& on_record = {});

// Columns: instance_id,I,T,V,P,seed,LB,UB,HBV_maga,HBV_baseline,difficulty,
// closeness_maga,saving_maga,runtime_maga_s,runtime_baseline_s,HBV_oracle.
// Absent values are empty fields.
void write_report_csv(std::ostream& os, const std::vector<MetricsRecord>& records);

// Numeric column by header name; blank cells are nullopt.
std::vector<std::optional<double>> read_csv_column(std::istream& is, const std::string& column);

}  // namespace mmirp
