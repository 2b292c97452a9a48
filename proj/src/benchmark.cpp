#include "mmirp/benchmark.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mmirp/error.hpp"
#include "mmirp/exact.hpp"
#include "mmirp/instance_io.hpp"

namespace mmirp {

std::vector<SuiteCase> enumerate_suite(const SuiteSpec& spec) {
  if (spec.replicates < 1) throw ValidationError("replicates must be positive");
  std::vector<SuiteCase> out;
  for (int p : spec.products)
    for (int i : spec.customers)
      for (int t : spec.periods)
        for (int v : spec.vehicles)
          for (int r = 1; r <= spec.replicates; ++r) {
            GenConfig c;
            c.n_customers = i;
            c.n_periods = t;
            c.n_vehicles = v;
            c.n_products = p;
            c.seed = spec.base_seed + static_cast<std::uint64_t>(r - 1);
            std::string id = "I" + std::to_string(i) + "_T" + std::to_string(t) + "_V" + std::to_string(v) + "_P" +
                             std::to_string(p) + "_s" + std::to_string(c.seed);
            out.push_back({std::move(id), c});
          }
  return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_cell(const std::string& cell, const std::string& what) {
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw ParseError("field '" + what + "': not a number: '" + cell + "'");
  return v;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ParseError("field '" + name + "': column not found");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

BoundsTable read_bounds_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("field 'header': empty bounds file");
  const auto header = split_csv(line);
  const auto c_id = column_index(header, "instance_id");
  const auto c_lb = column_index(header, "LB");
  const auto c_ub = column_index(header, "UB");

  BoundsTable table;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv(line);
    cells.resize(std::max(cells.size(), header.size()));
    Bounds b{parse_cell(cells[c_lb], "LB"), parse_cell(cells[c_ub], "UB")};
    if (!table.emplace(cells[c_id], b).second) throw ParseError("field 'instance_id': duplicate " + cells[c_id]);
  }
  return table;
}

BoundsTable read_bounds_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path.string() + "'");
  return read_bounds_csv(is);
}

std::vector<std::optional<double>> read_csv_column(std::istream& is, const std::string& column) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("field 'header': empty CSV");
  const auto c = column_index(split_csv(line), column);
  std::vector<std::optional<double>> out;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv(line);
    out.push_back(c < cells.size() ? parse_cell(cells[c], column) : std::nullopt);
  }
  return out;
}

std::vector<MetricsRecord> run_benchmark(const SuiteSpec& suite, const BenchOptions& options,
                                         const BoundsTable& bounds,
                                         const std::function<void(const MetricsRecord&)>& on_record) {
  if (options.repeats < 1) throw ValidationError("repeats must be positive");
  const auto cases = enumerate_suite(suite);
  for (const auto& [id, b] : bounds) {
    const bool known = std::any_of(cases.begin(), cases.end(), [&](const SuiteCase& c) { return c.id == id; });
    if (!known) throw ValidationError("bounds file references unknown instance '" + id + "'");
  }

  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::duration d) { return std::chrono::duration<double>(d).count(); };

  std::vector<MetricsRecord> records;
  for (const auto& sc : cases) {
    const Instance inst = generate_instance(sc.config);
    MetricsRecord rec;
    rec.instance_id = sc.id;
    rec.config = sc.config;
    if (auto it = bounds.find(sc.id); it != bounds.end()) {
      rec.lb = it->second.lb;
      rec.ub = it->second.ub;
    }

    try {
      double hbv_sum = 0.0;
      double time_sum = 0.0;
      for (int k = 0; k < options.repeats; ++k) {
        GaConfig ga = options.ga;
        ga.seed = options.ga.seed + static_cast<std::uint64_t>(k);
        const auto start = Clock::now();
        GaResult res = evolve(inst, ga);
        time_sum += seconds(Clock::now() - start);
        hbv_sum += res.best.cost.total;
        rec.logs.push_back(std::move(res.log));
      }
      rec.hbv_maga = hbv_sum / options.repeats;
      rec.runtime_maga_s = time_sum / options.repeats;
    } catch (const InstanceInfeasibleError&) {
    }

    try {
      const auto start = Clock::now();
      rec.hbv_baseline = baseline_direct(inst).cost.total;
      rec.runtime_baseline_s = seconds(Clock::now() - start);
    } catch (const PackingInfeasibleError&) {
    }

    if (options.run_oracle && inst.num_customers() * inst.periods <= kMaxOracleGenes) {
      try {
        rec.hbv_oracle = oracle_enumerate(inst).cost.total;
      } catch (const InstanceInfeasibleError&) {
      }
    }

    if (rec.hbv_maga || rec.ub) rec.maga = compute_metrics(rec.lb, rec.ub, rec.hbv_maga);
    if (on_record) on_record(rec);
    records.push_back(std::move(rec));
  }

  std::stable_sort(records.begin(), records.end(), [](const MetricsRecord& a, const MetricsRecord& b) {
    const auto& da = a.maga.difficulty;
    const auto& db = b.maga.difficulty;
    if (da.has_value() != db.has_value()) return da.has_value();
    if (da && *da != *db) return *da > *db;
    return a.instance_id < b.instance_id;
  });
  return records;
}

void write_report_csv(std::ostream& os, const std::vector<MetricsRecord>& records) {
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  os << "instance_id,I,T,V,P,seed,LB,UB,HBV_maga,HBV_baseline,difficulty,closeness_maga,saving_maga,"
        "runtime_maga_s,runtime_baseline_s,HBV_oracle\n";
  for (const auto& r : records) {
    const auto& c = r.config;
    os << r.instance_id << "," << c.n_customers << "," << c.n_periods << "," << c.n_vehicles << "," << c.n_products
       << "," << c.seed << "," << opt(r.lb) << "," << opt(r.ub) << "," << opt(r.hbv_maga) << ","
       << opt(r.hbv_baseline) << "," << opt(r.maga.difficulty) << "," << opt(r.maga.closeness) << ","
       << opt(r.maga.saving) << "," << format_real(r.runtime_maga_s) << "," << format_real(r.runtime_baseline_s)
       << "," << opt(r.hbv_oracle) << "\n";
  }
}

}  // namespace mmirp
