// Command-line front end: instance generation, solving, LP export, benchmark
// suites and paired t-tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmirp/benchmark.hpp"
#include "mmirp/error.hpp"
#include "mmirp/exact.hpp"
#include "mmirp/ga.hpp"
#include "mmirp/instance_io.hpp"
#include "mmirp/metrics.hpp"
#include "mmirp/routing.hpp"

namespace fs = std::filesystem;
using namespace mmirp;

namespace {

void add_ga_flags(CLI::App* app, GaConfig& ga) {
  app->add_option("--seed", ga.seed, "GA random seed");
  app->add_option("--psize", ga.psize, "Population size");
  app->add_option("--cr", ga.cr0, "Initial crossover rate");
  app->add_option("--mr", ga.mr0, "Initial mutation rate");
  app->add_option("--kmax", ga.k_max, "Stop after this many non-improving generations");
  app->add_option("--max-gens", ga.max_generations, "Generation limit");
}

void print_cost(std::ostream& os, const CostBreakdown& c) {
  os << "fleet_fixed " << format_real(c.fleet_fixed) << "\n"
     << "transport   " << format_real(c.transport) << "\n"
     << "inventory   " << format_real(c.inventory) << "\n"
     << "total       " << format_real(c.total) << "\n";
}

void write_solution_file(const std::string& path, const Solution& sol) {
  if (path.empty()) return;
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_solution(os, sol);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-product multi-period inventory routing toolkit"};
  app.require_subcommand(1);

  // gen
  GenConfig gen_cfg;
  std::string gen_out;
  bool gen_suite = false;
  std::string gen_dir = ".";
  int gen_replicates = 3;
  auto* gen = app.add_subcommand("gen", "Generate instance files");
  gen->add_option("-I,--customers", gen_cfg.n_customers, "Number of customers");
  gen->add_option("-T,--periods", gen_cfg.n_periods, "Number of periods");
  gen->add_option("-V,--vehicles", gen_cfg.n_vehicles, "Number of vehicles");
  gen->add_option("-P,--products", gen_cfg.n_products, "Number of products");
  gen->add_option("--seed", gen_cfg.seed, "Generator seed");
  gen->add_option("--grid", gen_cfg.grid_size, "Grid side length");
  gen->add_option("-o,--output", gen_out, "Instance file (default: stdout)");
  gen->add_flag("--suite", gen_suite, "Write the full 32-configuration grid instead");
  gen->add_option("--out-dir", gen_dir, "Directory for --suite");
  gen->add_option("--replicates", gen_replicates, "Seeds per configuration for --suite");

  // solve
  std::string instance_path;
  std::string solution_out;
  std::string log_out;
  GaConfig ga;
  auto* solve = app.add_subcommand("solve", "Run the adaptive GA on one instance");
  solve->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  add_ga_flags(solve, ga);
  solve->add_option("--solution", solution_out, "Write the solution dump here");
  solve->add_option("--log", log_out, "Write the generation log (CSV) here");

  auto* base = app.add_subcommand("baseline", "Evaluate direct delivery in every period");
  base->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  base->add_option("--solution", solution_out, "Write the solution dump here");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive schedule enumeration (|I| x |T| <= 20)");
  oracle->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--solution", solution_out, "Write the solution dump here");

  // export-lp
  std::string lp_out;
  LpExportOptions lp_opts;
  bool no_c5_supplier = false;
  auto* lp = app.add_subcommand("export-lp", "Write the mixed-integer model in LP format");
  lp->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  lp->add_option("-o,--output", lp_out, "LP file")->required();
  lp->add_flag("--no-c5-supplier", no_c5_supplier, "Drop the supplier rows of the flow inequality family");
  lp->add_flag("--flow-subtour", lp_opts.flow_subtour, "Add single-commodity flow subtour elimination");

  // bench
  SuiteSpec suite;
  BenchOptions bench_opts;
  std::string bounds_path;
  std::string report_out;
  auto* bench = app.add_subcommand("bench", "Run a generated benchmark suite and write a CSV report");
  bench->add_option("--customers", suite.customers, "Customer counts")->delimiter(',');
  bench->add_option("--periods", suite.periods, "Period counts")->delimiter(',');
  bench->add_option("--vehicles", suite.vehicles, "Vehicle counts")->delimiter(',');
  bench->add_option("--products", suite.products, "Product counts")->delimiter(',');
  bench->add_option("--replicates", suite.replicates, "Seeds per configuration");
  bench->add_option("--base-seed", suite.base_seed, "First instance seed");
  bench->add_option("--bounds", bounds_path, "CSV of external LB/UB (instance_id,LB,UB)")->check(CLI::ExistingFile);
  bench->add_option("--repeats", bench_opts.repeats, "GA runs per instance (HBV is their mean)");
  bench->add_option("-o,--output", report_out, "Report CSV (default: stdout)");
  add_ga_flags(bench, bench_opts.ga);

  // ttest
  std::string csv_path;
  std::string col_a = "HBV_maga";
  std::string col_b = "HBV_baseline";
  auto* ttest = app.add_subcommand("ttest", "Paired t-test between two CSV columns");
  ttest->add_option("csv", csv_path, "CSV file")->required()->check(CLI::ExistingFile);
  ttest->add_option("--col-a", col_a, "First column");
  ttest->add_option("--col-b", col_b, "Second column");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen_suite) {
        SuiteSpec spec;
        spec.replicates = gen_replicates;
        spec.base_seed = gen_cfg.seed;
        fs::create_directories(gen_dir);
        for (const auto& sc : enumerate_suite(spec)) write_instance(fs::path(gen_dir) / (sc.id + ".txt"),
                                                                    generate_instance(sc.config));
      } else if (gen_out.empty()) {
        write_instance(std::cout, generate_instance(gen_cfg));
      } else {
        write_instance(fs::path(gen_out), generate_instance(gen_cfg));
      }
    } else if (solve->parsed()) {
      const Instance inst = read_instance(fs::path(instance_path));
      const GaResult res = evolve(inst, ga);
      print_cost(std::cout, res.best.cost);
      std::cout << "generations " << res.generations << "\n";
      write_solution_file(solution_out, res.best);
      if (!log_out.empty()) {
        std::ofstream os(log_out);
        if (!os) throw Error("cannot open '" + log_out + "' for writing");
        write_generation_log(os, res.log);
      }
    } else if (base->parsed()) {
      const Solution sol = baseline_direct(read_instance(fs::path(instance_path)));
      print_cost(std::cout, sol.cost);
      write_solution_file(solution_out, sol);
    } else if (oracle->parsed()) {
      const Solution sol = oracle_enumerate(read_instance(fs::path(instance_path)));
      print_cost(std::cout, sol.cost);
      std::cout << "schedule\n" << sol.schedule.to_string() << "\n";
      write_solution_file(solution_out, sol);
    } else if (lp->parsed()) {
      lp_opts.c5_supplier_rows = !no_c5_supplier;
      const LpModel m = export_lp(read_instance(fs::path(instance_path)), lp_out, lp_opts);
      std::cout << "variables " << m.variables.size() << "\nconstraints " << m.constraints.size() << "\n";
    } else if (bench->parsed()) {
      const BoundsTable bounds = bounds_path.empty() ? BoundsTable{} : read_bounds_csv(fs::path(bounds_path));
      const auto records = run_benchmark(suite, bench_opts, bounds, [](const MetricsRecord& r) {
        std::cerr << r.instance_id << " done\n";
      });
      if (report_out.empty()) {
        write_report_csv(std::cout, records);
      } else {
        std::ofstream os(report_out);
        if (!os) throw Error("cannot open '" + report_out + "' for writing");
        write_report_csv(os, records);
      }
    } else if (ttest->parsed()) {
      std::ifstream is_a(csv_path);
      std::ifstream is_b(csv_path);
      const auto a = read_csv_column(is_a, col_a);
      const auto b = read_csv_column(is_b, col_b);
      std::vector<double> xa;
      std::vector<double> xb;
      for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
        if (a[k] && b[k]) {
          xa.push_back(*a[k]);
          xb.push_back(*b[k]);
        }
      }
      const TTestResult r = paired_t_test(xa, xb);
      std::cout << std::setprecision(6) << "n " << r.n << "\n"
                << "t " << r.t_statistic << "\n"
                << "p " << r.p_value << "\n"
                << "mean_difference " << r.mean_difference << "\n"
                << "ci95 " << r.confidence_interval_95.first << " " << r.confidence_interval_95.second << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
