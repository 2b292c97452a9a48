// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lp_reader.hpp"
#include "mmirp/benchmark.hpp"
#include "mmirp/error.hpp"
#include "mmirp/exact.hpp"
#include "mmirp/ga.hpp"
#include "mmirp/metrics.hpp"
#include "mmirp/routing.hpp"
#include "mmirp/schedule.hpp"

using namespace mmirp;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// ---- 1 ---------------------------------------------------------------------

Verdict oracle_optimality() {
  int instances = 0;
  int matched = 0;
  int beaten = 0;
  int skipped = 0;
  for (std::uint64_t seed = 1; instances < 20; ++seed) {
    GenConfig g;
    g.n_customers = 2 + static_cast<int>(seed % 2);
    g.n_periods = 2 + static_cast<int>((seed / 2) % 2);
    g.n_vehicles = 2;
    g.n_products = 2;
    g.seed = seed;
    const Instance inst = generate_instance(g);
    double opt = 0.0;
    try {
      opt = oracle_enumerate(inst).cost.total;
    } catch (const InstanceInfeasibleError&) {
      ++skipped;  // no feasible schedule exists at all
      continue;
    }
    ++instances;
    GaConfig cfg;
    cfg.psize = 30;
    cfg.max_generations = 200;
    cfg.k_max = 200;
    double best = 1e300;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      cfg.seed = s;
      best = std::min(best, evolve(inst, cfg).best.cost.total);
    }
    if (std::abs(best - opt) <= 1e-9) ++matched;
    if (best < opt - 1e-9) ++beaten;
  }
  return {matched >= 18 && beaten == 0,
          std::to_string(matched) + "/20 matched (need >= 18), " + std::to_string(beaten) + " beat the oracle, " +
              std::to_string(skipped) + " infeasible draws skipped"};
}

// ---- 2 ---------------------------------------------------------------------

Verdict conservation() {
  long checked = 0;
  long violations = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenConfig g;
    g.seed = seed;
    const Instance inst = generate_instance(g);
    double vmax = 0.0;
    for (const auto& v : inst.vehicles) vmax = std::max(vmax, v.capacity);
    Rng rng(1000 + seed);
    for (int k = 0; k < 1000; ++k) {
      const ScheduleMatrix s = random_schedule(inst, rng);
      const DeliveryPlan plan = decode(s, inst);
      ++checked;
      bool ok = true;
      for (std::size_t i = 0; i < inst.num_customers(); ++i) {
        for (std::size_t p = 0; p < inst.num_products(); ++p) {
          double delivered = 0.0;
          double demand = 0.0;
          double stock = 0.0;
          for (std::size_t t = 0; t < inst.periods; ++t) {
            delivered += plan.deliveries(p, i, t);
            demand += inst.demand(p, i, t);
            stock += plan.deliveries(p, i, t) - inst.demand(p, i, t);
            if (stock < -1e-9 || plan.inventory(p, i, t) < 0.0) ok = false;  // shortage or negative stock
          }
          if (std::abs(delivered - demand) > 1e-9) ok = false;
        }
        for (std::size_t t = 0; t < inst.periods; ++t) {
          double load = 0.0;
          double held = 0.0;
          for (std::size_t p = 0; p < inst.num_products(); ++p) {
            load += inst.products[p].weight * plan.deliveries(p, i, t);
            held += inst.products[p].weight * plan.inventory(p, i, t);
          }
          if (load > vmax + 1e-9) ok = false;
          if (held > inst.customers[i].storage_capacity + 1e-9) ok = false;
          if (!s.get(i, t) && load > 0.0) ok = false;
        }
        // First-delivery coverage.
        for (std::size_t t = 0; t < inst.periods && !s.get(i, t); ++t)
          if (inst.has_positive_demand(i, t)) ok = false;
      }
      if (!ok) ++violations;
    }
  }
  return {violations == 0 && checked == 10000,
          std::to_string(checked) + " chromosomes, " + std::to_string(violations) + " with violations"};
}

// ---- 3 ---------------------------------------------------------------------

Verdict metric_identity() {
  Rng rng(33);
  std::uniform_real_distribution<double> u(1.0, 1e4);
  std::uniform_real_distribution<double> f(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double lb = u(rng);
    const double ub = lb + u(rng) * f(rng);
    const double hbv = lb + f(rng) * (ub - lb);
    const auto m = compute_metrics(lb, ub, hbv);
    worst = std::max(worst, std::abs((1 - *m.difficulty) - (1 - *m.closeness) * (1 - *m.saving)));
  }
  const auto w = compute_metrics(80, 100, 90);
  const bool worked = std::abs(*w.difficulty - 0.2) <= 1e-12 && std::abs(*w.closeness - 0.1111) <= 1e-4 &&
                      std::abs(*w.saving - 0.1) <= 1e-12;
  return {worst <= 1e-12 && worked, fmt("max identity error %.3g over 1e4 triples; (80,100,90) -> (%.4f, %.4f, %.4f)",
                                        worst, *w.difficulty, *w.closeness, *w.saving)};
}

// ---- 4 ---------------------------------------------------------------------

Verdict four_customer_example() {
  const Instance ex = fixtures::four_customer_instance();
  const ScheduleMatrix s = ScheduleMatrix::parse(fixtures::kFourCustomerSchedule);
  const double c3 = inventory_cost(decode(s, ex), ex, 2);
  const Solution sol = evaluate_solution(s, ex);
  double fixed = 0.0;
  for (const auto& [v, vr] : sol.routing[1].assignments) fixed += ex.vehicles[v].fixed_cost[1];
  const std::size_t used = sol.routing[1].assignments.size();
  return {c3 == 114.0 && fixed == 20.0 && used == 2,
          fmt("customer-3 inventory cost %.17g (want 114); period-2 fleet fixed %.17g over %g vehicles (want 20 over 2)",
              c3, fixed, static_cast<double>(used))};
}

// ---- 5 ---------------------------------------------------------------------

Verdict selection() {
  const std::vector<double> f{120, 95, 300, 41, 77, 150, 88, 260, 64, 199};
  const auto p = selection_probabilities(f);
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  std::vector<Member> pop;
  for (double x : f) pop.push_back({ScheduleMatrix(1, 1), x});
  std::vector<long> hits(f.size(), 0);
  Rng rng(2024);
  const long draws = 100000;
  for (long k = 0; k < draws; ++k) ++hits[select(std::span<const Member>(pop), rng)];
  double worst = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c)
    worst = std::max(worst, std::abs(static_cast<double>(hits[c]) / draws - p[c]));
  return {worst <= 0.02 && std::abs(sum - 1.0) <= 1e-12,
          fmt("max |freq - p| = %.4f (tol 0.02); |sum p - 1| = %.3g (tol 1e-12)", worst, std::abs(sum - 1.0))};
}

// ---- 6 ---------------------------------------------------------------------

DenseMatrix<double> random_nodes(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 20.0);
  std::vector<Point> pts;
  for (std::size_t k = 0; k < n; ++k) pts.push_back({u(rng), u(rng)});
  return travel_cost_matrix({10.0, 10.0}, pts);
}

double brute_force_tour(std::size_t n, const DenseMatrix<double>& c) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  double best = 1e300;
  do {
    double s = c(0, perm.front()) + c(perm.back(), 0);
    for (std::size_t k = 0; k + 1 < n; ++k) s += c(perm[k], perm[k + 1]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Verdict routing_quality() {
  Rng rng(606);
  double mean_gap = 0.0;
  double max_gap = 0.0;
  int below = 0;
  for (int k = 0; k < 100; ++k) {
    const auto c = random_nodes(10, rng);
    std::vector<std::size_t> stops(10);
    std::iota(stops.begin(), stops.end(), std::size_t{1});
    const double h = solve_route(stops, c).cost;
    const double e = tsp_exact(stops, c).cost;
    if (h < e - 1e-9) ++below;
    const double gap = (h - e) / e;
    mean_gap += gap / 100;
    max_gap = std::max(max_gap, gap);
  }
  int mismatches = 0;
  int small = 0;
  for (std::size_t n = 1; n <= 7; ++n)
    for (int k = 0; k < 15; ++k) {
      const auto c = random_nodes(n, rng);
      std::vector<std::size_t> stops(n);
      std::iota(stops.begin(), stops.end(), std::size_t{1});
      ++small;
      if (std::abs(tsp_exact(stops, c).cost - brute_force_tour(n, c)) > 1e-9) ++mismatches;
    }
  return {below == 0 && mean_gap <= 0.05 && max_gap <= 0.10 && mismatches == 0,
          fmt("10-stop gaps: mean %.4f%% max %.4f%%, %g below exact; ", 100 * mean_gap, 100 * max_gap, below) +
              std::to_string(mismatches) + "/" + std::to_string(small) + " brute-force mismatches (<= 7 stops)"};
}

// ---- 7 ---------------------------------------------------------------------

Verdict ago_behavior() {
  struct Case {
    double rho;
    double cr, mr;          // input
    double want_cr, want_mr;
  };
  const double up_cr = 0.8 + 0.05, up_mr = 0.08 + 0.005, dn_cr = 0.8 - 0.05, dn_mr = 0.08 - 0.005;
  const Case cases[] = {
      {0.15, 0.8, 0.08, up_cr, up_mr}, {0.1, 0.8, 0.08, up_cr, up_mr},   {0.0, 0.8, 0.08, 0.8, 0.08},
      {-0.1, 0.8, 0.08, dn_cr, dn_mr}, {-0.15, 0.8, 0.08, dn_cr, dn_mr},
      {0.2, 0.95, 0.08, 0.95, up_mr},      // cr clamps high, mr still moves
      {0.2, 0.93, 0.298, 0.95, 0.3},       // both clamp high
      {-0.2, 0.42, 0.012, 0.4, 0.01},      // both clamp low
  };
  int ok = 0;
  int total = 0;
  for (const auto& c : cases) {
    AdaptiveRates r;
    r.cr = c.cr;
    r.mr = c.mr;
    const double offspring = 100.0;
    const auto out = adapt_rates(r, offspring * (1.0 + c.rho), offspring);
    ++total;
    if (out.cr == c.want_cr && out.mr == c.want_mr && out.history.size() == 1) ++ok;
  }
  ++total;
  try {
    adapt_rates(AdaptiveRates{}, 0.0, 1.0);
  } catch (const DomainError&) {
    ++ok;
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " rate-update cases exact"};
}

// ---- 8 ---------------------------------------------------------------------

Verdict dominance() {
  SuiteSpec suite;
  suite.customers = {5};
  BenchOptions opt;
  opt.run_oracle = false;
  const auto rows = run_benchmark(suite, opt);
  int dominated = 0;
  int monotone = 0;
  double worst = -1e300;
  for (const auto& r : rows) {
    if (r.hbv_maga && r.hbv_baseline) {
      worst = std::max(worst, *r.hbv_maga - *r.hbv_baseline);
      if (*r.hbv_maga <= *r.hbv_baseline + 1e-9) ++dominated;
    }
    bool mono = !r.logs.empty();
    for (const auto& log : r.logs)
      for (std::size_t k = 1; k < log.size(); ++k) mono = mono && log[k].best <= log[k - 1].best;
    monotone += mono;
  }
  const int n = static_cast<int>(rows.size());
  return {n == 24 && dominated == n && monotone == n,
          std::to_string(n) + " rows; MAGA <= baseline on " + std::to_string(dominated) + ", non-increasing logs on " +
              std::to_string(monotone) + fmt("; max(MAGA - baseline) = %.6g", worst)};
}

// ---- 9 ---------------------------------------------------------------------

Verdict lp_export() {
  struct D {
    std::size_t I, T, V, P;
  };
  int count_ok = 0;
  for (const D d : {D{2, 1, 1, 1}, D{2, 2, 2, 2}, D{3, 2, 2, 1}}) {
    GenConfig g;
    g.n_customers = static_cast<int>(d.I);
    g.n_periods = static_cast<int>(d.T);
    g.n_vehicles = static_cast<int>(d.V);
    g.n_products = static_cast<int>(d.P);
    const LpModel m = build_lp(generate_instance(g));
    std::stringstream ss;
    write_lp(ss, m);
    const auto back = lpread::read(ss);
    const std::size_t N = d.I + 1;
    const bool ok = lpread::count_prefix(back, "c2_") == N * d.T * d.V &&
                    lpread::count_prefix(back, "c3_") == N * d.T * d.V &&
                    lpread::count_prefix(back, "c4_") == N * N * d.T * d.V &&
                    lpread::count_prefix(back, "c5_") == N * d.T * d.V * d.P &&
                    lpread::count_prefix(back, "c6_") == N * d.T * d.P &&
                    lpread::count_prefix(back, "c7_") == d.I * d.T && back.binaries.size() == N * N * d.T * d.V &&
                    back.variables.size() == N * N * d.T * d.V * (1 + d.P) + N * d.T * d.P + d.P &&
                    back.rows.size() == m.constraints.size();
    count_ok += ok;
  }

  // Objective substitution with a GA solution on a feasible 3x2 instance.
  double err = 1e300;
  for (std::uint64_t seed = 1; seed < 100; ++seed) {
    GenConfig g;
    g.n_customers = 3;
    g.n_periods = 2;
    g.n_vehicles = 2;
    g.seed = seed;
    const Instance inst = generate_instance(g);
    Solution sol;
    try {
      GaConfig cfg;
      cfg.psize = 20;
      sol = evolve(inst, cfg).best;
    } catch (const InstanceInfeasibleError&) {
      continue;
    }
    std::stringstream ss;
    write_lp(ss, build_lp(inst));
    const auto model = lpread::read(ss);
    err = std::abs(lpread::evaluate(model.objective, lp_values(inst, sol)) - sol.cost.total);
    break;
  }
  return {count_ok == 3 && err <= 1e-6,
          std::to_string(count_ok) + "/3 configurations with closed-form counts; objective substitution error " +
              fmt("%.3g (tol 1e-6)", err)};
}

// ---- 10 --------------------------------------------------------------------

Verdict statistics() {
  const std::vector<double> a{1, 2, 3, 4};
  const std::vector<double> b{2, 2, 5, 3};
  const double t = paired_t_test(a, b).t_statistic;
  // Two-sided critical values (alpha 0.05 and 0.01), to 16 digits.
  struct Row {
    double dof, t, p;
  };
  const Row table[] = {
      {4, 2.7764451051977987, 0.05},  {4, 4.604094871415897, 0.01},  {9, 2.2621571628540993, 0.05},
      {9, 3.2498355415921254, 0.01},  {95, 1.9852510035091888, 0.05}, {95, 2.628575670782743, 0.01},
  };
  double worst = 0.0;
  for (const auto& r : table) worst = std::max(worst, std::abs(student_t_two_sided_p(r.t, r.dof) - r.p));
  return {std::abs(t + 0.7746) <= 1e-4 && worst <= 1e-6,
          fmt("t = %.6f (want -0.7746 +- 1e-4); max p-value error %.3g at dof {4, 9, 95} (tol 1e-6)", t, worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  const Criterion criteria[] = {
      {1, "oracle optimality", oracle_optimality},   {2, "conservation and feasibility", conservation},
      {3, "metric identity", metric_identity},       {4, "four-customer example arithmetic", four_customer_example},
      {5, "roulette selection", selection},          {6, "routing quality", routing_quality},
      {7, "adaptive rate updates", ago_behavior},    {8, "dominance and elitism", dominance},
      {9, "LP export", lp_export},                   {10, "paired t-test", statistics},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
