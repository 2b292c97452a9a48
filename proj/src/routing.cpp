#include "mmirp/routing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "mmirp/error.hpp"
#include "mmirp/instance_io.hpp"

namespace mmirp {

namespace {

constexpr double kFitTol = 1e-9;
constexpr double kImproveTol = 1e-10;

bool fits(double load, double remaining) { return load <= remaining + kFitTol * std::max(1.0, remaining); }

}  // namespace

std::optional<PeriodRouting> try_assign_vehicles(const LoadMap& loads, std::span<const VehicleSpec> vehicles,
                                                 std::size_t period) {
  std::vector<std::pair<std::size_t, double>> order(loads.begin(), loads.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  PeriodRouting out;
  std::vector<double> remaining(vehicles.size(), 0.0);
  std::vector<bool> open(vehicles.size(), false);

  for (const auto& [customer, load] : order) {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < vehicles.size(); ++v) {
      if (open[v] && fits(load, remaining[v]) && (!best || remaining[v] < remaining[*best])) best = v;
    }
    if (!best) {
      for (std::size_t v = 0; v < vehicles.size(); ++v) {
        if (open[v] || !fits(load, vehicles[v].capacity)) continue;
        if (!best || vehicles[v].fixed_cost.at(period) < vehicles[*best].fixed_cost.at(period)) best = v;
      }
      if (!best) return std::nullopt;
      open[*best] = true;
      remaining[*best] = vehicles[*best].capacity;
    }
    remaining[*best] -= load;
    auto& slot = out.assignments[*best];
    slot.route.stops.push_back(Instance::node_of(customer));
    slot.load += load;
  }
  return out;
}

PeriodRouting assign_vehicles(const LoadMap& loads, std::span<const VehicleSpec> vehicles, std::size_t period) {
  double total = 0.0;
  double fleet = 0.0;
  double largest = 0.0;
  for (const auto& [c, load] : loads) {
    total += load;
    largest = std::max(largest, load);
  }
  double vmax = 0.0;
  for (const auto& v : vehicles) {
    fleet += v.capacity;
    vmax = std::max(vmax, v.capacity);
  }
  if (!fits(largest, vmax))
    throw PackingInfeasibleError("period " + std::to_string(period + 1) + ": load " + std::to_string(largest) +
                                 " fits no vehicle");
  if (!fits(total, fleet))
    throw PackingInfeasibleError("period " + std::to_string(period + 1) + ": total load " + std::to_string(total) +
                                 " exceeds fleet capacity " + std::to_string(fleet));
  auto r = try_assign_vehicles(loads, vehicles, period);
  if (!r) throw PackingInfeasibleError("period " + std::to_string(period + 1) + ": first-fit decreasing failed");
  return *std::move(r);
}

Money route_cost(std::span<const std::size_t> stops, const DenseMatrix<double>& cost) {
  if (stops.empty()) return 0.0;
  Money total = cost(0, stops.front()) + cost(stops.back(), 0);
  for (std::size_t k = 1; k < stops.size(); ++k) total += cost(stops[k - 1], stops[k]);
  return total;
}

Route nearest_neighbor_route(std::span<const std::size_t> stops, const DenseMatrix<double>& cost) {
  std::vector<std::size_t> left(stops.begin(), stops.end());
  Route r;
  std::size_t at = 0;
  while (!left.empty()) {
    auto best = left.begin();
    for (auto it = left.begin(); it != left.end(); ++it)
      if (cost(at, *it) < cost(at, *best)) best = it;
    at = *best;
    r.stops.push_back(at);
    left.erase(best);
  }
  r.cost = route_cost(r.stops, cost);
  return r;
}

namespace {

// tour holds the supplier at both ends.
bool two_opt_pass(std::vector<std::size_t>& tour, const DenseMatrix<double>& c, bool apply) {
  const std::size_t n = tour.size() - 2;
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double delta =
          c(tour[i - 1], tour[j]) + c(tour[i], tour[j + 1]) - c(tour[i - 1], tour[i]) - c(tour[j], tour[j + 1]);
      if (delta < -kImproveTol) {
        if (apply) std::reverse(tour.begin() + static_cast<long>(i), tour.begin() + static_cast<long>(j) + 1);
        return true;
      }
    }
  }
  return false;
}

bool or_opt_pass(std::vector<std::size_t>& tour, const DenseMatrix<double>& c) {
  const std::size_t n = tour.size() - 2;
  for (std::size_t len = 1; len <= 3 && len < n; ++len) {
    for (std::size_t i = 1; i + len - 1 <= n; ++i) {
      const std::size_t prev = tour[i - 1];
      const std::size_t first = tour[i];
      const std::size_t last = tour[i + len - 1];
      const std::size_t next = tour[i + len];
      const double gain = c(prev, first) + c(last, next) - c(prev, next);

      // Edge k joins tour[k] and tour[k+1]; edges touching the segment are skipped.
      for (std::size_t k = 0; k + 1 < tour.size(); ++k) {
        if (k + 1 >= i && k <= i + len - 1) continue;
        const std::size_t a = tour[k];
        const std::size_t b = tour[k + 1];
        const double fwd = c(a, first) + c(last, b) - c(a, b);
        const double rev = c(a, last) + c(first, b) - c(a, b);
        const bool reversed = rev < fwd;
        if (std::min(fwd, rev) - gain >= -kImproveTol) continue;

        std::vector<std::size_t> seg(tour.begin() + static_cast<long>(i),
                                     tour.begin() + static_cast<long>(i + len));
        if (reversed) std::reverse(seg.begin(), seg.end());
        tour.erase(tour.begin() + static_cast<long>(i), tour.begin() + static_cast<long>(i + len));
        const std::size_t at = k < i ? k + 1 : k + 1 - len;
        tour.insert(tour.begin() + static_cast<long>(at), seg.begin(), seg.end());
        return true;
      }
    }
  }
  return false;
}

std::vector<std::size_t> closed_tour(std::span<const std::size_t> stops) {
  std::vector<std::size_t> tour;
  tour.reserve(stops.size() + 2);
  tour.push_back(0);
  tour.insert(tour.end(), stops.begin(), stops.end());
  tour.push_back(0);
  return tour;
}

}  // namespace

Route solve_route(std::span<const std::size_t> stops, const DenseMatrix<double>& cost) {
  Route nn = nearest_neighbor_route(stops, cost);
  if (nn.stops.size() < 3) return nn;

  auto tour = closed_tour(nn.stops);
  for (;;) {
    if (two_opt_pass(tour, cost, true)) continue;
    if (or_opt_pass(tour, cost)) continue;
    break;
  }
  Route r;
  r.stops.assign(tour.begin() + 1, tour.end() - 1);
  r.cost = route_cost(r.stops, cost);
  return r;
}

bool has_improving_two_opt(std::span<const std::size_t> stops, const DenseMatrix<double>& cost) {
  auto tour = closed_tour(stops);
  return two_opt_pass(tour, cost, false);
}

Route tsp_exact(std::span<const std::size_t> stops, const DenseMatrix<double>& cost) {
  const std::size_t n = stops.size();
  if (n > kMaxExactStops)
    throw SizeLimitError("tsp_exact supports at most " + std::to_string(kMaxExactStops) + " stops, got " +
                         std::to_string(n));
  if (n == 0) return {};

  const std::size_t full = std::size_t{1} << n;
  constexpr double inf = std::numeric_limits<double>::infinity();
  // best[mask * n + j]: cheapest path from the supplier through mask ending at stop j.
  std::vector<double> best(full * n, inf);
  std::vector<std::uint8_t> parent(full * n, 0);

  for (std::size_t j = 0; j < n; ++j) best[(std::size_t{1} << j) * n + j] = cost(0, stops[j]);

  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const double here = best[mask * n + j];
      if (here == inf) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (std::size_t{1} << k)) continue;
        const std::size_t grown = mask | (std::size_t{1} << k);
        const double cand = here + cost(stops[j], stops[k]);
        if (cand < best[grown * n + k]) {
          best[grown * n + k] = cand;
          parent[grown * n + k] = static_cast<std::uint8_t>(j);
        }
      }
    }
  }

  const std::size_t all = full - 1;
  std::size_t end = 0;
  double total = inf;
  for (std::size_t j = 0; j < n; ++j) {
    const double cand = best[all * n + j] + cost(stops[j], 0);
    if (cand < total) {
      total = cand;
      end = j;
    }
  }

  Route r;
  std::size_t mask = all;
  std::size_t at = end;
  for (std::size_t step = 0; step < n; ++step) {
    r.stops.push_back(stops[at]);
    const std::size_t prev = parent[mask * n + at];
    mask &= ~(std::size_t{1} << at);
    at = prev;
  }
  std::reverse(r.stops.begin(), r.stops.end());
  r.cost = route_cost(r.stops, cost);
  return r;
}

Solution evaluate_solution(const ScheduleMatrix& schedule, const Instance& inst, RouteMethod method) {
  Solution sol;
  sol.schedule = schedule;
  sol.plan = decode(schedule, inst);
  sol.routing.resize(inst.periods);

  for (std::size_t t = 0; t < inst.periods; ++t) {
    LoadMap loads;
    for (std::size_t i = 0; i < inst.num_customers(); ++i)
      if (schedule.get(i, t)) loads[i] = delivery_load(schedule, inst, i, t);

    PeriodRouting pr = assign_vehicles(loads, inst.vehicles, t);
    for (auto& [v, slot] : pr.assignments) {
      slot.route = method == RouteMethod::Exact ? tsp_exact(slot.route.stops, inst.travel_cost)
                                                : solve_route(slot.route.stops, inst.travel_cost);
      sol.cost.fleet_fixed += inst.vehicles[v].fixed_cost[t];
      sol.cost.transport += slot.route.cost;
    }
    sol.routing[t] = std::move(pr);
  }
  sol.cost.inventory = inventory_cost(sol.plan, inst);
  sol.cost.total = sol.cost.fleet_fixed + sol.cost.transport + sol.cost.inventory;
  return sol;
}

void write_solution(std::ostream& os, const Solution& sol) {
  os << "schedule\n" << sol.schedule.to_string() << "\n";
  os << "routes\n";
  for (std::size_t t = 0; t < sol.routing.size(); ++t) {
    for (const auto& [v, slot] : sol.routing[t].assignments) {
      os << "t=" << t + 1 << ": v" << v + 1 << ": 0";
      for (auto node : slot.route.stops) os << " " << node;
      os << " 0\n";
    }
  }
  os << "fleet_fixed " << format_real(sol.cost.fleet_fixed) << "\n";
  os << "transport " << format_real(sol.cost.transport) << "\n";
  os << "inventory " << format_real(sol.cost.inventory) << "\n";
  os << "total " << format_real(sol.cost.total) << "\n";
}

}  // namespace mmirp
