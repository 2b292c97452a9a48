#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mmirp/core.hpp"
#include "mmirp/schedule.hpp"

namespace mmirp {

// Closed tour from the supplier (node 0) through `stops` and back. Stops are
// travel-cost node indices, so customer i appears as node i + 1.
struct Route {
  std::vector<std::size_t> stops;
  Money cost = 0.0;
  friend bool operator==(const Route&, const Route&) = default;
};

struct VehicleRoute {
  Route route;
  double load = 0.0;  // weight units
  friend bool operator==(const VehicleRoute&, const VehicleRoute&) = default;
};

// Opened vehicles of one period, keyed by vehicle index.
struct PeriodRouting {
  std::map<std::size_t, VehicleRoute> assignments;
  friend bool operator==(const PeriodRouting&, const PeriodRouting&) = default;
};

struct CostBreakdown {
  Money fleet_fixed = 0.0;
  Money transport = 0.0;
  Money inventory = 0.0;
  Money total = 0.0;
  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

struct Solution {
  ScheduleMatrix schedule;
  DeliveryPlan plan;
  std::vector<PeriodRouting> routing;  // one per period
  CostBreakdown cost;
};

// Customer (zero-based) -> weighted load.
using LoadMap = std::map<std::size_t, double>;

// First-fit decreasing onto a heterogeneous fleet. Loads are taken largest
// first (ties by customer index); each goes to the open vehicle with the least
// remaining capacity that still fits, otherwise the cheapest unopened vehicle
// that fits is opened (ties by vehicle index). Route stops are left in
// placement order with zero cost.
std::optional<PeriodRouting> try_assign_vehicles(const LoadMap& loads, std::span<const VehicleSpec> vehicles,
                                                 std::size_t period);
// Throws PackingInfeasibleError.
PeriodRouting assign_vehicles(const LoadMap& loads, std::span<const VehicleSpec> vehicles, std::size_t period);

Money route_cost(std::span<const std::size_t> stops, const DenseMatrix<double>& cost);

Route nearest_neighbor_route(std::span<const std::size_t> stops, const DenseMatrix<double>& cost);

// Nearest-neighbour construction, then 2-opt and Or-opt (segments of 1-3)
// first-improvement passes until neither finds an improving move.
Route solve_route(std::span<const std::size_t> stops, const DenseMatrix<double>& cost);

// True when some 2-opt segment reversal of the closed tour lowers its cost.
bool has_improving_two_opt(std::span<const std::size_t> stops, const DenseMatrix<double>& cost);

inline constexpr std::size_t kMaxExactStops = 18;

// Held-Karp over subsets. Throws SizeLimitError above kMaxExactStops.
Route tsp_exact(std::span<const std::size_t> stops, const DenseMatrix<double>& cost);

enum class RouteMethod { Heuristic, Exact };

// Fitness: decode, pack each period, route each opened vehicle and sum the
// three objective terms. Propagates InfeasibleDecodeError and
// PackingInfeasibleError.
Solution evaluate_solution(const ScheduleMatrix& schedule, const Instance& instance,
                           RouteMethod method = RouteMethod::Heuristic);

// Text dump: schedule rows, one "t=<t>: v<v>: 0 ... 0" line per route, then
// the cost breakdown. Periods, vehicles 1-based; nodes as in travel_cost.
void write_solution(std::ostream& os, const Solution& solution);

}  // namespace mmirp
