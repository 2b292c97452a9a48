#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "mmirp/core.hpp"

namespace fixtures {

using mmirp::Instance;
using mmirp::Point;

struct TinyCustomer {
  Point location;
  double storage = 1e9;
  std::vector<double> holding;                 // per product
  std::vector<std::vector<double>> demand;     // [product][period]
};

struct TinyVehicle {
  double capacity = 0.0;
  double fixed_cost = 0.0;
};

// Builds a validated-shape instance from explicit data. Supplier defaults to
// the centre of a 20x20 grid.
inline Instance make_instance(const std::vector<TinyCustomer>& customers, const std::vector<TinyVehicle>& vehicles,
                              const std::vector<double>& weights, std::size_t periods,
                              Point supplier = {10.0, 10.0}) {
  Instance inst;
  inst.periods = periods;
  inst.supplier_location = supplier;
  for (std::size_t p = 0; p < weights.size(); ++p) inst.products.push_back({static_cast<int>(p), weights[p]});
  for (std::size_t v = 0; v < vehicles.size(); ++v)
    inst.vehicles.push_back({static_cast<int>(v), vehicles[v].capacity,
                             std::vector<double>(periods, vehicles[v].fixed_cost)});
  inst.demand = mmirp::DemandTensor(weights.size(), customers.size(), periods);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < customers.size(); ++i) {
    const auto& c = customers[i];
    inst.customers.push_back({static_cast<int>(i), c.location, c.storage,
                              c.holding.empty() ? std::vector<double>(weights.size(), 1.0) : c.holding});
    for (std::size_t p = 0; p < weights.size(); ++p)
      for (std::size_t t = 0; t < periods; ++t) inst.demand(p, i, t) = c.demand[p][t];
    pts.push_back(c.location);
  }
  inst.travel_cost = mmirp::travel_cost_matrix(supplier, pts);
  return inst;
}

// Four customers, four periods, two products of weight 1 and 2, vehicles of
// capacity 300 and 400 at fixed cost 10.
//
// Intended schedule (rows = customers):
//   1011   customer 1: period-1 shipment covers periods 1-2 (22 and 6 units)
//   1100   customer 2: period-1 shipment covers period 1 (3 and 26 units)
//   0100   customer 3: one shipment in period 2 for periods 2-4, h = 1
//   0110   customer 4
// Period-1 weighted shipment is 1*(22+3) + 2*(6+26). Customer 3 holds 27+39
// after period 2 and 12+12 after period 3, so its inventory cost is 114.
// Period 2 loads are 171, 150 and 120: two vehicles open.
inline Instance four_customer_instance(double customer4_storage = 300.0) {
  std::vector<TinyCustomer> cs(4);
  cs[0] = {{4, 4}, 300, {1, 1}, {{12, 10, 5, 5}, {2, 4, 3, 3}}};
  cs[1] = {{16, 4}, 300, {2, 3}, {{3, 20, 20, 20}, {26, 10, 10, 10}}};
  cs[2] = {{16, 16}, 300, {1, 1}, {{0, 10, 27, 12}, {0, 10, 39, 12}}};
  cs[3] = {{4, 16}, customer4_storage, {1, 2}, {{0, 50, 10, 10}, {0, 50, 5, 5}}};
  return make_instance(cs, {{300, 10}, {400, 10}}, {1.0, 2.0}, 4);
}

inline constexpr const char* kFourCustomerSchedule = "1011\n1100\n0100\n0110";

// One customer 10 away from the supplier (round trip 20), d = [4, 6], h = 1.
inline Instance far_customer_instance() {
  std::vector<TinyCustomer> cs(1);
  cs[0] = {{10, 20}, 1e9, {1}, {{4, 6}}};
  return make_instance(cs, {{100, 5}}, {1.0}, 2);
}

inline Instance zero_demand_instance(std::size_t customers, std::size_t periods) {
  std::vector<TinyCustomer> cs(customers);
  for (std::size_t i = 0; i < customers; ++i)
    cs[i] = {{2.0 + 3.0 * i, 5.0}, 100, {1}, {std::vector<double>(periods, 0.0)}};
  return make_instance(cs, {{50, 10}}, {1.0}, periods);
}

}  // namespace fixtures
