#include "mmirp/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mmirp/error.hpp"

namespace mmirp {

double Instance::weighted_demand(std::size_t customer, std::size_t period) const {
  double total = 0.0;
  for (std::size_t p = 0; p < products.size(); ++p) total += products[p].weight * demand(p, customer, period);
  return total;
}

bool Instance::has_positive_demand(std::size_t customer, std::size_t period) const {
  for (std::size_t p = 0; p < products.size(); ++p)
    if (demand(p, customer, period) > 0.0) return true;
  return false;
}

ProductClass product_class(int n_products) {
  if (n_products == 2) return {50.0, 300.0, {1.0, 2.0}};
  if (n_products == 5) return {100.0, 500.0, {0.25, 0.75, 1.0, 1.5, 2.5}};
  if (n_products < 1) throw ValidationError("n_products must be positive");

  // Linear through the two tabulated columns, weights spread over the |P|=5 range.
  ProductClass pc;
  pc.capacity_per_customer = 50.0 + (n_products - 2) * (50.0 / 3.0);
  pc.storage_capacity = 300.0 + (n_products - 2) * (200.0 / 3.0);
  if (n_products == 1) {
    pc.weights = {1.0};
  } else {
    for (int p = 0; p < n_products; ++p) pc.weights.push_back(0.25 + 2.25 * p / (n_products - 1));
  }
  return pc;
}

double base_vehicle_capacity(const GenConfig& config) {
  return config.n_customers * product_class(config.n_products).capacity_per_customer;
}

namespace {

void check_interval(const Interval& r, const char* name) {
  if (!(r.lo >= 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi))
    throw ValidationError(std::string("invalid ") + name + ": must satisfy 0 <= lo <= hi");
}

void check_config(const GenConfig& c) {
  if (c.n_customers < 1) throw ValidationError("n_customers must be positive");
  if (c.n_periods < 1) throw ValidationError("n_periods must be positive");
  if (c.n_vehicles < 1) throw ValidationError("n_vehicles must be positive");
  if (c.n_products < 1) throw ValidationError("n_products must be positive");
  if (!(c.grid_size > 0.0) || !std::isfinite(c.grid_size)) throw ValidationError("grid_size must be positive");
  check_interval(c.demand_range, "demand_range");
  check_interval(c.holding_cost_range, "holding_cost_range");
  check_interval(c.fixed_cost_range, "fixed_cost_range");
}

}  // namespace

Instance generate_instance(const GenConfig& config) {
  check_config(config);
  std::mt19937_64 rng(config.seed);

  const auto n_i = static_cast<std::size_t>(config.n_customers);
  const auto n_t = static_cast<std::size_t>(config.n_periods);
  const auto n_v = static_cast<std::size_t>(config.n_vehicles);
  const auto n_p = static_cast<std::size_t>(config.n_products);
  const ProductClass pc = product_class(config.n_products);

  Instance inst;
  inst.periods = n_t;
  inst.grid_size = config.grid_size;
  inst.seed = config.seed;
  inst.supplier_location = {config.grid_size / 2.0, config.grid_size / 2.0};

  for (std::size_t p = 0; p < n_p; ++p) inst.products.push_back({static_cast<int>(p), pc.weights[p]});

  std::uniform_real_distribution<double> coord(0.0, config.grid_size);
  std::uniform_real_distribution<double> holding(config.holding_cost_range.lo, config.holding_cost_range.hi);
  for (std::size_t i = 0; i < n_i; ++i) {
    CustomerSpec c;
    c.id = static_cast<int>(i);
    c.location.x = coord(rng);
    c.location.y = coord(rng);
    c.storage_capacity = pc.storage_capacity;
    for (std::size_t p = 0; p < n_p; ++p) c.holding_cost.push_back(holding(rng));
    inst.customers.push_back(std::move(c));
  }

  // Capacities spread by factors evenly spaced on [0.8, 1.2].
  const double base = base_vehicle_capacity(config);
  std::uniform_int_distribution<long> fixed(std::lround(std::ceil(config.fixed_cost_range.lo)),
                                            std::lround(std::floor(config.fixed_cost_range.hi)));
  for (std::size_t v = 0; v < n_v; ++v) {
    // 0.8 + 0.4 v / (V - 1) as one exact ratio, so the top factor is exactly 1.2.
    const double num = n_v == 1 ? 1.0 : static_cast<double>(4 * (n_v - 1) + 2 * v);
    const double den = n_v == 1 ? 1.0 : static_cast<double>(5 * (n_v - 1));
    VehicleSpec veh;
    veh.id = static_cast<int>(v);
    veh.capacity = base * num / den;
    veh.fixed_cost.assign(n_t, static_cast<double>(fixed(rng)));
    inst.vehicles.push_back(std::move(veh));
  }

  std::uniform_int_distribution<long> demand(std::lround(std::ceil(config.demand_range.lo)),
                                             std::lround(std::floor(config.demand_range.hi)));
  inst.demand = DemandTensor(n_p, n_i, n_t);
  for (std::size_t p = 0; p < n_p; ++p)
    for (std::size_t i = 0; i < n_i; ++i)
      for (std::size_t t = 0; t < n_t; ++t) inst.demand(p, i, t) = static_cast<double>(demand(rng));

  std::vector<Point> pts;
  for (const auto& c : inst.customers) pts.push_back(c.location);
  inst.travel_cost = travel_cost_matrix(inst.supplier_location, pts);
  return inst;
}

DenseMatrix<double> travel_cost_matrix(const Point& supplier, std::span<const Point> customers) {
  std::vector<Point> nodes;
  nodes.reserve(customers.size() + 1);
  nodes.push_back(supplier);
  nodes.insert(nodes.end(), customers.begin(), customers.end());

  const std::size_t n = nodes.size();
  DenseMatrix<double> m(n, n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = std::hypot(nodes[a].x - nodes[b].x, nodes[a].y - nodes[b].y);
      m(a, b) = d;
      m(b, a) = d;
    }
  }
  return m;
}

namespace {

std::string idx(std::size_t a) { return std::to_string(a + 1); }
std::string idx(std::size_t a, std::size_t b) { return idx(a) + "," + idx(b); }
std::string idx(std::size_t a, std::size_t b, std::size_t c) { return idx(a) + "," + idx(b) + "," + idx(c); }

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  using S = Violation::Severity;
  std::vector<Violation> out;
  auto error = [&](std::string field, std::string index, std::string cond) {
    out.push_back({S::Error, std::move(field), std::move(index), std::move(cond)});
  };

  const std::size_t n_i = inst.num_customers();
  const std::size_t n_p = inst.num_products();
  const std::size_t n_t = inst.periods;

  if (n_t == 0) error("periods", "-", "periods > 0");
  if (inst.vehicles.empty()) error("vehicles", "-", "at least one vehicle");
  if (inst.products.empty()) error("products", "-", "at least one product");

  for (std::size_t p = 0; p < n_p; ++p)
    if (!(inst.products[p].weight > 0.0)) error("products.weight", idx(p), "weight > 0");

  for (std::size_t v = 0; v < inst.vehicles.size(); ++v) {
    const auto& veh = inst.vehicles[v];
    if (!(veh.capacity > 0.0)) error("vehicles.capacity", idx(v), "capacity > 0");
    if (veh.fixed_cost.size() != n_t) error("vehicles.fixed_cost", idx(v), "one fixed cost per period");
    for (std::size_t t = 0; t < veh.fixed_cost.size(); ++t)
      if (!(veh.fixed_cost[t] >= 0.0)) error("vehicles.fixed_cost", idx(v, t), "fixed cost >= 0");
  }

  for (std::size_t i = 0; i < n_i; ++i) {
    const auto& c = inst.customers[i];
    if (!(c.storage_capacity >= 0.0)) error("customers.storage", idx(i), "storage capacity >= 0");
    if (c.holding_cost.size() != n_p) error("customers.holding_cost", idx(i), "one holding cost per product");
    for (std::size_t p = 0; p < c.holding_cost.size(); ++p)
      if (!(c.holding_cost[p] >= 0.0)) error("customers.holding_cost", idx(i, p), "holding cost >= 0");
    const Point& l = c.location;
    if (!(l.x >= 0.0 && l.x <= inst.grid_size && l.y >= 0.0 && l.y <= inst.grid_size))
      error("customers.location", idx(i), "location within grid bounds");
  }

  const auto& d = inst.demand;
  if (d.products() != n_p || d.customers() != n_i || d.periods() != n_t) {
    error("demand", "-", "dimensions |P| x |I| x |T|");
  } else {
    for (std::size_t p = 0; p < n_p; ++p)
      for (std::size_t i = 0; i < n_i; ++i)
        for (std::size_t t = 0; t < n_t; ++t)
          if (!(d(p, i, t) >= 0.0)) error("demand", idx(p, i, t), "negative demand");
  }

  const auto& c = inst.travel_cost;
  if (c.rows() != n_i + 1 || c.cols() != n_i + 1) {
    error("travel_cost", "-", "dimensions (|I|+1) x (|I|+1)");
  } else {
    for (std::size_t a = 0; a <= n_i; ++a) {
      if (c(a, a) != 0.0) error("travel_cost", std::to_string(a) + "," + std::to_string(a), "zero diagonal");
      for (std::size_t b = a + 1; b <= n_i; ++b) {
        if (!(c(a, b) >= 0.0) || !(c(b, a) >= 0.0))
          error("travel_cost", std::to_string(a) + "," + std::to_string(b), "nonnegative cost");
        if (c(a, b) != c(b, a))
          error("travel_cost", std::to_string(a) + "," + std::to_string(b), "asymmetric cost");
      }
    }
  }

  // Fleet-level check: per-period weighted demand against total capacity.
  if (out.empty()) {
    double fleet = 0.0;
    for (const auto& v : inst.vehicles) fleet += v.capacity;
    for (std::size_t t = 0; t < n_t; ++t) {
      double load = 0.0;
      for (std::size_t i = 0; i < n_i; ++i) load += inst.weighted_demand(i, t);
      if (load > fleet)
        out.push_back({S::Warning, "demand", "t=" + idx(t), "fleet capacity infeasible"});
    }
  }
  return out;
}

void require_valid(const Instance& instance) {
  for (const auto& v : validate_instance(instance))
    if (v.severity == Violation::Severity::Error) throw ValidationError(to_string(v));
}

std::string to_string(const Violation& v) {
  std::ostringstream os;
  os << (v.severity == Violation::Severity::Error ? "error" : "warning") << ": " << v.field << "[" << v.index
     << "]: " << v.condition;
  return os.str();
}

}  // namespace mmirp
