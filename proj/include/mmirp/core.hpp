#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mmirp/matrix.hpp"

namespace mmirp {

using Money = double;
using Rng = std::mt19937_64;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct ProductSpec {
  int id = 0;
  double weight = 1.0;  // capacity units per product unit
  friend bool operator==(const ProductSpec&, const ProductSpec&) = default;
};

struct VehicleSpec {
  int id = 0;
  double capacity = 0.0;
  std::vector<Money> fixed_cost;  // indexed by period
  friend bool operator==(const VehicleSpec&, const VehicleSpec&) = default;
};

struct CustomerSpec {
  int id = 0;
  Point location;
  double storage_capacity = 0.0;
  std::vector<Money> holding_cost;  // indexed by product
  friend bool operator==(const CustomerSpec&, const CustomerSpec&) = default;
};

// Demand indexed (product, customer, period), all zero-based.
class DemandTensor {
 public:
  DemandTensor() = default;
  DemandTensor(std::size_t products, std::size_t customers, std::size_t periods)
      : products_(products), customers_(customers), periods_(periods),
        values_(products * customers * periods, 0.0) {}

  std::size_t products() const { return products_; }
  std::size_t customers() const { return customers_; }
  std::size_t periods() const { return periods_; }

  double& operator()(std::size_t p, std::size_t i, std::size_t t) {
    return values_[(p * customers_ + i) * periods_ + t];
  }
  double operator()(std::size_t p, std::size_t i, std::size_t t) const {
    return values_[(p * customers_ + i) * periods_ + t];
  }

  std::span<const double> values() const { return values_; }

  friend bool operator==(const DemandTensor&, const DemandTensor&) = default;

 private:
  std::size_t products_ = 0;
  std::size_t customers_ = 0;
  std::size_t periods_ = 0;
  std::vector<double> values_;
};

// Node 0 of travel_cost is the supplier; customer i (zero-based) is node i + 1.
struct Instance {
  std::vector<CustomerSpec> customers;
  std::vector<VehicleSpec> vehicles;
  std::vector<ProductSpec> products;
  std::size_t periods = 0;
  Point supplier_location;
  DemandTensor demand;
  DenseMatrix<double> travel_cost;
  double grid_size = 20.0;
  std::uint64_t seed = 0;

  std::size_t num_customers() const { return customers.size(); }
  std::size_t num_vehicles() const { return vehicles.size(); }
  std::size_t num_products() const { return products.size(); }

  static constexpr std::size_t node_of(std::size_t customer) { return customer + 1; }

  // Sum over products of weight * demand for one customer-period.
  double weighted_demand(std::size_t customer, std::size_t period) const;
  bool has_positive_demand(std::size_t customer, std::size_t period) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct GenConfig {
  int n_customers = 5;
  int n_periods = 5;
  int n_vehicles = 3;
  int n_products = 2;
  std::uint64_t seed = 1;
  double grid_size = 20.0;
  Interval demand_range{10.0, 50.0};
  Interval holding_cost_range{1.0, 5.0};
  Interval fixed_cost_range{10.0, 30.0};
};

// Generator parameters that depend only on the product count.
struct ProductClass {
  double capacity_per_customer = 0.0;
  double storage_capacity = 0.0;
  std::vector<double> weights;
};

ProductClass product_class(int n_products);

double base_vehicle_capacity(const GenConfig& config);

// Deterministic in config (including the seed).
Instance generate_instance(const GenConfig& config);

// Euclidean distances, supplier first. Symmetric with zero diagonal.
DenseMatrix<double> travel_cost_matrix(const Point& supplier, std::span<const Point> customers);

struct Violation {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string field;
  std::string index;
  std::string condition;
};

std::vector<Violation> validate_instance(const Instance& instance);

// Throws ValidationError carrying the first error-severity violation.
void require_valid(const Instance& instance);

std::string to_string(const Violation& v);

}  // namespace mmirp
