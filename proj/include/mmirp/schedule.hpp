#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmirp/core.hpp"

namespace mmirp {

// Binary customer x period chromosome: bit (i, t) set means customer i is
// visited in period t.
class ScheduleMatrix {
 public:
  ScheduleMatrix() = default;
  ScheduleMatrix(std::size_t customers, std::size_t periods) : bits_(customers, periods, 0) {}

  static ScheduleMatrix all_ones(std::size_t customers, std::size_t periods);
  // Rows of '0'/'1' characters, one row per customer, separated by newlines or
  // whitespace.
  static ScheduleMatrix parse(std::string_view text);

  std::size_t customers() const { return bits_.rows(); }
  std::size_t periods() const { return bits_.cols(); }

  bool get(std::size_t i, std::size_t t) const { return bits_(i, t) != 0; }
  void set(std::size_t i, std::size_t t, bool on = true) { bits_(i, t) = on ? 1 : 0; }

  std::size_t count_ones() const;
  bool is_subset_of(const ScheduleMatrix& other) const;

  // First scheduled period of customer i at or after `from`, or periods().
  std::size_t next_visit(std::size_t i, std::size_t from) const;

  const std::vector<std::uint8_t>& bits() const { return bits_.data(); }
  std::string to_string() const;  // rows joined with '\n'

  friend bool operator==(const ScheduleMatrix&, const ScheduleMatrix&) = default;
  friend std::strong_ordering operator<=>(const ScheduleMatrix& a, const ScheduleMatrix& b);

 private:
  DenseMatrix<std::uint8_t> bits_;
};

struct ScheduleHash {
  std::size_t operator()(const ScheduleMatrix& s) const;
};

using QuantityTensor = DemandTensor;  // (product, customer, period)

struct DeliveryPlan {
  QuantityTensor deliveries;  // units delivered in the period
  QuantityTensor inventory;   // end-of-period on hand
};

// A delivery in period t covers demand from t up to (excluding) the next
// visit. Throws InfeasibleDecodeError when a positive demand precedes the
// customer's first visit.
DeliveryPlan decode(const ScheduleMatrix& schedule, const Instance& instance);

// Sum of h * end-of-period inventory.
Money inventory_cost(const DeliveryPlan& plan, const Instance& instance);
// Same, restricted to one customer.
Money inventory_cost(const DeliveryPlan& plan, const Instance& instance, std::size_t customer);

// Weighted load shipped to customer i in period t (0 when not visited).
double delivery_load(const ScheduleMatrix& schedule, const Instance& instance, std::size_t i, std::size_t t);

enum class Condition {
  FirstDelivery,     // C1: first visit no later than first positive demand
  NoSplitDelivery,   // C2: each customer-period load fits in one vehicle
  FleetCapacity,     // C3: a period's loads pack onto the fleet
  StorageCapacity,   // C4: end-of-period weighted inventory <= storage
};

std::string_view condition_id(Condition c);

struct ConditionViolation {
  Condition condition;
  std::size_t customer = 0;  // meaningless for FleetCapacity
  std::size_t period = 0;
  std::string detail;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<ConditionViolation> violations;
};

enum class CapacityCheck {
  Aggregate,  // total period load against total fleet capacity only
  Packing,    // additionally, first-fit-decreasing must place every load
};

FeasibilityReport check_feasibility(const ScheduleMatrix& schedule, const Instance& instance,
                                    CapacityCheck mode = CapacityCheck::Packing);

// Inserts visits until the schedule is feasible. nullopt means the
// chromosome is dismissed.
std::optional<ScheduleMatrix> repair(ScheduleMatrix schedule, const Instance& instance);

// Each bit is on with probability 1/2, then repaired. Throws
// InstanceInfeasibleError after 100 consecutive dismissals.
ScheduleMatrix random_schedule(const Instance& instance, Rng& rng);

inline constexpr int kRandomScheduleAttempts = 100;

}  // namespace mmirp
