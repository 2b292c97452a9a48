#include "mmirp/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "mmirp/error.hpp"
#include "mmirp/routing.hpp"

namespace mmirp {

namespace {

constexpr double kCapacityTol = 1e-9;

bool exceeds(double amount, double capacity) { return amount > capacity + kCapacityTol * std::max(1.0, capacity); }

std::optional<std::size_t> first_positive_demand(const Instance& inst, std::size_t i) {
  for (std::size_t t = 0; t < inst.periods; ++t)
    if (inst.has_positive_demand(i, t)) return t;
  return std::nullopt;
}

double max_capacity(const Instance& inst) {
  double m = 0.0;
  for (const auto& v : inst.vehicles) m = std::max(m, v.capacity);
  return m;
}

double fleet_capacity(const Instance& inst) {
  double m = 0.0;
  for (const auto& v : inst.vehicles) m += v.capacity;
  return m;
}

}  // namespace

ScheduleMatrix ScheduleMatrix::all_ones(std::size_t customers, std::size_t periods) {
  ScheduleMatrix s(customers, periods);
  for (std::size_t i = 0; i < customers; ++i)
    for (std::size_t t = 0; t < periods; ++t) s.set(i, t);
  return s;
}

ScheduleMatrix ScheduleMatrix::parse(std::string_view text) {
  std::vector<std::string> rows;
  std::string current;
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      current.push_back(ch);
    } else if (ch == '\n' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!current.empty()) rows.push_back(std::move(current));
      current.clear();
    } else {
      throw ParseError(std::string("schedule: unexpected character '") + ch + "'");
    }
  }
  if (!current.empty()) rows.push_back(std::move(current));
  if (rows.empty()) return {};
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("schedule: ragged rows");

  ScheduleMatrix s(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t t = 0; t < rows[i].size(); ++t) s.set(i, t, rows[i][t] == '1');
  return s;
}

std::size_t ScheduleMatrix::count_ones() const {
  return static_cast<std::size_t>(std::count(bits_.data().begin(), bits_.data().end(), std::uint8_t{1}));
}

bool ScheduleMatrix::is_subset_of(const ScheduleMatrix& other) const {
  if (customers() != other.customers() || periods() != other.periods()) return false;
  for (std::size_t k = 0; k < bits().size(); ++k)
    if (bits()[k] && !other.bits()[k]) return false;
  return true;
}

std::size_t ScheduleMatrix::next_visit(std::size_t i, std::size_t from) const {
  for (std::size_t t = from; t < periods(); ++t)
    if (get(i, t)) return t;
  return periods();
}

std::string ScheduleMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < customers(); ++i) {
    if (i) out.push_back('\n');
    for (std::size_t t = 0; t < periods(); ++t) out.push_back(get(i, t) ? '1' : '0');
  }
  return out;
}

std::strong_ordering operator<=>(const ScheduleMatrix& a, const ScheduleMatrix& b) {
  if (auto c = a.customers() <=> b.customers(); c != 0) return c;
  if (auto c = a.periods() <=> b.periods(); c != 0) return c;
  return a.bits() <=> b.bits();
}

std::size_t ScheduleHash::operator()(const ScheduleMatrix& s) const {
  const auto& b = s.bits();
  std::string_view view(reinterpret_cast<const char*>(b.data()), b.size());
  return std::hash<std::string_view>{}(view) ^ (s.customers() * 0x9e3779b97f4a7c15ULL);
}

DeliveryPlan decode(const ScheduleMatrix& schedule, const Instance& inst) {
  const std::size_t n_i = inst.num_customers();
  const std::size_t n_t = inst.periods;
  const std::size_t n_p = inst.num_products();
  if (schedule.customers() != n_i || schedule.periods() != n_t)
    throw ValidationError("schedule shape does not match the instance");

  DeliveryPlan plan{QuantityTensor(n_p, n_i, n_t), QuantityTensor(n_p, n_i, n_t)};
  for (std::size_t i = 0; i < n_i; ++i) {
    const std::size_t first = schedule.next_visit(i, 0);
    if (auto f = first_positive_demand(inst, i); f && *f < first)
      throw InfeasibleDecodeError("customer " + std::to_string(i + 1) + " has demand in period " +
                                  std::to_string(*f + 1) + " before its first delivery");

    for (std::size_t t = first; t < n_t;) {
      const std::size_t next = schedule.next_visit(i, t + 1);
      for (std::size_t p = 0; p < n_p; ++p) {
        double covered = 0.0;
        for (std::size_t k = t; k < next; ++k) covered += inst.demand(p, i, k);
        plan.deliveries(p, i, t) = covered;
        // On hand after period k is what the delivery still owes to k+1..next-1.
        for (std::size_t k = t; k < next; ++k) {
          double remaining = 0.0;
          for (std::size_t m = k + 1; m < next; ++m) remaining += inst.demand(p, i, m);
          plan.inventory(p, i, k) = remaining;
        }
      }
      t = next;
    }
  }
  return plan;
}

Money inventory_cost(const DeliveryPlan& plan, const Instance& inst, std::size_t customer) {
  const auto& r = plan.inventory;
  Money total = 0.0;
  for (std::size_t p = 0; p < r.products(); ++p)
    for (std::size_t t = 0; t < r.periods(); ++t) total += inst.customers[customer].holding_cost[p] * r(p, customer, t);
  return total;
}

Money inventory_cost(const DeliveryPlan& plan, const Instance& inst) {
  Money total = 0.0;
  for (std::size_t i = 0; i < plan.inventory.customers(); ++i) total += inventory_cost(plan, inst, i);
  return total;
}

double delivery_load(const ScheduleMatrix& schedule, const Instance& inst, std::size_t i, std::size_t t) {
  if (!schedule.get(i, t)) return 0.0;
  const std::size_t next = schedule.next_visit(i, t + 1);
  double load = 0.0;
  for (std::size_t k = t; k < next; ++k) load += inst.weighted_demand(i, k);
  return load;
}

std::string_view condition_id(Condition c) {
  switch (c) {
    case Condition::FirstDelivery: return "C1";
    case Condition::NoSplitDelivery: return "C2";
    case Condition::FleetCapacity: return "C3";
    case Condition::StorageCapacity: return "C4";
  }
  return "?";
}

FeasibilityReport check_feasibility(const ScheduleMatrix& schedule, const Instance& inst, CapacityCheck mode) {
  const std::size_t n_i = inst.num_customers();
  const std::size_t n_t = inst.periods;
  if (schedule.customers() != n_i || schedule.periods() != n_t)
    throw ValidationError("schedule shape does not match the instance");

  FeasibilityReport report;
  auto add = [&](Condition c, std::size_t i, std::size_t t, std::string detail) {
    report.violations.push_back({c, i, t, std::move(detail)});
  };

  const double vmax = max_capacity(inst);
  const double fleet = fleet_capacity(inst);

  for (std::size_t i = 0; i < n_i; ++i) {
    if (auto f = first_positive_demand(inst, i); f && schedule.next_visit(i, 0) > *f)
      add(Condition::FirstDelivery, i, *f, "positive demand before first delivery");

    for (std::size_t t = 0; t < n_t; ++t) {
      if (!schedule.get(i, t)) continue;
      const std::size_t next = schedule.next_visit(i, t + 1);
      const double load = delivery_load(schedule, inst, i, t);
      if (exceeds(load, vmax))
        add(Condition::NoSplitDelivery, i, t,
            "load " + std::to_string(load) + " exceeds largest vehicle " + std::to_string(vmax));
      for (std::size_t k = t; k < next; ++k) {
        double on_hand = 0.0;
        for (std::size_t m = k + 1; m < next; ++m) on_hand += inst.weighted_demand(i, m);
        if (exceeds(on_hand, inst.customers[i].storage_capacity))
          add(Condition::StorageCapacity, i, k,
              "inventory " + std::to_string(on_hand) + " exceeds storage " +
                  std::to_string(inst.customers[i].storage_capacity));
      }
    }
  }

  for (std::size_t t = 0; t < n_t; ++t) {
    LoadMap loads;
    double total = 0.0;
    for (std::size_t i = 0; i < n_i; ++i) {
      if (!schedule.get(i, t)) continue;
      loads[i] = delivery_load(schedule, inst, i, t);
      total += loads[i];
    }
    if (exceeds(total, fleet)) {
      add(Condition::FleetCapacity, 0, t, "period load " + std::to_string(total) + " exceeds fleet capacity");
    } else if (mode == CapacityCheck::Packing && !try_assign_vehicles(loads, inst.vehicles, t)) {
      add(Condition::FleetCapacity, 0, t, "loads cannot be packed onto single vehicles");
    }
  }

  report.feasible = report.violations.empty();
  return report;
}

namespace {

// Visit inserted at the midpoint of the window opened by (i, t); false when
// the window is a single period.
bool split_window(ScheduleMatrix& s, std::size_t i, std::size_t t) {
  const std::size_t next = s.next_visit(i, t + 1);
  if (next - t < 2) return false;
  s.set(i, t + (next - t) / 2);
  return true;
}

bool fix_first_deliveries(ScheduleMatrix& s, const Instance& inst) {
  bool changed = false;
  for (std::size_t i = 0; i < inst.num_customers(); ++i) {
    if (auto f = first_positive_demand(inst, i); f && s.next_visit(i, 0) > *f) {
      s.set(i, *f);
      changed = true;
    }
  }
  return changed;
}

const ConditionViolation* first_of(const FeasibilityReport& r, Condition c) {
  for (const auto& v : r.violations)
    if (v.condition == c) return &v;
  return nullptr;
}

}  // namespace

std::optional<ScheduleMatrix> repair(ScheduleMatrix s, const Instance& inst) {
  const std::size_t n_i = inst.num_customers();
  const std::size_t n_t = inst.periods;
  if (s.customers() != n_i || s.periods() != n_t) throw ValidationError("schedule shape does not match the instance");

  fix_first_deliveries(s, inst);

  // Every step switches one 0-bit on, so the loop is bounded by |I| x |T|.
  for (std::size_t step = 0; step <= n_i * n_t; ++step) {
    const FeasibilityReport report = check_feasibility(s, inst);
    if (report.feasible) return s;

    if (const auto* v = first_of(report, Condition::StorageCapacity)) {
      // New visit one period before the delivery that follows the overfull one.
      const std::size_t next = s.next_visit(v->customer, v->period + 1);
      s.set(v->customer, next - 1);
      continue;
    }
    if (const auto* v = first_of(report, Condition::NoSplitDelivery)) {
      if (!split_window(s, v->customer, v->period)) return std::nullopt;
      continue;
    }
    if (const auto* v = first_of(report, Condition::FleetCapacity)) {
      const std::size_t t = v->period;
      std::optional<std::size_t> pick;
      double pick_load = -1.0;
      for (std::size_t i = 0; i < n_i; ++i) {
        if (!s.get(i, t) || s.next_visit(i, t + 1) - t < 2) continue;
        const double load = delivery_load(s, inst, i, t);
        if (load > pick_load) {
          pick = i;
          pick_load = load;
        }
      }
      if (!pick) return std::nullopt;
      split_window(s, *pick, t);
      continue;
    }
    return std::nullopt;  // only C1 left, which cannot recur after the fix above
  }
  return std::nullopt;
}

ScheduleMatrix random_schedule(const Instance& inst, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  for (int attempt = 0; attempt < kRandomScheduleAttempts; ++attempt) {
    ScheduleMatrix s(inst.num_customers(), inst.periods);
    for (std::size_t i = 0; i < s.customers(); ++i)
      for (std::size_t t = 0; t < s.periods(); ++t) s.set(i, t, coin(rng));
    if (auto fixed = repair(std::move(s), inst)) return *std::move(fixed);
  }
  throw InstanceInfeasibleError("no feasible schedule after " + std::to_string(kRandomScheduleAttempts) +
                                " repaired samples");
}

}  // namespace mmirp
