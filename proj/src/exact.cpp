#include "mmirp/exact.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include "mmirp/error.hpp"
#include "mmirp/instance_io.hpp"

namespace mmirp {

Solution oracle_enumerate(const Instance& inst) {
  const std::size_t n_i = inst.num_customers();
  const std::size_t n_t = inst.periods;
  const std::size_t genes = n_i * n_t;
  if (genes > kMaxOracleGenes)
    throw SizeLimitError("oracle_enumerate supports |I| x |T| <= " + std::to_string(kMaxOracleGenes) + ", got " +
                         std::to_string(genes));

  std::optional<Solution> best;
  const std::size_t total = std::size_t{1} << genes;
  for (std::size_t mask = 0; mask < total; ++mask) {
    ScheduleMatrix s(n_i, n_t);
    // Most significant mask bit is the first row-major gene.
    for (std::size_t k = 0; k < genes; ++k)
      if (mask & (std::size_t{1} << (genes - 1 - k))) s.set(k / n_t, k % n_t);
    if (!check_feasibility(s, inst).feasible) continue;
    Solution sol = evaluate_solution(s, inst, RouteMethod::Exact);
    // Ascending masks visit schedules in lexicographic order, so strict '<' keeps the smallest tie.
    if (!best || sol.cost.total < best->cost.total) best = std::move(sol);
  }
  if (!best) throw InstanceInfeasibleError("no feasible schedule exists");
  return *std::move(best);
}

Solution baseline_direct(const Instance& inst) {
  return evaluate_solution(ScheduleMatrix::all_ones(inst.num_customers(), inst.periods), inst);
}

std::size_t LpModel::count_family(const std::string& family) const {
  std::size_t n = 0;
  for (const auto& c : constraints) n += c.family == family;
  return n;
}

std::size_t LpModel::count_prefix(const std::string& prefix) const {
  std::size_t n = 0;
  for (const auto& v : variables) n += v.name.rfind(prefix, 0) == 0;
  return n;
}

namespace {

std::string s(std::size_t k) { return std::to_string(k); }

std::string x_name(std::size_t v, std::size_t i, std::size_t j, std::size_t t) {
  return "x_v" + s(v + 1) + "_i" + s(i) + "_j" + s(j) + "_t" + s(t + 1);
}
std::string y_name(std::size_t v, std::size_t p, std::size_t i, std::size_t j, std::size_t t) {
  return "y_v" + s(v + 1) + "_p" + s(p + 1) + "_i" + s(i) + "_j" + s(j) + "_t" + s(t + 1);
}
// t is 1-based here so the supplier opening stock can be t = 0.
std::string r_name(std::size_t p, std::size_t i, std::size_t t) {
  return "r_p" + s(p + 1) + "_i" + s(i) + "_t" + s(t);
}
std::string g_name(std::size_t v, std::size_t i, std::size_t j, std::size_t t) {
  return "g_v" + s(v + 1) + "_i" + s(i) + "_j" + s(j) + "_t" + s(t + 1);
}

}  // namespace

LpModel build_lp(const Instance& inst, const LpExportOptions& opt) {
  require_valid(inst);
  const std::size_t n_nodes = inst.num_customers() + 1;
  const std::size_t n_t = inst.periods;
  const std::size_t n_v = inst.num_vehicles();
  const std::size_t n_p = inst.num_products();
  const auto& c = inst.travel_cost;

  LpModel m;

  for (std::size_t v = 0; v < n_v; ++v)
    for (std::size_t t = 0; t < n_t; ++t)
      for (std::size_t i = 0; i < n_nodes; ++i)
        for (std::size_t j = 0; j < n_nodes; ++j) m.variables.push_back({x_name(v, i, j, t), VarDomain::Binary, i == j});
  for (std::size_t v = 0; v < n_v; ++v)
    for (std::size_t p = 0; p < n_p; ++p)
      for (std::size_t t = 0; t < n_t; ++t)
        for (std::size_t i = 0; i < n_nodes; ++i)
          for (std::size_t j = 0; j < n_nodes; ++j) m.variables.push_back({y_name(v, p, i, j, t)});
  for (std::size_t p = 0; p < n_p; ++p) {
    for (std::size_t i = 0; i < n_nodes; ++i)
      for (std::size_t t = i == 0 ? 0 : 1; t <= n_t; ++t) m.variables.push_back({r_name(p, i, t)});
  }
  if (opt.flow_subtour) {
    for (std::size_t v = 0; v < n_v; ++v)
      for (std::size_t t = 0; t < n_t; ++t)
        for (std::size_t i = 0; i < n_nodes; ++i)
          for (std::size_t j = 0; j < n_nodes; ++j)
            if (i != j) m.variables.push_back({g_name(v, i, j, t)});
  }

  // Fleet fixed + transport + inventory.
  for (std::size_t t = 0; t < n_t; ++t) {
    for (std::size_t v = 0; v < n_v; ++v) {
      for (std::size_t i = 0; i < n_nodes; ++i) {
        for (std::size_t j = 0; j < n_nodes; ++j) {
          double coef = c(i, j);
          if (i == 0 && j != 0) coef += inst.vehicles[v].fixed_cost[t];
          if (coef != 0.0) m.objective.push_back({coef, x_name(v, i, j, t)});
        }
      }
    }
    for (std::size_t i = 1; i < n_nodes; ++i)
      for (std::size_t p = 0; p < n_p; ++p) {
        const double h = inst.customers[i - 1].holding_cost[p];
        if (h != 0.0) m.objective.push_back({h, r_name(p, i, t + 1)});
      }
  }

  auto add = [&](std::string name, std::string family, std::vector<LinearTerm> terms, Sense sense, double rhs) {
    m.constraints.push_back({std::move(name), std::move(family), std::move(terms), sense, rhs});
  };

  // C2: at most one departure per node, vehicle and period.
  for (std::size_t v = 0; v < n_v; ++v)
    for (std::size_t t = 0; t < n_t; ++t)
      for (std::size_t i = 0; i < n_nodes; ++i) {
        std::vector<LinearTerm> terms;
        for (std::size_t j = 0; j < n_nodes; ++j) terms.push_back({1.0, x_name(v, i, j, t)});
        add("c2_v" + s(v + 1) + "_i" + s(i) + "_t" + s(t + 1), "C2", std::move(terms), Sense::LessEqual, 1.0);
      }

  // C3: route connectivity (out-degree equals in-degree).
  for (std::size_t v = 0; v < n_v; ++v)
    for (std::size_t t = 0; t < n_t; ++t)
      for (std::size_t i = 0; i < n_nodes; ++i) {
        std::vector<LinearTerm> terms;
        // Self-loop terms cancel and are left out.
        for (std::size_t j = 0; j < n_nodes; ++j)
          if (j != i) terms.push_back({1.0, x_name(v, i, j, t)});
        for (std::size_t k = 0; k < n_nodes; ++k)
          if (k != i) terms.push_back({-1.0, x_name(v, k, i, t)});
        add("c3_v" + s(v + 1) + "_i" + s(i) + "_t" + s(t + 1), "C3", std::move(terms), Sense::Equal, 0.0);
      }

  // C4: weighted load on an edge within the vehicle's capacity, zero when unused.
  for (std::size_t v = 0; v < n_v; ++v)
    for (std::size_t t = 0; t < n_t; ++t)
      for (std::size_t i = 0; i < n_nodes; ++i)
        for (std::size_t j = 0; j < n_nodes; ++j) {
          std::vector<LinearTerm> terms;
          for (std::size_t p = 0; p < n_p; ++p) terms.push_back({inst.products[p].weight, y_name(v, p, i, j, t)});
          terms.push_back({-inst.vehicles[v].capacity, x_name(v, i, j, t)});
          add("c4_v" + s(v + 1) + "_i" + s(i) + "_j" + s(j) + "_t" + s(t + 1), "C4", std::move(terms),
              Sense::LessEqual, 0.0);
        }

  // C5: weighted inflow covers weighted outflow at every node.
  for (std::size_t v = 0; v < n_v; ++v)
    for (std::size_t p = 0; p < n_p; ++p)
      for (std::size_t t = 0; t < n_t; ++t)
        for (std::size_t i = 0; i < n_nodes; ++i) {
          if (i == 0 && !opt.c5_supplier_rows) continue;
          const double a = inst.products[p].weight;
          std::vector<LinearTerm> terms;
          for (std::size_t j = 0; j < n_nodes; ++j)
            if (j != i) terms.push_back({a, y_name(v, p, j, i, t)});
          for (std::size_t k = 0; k < n_nodes; ++k)
            if (k != i) terms.push_back({-a, y_name(v, p, i, k, t)});
          add("c5_v" + s(v + 1) + "_p" + s(p + 1) + "_i" + s(i) + "_t" + s(t + 1), "C5", std::move(terms),
              Sense::GreaterEqual, 0.0);
        }

  // C6: inventory balance; customers start empty, the supplier's opening stock is free.
  for (std::size_t p = 0; p < n_p; ++p)
    for (std::size_t t = 0; t < n_t; ++t)
      for (std::size_t i = 0; i < n_nodes; ++i) {
        std::vector<LinearTerm> terms;
        if (i == 0 || t > 0) terms.push_back({1.0, r_name(p, i, t)});
        terms.push_back({-1.0, r_name(p, i, t + 1)});
        for (std::size_t v = 0; v < n_v; ++v) {
          for (std::size_t j = 0; j < n_nodes; ++j)
            if (j != i) terms.push_back({1.0, y_name(v, p, j, i, t)});
          for (std::size_t k = 0; k < n_nodes; ++k)
            if (k != i) terms.push_back({-1.0, y_name(v, p, i, k, t)});
        }
        const double d = i == 0 ? 0.0 : inst.demand(p, i - 1, t);
        add("c6_p" + s(p + 1) + "_i" + s(i) + "_t" + s(t + 1), "C6", std::move(terms), Sense::Equal, d);
      }

  // C7: storage capacity.
  for (std::size_t i = 1; i < n_nodes; ++i)
    for (std::size_t t = 0; t < n_t; ++t) {
      std::vector<LinearTerm> terms;
      for (std::size_t p = 0; p < n_p; ++p) terms.push_back({inst.products[p].weight, r_name(p, i, t + 1)});
      add("c7_i" + s(i) + "_t" + s(t + 1), "C7", std::move(terms), Sense::LessEqual,
          inst.customers[i - 1].storage_capacity);
    }

  if (opt.flow_subtour) {
    const double big = static_cast<double>(n_nodes - 1);
    for (std::size_t v = 0; v < n_v; ++v)
      for (std::size_t t = 0; t < n_t; ++t) {
        for (std::size_t i = 0; i < n_nodes; ++i)
          for (std::size_t j = 0; j < n_nodes; ++j) {
            if (i == j) continue;
            add("sf_cap_v" + s(v + 1) + "_i" + s(i) + "_j" + s(j) + "_t" + s(t + 1), "SF",
                {{1.0, g_name(v, i, j, t)}, {-big, x_name(v, i, j, t)}}, Sense::LessEqual, 0.0);
          }
        // Every visited customer absorbs one unit of flow sent from the supplier.
        for (std::size_t i = 1; i < n_nodes; ++i) {
          std::vector<LinearTerm> terms;
          for (std::size_t j = 0; j < n_nodes; ++j)
            if (j != i) terms.push_back({1.0, g_name(v, j, i, t)});
          for (std::size_t k = 0; k < n_nodes; ++k)
            if (k != i) terms.push_back({-1.0, g_name(v, i, k, t)});
          for (std::size_t j = 0; j < n_nodes; ++j)
            if (j != i) terms.push_back({-1.0, x_name(v, i, j, t)});
          add("sf_bal_v" + s(v + 1) + "_i" + s(i) + "_t" + s(t + 1), "SF", std::move(terms), Sense::Equal, 0.0);
        }
      }
  }
  return m;
}

namespace {

class LineWriter {
 public:
  explicit LineWriter(std::ostream& os) : os_(os) {}
  void put(const std::string& token) {
    if (width_ + token.size() + 1 > 200) {
      os_ << "\n   ";
      width_ = 3;
    }
    os_ << " " << token;
    width_ += token.size() + 1;
  }
  void start(const std::string& head) {
    os_ << head;
    width_ = head.size();
  }
  void end() { os_ << "\n"; }

 private:
  std::ostream& os_;
  std::size_t width_ = 0;
};

void write_terms(LineWriter& w, const std::vector<LinearTerm>& terms) {
  if (terms.empty()) {
    w.put("0");
    return;
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    const bool neg = t.coef < 0.0;
    if (k > 0 || neg) w.put(neg ? "-" : "+");
    const double mag = neg ? -t.coef : t.coef;
    w.put(format_real(mag) + " " + t.var);
  }
}

}  // namespace

void write_lp(std::ostream& os, const LpModel& m) {
  os << "\\ Multi-product multi-period inventory routing model\n";
  os << "\\ rows: C2 departures, C3 connectivity, C4 edge capacity, C5 flow inequality,\n";
  os << "\\       C6 inventory balance, C7 storage, SF single-commodity flow subtour elimination\n";
  os << "Minimize\n";
  LineWriter w(os);
  w.start(" obj:");
  write_terms(w, m.objective);
  w.end();

  os << "Subject To\n";
  std::string family;
  for (const auto& c : m.constraints) {
    if (c.family != family) {
      family = c.family;
      os << "\\ family " << family << "\n";
    }
    w.start(" " + c.name + ":");
    write_terms(w, c.terms);
    w.put(c.sense == Sense::LessEqual ? "<=" : c.sense == Sense::GreaterEqual ? ">=" : "=");
    w.put(format_real(c.rhs));
    w.end();
  }

  os << "Bounds\n";
  for (const auto& v : m.variables)
    if (v.fixed_zero) os << " " << v.name << " = 0\n";

  os << "Binaries\n";
  for (const auto& v : m.variables)
    if (v.domain == VarDomain::Binary) os << " " << v.name << "\n";
  os << "End\n";
}

LpModel export_lp(const Instance& instance, const std::filesystem::path& path, const LpExportOptions& options) {
  LpModel m = build_lp(instance, options);
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_lp(os, m);
  if (!os) throw Error("failed writing '" + path.string() + "'");
  return m;
}

std::map<std::string, double> lp_values(const Instance& inst, const Solution& sol) {
  std::map<std::string, double> vals;
  const std::size_t n_p = inst.num_products();

  for (std::size_t t = 0; t < sol.routing.size(); ++t) {
    for (const auto& [v, slot] : sol.routing[t].assignments) {
      std::vector<std::size_t> tour{0};
      tour.insert(tour.end(), slot.route.stops.begin(), slot.route.stops.end());
      tour.push_back(0);

      std::vector<double> carried(n_p, 0.0);
      for (std::size_t p = 0; p < n_p; ++p)
        for (auto node : slot.route.stops) carried[p] += sol.plan.deliveries(p, node - 1, t);

      for (std::size_t k = 0; k + 1 < tour.size(); ++k) {
        const std::size_t a = tour[k];
        const std::size_t b = tour[k + 1];
        vals[x_name(v, a, b, t)] = 1.0;
        // Flow of the subtour rows: one unit per customer still ahead.
        if (const std::size_t ahead = slot.route.stops.size() - k; ahead > 0)
          vals[g_name(v, a, b, t)] = static_cast<double>(ahead);
        for (std::size_t p = 0; p < n_p; ++p) {
          if (carried[p] != 0.0) vals[y_name(v, p, a, b, t)] = carried[p];
          if (b != 0) carried[p] -= sol.plan.deliveries(p, b - 1, t);
        }
      }
    }
  }

  // Supplier opening stock equals everything it ships over the horizon.
  for (std::size_t p = 0; p < n_p; ++p) {
    double shipped = 0.0;
    for (std::size_t i = 0; i < inst.num_customers(); ++i)
      for (std::size_t t = 0; t < inst.periods; ++t) shipped += sol.plan.deliveries(p, i, t);
    double stock = shipped;
    if (stock != 0.0) vals[r_name(p, 0, 0)] = stock;
    for (std::size_t t = 0; t < inst.periods; ++t) {
      for (std::size_t i = 0; i < inst.num_customers(); ++i) stock -= sol.plan.deliveries(p, i, t);
      if (stock != 0.0) vals[r_name(p, 0, t + 1)] = stock;
    }
    for (std::size_t i = 0; i < inst.num_customers(); ++i)
      for (std::size_t t = 0; t < inst.periods; ++t)
        if (double r = sol.plan.inventory(p, i, t); r != 0.0) vals[r_name(p, i + 1, t + 1)] = r;
  }
  return vals;
}

}  // namespace mmirp
