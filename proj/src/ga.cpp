#include "mmirp/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "mmirp/error.hpp"
#include "mmirp/instance_io.hpp"

namespace mmirp {

void validate(const GaConfig& c) {
  const auto& b = c.bounds;
  if (c.psize < 2) throw ValidationError("psize must be at least 2");
  if (c.k_max < 1) throw ValidationError("k_max must be at least 1");
  if (!(b.cr_min <= b.cr_max) || !(b.mr_min <= b.mr_max) || b.cr_min < 0.0 || b.mr_min < 0.0 || b.cr_max > 1.0 ||
      b.mr_max > 1.0)
    throw ValidationError("rate bounds must be ordered subranges of [0, 1]");
  if (c.cr0 < b.cr_min || c.cr0 > b.cr_max) throw ValidationError("cr0 outside its bounds");
  if (c.mr0 < b.mr_min || c.mr0 > b.mr_max) throw ValidationError("mr0 outside its bounds");
}

std::vector<double> selection_probabilities(std::span<const double> fitness) {
  const std::size_t n = fitness.size();
  if (n < 2) throw DegenerateDataError("roulette selection needs at least two members");
  double total = 0.0;
  for (double f : fitness) {
    if (!(f > 0.0)) throw DomainError("roulette selection needs strictly positive fitness");
    total += f;
  }
  std::vector<double> p(n);
  const double denom = total * static_cast<double>(n - 1);
  for (std::size_t c = 0; c < n; ++c) p[c] = (total - fitness[c]) / denom;
  return p;
}

std::size_t select(std::span<const double> fitness, Rng& rng) {
  const auto p = selection_probabilities(fitness);
  // r on (0, 1]
  const double r = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    cumulative += p[c];
    if (r <= cumulative) return c;
  }
  // Rounding can leave g_psize a hair below 1.
  for (std::size_t c = p.size(); c-- > 0;)
    if (p[c] > 0.0) return c;
  return p.size() - 1;
}

std::size_t select(std::span<const Member> population, Rng& rng) {
  std::vector<double> f;
  f.reserve(population.size());
  for (const auto& m : population) f.push_back(m.fitness);
  return select(f, rng);
}

std::pair<ScheduleMatrix, ScheduleMatrix> crossover_at(const ScheduleMatrix& a, const ScheduleMatrix& b, Axis axis,
                                                       std::size_t index) {
  if (a.customers() != b.customers() || a.periods() != b.periods())
    throw ValidationError("crossover parents differ in shape");
  ScheduleMatrix ca = a;
  ScheduleMatrix cb = b;
  if (axis == Axis::Row) {
    for (std::size_t t = 0; t < a.periods(); ++t) {
      ca.set(index, t, b.get(index, t));
      cb.set(index, t, a.get(index, t));
    }
  } else {
    for (std::size_t i = 0; i < a.customers(); ++i) {
      ca.set(i, index, b.get(i, index));
      cb.set(i, index, a.get(i, index));
    }
  }
  return {std::move(ca), std::move(cb)};
}

std::pair<ScheduleMatrix, ScheduleMatrix> crossover(const ScheduleMatrix& a, const ScheduleMatrix& b, Rng& rng) {
  const Axis axis = std::bernoulli_distribution(0.5)(rng) ? Axis::Row : Axis::Column;
  const std::size_t extent = axis == Axis::Row ? a.customers() : a.periods();
  if (extent == 0) return {a, b};
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, extent - 1)(rng);
  return crossover_at(a, b, axis, k);
}

ScheduleMatrix swap_slices(const ScheduleMatrix& m, Axis axis, std::size_t first, std::size_t second) {
  ScheduleMatrix out = m;
  if (axis == Axis::Row) {
    for (std::size_t t = 0; t < m.periods(); ++t) {
      out.set(first, t, m.get(second, t));
      out.set(second, t, m.get(first, t));
    }
  } else {
    for (std::size_t i = 0; i < m.customers(); ++i) {
      out.set(i, first, m.get(i, second));
      out.set(i, second, m.get(i, first));
    }
  }
  return out;
}

ScheduleMatrix mutate(const ScheduleMatrix& parent, Rng& rng) {
  const bool rows_ok = parent.customers() >= 2;
  const bool cols_ok = parent.periods() >= 2;
  if (!rows_ok && !cols_ok) return parent;

  Axis axis;
  if (rows_ok && cols_ok) {
    axis = std::bernoulli_distribution(0.5)(rng) ? Axis::Row : Axis::Column;
  } else {
    axis = rows_ok ? Axis::Row : Axis::Column;
  }
  const std::size_t extent = axis == Axis::Row ? parent.customers() : parent.periods();
  const std::size_t first = std::uniform_int_distribution<std::size_t>(0, extent - 1)(rng);
  std::size_t second = std::uniform_int_distribution<std::size_t>(0, extent - 2)(rng);
  if (second >= first) ++second;
  return swap_slices(parent, axis, first, second);
}

AdaptiveRates adapt_rates(AdaptiveRates rates, double mean_parent, double mean_offspring) {
  if (!(mean_parent > 0.0) || !(mean_offspring > 0.0))
    throw DomainError("adapt_rates needs positive mean fitness values");

  // The tolerance keeps rho = +-0.1 on the moving side despite rounding of the ratio.
  constexpr double threshold = 0.1 - 1e-12;
  const double rho = mean_parent / mean_offspring - 1.0;
  if (rho >= threshold) {
    rates.cr += 0.05;
    rates.mr += 0.005;
  } else if (rho <= -threshold) {
    rates.cr -= 0.05;
    rates.mr -= 0.005;
  }
  rates.cr = std::clamp(rates.cr, rates.bounds.cr_min, rates.bounds.cr_max);
  rates.mr = std::clamp(rates.mr, rates.bounds.mr_min, rates.bounds.mr_max);
  rates.history.emplace_back(mean_parent, mean_offspring);
  return rates;
}

namespace {

class FitnessCache {
 public:
  explicit FitnessCache(const Instance& inst) : inst_(inst) {}

  Money operator()(const ScheduleMatrix& s) {
    if (auto it = cache_.find(s); it != cache_.end()) return it->second;
    const Money f = evaluate_solution(s, inst_).cost.total;
    ++evaluations_;
    cache_.emplace(s, f);
    return f;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const Instance& inst_;
  std::unordered_map<ScheduleMatrix, Money, ScheduleHash> cache_;
  std::size_t evaluations_ = 0;
};

GenerationRecord summarize(std::size_t gen, const std::vector<Member>& pop, const AdaptiveRates& rates) {
  GenerationRecord rec;
  rec.generation = gen;
  rec.best = pop.front().fitness;
  double sum = 0.0;
  for (const auto& m : pop) sum += m.fitness;
  rec.mean = sum / static_cast<double>(pop.size());
  rec.cr = rates.cr;
  rec.mr = rates.mr;
  return rec;
}

// Best psize of the pool, distinct schedules first; duplicates only fill
// remaining slots.
std::vector<Member> truncate(std::vector<Member> pool, std::size_t psize) {
  std::sort(pool.begin(), pool.end(), [](const Member& a, const Member& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return a.schedule < b.schedule;
  });
  std::vector<Member> out;
  std::vector<Member> dupes;
  std::unordered_set<ScheduleMatrix, ScheduleHash> seen;
  for (auto& m : pool) {
    if (seen.insert(m.schedule).second) {
      if (out.size() < psize) out.push_back(std::move(m));
    } else {
      dupes.push_back(std::move(m));
    }
  }
  for (std::size_t k = 0; out.size() < psize && k < dupes.size(); ++k) out.push_back(std::move(dupes[k]));
  std::sort(out.begin(), out.end(), [](const Member& a, const Member& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return a.schedule < b.schedule;
  });
  return out;
}

}  // namespace

GaResult evolve(const Instance& inst, const GaConfig& config) {
  validate(config);
  Rng rng(config.seed);
  FitnessCache fitness(inst);

  std::vector<Member> pop;
  pop.reserve(config.psize);
  for (std::size_t k = 0; k < config.psize; ++k) {
    ScheduleMatrix s = random_schedule(inst, rng);
    const Money f = fitness(s);
    pop.push_back({std::move(s), f});
  }
  pop = truncate(std::move(pop), config.psize);

  AdaptiveRates rates{config.cr0, config.mr0, config.bounds, {}};
  GaResult result;
  result.log.push_back(summarize(0, pop, rates));

  const double genes = static_cast<double>(inst.num_customers() * inst.periods);
  std::size_t stale = 0;
  std::size_t gen = 0;
  // Costs are nonnegative, so a zero-cost member is already optimal.
  while (gen < config.max_generations && stale < config.k_max && pop.front().fitness > 0.0) {
    ++gen;
    const Money previous_best = pop.front().fitness;

    std::vector<Member> offspring;
    double parent_sum = 0.0;
    std::size_t parent_count = 0;
    auto pick = [&]() -> const Member& {
      const Member& m = pop[select(pop, rng)];
      parent_sum += m.fitness;
      ++parent_count;
      return m;
    };
    auto admit = [&](ScheduleMatrix child) {
      if (auto fixed = repair(std::move(child), inst)) {
        const Money f = fitness(*fixed);
        offspring.push_back({*std::move(fixed), f});
      }
    };

    const auto n_cross = static_cast<std::size_t>(std::lround(rates.cr * static_cast<double>(config.psize)));
    for (std::size_t pair = 0; pair < (n_cross + 1) / 2; ++pair) {
      const Member& a = pick();
      const Member& b = pick();
      auto [ca, cb] = crossover(a.schedule, b.schedule, rng);
      admit(std::move(ca));
      admit(std::move(cb));
    }

    const auto n_mut = std::min<std::size_t>(
        config.psize, static_cast<std::size_t>(std::lround(rates.mr * static_cast<double>(config.psize) * genes)));
    for (std::size_t k = 0; k < n_mut; ++k) admit(mutate(pick().schedule, rng));

    if (!offspring.empty() && parent_count > 0) {
      double child_sum = 0.0;
      for (const auto& m : offspring) child_sum += m.fitness;
      const double mean_parent = parent_sum / static_cast<double>(parent_count);
      const double mean_child = child_sum / static_cast<double>(offspring.size());
      if (mean_parent > 0.0 && mean_child > 0.0) rates = adapt_rates(std::move(rates), mean_parent, mean_child);
    }

    std::vector<Member> pool = std::move(pop);
    pool.insert(pool.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
    pop = truncate(std::move(pool), config.psize);

    stale = pop.front().fitness < previous_best ? 0 : stale + 1;
    result.log.push_back(summarize(gen, pop, rates));
  }

  result.generations = gen;
  result.best = evaluate_solution(pop.front().schedule, inst);
  result.evaluations = fitness.evaluations();
  return result;
}

void write_generation_log(std::ostream& os, std::span<const GenerationRecord> log) {
  os << "gen,best,mean,cr,mr\n";
  for (const auto& r : log)
    os << r.generation << "," << format_real(r.best) << "," << format_real(r.mean) << "," << format_real(r.cr) << ","
       << format_real(r.mr) << "\n";
}

}  // namespace mmirp
