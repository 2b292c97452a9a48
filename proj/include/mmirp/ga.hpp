#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "mmirp/core.hpp"
#include "mmirp/routing.hpp"
#include "mmirp/schedule.hpp"

namespace mmirp {

struct RateBounds {
  double cr_min = 0.4;
  double cr_max = 0.95;
  double mr_min = 0.01;
  double mr_max = 0.3;
};

struct GaConfig {
  std::size_t psize = 50;
  double cr0 = 0.8;
  double mr0 = 0.08;
  RateBounds bounds;
  std::size_t k_max = 50;  // non-improving generations before stopping
  std::size_t max_generations = 500;
  std::uint64_t seed = 1;
};

// Throws ValidationError when psize < 2, k_max < 1 or a rate is out of bounds.
void validate(const GaConfig& config);

struct Member {
  ScheduleMatrix schedule;
  Money fitness = 0.0;
};

struct AdaptiveRates {
  double cr = 0.8;
  double mr = 0.08;
  RateBounds bounds;
  // (mean parent fitness, mean offspring fitness) per update.
  std::vector<std::pair<double, double>> history;
};

// Roulette probabilities for minimisation: p_c = (F - f_c) / (F (psize - 1)).
// Throws DegenerateDataError for fewer than two members, DomainError for
// nonpositive fitness.
std::vector<double> selection_probabilities(std::span<const double> fitness);

// Index c with g_{c-1} < r <= g_c for r uniform on (0, 1].
std::size_t select(std::span<const Member> population, Rng& rng);
std::size_t select(std::span<const double> fitness, Rng& rng);

enum class Axis { Row, Column };

// Children before repair: copies of each parent with slice `index` of `axis`
// exchanged.
std::pair<ScheduleMatrix, ScheduleMatrix> crossover_at(const ScheduleMatrix& a, const ScheduleMatrix& b, Axis axis,
                                                       std::size_t index);
std::pair<ScheduleMatrix, ScheduleMatrix> crossover(const ScheduleMatrix& a, const ScheduleMatrix& b, Rng& rng);

// Copy of m with two slices of `axis` swapped (before repair).
ScheduleMatrix swap_slices(const ScheduleMatrix& m, Axis axis, std::size_t first, std::size_t second);
// Picks an axis with at least two slices and two distinct indices on it;
// identity when neither axis qualifies.
ScheduleMatrix mutate(const ScheduleMatrix& parent, Rng& rng);

// rho = mean_parent / mean_offspring - 1. rho >= 0.1 raises (cr, mr) by
// (0.05, 0.005), rho <= -0.1 lowers them by the same steps; results are
// clamped to the bounds. Throws DomainError for nonpositive means.
AdaptiveRates adapt_rates(AdaptiveRates rates, double mean_parent_fitness, double mean_offspring_fitness);

struct GenerationRecord {
  std::size_t generation = 0;
  Money best = 0.0;
  Money mean = 0.0;
  double cr = 0.0;
  double mr = 0.0;
};

struct GaResult {
  Solution best;
  std::vector<GenerationRecord> log;  // entry 0 is the initial population
  std::size_t generations = 0;
  std::size_t evaluations = 0;
};

// Sequential and deterministic for a fixed config.seed. Throws
// InstanceInfeasibleError when no feasible initial population exists.
GaResult evolve(const Instance& instance, const GaConfig& config);

// "gen,best,mean,cr,mr" header plus one row per record.
void write_generation_log(std::ostream& os, std::span<const GenerationRecord> log);

}  // namespace mmirp
