#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "rulefront/genome.hpp"
#include "rulefront/rng.hpp"

namespace rulefront {

// Both objectives are maximized: risk-adjusted return and signed maximum
// drawdown (closer to 0 is better, so larger still wins).
struct ObjectiveVector {
  double sharpe = 0.0;
  double max_drawdown = 0.0;

  bool operator==(const ObjectiveVector&) const = default;
};

// Pareto dominance with exact comparisons: a >= b in every objective and
// > in at least one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct Individual {
  Genome genome;
  ObjectiveVector objectives;
  std::size_t rank = 0;      // front index, 0 = non-dominated
  double crowding = 0.0;
};

using Population = std::vector<Individual>;

// Deb's fast non-dominated sort. Returns the fronts as index lists, best
// first, and writes each member's rank. Every member lands in exactly one
// front.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(Population& pop);

// Crowding distance within one front. Boundary members of each objective get
// +infinity; an objective with zero range contributes nothing. Returns the
// distances in front order and writes them to the members.
std::vector<double> assign_crowding(Population& pop, const std::vector<std::size_t>& front);

// Runs fast_nondominated_sort plus assign_crowding on every front.
void rank_population(Population& pop);

// True when i should be preferred over j: lower rank, then larger crowding,
// then lower index so ties break the same way every run.
bool crowded_precedes(const Population& pop, std::size_t i, std::size_t j);

struct EvolveParams {
  std::size_t population_size = 30;
  std::size_t generations = 5;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

using FitnessFn = std::function<ObjectiveVector(const Genome&)>;

// Binary-tournament selection, crossover, mutation; produces exactly
// pop.size() children. pop must be ranked.
Population make_offspring(const Population& pop, Rng& rng, const EvolveParams& params);

// Elitist replacement over parents + offspring: fills by front, splits the
// overflowing front by descending crowding (index ascending on ties), and
// returns a ranked population of the parent size.
Population next_generation(const Population& parents, const Population& offspring);

// Full NSGA-II run: random initial population, params.generations
// replacement cycles, no early stopping. Fitness evaluations are memoized by
// genome and may be dispatched across params.threads workers; fitness must
// be a pure function for the result to be thread-count invariant. Returns
// the final rank-0 front, deduplicated by genome, in population order.
// Throws InvalidParams for population_size < 2, generations < 1, rates
// outside [0, 1], or threads < 1.
Population evolve(const FitnessFn& fitness, const EvolveParams& params);

}  // namespace rulefront
