#include "rulefront/nsga2.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "rulefront/errors.hpp"

namespace rulefront {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const bool no_worse = a.sharpe >= b.sharpe && a.max_drawdown >= b.max_drawdown;
  const bool better = a.sharpe > b.sharpe || a.max_drawdown > b.max_drawdown;
  return no_worse && better;
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(Population& pop) {
  const std::size_t n = pop.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dominates(pop[i].objectives, pop[j].objectives)) {
        dominated_by[i].push_back(j);
      } else if (dominates(pop[j].objectives, pop[i].objectives)) {
        ++domination_count[i];
      }
    }
    if (domination_count[i] == 0) {
      pop[i].rank = 0;
      current.push_back(i);
    }
  }

  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (const std::size_t i : current) {
      for (const std::size_t j : dominated_by[i]) {
        if (--domination_count[j] == 0) {
          pop[j].rank = fronts.size();
          next.push_back(j);
        }
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> assign_crowding(Population& pop, const std::vector<std::size_t>& front) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t m = front.size();
  std::vector<double> dist(m, 0.0);
  if (m <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
  } else {
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;

    auto accumulate_objective = [&](auto objective_of) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return objective_of(pop[front[a]]) < objective_of(pop[front[b]]);
      });
      const double range =
          objective_of(pop[front[order.back()]]) - objective_of(pop[front[order.front()]]);
      if (range == 0.0) return;  // nothing to spread over
      dist[order.front()] = kInf;
      dist[order.back()] = kInf;
      for (std::size_t i = 1; i + 1 < m; ++i) {
        if (dist[order[i]] == kInf) continue;
        dist[order[i]] += (objective_of(pop[front[order[i + 1]]]) -
                           objective_of(pop[front[order[i - 1]]])) /
                          range;
      }
    };
    accumulate_objective([](const Individual& ind) { return ind.objectives.sharpe; });
    accumulate_objective([](const Individual& ind) { return ind.objectives.max_drawdown; });
  }
  for (std::size_t i = 0; i < m; ++i) {
    pop[front[i]].crowding = dist[i];
  }
  return dist;
}

void rank_population(Population& pop) {
  const auto fronts = fast_nondominated_sort(pop);
  for (const auto& front : fronts) {
    assign_crowding(pop, front);
  }
}

bool crowded_precedes(const Population& pop, std::size_t i, std::size_t j) {
  if (pop[i].rank != pop[j].rank) return pop[i].rank < pop[j].rank;
  if (pop[i].crowding != pop[j].crowding) return pop[i].crowding > pop[j].crowding;
  return i < j;
}

namespace {

void validate(const EvolveParams& params) {
  if (params.population_size < 2) {
    throw InvalidParamsError("population_size must be >= 2");
  }
  if (params.generations < 1) {
    throw InvalidParamsError("generations must be >= 1");
  }
  if (params.crossover_rate < 0.0 || params.crossover_rate > 1.0) {
    throw InvalidParamsError("crossover_rate must be in [0, 1]");
  }
  if (params.mutation_rate < 0.0 || params.mutation_rate > 1.0) {
    throw InvalidParamsError("mutation_rate must be in [0, 1]");
  }
  if (params.threads < 1) {
    throw InvalidParamsError("threads must be >= 1");
  }
}

// Evaluates any genome the memo has not seen. Work is sharded by index, so
// the set of (genome, result) pairs is the same for every thread count; only
// the memo insertion order could differ, and that is done single-threaded.
class MemoizedEvaluator {
 public:
  MemoizedEvaluator(const FitnessFn& fitness, unsigned threads)
      : fitness_(fitness), threads_(threads) {}

  void evaluate(Population& pop) {
    std::vector<std::size_t> todo;  // first occurrence of each unseen genome
    std::unordered_set<std::uint64_t> queued;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      const std::uint64_t key = pop[i].genome.key();
      if (!memo_.contains(key) && queued.insert(key).second) {
        todo.push_back(i);
      }
    }

    std::vector<ObjectiveVector> results(todo.size());
    const unsigned workers =
        std::min<unsigned>(threads_, static_cast<unsigned>(todo.size()));
    if (workers <= 1) {
      for (std::size_t i = 0; i < todo.size(); ++i) {
        results[i] = fitness_(pop[todo[i]].genome);
      }
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < todo.size(); i += workers) {
              results[i] = fitness_(pop[todo[i]].genome);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
      }
    }

    for (std::size_t i = 0; i < todo.size(); ++i) {
      memo_.emplace(pop[todo[i]].genome.key(), results[i]);
    }
    for (auto& ind : pop) {
      ind.objectives = memo_.at(ind.genome.key());
    }
  }

 private:
  const FitnessFn& fitness_;
  unsigned threads_;
  std::unordered_map<std::uint64_t, ObjectiveVector> memo_;
};

}  // namespace

Population make_offspring(const Population& pop, Rng& rng, const EvolveParams& params) {
  const std::size_t n = pop.size();
  auto tournament = [&]() -> const Individual& {
    const std::size_t a = rng.uniform_index(n);
    const std::size_t b = rng.uniform_index(n);
    return crowded_precedes(pop, a, b) ? pop[a] : pop[b];
  };

  Population offspring;
  offspring.reserve(n);
  while (offspring.size() < n) {
    const Individual& p1 = tournament();
    const Individual& p2 = tournament();
    Genome c1 = p1.genome;
    Genome c2 = p2.genome;
    if (rng.bernoulli(params.crossover_rate)) {
      std::tie(c1, c2) = crossover(c1, c2, rng);
    }
    c1 = mutate(c1, rng, params.mutation_rate);
    c2 = mutate(c2, rng, params.mutation_rate);
    offspring.push_back(Individual{std::move(c1)});
    if (offspring.size() < n) {
      offspring.push_back(Individual{std::move(c2)});
    }
  }
  return offspring;
}

Population next_generation(const Population& parents, const Population& offspring) {
  const std::size_t capacity = parents.size();
  Population pool = parents;
  pool.insert(pool.end(), offspring.begin(), offspring.end());

  const auto fronts = fast_nondominated_sort(pool);
  for (const auto& front : fronts) {
    assign_crowding(pool, front);
  }

  Population selected;
  selected.reserve(capacity);
  for (const auto& front : fronts) {
    if (selected.size() == capacity) break;
    if (selected.size() + front.size() <= capacity) {
      for (const std::size_t i : front) selected.push_back(pool[i]);
      continue;
    }
    // Split front: widest spacing first, index order on exact ties.
    std::vector<std::size_t> order = front;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (pool[a].crowding != pool[b].crowding) return pool[a].crowding > pool[b].crowding;
      return a < b;
    });
    for (std::size_t i = 0; selected.size() < capacity; ++i) {
      selected.push_back(pool[order[i]]);
    }
  }

  rank_population(selected);
  return selected;
}

Population evolve(const FitnessFn& fitness, const EvolveParams& params) {
  validate(params);

  Rng rng(params.seed);
  MemoizedEvaluator evaluator(fitness, params.threads);

  Population pop;
  pop.reserve(params.population_size);
  for (std::size_t i = 0; i < params.population_size; ++i) {
    pop.push_back(Individual{random_genome(rng)});
  }
  evaluator.evaluate(pop);
  rank_population(pop);

  for (std::size_t gen = 0; gen < params.generations; ++gen) {
    Population offspring = make_offspring(pop, rng, params);
    evaluator.evaluate(offspring);
    pop = next_generation(pop, offspring);
  }

  Population front;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& ind : pop) {
    if (ind.rank != 0) continue;
    if (seen.insert(ind.genome.key()).second) {
      front.push_back(ind);
    }
  }
  return front;
}

}  // namespace rulefront
