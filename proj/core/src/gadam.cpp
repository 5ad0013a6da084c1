#include "descentlab/gadam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "descentlab/batch_plan.hpp"
#include "descentlab/train.hpp"
#include "descentlab/worker_pool.hpp"

namespace descentlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Loss used for ranking; anything non-finite ranks last.
double score(const Objective& objective, const ParamVector& theta, const Batch& batch) {
  try {
    const double loss = objective.value(theta, batch);
    return std::isfinite(loss) ? loss : kInf;
  } catch (const NumericError&) {
    return kInf;
  }
}

// Rows of a validation batch drawn without replacement from the holdout.
std::vector<std::size_t> validation_rows(const GadamConfig& config, const Dataset& holdout,
                                         std::uint64_t master_seed, std::size_t generation,
                                         std::size_t purpose) {
  Prng rng(gadam_stream_seed(master_seed, GadamStream::Validation, generation, purpose));
  std::vector<std::size_t> rows = shuffled_indices(holdout.size(), rng);
  rows.resize(std::min(config.validation_batch_size, rows.size()));
  return rows;
}

// Models that failed in training keep their infinite loss.
void score_population(std::vector<UnitModel>& models, const Objective& objective,
                      const Batch& batch, std::size_t workers) {
  parallel_for(models.size(), workers, [&](std::size_t i) {
    if (std::isinf(models[i].fitness_loss)) return;
    models[i].fitness_loss = score(objective, models[i].theta, batch);
  });
}

bool ranks_before(double loss_a, std::size_t id_a, double loss_b, std::size_t id_b) {
  if (loss_a != loss_b) return loss_a < loss_b;
  return id_a < id_b;
}

}  // namespace

std::string_view to_string(MutationResample mode) noexcept {
  return mode == MutationResample::Normal ? "normal" : "uniform";
}

MutationResample parse_mutation_resample(std::string_view name) {
  if (name == "uniform") return MutationResample::Uniform;
  if (name == "normal") return MutationResample::Normal;
  throw InvalidArgument("unknown mutation resample mode '" + std::string(name) +
                        "' (expected uniform or normal)");
}

void GadamConfig::validate() const {
  if (population < 2) throw InvalidArgument("gadam: population must be at least 2");
  if (max_generations < 1) throw InvalidArgument("gadam: max_generations must be at least 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw InvalidArgument("gadam: mutation_rate must lie in [0, 1]");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("gadam: lambda must be positive and finite");
  }
  if (adam.kind != OptimizerKind::Adam) {
    throw InvalidArgument("gadam: the inner optimizer must be Adam");
  }
  adam.validate();
  if (adam_stop) adam_stop->validate();
  if (batch_size < 1) throw InvalidArgument("gadam: batch_size must be at least 1");
  if (validation_batch_size < 1) {
    throw InvalidArgument("gadam: validation_batch_size must be at least 1");
  }
  if (workers < 1) throw InvalidArgument("gadam: workers must be at least 1");
  if (!(init_sigma > 0.0) || !std::isfinite(init_sigma)) {
    throw InvalidArgument("gadam: init_sigma must be positive and finite");
  }
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) {
    throw InvalidArgument("gadam: holdout_fraction must lie in [0, 1)");
  }
}

std::uint64_t gadam_stream_seed(std::uint64_t master_seed, GadamStream purpose,
                                std::size_t generation, std::size_t id) {
  const std::uint64_t stream = (static_cast<std::uint64_t>(purpose) << 56) ^
                               (static_cast<std::uint64_t>(generation) << 32) ^
                               static_cast<std::uint64_t>(id);
  return Prng::derive_seed(master_seed, stream);
}

std::vector<UnitModel> init_population(const GadamConfig& config, std::size_t dim,
                                       std::uint64_t master_seed) {
  config.validate();
  std::vector<UnitModel> population(config.population);
  for (std::size_t i = 0; i < config.population; ++i) {
    Prng rng(gadam_stream_seed(master_seed, GadamStream::Init, 0, i));
    population[i].theta = init_normal(dim, config.init_sigma, rng);
    population[i].id = i;
  }
  return population;
}

std::size_t generation_update_budget(const GadamConfig& config, const Dataset* train_data) {
  if (train_data == nullptr) return config.epochs_per_generation;
  const std::size_t b = std::clamp<std::size_t>(config.batch_size, 1, train_data->size());
  return config.epochs_per_generation * ((train_data->size() + b - 1) / b);
}

TrainedPopulation train_generation(std::vector<UnitModel> population, const Objective& objective,
                                   const Dataset* train_data, const GadamConfig& config,
                                   std::uint64_t master_seed, std::size_t generation) {
  TrainedPopulation out;
  const std::size_t budget = generation_update_budget(config, train_data);
  if (budget == 0) {
    out.models = std::move(population);
    return out;
  }

  StopRule stop = StopRule::iterations(budget);
  if (config.adam_stop) {
    stop = *config.adam_stop;
    stop.max_iters = std::min(stop.max_iters, budget);
  }
  OptimizerConfig adam = config.adam;
  adam.kind = OptimizerKind::Adam;

  std::vector<std::size_t> evaluations(population.size(), 0);
  std::vector<char> failed(population.size(), 0);
  parallel_for(population.size(), config.workers, [&](std::size_t i) {
    UnitModel& model = population[i];
    Prng rng(gadam_stream_seed(master_seed, GadamStream::Train, generation, model.id));
    TrainOptions options;
    options.batch_size = config.batch_size;
    options.run_id = "model" + std::to_string(model.id);
    options.keep_best_iterate = config.keep_best_iterate;
    options.record_trace = false;
    try {
      TrainResult result = train(objective, train_data, adam, stop, model.theta, rng, options);
      model.theta = std::move(result.theta);
      model.fitness_loss = 0.0;
      evaluations[i] = result.updates;
    } catch (const TrainingFailure& failure) {
      model.fitness_loss = kInf;
      evaluations[i] = failure.step().value_or(0);
      failed[i] = 1;
    }
  });

  out.gradient_evaluations = std::accumulate(evaluations.begin(), evaluations.end(), std::size_t{0});
  out.failures = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  out.models = std::move(population);
  return out;
}

std::vector<double> normalize_losses(const std::vector<double>& losses) {
  double lo = kInf;
  double hi = -kInf;
  for (const double loss : losses) {
    if (!std::isfinite(loss)) continue;
    lo = std::min(lo, loss);
    hi = std::max(hi, loss);
  }
  if (lo > hi) throw NumericError("gadam: every model in the generation has a non-finite loss");

  std::vector<double> normalized(losses.size());
  for (std::size_t i = 0; i < losses.size(); ++i) {
    if (!std::isfinite(losses[i])) {
      normalized[i] = 1.0;
    } else if (hi == lo) {
      normalized[i] = 0.5;
    } else {
      normalized[i] = std::clamp((losses[i] - lo) / (hi - lo), 0.0, 1.0);
    }
  }
  return normalized;
}

std::vector<double> fitness_probabilities(const std::vector<double>& losses) {
  if (losses.empty()) throw InvalidArgument("fitness_probabilities: empty population");
  const std::vector<double> normalized = normalize_losses(losses);
  std::vector<double> probs(normalized.size());
  double total = 0.0;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    probs[i] = std::exp(-normalized[i]);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<std::pair<std::size_t, std::size_t>> select_parents(const std::vector<double>& probs,
                                                                Prng& rng) {
  if (probs.empty()) throw InvalidArgument("select_parents: empty population");
  // The last index with positive mass absorbs rounding in the cumulative sum.
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = i;
  }
  const auto draw = [&] {
    const double r = rng.uniform01();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < last_positive; ++i) {
      cumulative += probs[i];
      if (r < cumulative) return i;
    }
    return last_positive;
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs(probs.size());
  for (auto& pair : pairs) {
    pair.first = draw();
    pair.second = draw();
  }
  return pairs;
}

double crossover_threshold(double normalized_i, double normalized_j) {
  const double a = std::exp(-normalized_i);
  const double b = std::exp(-normalized_j);
  return a / (a + b);
}

ParamVector crossover(const ParamVector& parent_i, const ParamVector& parent_j, double p_ij,
                      Prng& rng) {
  require_same_size(parent_i.size(), parent_j.size(), "crossover: parents");
  ParamVector child(parent_i.size());
  for (std::size_t m = 0; m < child.size(); ++m) {
    child[m] = rng.uniform01() <= p_ij ? parent_i[m] : parent_j[m];
  }
  return child;
}

double mutation_rate(double base_rate, double prob_i, double prob_j) {
  return std::clamp(base_rate * (1.0 - prob_i - prob_j), 0.0, base_rate);
}

MutationOutcome mutate(ParamVector theta, double p_q, Prng& rng, MutationResample resample,
                       double sigma) {
  MutationOutcome out;
  for (double& entry : theta) {
    if (rng.uniform01() <= p_q && p_q > 0.0) {
      entry = resample == MutationResample::Uniform ? rng.uniform01() : sigma * rng.normal();
      ++out.mutated;
    }
  }
  out.theta = std::move(theta);
  return out;
}

std::vector<UnitModel> select_next_generation(std::vector<UnitModel> parents,
                                              std::vector<UnitModel> children,
                                              const Objective& objective, const Batch& validation,
                                              std::size_t workers) {
  if (parents.size() != children.size()) {
    throw InvalidArgument("select_next_generation: parents and children differ in count");
  }
  const std::size_t g = parents.size();
  std::vector<UnitModel> pool = std::move(parents);
  pool.insert(pool.end(), std::make_move_iterator(children.begin()),
              std::make_move_iterator(children.end()));
  score_population(pool, objective, validation, workers);
  std::sort(pool.begin(), pool.end(), [](const UnitModel& a, const UnitModel& b) {
    return ranks_before(a.fitness_loss, a.id, b.fitness_loss, b.id);
  });
  pool.resize(g);
  return pool;
}

bool should_stop(const GenerationReport& prev, const GenerationReport& curr, double lambda,
                 std::size_t k, std::size_t max_generations) {
  if (k >= max_generations) return true;
  return std::abs(prev.total_loss - curr.total_loss) <= lambda;
}

GadamSplit split_for_gadam(const GadamConfig& config, const Dataset* data,
                           std::uint64_t master_seed) {
  GadamSplit split;
  if (data == nullptr) return split;
  if (config.holdout_fraction == 0.0) {
    split.train = *data;
    split.holdout = *data;
    return split;
  }
  if (data->size() < 2) throw InvalidArgument("gadam: a holdout split needs at least 2 rows");
  Prng rng(gadam_stream_seed(master_seed, GadamStream::Split, 0, 0));
  const std::vector<std::size_t> order = shuffled_indices(data->size(), rng);
  const auto wanted = static_cast<std::size_t>(
      std::llround(config.holdout_fraction * static_cast<double>(data->size())));
  const std::size_t held = std::clamp<std::size_t>(wanted, 1, data->size() - 1);
  const std::span<const std::size_t> rows(order);
  split.holdout = data->subset(rows.first(held));
  split.train = data->subset(rows.subspan(held));
  return split;
}

double probe_loss(const Objective& objective, const GadamSplit& split, const ParamVector& theta) {
  if (split.holdout) return score(objective, theta, Batch::all(*split.holdout));
  return score(objective, theta, Batch{});
}

GadamResult run_gadam(const GadamConfig& config, const Objective& objective, const Dataset* data,
                      std::uint64_t master_seed) {
  config.validate();
  if (objective.needs_data() && data == nullptr) {
    throw InvalidArgument("gadam: " + objective.name() + " needs a dataset");
  }
  const GadamSplit split = split_for_gadam(config, data, master_seed);
  const std::size_t dim = objective.dim();
  const std::size_t g = config.population;

  const auto validation_batch = [&](std::size_t generation, std::size_t purpose,
                                    std::vector<std::size_t>& rows) {
    if (!split.holdout) return Batch{};
    rows = validation_rows(config, *split.holdout, master_seed, generation, purpose);
    return Batch(*split.holdout, rows);
  };

  GadamResult result;
  std::vector<UnitModel> population = init_population(config, dim, master_seed);
  std::size_t next_id = g;
  std::vector<double> probe(g);

  for (std::size_t k = 1;; ++k) {
    TrainedPopulation trained =
        train_generation(std::move(population), objective, split.train_data(), config,
                         master_seed, k);
    population = std::move(trained.models);
    result.gradient_evaluations += trained.gradient_evaluations;

    std::vector<std::size_t> fitness_rows;
    score_population(population, objective, validation_batch(k, 0, fitness_rows),
                     config.workers);

    GenerationReport report;
    report.index = k;
    for (const UnitModel& model : population) {
      report.ids.push_back(model.id);
      report.losses.push_back(model.fitness_loss);
    }
    std::vector<double> normalized;
    try {
      normalized = normalize_losses(report.losses);
      report.probabilities = fitness_probabilities(report.losses);
    } catch (const NumericError& error) {
      throw GadamFailure(std::string(error.what()) + " (generation " + std::to_string(k) + ")",
                         std::move(result.reports));
    }
    for (std::size_t i = 0; i < g; ++i) population[i].normalized_loss = normalized[i];

    Prng selection_rng(gadam_stream_seed(master_seed, GadamStream::Selection, k, 0));
    const auto pairs = select_parents(report.probabilities, selection_rng);

    std::vector<UnitModel> children(g);
    for (std::size_t c = 0; c < g; ++c) {
      const auto [i, j] = pairs[c];
      Prng rng(gadam_stream_seed(master_seed, GadamStream::Variation, k, c));
      const double p_ij =
          crossover_threshold(population[i].normalized_loss, population[j].normalized_loss);
      ParamVector child = crossover(population[i].theta, population[j].theta, p_ij, rng);
      const double p_q = mutation_rate(config.mutation_rate, report.probabilities[i],
                                       report.probabilities[j]);
      children[c].theta = mutate(std::move(child), p_q, rng, config.mutation_resample,
                                 config.init_sigma)
                              .theta;
      children[c].generation = k;
      children[c].id = next_id++;
    }
    // Each child reads two full parent vectors at the crossover barrier.
    result.comm_entries += g * 2 * dim;

    TrainedPopulation trained_children =
        train_generation(std::move(children), objective, split.train_data(), config,
                         master_seed, k);
    result.gradient_evaluations += trained_children.gradient_evaluations;

    std::vector<std::size_t> selection_rows;
    population = select_next_generation(std::move(population),
                                        std::move(trained_children.models), objective,
                                        validation_batch(k, 1, selection_rows), config.workers);

    parallel_for(g, config.workers,
                 [&](std::size_t i) { probe[i] = probe_loss(objective, split, population[i].theta); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < g; ++i) {
      if (ranks_before(probe[i], population[i].id, probe[best], population[best].id)) best = i;
    }
    report.best_id = population[best].id;
    report.probe_best_loss = probe[best];
    report.total_loss = 0.0;
    for (const UnitModel& model : population) report.total_loss += model.fitness_loss;
    report.comm_entries = result.comm_entries;
    report.gradient_evaluations = result.gradient_evaluations;

    result.best_theta = population[best].theta;
    result.best_probe_loss = probe[best];
    const bool stop = k >= config.max_generations ||
                      (!result.reports.empty() &&
                       should_stop(result.reports.back(), report, config.lambda, k,
                                   config.max_generations));
    result.reports.push_back(std::move(report));
    if (stop) break;
  }
  return result;
}

BaselineResult run_adam_baseline(const GadamConfig& config, const Objective& objective,
                                 const Dataset* data, std::uint64_t master_seed,
                                 std::size_t budget) {
  config.validate();
  const GadamSplit split = split_for_gadam(config, data, master_seed);
  BaselineResult out;
  out.theta = init_population(config, objective.dim(), master_seed).front().theta;
  if (budget > 0) {
    OptimizerConfig adam = config.adam;
    adam.kind = OptimizerKind::Adam;
    Prng rng(gadam_stream_seed(master_seed, GadamStream::Baseline, 0, 0));
    TrainOptions options;
    options.batch_size = config.batch_size;
    options.run_id = "adam_baseline";
    options.keep_best_iterate = config.keep_best_iterate;
    TrainResult result = train(objective, split.train_data(), adam, StopRule::iterations(budget),
                               out.theta, rng, options);
    out.theta = std::move(result.theta);
    out.trace = std::move(result.trace);
    out.gradient_evaluations = result.updates;
  }
  out.probe_loss = probe_loss(objective, split, out.theta);
  return out;
}

}  // namespace descentlab
