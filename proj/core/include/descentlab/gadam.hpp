#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "descentlab/dataset.hpp"
#include "descentlab/error.hpp"
#include "descentlab/objective.hpp"
#include "descentlab/optimizer.hpp"
#include "descentlab/param_vector.hpp"
#include "descentlab/rng.hpp"
#include "descentlab/stop_rule.hpp"
#include "descentlab/trace.hpp"

namespace descentlab {

/// One population member.
struct UnitModel {
  ParamVector theta;
  double fitness_loss = 0.0;
  double normalized_loss = 0.0;
  std::size_t generation = 0;  // generation the model was created in
  std::size_t id = 0;          // unique within a run
};

enum class MutationResample { Uniform, Normal };

std::string_view to_string(MutationResample mode) noexcept;
MutationResample parse_mutation_resample(std::string_view name);

struct GadamConfig {
  std::size_t population = 8;        // g
  std::size_t max_generations = 10;  // K
  std::size_t epochs_per_generation = 1;
  double mutation_rate = 0.01;       // p
  double lambda = 1e-6;              // λ
  OptimizerConfig adam{OptimizerKind::Adam};
  /// Optional convergence rule for each model's Adam run; its cap is further
  /// limited by the epoch budget.
  std::optional<StopRule> adam_stop;
  std::size_t batch_size = 32;
  std::size_t validation_batch_size = 64;
  std::size_t workers = 1;
  double init_sigma = 1.0;
  /// Share of the dataset held out for validation and the probe. 0 scores on
  /// the training rows.
  double holdout_fraction = 0.2;
  MutationResample mutation_resample = MutationResample::Uniform;
  /// Each Adam run returns its lowest-loss iterate rather than the last one.
  bool keep_best_iterate = true;

  /// Throws InvalidArgument. Requires g >= 2, K >= 1, λ > 0, p in [0, 1], and
  /// an Adam inner optimizer.
  void validate() const;
};

struct GenerationReport {
  std::size_t index = 0;              // 1-based generation number
  std::vector<std::size_t> ids;       // population scored for fitness
  std::vector<double> losses;         // fitness losses of `ids`
  std::vector<double> probabilities;  // selection probabilities of `ids`
  std::size_t best_id = 0;            // best survivor on the probe
  double total_loss = 0.0;            // Σ L over the survivors
  double probe_best_loss = 0.0;
  std::size_t comm_entries = 0;       // cumulative
  std::size_t gradient_evaluations = 0;  // cumulative
};

/// Unrecoverable generation (every model failed). Carries the reports of the
/// generations completed before it.
class GadamFailure : public NumericError {
 public:
  GadamFailure(const std::string& what, std::vector<GenerationReport> partial)
      : NumericError(what), partial_(std::move(partial)) {}
  const std::vector<GenerationReport>& partial_reports() const noexcept { return partial_; }

 private:
  std::vector<GenerationReport> partial_;
};

/// Purposes of the derived random streams. Every stream is a function of the
/// master seed and (purpose, generation, model id), never of thread schedule.
enum class GadamStream : std::uint64_t {
  Init = 1,
  Train = 2,
  Selection = 3,
  Variation = 4,
  Validation = 5,
  Split = 6,
  Baseline = 7,
};

std::uint64_t gadam_stream_seed(std::uint64_t master_seed, GadamStream purpose,
                                std::size_t generation, std::size_t id);

/// g models with N(0, σ²) entries, model i drawn from its own Init stream.
std::vector<UnitModel> init_population(const GadamConfig& config, std::size_t dim,
                                       std::uint64_t master_seed);

struct TrainedPopulation {
  std::vector<UnitModel> models;
  std::size_t gradient_evaluations = 0;
  std::size_t failures = 0;
};

/// Number of Adam updates in one generation's budget.
std::size_t generation_update_budget(const GadamConfig& config, const Dataset* train_data);

/// Trains every model with a fresh Adam for the epoch budget, model `id`
/// drawing batches from its Train stream for `generation`. A model whose run
/// fails numerically keeps its parameters and gets an infinite fitness loss.
/// Does not check the population size.
TrainedPopulation train_generation(std::vector<UnitModel> population, const Objective& objective,
                                   const Dataset* train_data, const GadamConfig& config,
                                   std::uint64_t master_seed, std::size_t generation);

/// Min-max normalization to [0, 1]; a constant population maps to 0.5 and
/// non-finite losses map to 1. Throws NumericError if no loss is finite.
std::vector<double> normalize_losses(const std::vector<double>& losses);

/// Softmax of the negated normalized losses.
std::vector<double> fitness_probabilities(const std::vector<double>& losses);

/// g = probs.size() ordered pairs from 2g categorical draws with replacement.
std::vector<std::pair<std::size_t, std::size_t>> select_parents(const std::vector<double>& probs,
                                                                Prng& rng);

/// e^{-L̂i} / (e^{-L̂i} + e^{-L̂j}).
double crossover_threshold(double normalized_i, double normalized_j);

/// Per entry, r <= p_ij takes parent i's value, otherwise parent j's.
ParamVector crossover(const ParamVector& parent_i, const ParamVector& parent_j, double p_ij,
                      Prng& rng);

/// p · (1 − P_i − P_j), clamped to [0, p].
double mutation_rate(double base_rate, double prob_i, double prob_j);

struct MutationOutcome {
  ParamVector theta;
  std::size_t mutated = 0;
};

/// Per entry, one draw r: r <= p_q replaces the entry with a fresh sample
/// (uniform on [0, 1), or N(0, σ²) with MutationResample::Normal).
MutationOutcome mutate(ParamVector theta, double p_q, Prng& rng,
                       MutationResample resample = MutationResample::Uniform,
                       double sigma = 1.0);

/// Scores parents and children on one shared batch and keeps the g best by
/// (loss, id). Survivors carry their new score as fitness loss.
std::vector<UnitModel> select_next_generation(std::vector<UnitModel> parents,
                                              std::vector<UnitModel> children,
                                              const Objective& objective, const Batch& validation,
                                              std::size_t workers = 1);

/// True iff k >= K or |Σ L(prev) − Σ L(curr)| <= λ.
bool should_stop(const GenerationReport& prev, const GenerationReport& curr, double lambda,
                 std::size_t k, std::size_t max_generations);

/// Training rows and held-out rows. Without data both are empty; with
/// holdout_fraction 0 the holdout is the training set itself.
struct GadamSplit {
  std::optional<Dataset> train;
  std::optional<Dataset> holdout;

  const Dataset* train_data() const noexcept { return train ? &*train : nullptr; }
  const Dataset* holdout_data() const noexcept { return holdout ? &*holdout : nullptr; }
};

GadamSplit split_for_gadam(const GadamConfig& config, const Dataset* data,
                           std::uint64_t master_seed);

/// Loss on the fixed probe: the whole holdout, or the exact analytic value.
double probe_loss(const Objective& objective, const GadamSplit& split, const ParamVector& theta);

struct GadamResult {
  ParamVector best_theta;
  double best_probe_loss = 0.0;
  std::vector<GenerationReport> reports;
  std::size_t comm_entries = 0;
  std::size_t gradient_evaluations = 0;
};

/// Full evolutionary loop. With data, a holdout split (drawn from the Split
/// stream) supplies per-generation validation batches and the fixed probe;
/// analytic objectives are scored exactly.
GadamResult run_gadam(const GadamConfig& config, const Objective& objective, const Dataset* data,
                      std::uint64_t master_seed);

struct BaselineResult {
  ParamVector theta;
  double probe_loss = 0.0;
  std::vector<TraceRecord> trace;
  std::size_t gradient_evaluations = 0;
};

/// A single Adam run with `budget` updates, started from model 0 of the
/// initial population and trained on the same split, using the same
/// keep-best rule as the population. The matched-budget comparison point for
/// run_gadam.
BaselineResult run_adam_baseline(const GadamConfig& config, const Objective& objective,
                                 const Dataset* data, std::uint64_t master_seed,
                                 std::size_t budget);

}  // namespace descentlab
