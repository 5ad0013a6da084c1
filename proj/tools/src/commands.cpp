#include "descentlab_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "descentlab/csv.hpp"
#include "descentlab/gadam.hpp"
#include "descentlab/train.hpp"
#include "descentlab/worker_pool.hpp"
#include "descentlab_cli/run_spec.hpp"

namespace descentlab::cli {
namespace {

struct RunOutcome {
  std::string run_id;
  std::string optimizer;
  std::uint64_t seed = 0;
  std::filesystem::path trace_path;
  std::optional<TrainResult> result;
  double final_loss = 0.0;
  double wall_ms = 0.0;
  std::optional<std::string> failure;
};

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::optional<std::size_t> iterations_to(const std::vector<TraceRecord>& trace, double threshold) {
  for (const TraceRecord& row : trace) {
    if (row.loss <= threshold) return row.iteration;
  }
  return std::nullopt;
}

ParamVector initial_theta(const RunSpec& spec, std::size_t dim, std::uint64_t seed) {
  if (spec.theta0) return ParamVector(*spec.theta0);
  Prng rng = Prng::derive(seed, 0);
  return init_normal(dim, spec.init_sigma, rng);
}

struct Loaded {
  RunSpec spec;
  std::optional<Dataset> data;
  std::unique_ptr<Objective> objective;
  std::filesystem::path out_dir;
};

// Returns nullopt after reporting on `err`; `code` receives the exit code.
std::optional<Loaded> load(const CommandOptions& options, std::ostream& err, int& code) {
  Loaded loaded;
  try {
    loaded.spec = load_run_spec(options.spec_path);
    if (options.seed) loaded.spec.seeds = {*options.seed};
    if (options.workers) {
      loaded.spec.workers = *options.workers;
      if (loaded.spec.gadam) loaded.spec.gadam->workers = *options.workers;
    }
    loaded.data = build_dataset(loaded.spec);
    loaded.objective = build_objective(loaded.spec.objective, loaded.data ? &*loaded.data : nullptr);
    if (loaded.spec.theta0 && loaded.spec.theta0->size() != loaded.objective->dim()) {
      throw SpecError(options.spec_path.string(), 1,
                      "'theta0' does not match the objective dimension " +
                          std::to_string(loaded.objective->dim()));
    }
    loaded.out_dir = resolve_output_dir(options.out, loaded.spec);
    std::filesystem::create_directories(loaded.out_dir);
  } catch (const SpecError& error) {
    err << "invalid spec: " << error.what() << '\n';
    code = kExitInvalidSpec;
    return std::nullopt;
  } catch (const std::invalid_argument& error) {
    err << "invalid spec: " << options.spec_path.string() << ": " << error.what() << '\n';
    code = kExitInvalidSpec;
    return std::nullopt;
  } catch (const std::exception& error) {
    err << "error: " << error.what() << '\n';
    code = kExitIoError;
    return std::nullopt;
  }
  return loaded;
}

}  // namespace

int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  std::optional<Loaded> loaded = load(options, err, code);
  if (!loaded) return code;
  const RunSpec& spec = loaded->spec;
  if (spec.optimizers.empty()) {
    err << "invalid spec: " << options.spec_path.string() << ":1: 'optimizers' lists no optimizer\n";
    return kExitInvalidSpec;
  }
  const Dataset* data = loaded->data ? &*loaded->data : nullptr;
  const Objective& objective = *loaded->objective;

  std::vector<RunOutcome> runs;
  for (std::size_t i = 0; i < spec.optimizers.size(); ++i) {
    for (const std::uint64_t seed : spec.seeds) {
      RunOutcome run;
      run.optimizer = std::string(to_string(spec.optimizers[i].kind));
      run.seed = seed;
      run.run_id = "r" + std::to_string(i) + "_" + run.optimizer + "_seed" + std::to_string(seed);
      run.trace_path = loaded->out_dir / ("trace_" + std::to_string(i) + "_" + run.optimizer +
                                          "_seed" + std::to_string(seed) + ".csv");
      runs.push_back(std::move(run));
    }
  }

  const std::size_t seeds = spec.seeds.size();
  parallel_for(runs.size(), spec.workers, [&](std::size_t r) {
    RunOutcome& run = runs[r];
    const OptimizerConfig& config = spec.optimizers[r / seeds];
    Prng rng = Prng::derive(run.seed, 1);
    TrainOptions train_options;
    train_options.batch_size = spec.batch_size;
    train_options.run_id = run.run_id;
    const auto started = std::chrono::steady_clock::now();
    try {
      TrainResult result = train(objective, data, config, spec.stop,
                                 initial_theta(spec, objective.dim(), run.seed), rng, train_options);
      run.final_loss = full_loss(objective, data, result.theta);
      write_trace_csv(run.trace_path, result.trace);
      run.result = std::move(result);
    } catch (const TrainingFailure& failure) {
      write_trace_csv(run.trace_path, failure.partial_trace());
      run.failure = failure.what();
    } catch (const NumericError& failure) {
      run.failure = failure.what();
    }
    run.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
  });

  std::ofstream summary = open_output(loaded->out_dir / "summary.csv");
  summary << "run_id,optimizer,seed,final_loss,iterations_to_threshold,updates,converged,wall_ms\n";
  int status = kExitOk;
  for (const RunOutcome& run : runs) {
    if (run.failure) {
      err << "numeric failure in run " << run.run_id << ": " << *run.failure << '\n';
      status = kExitNumericFailure;
      continue;
    }
    const TrainResult& result = *run.result;
    const auto hit = iterations_to(result.trace, spec.loss_threshold);
    summary << run.run_id << ',' << run.optimizer << ',' << run.seed << ','
            << format_double(run.final_loss) << ',' << (hit ? std::to_string(*hit) : "") << ','
            << result.updates << ',' << (result.converged ? 1 : 0) << ','
            << format_double(run.wall_ms) << '\n';
    out << std::left << std::setw(32) << run.run_id << " final_loss=" << format_double(run.final_loss)
        << " updates=" << result.updates << '\n';
  }
  out << "wrote " << runs.size() << " trace(s) and summary.csv to " << loaded->out_dir.string()
      << '\n';
  return status;
}

int cmd_gadam(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  std::optional<Loaded> loaded = load(options, err, code);
  if (!loaded) return code;
  const RunSpec& spec = loaded->spec;
  if (!spec.gadam) {
    err << "invalid spec: " << options.spec_path.string() << ":1: spec has no 'gadam' section\n";
    return kExitInvalidSpec;
  }
  const GadamConfig& config = *spec.gadam;
  const Dataset* data = loaded->data ? &*loaded->data : nullptr;
  const Objective& objective = *loaded->objective;
  const std::filesystem::path& dir = loaded->out_dir;

  std::ofstream comparison = open_output(dir / "comparison.csv");
  comparison << "seed,gadam_best_loss,adam_final_loss,gradient_evaluations,generations,"
                "comm_entries,gadam_wins\n";

  for (const std::uint64_t seed : spec.seeds) {
    const std::string suffix = "_seed" + std::to_string(seed);
    const std::string run_id = "gadam" + suffix;
    const auto started = std::chrono::steady_clock::now();

    GadamResult result;
    std::vector<GenerationReport> reports;
    try {
      result = run_gadam(config, objective, data, seed);
      reports = result.reports;
    } catch (const GadamFailure& failure) {
      reports = failure.partial_reports();
      err << "numeric failure in run " << run_id << ": " << failure.what() << '\n';
      code = kExitNumericFailure;
    }

    std::ofstream jsonl = open_output(dir / ("gadam_generations" + suffix + ".jsonl"));
    std::vector<TraceRecord> trace;
    const GadamSplit split = split_for_gadam(config, data, seed);
    for (const GenerationReport& report : reports) {
      nlohmann::ordered_json line;
      line["generation"] = report.index;
      line["ids"] = report.ids;
      line["losses"] = report.losses;
      line["probabilities"] = report.probabilities;
      line["best_id"] = report.best_id;
      line["total_loss"] = report.total_loss;
      line["probe_best_loss"] = report.probe_best_loss;
      line["comm_entries"] = report.comm_entries;
      line["gradient_evaluations"] = report.gradient_evaluations;
      jsonl << line.dump() << '\n';
      trace.push_back(TraceRecord{run_id, "Gadam", report.index, report.gradient_evaluations,
                                  report.best_id, report.probe_best_loss, 0.0,
                                  std::chrono::duration<double, std::milli>(
                                      std::chrono::steady_clock::now() - started)
                                      .count()});
    }
    if (!result.best_theta.empty() && !trace.empty()) {
      const Batch probe = split.holdout ? Batch::all(*split.holdout) : Batch{};
      trace.back().grad_norm = norm(objective.evaluate(result.best_theta, probe).grad);
    }
    write_trace_csv(dir / ("gadam_trace" + suffix + ".csv"), trace);
    if (code == kExitNumericFailure) return code;

    std::ofstream theta_file = open_output(dir / ("best_theta" + suffix + ".csv"));
    theta_file << "index,value\n";
    for (std::size_t i = 0; i < result.best_theta.size(); ++i) {
      theta_file << i << ',' << format_double(result.best_theta[i]) << '\n';
    }

    BaselineResult baseline;
    try {
      baseline = run_adam_baseline(config, objective, data, seed, result.gradient_evaluations);
    } catch (const TrainingFailure& failure) {
      write_trace_csv(dir / ("adam_baseline_trace" + suffix + ".csv"), failure.partial_trace());
      err << "numeric failure in run adam_baseline" << suffix << ": " << failure.what() << '\n';
      return kExitNumericFailure;
    }
    write_trace_csv(dir / ("adam_baseline_trace" + suffix + ".csv"), baseline.trace);

    const bool gadam_wins = result.best_probe_loss <= baseline.probe_loss;
    comparison << seed << ',' << format_double(result.best_probe_loss) << ','
               << format_double(baseline.probe_loss) << ',' << result.gradient_evaluations << ','
               << result.reports.size() << ',' << result.comm_entries << ','
               << (gadam_wins ? 1 : 0) << '\n';
    out << "seed " << seed << ": gadam best " << format_double(result.best_probe_loss)
        << " vs adam " << format_double(baseline.probe_loss) << " at "
        << result.gradient_evaluations << " gradient evaluations; generations "
        << result.reports.size() << ", comm_entries " << result.comm_entries << " (= "
        << result.reports.size() << " x " << config.population << " x 2 x " << objective.dim()
        << ")\n";
  }
  return kExitOk;
}

int cmd_verify(std::ostream& out, const VerifyHooks& hooks) {
  const LossFunction loss_fn =
      hooks.loss ? hooks.loss
                 : [](LossKind kind, std::span<const double> y_hat, std::span<const double> y) {
                     return loss(kind, y_hat, y);
                   };

  struct Row {
    std::string name;
    double expected;
    double computed;
    double tolerance;
  };
  std::vector<Row> rows;

  const std::vector<std::vector<double>> predictions = {
      {0.49, 0.43, 0.08}, {0.45, 0.53, 0.02}, {0.21, 0.15, 0.64}};
  const std::vector<std::vector<double>> labels = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const double hinge_expected[] = {1.53, 1.41, 1.08};
  const double ce_expected[] = {0.713, 0.635, 0.446};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto label = std::to_string(i + 1);
    const auto compute = [&](LossKind kind) {
      try {
        return loss_fn(kind, predictions[i], labels[i]);
      } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    rows.push_back({"hinge instance " + label, hinge_expected[i], compute(LossKind::Hinge), 1e-9});
    rows.push_back(
        {"cross entropy instance " + label, ce_expected[i], compute(LossKind::CrossEntropy), 5e-4});
  }

  // Momentum unrolling: after k steps Δv = Σ_t ρ^t (1 − ρ) g^(k−1−t).
  double worst = 0.0;
  Prng rng(20240611);
  const double rhos[] = {0.5, 0.9, 0.99};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng.uniform_index(50);
    const std::size_t d = 1 + rng.uniform_index(20);
    const double rho = rhos[rng.uniform_index(3)];
    std::vector<ParamVector> grads;
    for (std::size_t t = 0; t < k; ++t) grads.push_back(init_normal(d, 1.0, rng));

    OptimizerConfig config;
    config.kind = OptimizerKind::Momentum;
    config.rho = rho;
    Optimizer stepper(config, d);
    ParamVector theta(d, 0.0);
    for (std::size_t t = 0; t < k; ++t) {
      theta = stepper.step(theta, [&](const ParamVector&) { return Evaluation{0.0, grads[t]}; }).theta;
    }
    ParamVector closed(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t t = 0; t < k; ++t) {
        closed[i] += std::pow(rho, static_cast<double>(t)) * (1.0 - rho) * grads[k - 1 - t][i];
      }
    }
    worst = std::max(worst, norm(sub(stepper.state().delta_v, closed)) / norm(closed));
  }
  rows.push_back({"momentum unrolling (max rel. error)", 0.0, worst, 1e-12});

  bool all_pass = true;
  out << std::left << std::setw(38) << "check" << std::setw(14) << "expected" << std::setw(24)
      << "computed" << std::setw(10) << "tolerance" << "status\n";
  for (const Row& row : rows) {
    const bool pass = std::abs(row.computed - row.expected) <= row.tolerance;
    all_pass = all_pass && pass;
    char expected[32];
    char computed[32];
    char tolerance[32];
    std::snprintf(expected, sizeof expected, "%.6g", row.expected);
    std::snprintf(computed, sizeof computed, "%.17g", row.computed);
    std::snprintf(tolerance, sizeof tolerance, "%.0e", row.tolerance);
    out << std::setw(38) << row.name << std::setw(14) << expected << std::setw(24) << computed
        << std::setw(10) << tolerance << (pass ? "PASS" : "FAIL") << '\n';
  }
  out << (all_pass ? "all checks passed" : "MISMATCH: see FAIL rows above") << '\n';
  return all_pass ? kExitOk : kExitVerifyMismatch;
}

}  // namespace descentlab::cli
