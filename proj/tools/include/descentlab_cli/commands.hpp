#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>

#include "descentlab/losses.hpp"

namespace descentlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyMismatch = 1;
inline constexpr int kExitInvalidSpec = 2;
inline constexpr int kExitNumericFailure = 3;
inline constexpr int kExitIoError = 4;

struct CommandOptions {
  std::filesystem::path spec_path;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
};

/// Every optimizer in the spec on every seed: one trace CSV per run plus
/// summary.csv in the output directory.
int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Gadam and a single Adam run with the same number of gradient evaluations,
/// per seed: both traces, the generation log (JSON lines), the best θ, and a
/// comparison line.
int cmd_gadam(const CommandOptions& options, std::ostream& out, std::ostream& err);

using LossFunction =
    std::function<double(LossKind, std::span<const double>, std::span<const double>)>;

/// Replaceable pieces for exercising the failure path of `verify`.
struct VerifyHooks {
  LossFunction loss;
};

/// Recomputes the worked hinge and cross-entropy values and the momentum
/// unrolling identity, printing one row per check.
int cmd_verify(std::ostream& out, const VerifyHooks& hooks = {});

}  // namespace descentlab::cli
