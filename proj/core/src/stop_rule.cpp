#include "descentlab/stop_rule.hpp"

#include <cmath>
#include <string>

#include "descentlab/error.hpp"

namespace descentlab {

StopRule StopRule::loss_delta(double threshold, std::size_t cap) {
  return StopRule{Mode::LossDelta, threshold, cap};
}

StopRule StopRule::param_delta(double threshold, std::size_t cap) {
  return StopRule{Mode::ParamDelta, threshold, cap};
}

StopRule StopRule::iterations(std::size_t count) { return StopRule{Mode::MaxIters, 1.0, count}; }

void StopRule::validate() const {
  if (max_iters == 0) throw InvalidArgument("stop rule: iteration cap must be >= 1");
  if (!(threshold > 0.0)) throw InvalidArgument("stop rule: threshold must be > 0");
}

std::string_view to_string(StopRule::Mode mode) noexcept {
  switch (mode) {
    case StopRule::Mode::LossDelta: return "loss_delta";
    case StopRule::Mode::ParamDelta: return "param_delta";
    case StopRule::Mode::MaxIters: return "max_iters";
  }
  return "unknown";
}

StopRule::Mode parse_stop_mode(std::string_view name) {
  if (name == "loss_delta") return StopRule::Mode::LossDelta;
  if (name == "param_delta") return StopRule::Mode::ParamDelta;
  if (name == "max_iters") return StopRule::Mode::MaxIters;
  throw InvalidArgument("unknown stop mode '" + std::string(name) + "'");
}

bool check_stop(const StopRule& rule, const StopHistory& history) {
  if (history.updates >= rule.max_iters) return true;
  switch (rule.mode) {
    case StopRule::Mode::MaxIters:
      return false;
    case StopRule::Mode::LossDelta: {
      const auto& l = history.losses;
      if (l.size() < 2) return false;
      return std::abs(l[l.size() - 1] - l[l.size() - 2]) < rule.threshold;
    }
    case StopRule::Mode::ParamDelta:
      return history.updates > 0 && history.param_delta < rule.threshold;
  }
  return false;
}

}  // namespace descentlab
