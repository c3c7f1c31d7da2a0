#pragma once

#include <memory>
#include <string>

#include "gaugelab/cli/scenario.hpp"

namespace gaugelab::cli {

/// Executes the experiments of one scenario, sharing expensive state (the
/// stationary basis) between them.
class ScenarioRunner {
 public:
  explicit ScenarioRunner(ScenarioConfig config);
  ~ScenarioRunner();
  ScenarioRunner(const ScenarioRunner&) = delete;
  ScenarioRunner& operator=(const ScenarioRunner&) = delete;

  /// Records of one experiment. Exceptions from the numerical modules are
  /// caught and reported as a failing record carrying the message.
  Report run(const std::string& experiment);

 private:
  struct State;
  ScenarioConfig cfg_;
  std::unique_ptr<State> state_;
};

}  // namespace gaugelab::cli
