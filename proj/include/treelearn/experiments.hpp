#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "treelearn/correlation.hpp"

namespace treelearn {

/// Raised when a --verify oracle cross-check fails; the CLI maps it to
/// exit code 3.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { kFailure, kStructure, kScaling, kLatent };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kFailure;
  double delta = 0.01;
  int n = 100;
  long m = 1000;
  double alpha = 0.2;
  double beta = 0.2;
  std::vector<double> eps_grid;  // descending
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out_dir;
  bool verify = false;

  static ExperimentConfig from_json(const nlohmann::json& j);
  void validate() const;  // throws std::invalid_argument
};

/// Fits (a) the max-weight spanning tree with theta_e = mu_e on its edges
/// and (b) the full learner with eps = 2*delta against the two-chain
/// correlations, and reports exact loctv2 of each plus the explicit
/// far-pair certificate for (a).
nlohmann::json run_failure_experiment(const ExperimentConfig& cfg);

/// Per trial: random tree with theta magnitudes in [alpha, 1-beta] and
/// random signs, m samples, learn, compare topology. When n <= 12 also
/// evaluates exact loctv3 against the truth.
nlohmann::json run_structure_experiment(const ExperimentConfig& cfg);

/// For each eps in the grid: random mixed-strength trees, adversarial
/// perturbation, learning, and the max-correlation-error/eps ratio;
/// also the spanning-tree baseline on the two-chain family at cfg.delta.
/// Returns the report; the plot-ready CSV is in report["csv"].
nlohmann::json run_scaling_experiment(const ExperimentConfig& cfg);

/// Learner behavior on the 3-variable latent-node counterexample.
nlohmann::json run_latent_experiment(const ExperimentConfig& cfg);

nlohmann::json run_experiment(const ExperimentConfig& cfg);

/// Structural check of a report against the documented schema.
bool validate_report(const nlohmann::json& report, std::string* error = nullptr);

}  // namespace treelearn
