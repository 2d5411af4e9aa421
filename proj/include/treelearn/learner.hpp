#pragma once

#include <cstdint>
#include <string>

#include "treelearn/chow_liu.hpp"
#include "treelearn/correlation.hpp"
#include "treelearn/ising.hpp"

namespace treelearn {

/// Learns a model whose edge correlations are bounded below by a constant:
/// evolutionary distance estimate, tree metric reconstruction with edge
/// length bound log(20), then theta_e = exp(-d_e) clamped to [0, 1].
/// Vertices with no finite distance estimate to the rest are attached to
/// the root with theta 0, component by component.
TreeIsingModel learn_lwr_bdd_model(const CorrelationMatrix& mu_tilde, double eps);

/// Full learner for arbitrary sign patterns: runs learn_ferro_model on
/// |mu_tilde| with learn_lwr_bdd_model as the block subsolver, then restores
/// edge signs from the estimates. Warns (once per process, non-fatal) when
/// eps >= 1e-5.
TreeIsingModel learn_model(const CorrelationMatrix& mu_tilde, double eps);

struct LearnReport {
  long m = 0;
  double eps = 0.0;
  int k = 2;
  double k_factor = 8.0;            // k * 2^k
  double observed_c = 0.0;          // max |mu_hat - mu_tilde| / eps
  double loctv2_radius = 0.0;       // observed_c * eps
  double loctv_k_radius = 0.0;      // k_factor * loctv2_radius
  double runtime_ms = 0.0;
};

/// Sample pipeline: empirical correlations then learn_model. The report
/// records the certified locTV radii implied by the order-k conversion
/// factor k * 2^k.
std::pair<TreeIsingModel, LearnReport> learn_from_samples(
    const SampleMatrix& samples, double eps, int k);

/// Sign of the product of theta along the u-v path; 0 if any edge on the
/// path has weight 0.
int sign_of_path_product(const TreeIsingModel& model, int u, int v);

}  // namespace treelearn
