#pragma once

#include <cstdint>
#include <vector>

#include "treelearn/correlation.hpp"
#include "treelearn/ising.hpp"
#include "treelearn/rng.hpp"

namespace treelearn {

// Synthetic instances used by the experiments and tests.

/// Correlations of the two-chain distribution on variables
/// X_1..X_n, Y_1..Y_n (indices 0..n-1 and n..2n-1):
///   E[X_i X_j] = E[Y_i Y_j] = exp(-delta |i-j|)
///   E[X_i Y_j] = exp(-delta |i-j| - 2 delta).
/// Requires 0 < delta < 0.1.
CorrelationMatrix gen_cl_failure_correlations(double delta, int n);

/// The nearby tree model: the path X_1, Y_1, X_2, Y_2, ... with
/// theta(X_i, Y_i) = 1 and theta(Y_i, X_{i+1}) = exp(-delta).
TreeIsingModel cl_failure_tree_model(double delta, int n);

/// 3x3 correlations over (X, Y1, Y2) with E[Y1 Y2] = 1/4 and
/// E[X Y1] = E[X Y2] = delta. Requires 0 < delta <= 1/8.
CorrelationMatrix gen_latent_counterexample(double delta);

/// Uniform random labeled tree (Prufer sequence).
TreeTopology random_tree(int n, Rng& rng);

/// Random model on a random tree; theta magnitudes drawn uniformly from
/// `magnitudes`, signs random when with_signs is set.
TreeIsingModel random_model(int n, const std::vector<double>& magnitudes,
                            bool with_signs, Rng& rng);

/// Random model with theta magnitudes uniform in [lo, hi].
TreeIsingModel random_model_uniform(int n, double lo, double hi,
                                    bool with_signs, Rng& rng);

}  // namespace treelearn
