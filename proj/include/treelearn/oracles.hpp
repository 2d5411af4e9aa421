#pragma once

#include <utility>
#include <vector>

#include "treelearn/correlation.hpp"
#include "treelearn/ising.hpp"
#include "treelearn/metric.hpp"

namespace treelearn {

// Brute-force references for validating the fast paths at small scale.
// Compiled into test builds and the CLI's --verify mode only; never on the
// hot path.

/// Full joint over all 2^n states, normalized. State index bit u gives the
/// spin of vertex u (+1 when set). Requires n <= 15.
std::vector<double> brute_force_joint(const TreeIsingModel& model);

/// Minimax path closure: e(u,v) = min over u-v paths of the maximum edge,
/// via cubic dynamic closure. Requires finite entries and n <= 64.
DistanceEstimate minimax_path_closure(const DistanceEstimate& a);

struct Loctv2Certificate {
  double value;
  int u, v;  // maximizing pair
};

/// loctv2 together with the argmax pair.
Loctv2Certificate exhaustive_loctv2_certificate(const CorrelationMatrix& p,
                                                const CorrelationMatrix& q);

}  // namespace treelearn
