#pragma once

#include <cstdint>
#include <vector>

namespace treelearn {

/// Dense symmetric matrix of pairwise correlations. The diagonal is
/// normatively 1 and is overwritten on construction; off-diagonal entries
/// must lie in [-1, 1]. Exact +-1 entries are allowed.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(int n);  // identity correlations (diag 1, rest 0)
  CorrelationMatrix(int n, std::vector<double> entries);  // row-major n*n

  int size() const { return n_; }
  double operator()(int u, int v) const { return a_[static_cast<size_t>(u) * n_ + v]; }
  void set(int u, int v, double value);  // symmetric assignment

  CorrelationMatrix abs() const;
  CorrelationMatrix submatrix(const std::vector<int>& vertices) const;
  const std::vector<double>& data() const { return a_; }

 private:
  int n_;
  std::vector<double> a_;
};

/// m samples of n spins, entries in {-1, +1}.
class SampleMatrix {
 public:
  SampleMatrix(int m, int n, std::vector<std::int8_t> values);

  int sample_count() const { return m_; }
  int vertex_count() const { return n_; }
  std::int8_t operator()(int i, int u) const { return v_[static_cast<size_t>(i) * n_ + u]; }

 private:
  int m_, n_;
  std::vector<std::int8_t> v_;
};

/// Half the largest absolute entrywise difference of two correlation
/// matrices; equals the largest total variation over pairs for unbiased
/// binary models. Throws on dimension mismatch.
double loctv2(const CorrelationMatrix& p, const CorrelationMatrix& q);

/// Empirical pairwise correlations (1/m) sum_i x_iu x_iv, diagonal forced
/// to 1. Entries can be exactly +-1; they are not clamped away.
CorrelationMatrix empirical_correlations(const SampleMatrix& samples);

enum class PerturbMode { kRandomSign, kTowardZero, kAwayFromZero };

/// Moves every off-diagonal entry by exactly eps in the given direction and
/// clamps to [-1, 1]. Deterministic in (seed) for kRandomSign.
CorrelationMatrix perturb(const CorrelationMatrix& mu, double eps,
                          std::uint64_t seed, PerturbMode mode);

}  // namespace treelearn
