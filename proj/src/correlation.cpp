#include "treelearn/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treelearn/rng.hpp"

namespace treelearn {

CorrelationMatrix::CorrelationMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("correlation matrix needs n >= 1");
  a_.assign(static_cast<size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u) a_[static_cast<size_t>(u) * n + u] = 1.0;
}

CorrelationMatrix::CorrelationMatrix(int n, std::vector<double> entries)
    : n_(n), a_(std::move(entries)) {
  if (n < 1) throw std::invalid_argument("correlation matrix needs n >= 1");
  if (a_.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("correlation matrix size mismatch");
  for (int u = 0; u < n; ++u) {
    a_[static_cast<size_t>(u) * n + u] = 1.0;
    for (int v = u + 1; v < n; ++v) {
      double x = a_[static_cast<size_t>(u) * n + v];
      double y = a_[static_cast<size_t>(v) * n + u];
      if (x != y) throw std::invalid_argument("correlation matrix not symmetric");
      if (std::isnan(x) || x < -1.0 || x > 1.0)
        throw std::invalid_argument("correlation entry outside [-1, 1]");
    }
  }
}

void CorrelationMatrix::set(int u, int v, double value) {
  if (u == v) return;  // diagonal is pinned at 1
  if (std::isnan(value) || value < -1.0 || value > 1.0)
    throw std::invalid_argument("correlation entry outside [-1, 1]");
  a_[static_cast<size_t>(u) * n_ + v] = value;
  a_[static_cast<size_t>(v) * n_ + u] = value;
}

CorrelationMatrix CorrelationMatrix::abs() const {
  std::vector<double> b(a_.size());
  for (size_t i = 0; i < a_.size(); ++i) b[i] = std::fabs(a_[i]);
  return CorrelationMatrix(n_, std::move(b));
}

CorrelationMatrix CorrelationMatrix::submatrix(const std::vector<int>& vertices) const {
  int k = static_cast<int>(vertices.size());
  CorrelationMatrix out(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) out.set(i, j, (*this)(vertices[i], vertices[j]));
  return out;
}

SampleMatrix::SampleMatrix(int m, int n, std::vector<std::int8_t> values)
    : m_(m), n_(n), v_(std::move(values)) {
  if (m < 1 || n < 1) throw std::invalid_argument("sample matrix needs m, n >= 1");
  if (v_.size() != static_cast<size_t>(m) * n)
    throw std::invalid_argument("sample matrix size mismatch");
  for (auto x : v_)
    if (x != 1 && x != -1) throw std::invalid_argument("sample entries must be +-1");
}

double loctv2(const CorrelationMatrix& p, const CorrelationMatrix& q) {
  if (p.size() != q.size()) throw std::invalid_argument("loctv2 dimension mismatch");
  double worst = 0.0;
  for (int u = 0; u < p.size(); ++u)
    for (int v = u + 1; v < p.size(); ++v)
      worst = std::max(worst, std::fabs(p(u, v) - q(u, v)));
  return 0.5 * worst;
}

CorrelationMatrix empirical_correlations(const SampleMatrix& samples) {
  int n = samples.vertex_count();
  int m = samples.sample_count();
  CorrelationMatrix out(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      long s = 0;
      for (int i = 0; i < m; ++i)
        s += static_cast<int>(samples(i, u)) * static_cast<int>(samples(i, v));
      out.set(u, v, static_cast<double>(s) / m);
    }
  }
  return out;
}

CorrelationMatrix perturb(const CorrelationMatrix& mu, double eps,
                          std::uint64_t seed, PerturbMode mode) {
  if (eps < 0.0) throw std::invalid_argument("perturb needs eps >= 0");
  int n = mu.size();
  Rng rng(seed);
  CorrelationMatrix out(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double x = mu(u, v);
      double dir;
      switch (mode) {
        case PerturbMode::kRandomSign:
          dir = rng.sign();
          break;
        case PerturbMode::kTowardZero:
          dir = x > 0.0 ? -1.0 : (x < 0.0 ? 1.0 : -1.0);
          break;
        case PerturbMode::kAwayFromZero:
        default:
          dir = x >= 0.0 ? 1.0 : -1.0;
          break;
      }
      out.set(u, v, std::clamp(x + dir * eps, -1.0, 1.0));
    }
  }
  return out;
}

}  // namespace treelearn
