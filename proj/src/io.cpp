#include "treelearn/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "treelearn/metric.hpp"

namespace treelearn {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write " + path);
  return f;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  auto f = open_in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      size_t a = cell.find_first_not_of(" \t\r");
      size_t b = cell.find_last_not_of(" \t\r");
      row.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

nlohmann::json model_to_json(const TreeIsingModel& model) {
  nlohmann::json edges = nlohmann::json::array();
  const auto& e = model.topology().edges();
  for (size_t i = 0; i < e.size(); ++i)
    edges.push_back({e[i].first, e[i].second, model.theta_of(static_cast<int>(i))});
  return {{"n", model.vertex_count()}, {"edges", edges}};
}

TreeIsingModel model_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  std::vector<double> theta;
  for (const auto& e : j.at("edges")) {
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    theta.push_back(e.at(2).get<double>());
  }
  return TreeIsingModel(TreeTopology(n, std::move(edges)), std::move(theta));
}

void write_model(const TreeIsingModel& model, const std::string& path) {
  write_json(model_to_json(model), path);
}

TreeIsingModel read_model(const std::string& path) {
  return model_from_json(read_json(path));
}

void write_correlations(const CorrelationMatrix& mu, const std::string& path) {
  auto f = open_out(path);
  f << std::setprecision(17);
  for (int u = 0; u < mu.size(); ++u) {
    for (int v = 0; v < mu.size(); ++v) f << (v ? "," : "") << mu(u, v);
    f << "\n";
  }
}

CorrelationMatrix read_correlations(const std::string& path) {
  auto rows = read_csv(path);
  int n = static_cast<int>(rows.size());
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(rows[u].size()) != n)
      throw std::invalid_argument("correlation csv is not square");
    for (int v = 0; v < n; ++v) a[static_cast<size_t>(u) * n + v] = std::stod(rows[u][v]);
  }
  return CorrelationMatrix(n, std::move(a));
}

void write_samples(const SampleMatrix& samples, const std::string& path) {
  auto f = open_out(path);
  for (int i = 0; i < samples.sample_count(); ++i) {
    for (int u = 0; u < samples.vertex_count(); ++u)
      f << (u ? "," : "") << static_cast<int>(samples(i, u));
    f << "\n";
  }
}

SampleMatrix read_samples(const std::string& path) {
  auto rows = read_csv(path);
  int m = static_cast<int>(rows.size());
  if (m == 0) throw std::invalid_argument("samples csv is empty");
  int n = static_cast<int>(rows[0].size());
  std::vector<std::int8_t> v(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("samples csv is ragged");
    for (int u = 0; u < n; ++u)
      v[static_cast<size_t>(i) * n + u] = static_cast<std::int8_t>(std::stoi(rows[i][u]));
  }
  return SampleMatrix(m, n, std::move(v));
}

void write_distances(const DistanceEstimate& d, const std::string& path) {
  auto f = open_out(path);
  f << std::setprecision(17);
  for (int u = 0; u < d.size(); ++u) {
    for (int v = 0; v < d.size(); ++v) {
      if (v) f << ",";
      if (d(u, v) == kInf)
        f << "inf";
      else
        f << d(u, v);
    }
    f << "\n";
  }
}

DistanceEstimate read_distances(const std::string& path) {
  auto rows = read_csv(path);
  int n = static_cast<int>(rows.size());
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(rows[u].size()) != n)
      throw std::invalid_argument("distance csv is not square");
    for (int v = 0; v < n; ++v) {
      const std::string& cell = rows[u][v];
      a[static_cast<size_t>(u) * n + v] =
          (cell == "inf" || cell == "+inf" || cell == "Inf") ? kInf : std::stod(cell);
    }
  }
  return DistanceEstimate(n, std::move(a));
}

nlohmann::json steiner_tree_to_json(const SteinerTree& t) {
  nlohmann::json vertices = nlohmann::json::array();
  for (int v = 0; v < t.vertex_count(); ++v) {
    nlohmann::json item{{"id", v}};
    if (t.is_labeled(v)) item["label"] = v;
    vertices.push_back(item);
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [e, len] : t.edge_list()) edges.push_back({e.first, e.second, len});
  return {{"vertices", vertices}, {"edges", edges}};
}

nlohmann::json partition_to_json(const VertexPartition& p) {
  nlohmann::json weak = nlohmann::json::array();
  for (const auto& w : p.weak_edges) weak.push_back({{"u", w.u}, {"v", w.v}, {"mu", w.mu}});
  return {{"blocks", p.blocks}, {"weak_edges", weak}};
}

void write_json(const nlohmann::json& j, const std::string& path) {
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::string& path) {
  auto f = open_in(path);
  nlohmann::json j;
  f >> j;
  return j;
}

void write_text(const std::string& text, const std::string& path) {
  auto f = open_out(path);
  f << text;
}

}  // namespace treelearn
