#pragma once

#include <string>

#include <json.hpp>

#include "treelearn/chow_liu.hpp"
#include "treelearn/correlation.hpp"
#include "treelearn/ising.hpp"
#include "treelearn/metric.hpp"

namespace treelearn {

// Model files: JSON {"n": int, "edges": [[u, v, theta], ...]}.
nlohmann::json model_to_json(const TreeIsingModel& model);
TreeIsingModel model_from_json(const nlohmann::json& j);
void write_model(const TreeIsingModel& model, const std::string& path);
TreeIsingModel read_model(const std::string& path);

// Correlation files: header-free CSV, n rows by n columns, symmetric.
void write_correlations(const CorrelationMatrix& mu, const std::string& path);
CorrelationMatrix read_correlations(const std::string& path);

// Sample files: CSV of +-1 integers, one row per sample.
void write_samples(const SampleMatrix& samples, const std::string& path);
SampleMatrix read_samples(const std::string& path);

// Distance files: CSV with an `inf` token permitted.
void write_distances(const DistanceEstimate& d, const std::string& path);
DistanceEstimate read_distances(const std::string& path);

// Steiner tree debugging dump:
// {"vertices": [{"id": int, "label"?: int}], "edges": [[a, b, len], ...]}.
nlohmann::json steiner_tree_to_json(const SteinerTree& t);

// Partition dump for --dump-partition.
nlohmann::json partition_to_json(const VertexPartition& p);

void write_json(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json(const std::string& path);
void write_text(const std::string& text, const std::string& path);

}  // namespace treelearn
