#pragma once

#include <string>
#include <vector>

#include "linkrec/evaluation.hpp"
#include "linkrec/features.hpp"
#include "linkrec/graph.hpp"
#include "linkrec/inference.hpp"
#include "linkrec/proximity.hpp"
#include "linkrec/theta.hpp"

namespace linkrec::io {

/// Shortest-free formatting with 17 significant digits (lossless for doubles).
std::string format_double(double v);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

TemporalGraph load_graph(const std::string& edges_path, const std::string& users_path);
TemporalGraph parse_graph(const std::string& edges_csv, const std::string& users_csv);
std::string format_edges(const TemporalGraph& graph);
std::string format_users(const TemporalGraph& graph);

ProfileStore load_profiles(const std::string& path);
ProfileStore parse_profiles(const std::string& csv);
std::string format_profiles(const ProfileStore& profiles);

std::vector<FeatureRecord> load_records(const std::string& path);
std::vector<FeatureRecord> parse_records(const std::string& csv);
std::string format_records(const std::vector<FeatureRecord>& records);

Theta load_theta(const std::string& path);
Theta parse_theta(const std::string& text);
std::string format_theta(const Theta& theta);

std::string format_recommendations(const RecommendationList& list);
std::string format_metrics(const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> parse_metrics(const std::string& csv);

}  // namespace linkrec::io
