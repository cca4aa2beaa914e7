#pragma once

#include "cvsteer/criteria.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cvsteer {

enum class RecordKind { steering_product, raw_variance_pair, vlf_sum, vlf_product, cluster_vlf_sum };

RecordKind parse_record_kind(const std::string& name);
std::string record_kind_name(RecordKind kind);

struct MeasurementRecord {
  RecordKind kind = RecordKind::steering_product;
  std::vector<double> values;
  std::optional<std::map<int, double>> h;  // mode (0-based) to gain
  std::optional<std::map<int, double>> g;
  std::map<std::string, std::string> labels;
  std::string source;
};

struct MeasurementSet {
  int n_modes = 0;
  std::vector<MeasurementRecord> records;
  std::string digest;  // sha256 of the canonical input document
};

// Parses "23" or "2,3" (1-based) into sorted 0-based indices.
std::vector<int> parse_modes(const std::string& text);

MeasurementSet load_measurements(const nlohmann::json& doc);
MeasurementSet load_measurements_file(const std::string& path);

struct Evidence {
  std::string criterion;
  std::vector<int> records;
};

struct Certificate {
  SteeringClass cls;
  std::map<std::string, std::vector<Evidence>> evidence;
  std::vector<CriterionReport> reports;
  std::string inputs_digest;
};

Certificate certify(const MeasurementSet& set);

nlohmann::json to_json(const Certificate& cert);

std::string sha256_hex(const std::string& data);

}  // namespace cvsteer
