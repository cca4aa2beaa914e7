#include "cvsteer/certify.hpp"
#include "cvsteer/networks.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <string>

using namespace cvsteer;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(CVSTEER_DATA_DIR) + "/" + name; }

json product(double v, const std::string& a, const std::string& b) {
  return {{"kind", "steering-product"}, {"value", v}, {"labels", {{"steered", a}, {"steerers", b}}}};
}

std::string load_error(const json& doc) {
  try {
    load_measurements(doc);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Certify, SteeringProductsFile) {
  MeasurementSet set = load_measurements_file(data("armstrong2015_epr.json"));
  EXPECT_EQ(set.records.size(), 6u);
  Certificate cert = certify(set);
  EXPECT_EQ(cert.cls.get("full-inseparable"), Flag::detected);
  EXPECT_EQ(cert.cls.get("full-two-way"), Flag::not_detected);
  EXPECT_EQ(cert.cls.get("steering[13|2]"), Flag::not_detected);
  EXPECT_EQ(cert.cls.get("genuine-def1"), Flag::undetermined);
}

TEST(Certify, VlfSumFile) {
  MeasurementSet set = load_measurements_file(data("armstrong2012_epr.json"));
  EXPECT_EQ(set.records.size(), 2u);
  Certificate cert = certify(set);
  EXPECT_EQ(cert.cls.get("full-two-way"), Flag::detected);
  ASSERT_FALSE(cert.evidence["full-two-way"].empty());
  EXPECT_EQ(cert.evidence["full-two-way"].front().criterion, "criterion4b");
  EXPECT_EQ(cert.cls.get("genuine-def3"), Flag::undetermined);
}

TEST(Certify, ClusterFile) {
  Certificate cert = certify(load_measurements_file(data("armstrong2012_cluster.json")));
  EXPECT_EQ(cert.cls.get("genuine-def1"), Flag::detected);
  EXPECT_EQ(cert.cls.get("genuine-def3"), Flag::detected);
}

TEST(Certify, EmptyAndSingleRecord) {
  Certificate empty = certify(load_measurements(json{{"records", json::array()}}));
  EXPECT_EQ(empty.reports.size(), 0u);
  EXPECT_EQ(empty.cls.get("full-two-way"), Flag::undetermined);
  Certificate one = certify(load_measurements(json{{"n_modes", 3}, {"records", {product(0.78, "1", "23")}}}));
  EXPECT_EQ(one.cls.get("steering[1|23]"), Flag::detected);
  for (const char* key : {"genuine-def1", "genuine-def2", "genuine-def3", "full-two-way", "full-inseparable"})
    EXPECT_EQ(one.cls.get(key), Flag::undetermined) << key;
}

TEST(Certify, ValidationErrorsCarryPaths) {
  EXPECT_NE(load_error(json{{"records", {product(-0.1, "1", "23")}}}).find("$.records[0].value"), std::string::npos);
  json raw = {{"kind", "raw-variance-pair"}, {"value", {0.3, 0.4}}, {"labels", {{"steered", "1"}, {"steerers", "2"}}}};
  EXPECT_NE(load_error(json{{"records", {raw}}}).find("gains"), std::string::npos);
  EXPECT_NE(load_error(json{{"records", {{{"value", 1.0}}}}}).find("$.records[0].kind"), std::string::npos);
  EXPECT_NE(load_error(json{{"rows", json::array()}}).find("records"), std::string::npos);
  json dup = {{"records", {product(0.8, "1", "23"), product(0.9, "1", "23")}}};
  EXPECT_NE(load_error(dup).find("conflicts"), std::string::npos);
  json same = {{"records", {product(0.8, "1", "23"), product(0.8, "1", "23")}}};
  EXPECT_EQ(load_error(same), "");
}

TEST(Certify, RawVariancePair) {
  json raw = {{"kind", "raw-variance-pair"},
              {"value", {0.3, 0.48}},
              {"gains", {{"h", {{"1", 1.0}}}, {"g", {{"1", 1.0}}}}},
              {"labels", {{"steered", "1"}, {"steerers", "2"}}}};
  Certificate cert = certify(load_measurements(json{{"records", {raw}}}));
  EXPECT_EQ(cert.cls.get("steering[1|2]"), Flag::detected);
  EXPECT_NEAR(cert.reports.front().value, 0.3794733, 1e-6);
}

TEST(Certify, AddingRecordsNeverRemovesFlags) {
  json doc = json::parse(std::ifstream(data("armstrong2015_epr.json")));
  json records = doc["records"];
  SteeringClass previous;
  json partial = {{"n_modes", 3}, {"records", json::array()}};
  for (const json& r : records) {
    partial["records"].push_back(r);
    SteeringClass now = certify(load_measurements(partial)).cls;
    for (const auto& [key, flag] : previous.flags)
      if (flag == Flag::detected) EXPECT_TRUE(now.has(key)) << key;
    previous = now;
  }
}

TEST(Certify, SerializationIsDeterministic) {
  std::string a = to_json(certify(load_measurements_file(data("armstrong2015_epr.json")))).dump();
  std::string b = to_json(certify(load_measurements_file(data("armstrong2015_epr.json")))).dump();
  EXPECT_EQ(a, b);
  json cert = json::parse(a);
  EXPECT_EQ(cert["inputs_digest"].get<std::string>().size(), 64u);
  EXPECT_EQ(cert["flags"]["full-two-way"]["status"], "not-detected");
}

TEST(Certify, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Certify, SimulatedExportReproducesFlags) {
  for (GaussianState s : {cv_ghz(3, 1.0), cv_epr(3, 0.5), cv_ss(3, 2.0)}) {
    ClassifyResult sim = classify(s);
    json doc = {{"n_modes", 3}, {"records", json::array()}};
    for (const CriterionReport& rep : sim.reports)
      if (rep.name == "epr-paradox") {
        const GainSet& gs = rep.gains_used.front();
        doc["records"].push_back(product(rep.value, mode_label(gs.steered), mode_label(gs.steerers)));
      }
    Certificate cert = certify(load_measurements(doc));
    for (const auto& [key, flag] : cert.cls.flags)
      if (key.rfind("steering[", 0) == 0 || key.rfind("two-way[", 0) == 0 || key.rfind("epr-paradox[", 0) == 0 ||
          key == "full-two-way" || key == "full-inseparable")
        EXPECT_EQ(flag, sim.cls.get(key)) << key;
  }
}

TEST(Certify, ModeLabels) {
  EXPECT_EQ(parse_modes("23"), (std::vector<int>{1, 2}));
  EXPECT_EQ(parse_modes("2,11"), (std::vector<int>{1, 10}));
  EXPECT_THROW(parse_modes("22"), std::invalid_argument);
  EXPECT_THROW(parse_modes("0"), std::invalid_argument);
}
