#include "cvsteer/certify.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cvsteer {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> standard_flags = {"full-inseparable", "full-two-way", "genuine-def1", "genuine-def2",
                                                 "genuine-def3"};

int vlf_index(const std::string& text) {
  if (text == "I") return 0;
  if (text == "II") return 1;
  if (text == "III") return 2;
  throw std::invalid_argument("vlf index must be I, II or III");
}

// Gain on the third mode of each van Loock-Furusawa quantity: g3, g1, g2.
constexpr int vlf_gain_mode[3] = {2, 0, 1};

std::map<int, double> parse_gain_map(const nlohmann::json& j, const std::string& path) {
  std::map<int, double> out;
  if (!j.is_object()) throw std::invalid_argument(path + ": gain map must be an object");
  for (const auto& [key, val] : j.items()) {
    std::vector<int> m = parse_modes(key);
    if (m.size() != 1) throw std::invalid_argument(path + ": gain key must name one mode");
    if (!val.is_number()) throw std::invalid_argument(path + "." + key + ": gain must be a number");
    out[m[0]] = val.get<double>();
  }
  return out;
}

const std::string& require_label(const MeasurementRecord& r, const std::string& key, const std::string& path) {
  auto it = r.labels.find(key);
  if (it == r.labels.end()) throw std::invalid_argument(path + ".labels: missing '" + key + "'");
  return it->second;
}

std::string record_key(const MeasurementRecord& r) {
  std::string key = record_kind_name(r.kind);
  for (const auto& [k, v] : r.labels) key += ";" + k + "=" + v;
  return key;
}

void add_evidence(Certificate& cert, const std::string& flag, const std::string& criterion, std::vector<int> recs) {
  cert.evidence[flag].push_back({criterion, std::move(recs)});
}

}  // namespace

RecordKind parse_record_kind(const std::string& name) {
  if (name == "steering-product") return RecordKind::steering_product;
  if (name == "raw-variance-pair") return RecordKind::raw_variance_pair;
  if (name == "vlf-sum") return RecordKind::vlf_sum;
  if (name == "vlf-product") return RecordKind::vlf_product;
  if (name == "cluster-vlf-sum") return RecordKind::cluster_vlf_sum;
  throw std::invalid_argument("unknown record kind: " + name);
}

std::string record_kind_name(RecordKind kind) {
  switch (kind) {
    case RecordKind::steering_product: return "steering-product";
    case RecordKind::raw_variance_pair: return "raw-variance-pair";
    case RecordKind::vlf_sum: return "vlf-sum";
    case RecordKind::vlf_product: return "vlf-product";
    case RecordKind::cluster_vlf_sum: return "cluster-vlf-sum";
  }
  return "?";
}

std::vector<int> parse_modes(const std::string& text) {
  std::vector<int> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item) - 1);
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw std::invalid_argument("bad mode label: " + text);
      out.push_back(c - '1');
    }
  }
  if (out.empty()) throw std::invalid_argument("empty mode label");
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw std::invalid_argument("repeated mode: " + text);
  if (out.front() < 0) throw std::invalid_argument("bad mode label: " + text);
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

MeasurementSet load_measurements(const nlohmann::json& doc) {
  MeasurementSet set;
  if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array())
    throw std::invalid_argument("$: document needs a 'records' array");
  set.digest = sha256_hex(doc.dump());
  int max_mode = -1;
  std::map<std::string, std::vector<double>> seen;
  for (std::size_t i = 0; i < doc["records"].size(); ++i) {
    const nlohmann::json& j = doc["records"][i];
    std::string path = "$.records[" + std::to_string(i) + "]";
    if (!j.is_object()) throw std::invalid_argument(path + ": record must be an object");
    if (!j.contains("kind") || !j["kind"].is_string()) throw std::invalid_argument(path + ".kind: missing");
    MeasurementRecord r;
    r.kind = parse_record_kind(j["kind"].get<std::string>());
    if (!j.contains("value")) throw std::invalid_argument(path + ".value: missing");
    const nlohmann::json& v = j["value"];
    if (v.is_number()) r.values = {v.get<double>()};
    else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const nlohmann::json& e) { return e.is_number(); }))
      r.values = v.get<std::vector<double>>();
    else throw std::invalid_argument(path + ".value: must be a number or array of numbers");
    for (double x : r.values)
      if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument(path + ".value: variances must be nonnegative");
    if (j.contains("labels")) {
      if (!j["labels"].is_object()) throw std::invalid_argument(path + ".labels: must be an object");
      for (const auto& [k, lv] : j["labels"].items()) {
        if (!lv.is_string()) throw std::invalid_argument(path + ".labels." + k + ": must be a string");
        r.labels[k] = lv.get<std::string>();
      }
    }
    if (j.contains("gains")) {
      const nlohmann::json& gj = j["gains"];
      if (!gj.is_object()) throw std::invalid_argument(path + ".gains: must be an object");
      if (gj.contains("h")) r.h = parse_gain_map(gj["h"], path + ".gains.h");
      if (gj.contains("g")) r.g = parse_gain_map(gj["g"], path + ".gains.g");
    }
    if (j.contains("source")) r.source = j["source"].get<std::string>();

    switch (r.kind) {
      case RecordKind::steering_product:
      case RecordKind::raw_variance_pair: {
        std::vector<int> a = parse_modes(require_label(r, "steered", path));
        std::vector<int> b = parse_modes(require_label(r, "steerers", path));
        for (int m : a)
          if (std::find(b.begin(), b.end(), m) != b.end()) throw std::invalid_argument(path + ": sides overlap");
        max_mode = std::max({max_mode, a.back(), b.back()});
        std::size_t want = r.kind == RecordKind::steering_product ? 1 : 2;
        if (r.values.size() != want) throw std::invalid_argument(path + ".value: wrong number of values");
        if (r.kind == RecordKind::raw_variance_pair) {
          if (!r.h || !r.g) throw std::invalid_argument(path + ".gains: required for raw variance pairs");
          for (int m : a)
            if (!r.h->count(m) || !r.g->count(m)) throw std::invalid_argument(path + ".gains: steered gains missing");
        }
        break;
      }
      case RecordKind::vlf_sum:
      case RecordKind::vlf_product:
        vlf_index(require_label(r, "index", path));
        if (r.values.size() != 1) throw std::invalid_argument(path + ".value: expects one number");
        max_mode = std::max(max_mode, 2);
        break;
      case RecordKind::cluster_vlf_sum: {
        const std::string& idx = require_label(r, "index", path);
        if (idx != "I" && idx != "II") throw std::invalid_argument(path + ".labels.index: must be I or II");
        if (r.values.size() != 1) throw std::invalid_argument(path + ".value: expects one number");
        max_mode = std::max(max_mode, 2);
        break;
      }
    }
    std::string key = record_key(r);
    auto it = seen.find(key);
    if (it != seen.end() && it->second != r.values)
      throw std::invalid_argument(path + ": conflicts with an earlier record for " + key);
    seen[key] = r.values;
    set.records.push_back(std::move(r));
  }
  set.n_modes = doc.contains("n_modes") ? doc["n_modes"].get<int>() : max_mode + 1;
  if (set.n_modes <= max_mode) throw std::invalid_argument("$.n_modes: smaller than the modes referenced");
  return set;
}

MeasurementSet load_measurements_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return load_measurements(doc);
}

Certificate certify(const MeasurementSet& set) {
  constexpr double eps = 0.0;
  Certificate cert;
  cert.inputs_digest = set.digest;
  SteeringClass& cls = cert.cls;
  const int n = set.n_modes;

  // Directional steering values keyed by "A|B".
  std::map<std::string, std::pair<double, int>> direction;
  double vlf_b[3] = {nan_v, nan_v, nan_v}, vlf_s[3] = {nan_v, nan_v, nan_v};
  double gb[3] = {nan_v, nan_v, nan_v}, gs[3] = {nan_v, nan_v, nan_v};
  int rb[3] = {-1, -1, -1}, rs[3] = {-1, -1, -1};
  double cluster[2] = {nan_v, nan_v};
  int rc[2] = {-1, -1};

  for (int i = 0; i < static_cast<int>(set.records.size()); ++i) {
    const MeasurementRecord& r = set.records[i];
    switch (r.kind) {
      case RecordKind::steering_product:
      case RecordKind::raw_variance_pair: {
        std::vector<int> a = parse_modes(r.labels.at("steered"));
        std::vector<int> b = parse_modes(r.labels.at("steerers"));
        double value = r.values[0];
        if (r.kind == RecordKind::raw_variance_pair) {
          double c = 0.0;
          for (int m : a) c += r.h->at(m) * r.g->at(m);
          value = std::abs(c) > 0.0 ? std::sqrt(r.values[0] * r.values[1]) / std::abs(c)
                                    : std::numeric_limits<double>::infinity();
        }
        std::string key = mode_label(a) + "|" + mode_label(b);
        direction[key] = {value, i};
        CriterionReport rep;
        rep.name = "epr-paradox";
        rep.value = value;
        rep.bound = 1.0;
        rep.violated = strictly_below(value, 1.0, eps);
        rep.implications = {"steering[" + key + "]"};
        if (a.size() == 1 && static_cast<int>(a.size() + b.size()) == n)
          rep.implications.push_back("epr-paradox[" + mode_label(a) + "]");
        for (const std::string& f : rep.implications) {
          cls.mark(f, rep.violated);
          if (rep.violated) add_evidence(cert, f, rep.name, {i});
        }
        cert.reports.push_back(rep);
        break;
      }
      case RecordKind::vlf_sum:
      case RecordKind::vlf_product: {
        int k = vlf_index(r.labels.at("index"));
        double gval = nan_v;
        if (r.g && r.g->count(vlf_gain_mode[k])) gval = r.g->at(vlf_gain_mode[k]);
        if (r.kind == RecordKind::vlf_sum) {
          vlf_b[k] = r.values[0];
          gb[k] = gval;
          rb[k] = i;
        } else {
          vlf_s[k] = r.values[0];
          gs[k] = gval;
          rs[k] = i;
        }
        break;
      }
      case RecordKind::cluster_vlf_sum: {
        int k = r.labels.at("index") == "I" ? 0 : 1;
        cluster[k] = r.values[0];
        rc[k] = i;
        break;
      }
    }
  }

  if (n >= 2 && n <= max_enumerated_modes && !direction.empty()) {
    bool all_one = true, all_two = true, any_fail_one = false, any_fail_two = false;
    std::vector<int> used;
    for (const Bipartition& p : enumerate_bipartitions(n)) {
      std::string ab = p.label(), ba = mode_label(p.side_b) + "|" + mode_label(p.side_a);
      auto fa = direction.find(ab), fb = direction.find(ba);
      bool sa = fa != direction.end() && strictly_below(fa->second.first, 1.0, eps);
      bool sb = fb != direction.end() && strictly_below(fb->second.first, 1.0, eps);
      bool ka = fa != direction.end(), kb = fb != direction.end();
      if (ka) used.push_back(fa->second.second);
      if (kb) used.push_back(fb->second.second);
      if (ka && kb) cls.mark("two-way[" + ab + "]", sa && sb);
      if (!(sa || sb)) {
        all_one = false;
        if (ka && kb) any_fail_one = true;
      }
      if (!(sa && sb)) {
        all_two = false;
        if ((ka && !sa) || (kb && !sb)) any_fail_two = true;
      }
    }
    std::sort(used.begin(), used.end());
    if (all_one) {
      cls.raise("full-inseparable");
      add_evidence(cert, "full-inseparable", "bipartition-steering", used);
    } else if (any_fail_one) {
      cls.mark("full-inseparable", false);
    }
    if (all_two) {
      cls.raise("full-two-way");
      add_evidence(cert, "full-two-way", "bipartition-steering", used);
    } else if (any_fail_two) {
      cls.mark("full-two-way", false);
    }
  }

  auto record_list = [](const int* idx, int count) {
    std::vector<int> out;
    for (int i = 0; i < count; ++i)
      if (idx[i] >= 0) out.push_back(idx[i]);
    return out;
  };
  auto apply_report = [&](CriterionReport rep, std::vector<int> recs) {
    for (const std::string& f : rep.implications) {
      cls.mark(f, rep.violated);
      if (rep.violated) add_evidence(cert, f, rep.name, recs);
    }
    cert.reports.push_back(std::move(rep));
  };
  // Pairwise rules need unit gains on every supplied quantity.
  auto unit_or_absent = [](const double* vals, const double* g, double* out) {
    for (int i = 0; i < 3; ++i) {
      if (std::isnan(vals[i])) out[i] = 1.0;
      else if (g[i] == 1.0) out[i] = 1.0;
      else return false;
    }
    return true;
  };
  auto count_present = [](const double* v) { return (int)!std::isnan(v[0]) + !std::isnan(v[1]) + !std::isnan(v[2]); };

  if (count_present(vlf_b) >= 2) {
    std::vector<int> recs = record_list(rb, 3);
    apply_report(criterion4b(vlf_b, eps), recs);
    if (count_present(vlf_b) == 3) apply_report(criterion5b(vlf_b, eps), recs);
    double g[3];
    if (unit_or_absent(vlf_b, gb, g)) {
      apply_report(criterion6c(vlf_b, g, eps), recs);
      apply_report(criterion7b(vlf_b, g, eps), recs);
    }
  }
  if (count_present(vlf_s) >= 2) {
    std::vector<int> recs = record_list(rs, 3);
    apply_report(criterion4(vlf_s, eps), recs);
    if (count_present(vlf_s) == 3) apply_report(criterion5(vlf_s, eps), recs);
    double g[3];
    if (unit_or_absent(vlf_s, gs, g)) {
      apply_report(criterion5c(vlf_s, g, eps), recs);
      apply_report(criterion7(vlf_s, g, eps), recs);
    }
  }
  if (!std::isnan(cluster[0]) && !std::isnan(cluster[1]))
    apply_report(cluster_vlf(cluster[0], cluster[1], eps), record_list(rc, 2));

  // Lattice consequences carry the evidence of their premise.
  for (int pass = 0; pass < 4; ++pass) {
    SteeringClass before = cls;
    enforce_lattice(cls);
    for (const auto& [key, flag] : cls.flags)
      if (flag == Flag::detected && !before.has(key)) cert.evidence[key].push_back({"implication", {}});
  }
  for (const std::string& f : standard_flags)
    if (!cls.flags.count(f)) cls.flags[f] = Flag::undetermined;
  return cert;
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json flags = nlohmann::json::object();
  for (const auto& [key, flag] : cert.cls.flags) {
    nlohmann::json ev = nlohmann::json::array();
    auto it = cert.evidence.find(key);
    if (it != cert.evidence.end())
      for (const Evidence& e : it->second) ev.push_back({{"criterion", e.criterion}, {"records", e.records}});
    flags[key] = {{"status", flag_name(flag)}, {"evidence", ev}};
  }
  nlohmann::json reports = nlohmann::json::array();
  for (const CriterionReport& r : cert.reports) reports.push_back(to_json(r));
  return {{"flags", flags}, {"reports", reports}, {"inputs_digest", cert.inputs_digest}};
}

}  // namespace cvsteer
