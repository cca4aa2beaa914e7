#include "cli.hpp"

#include "cvsteer/certify.hpp"
#include "cvsteer/criteria.hpp"
#include "cvsteer/monogamy.hpp"
#include "cvsteer/networks.hpp"
#include "cvsteer/parallel.hpp"
#include "cvsteer/sweeps.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cvsteer::cli {

namespace {

using nlohmann::json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Common {
  std::string family = "epr";
  int n = 3;
  std::string grid = "0:2.5:101";
  std::string format = "csv";
  std::string out_path;
  bool serial = false;
};

std::string number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

std::string render_csv(const Table& t) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < t.columns.size(); ++i) ss << (i ? "," : "") << t.columns[i];
  ss << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) ss << (i ? "," : "") << number(row[i]);
    ss << "\n";
  }
  return ss.str();
}

json render_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
    rows.push_back(obj);
  }
  return {{"columns", t.columns}, {"rows", rows}};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("grid must be start:stop:points");
  try {
    return r_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("bad grid '" + text + "': " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const Common& c, const std::string& body, std::ostream& out) {
  if (c.out_path.empty()) {
    out << body;
    return;
  }
  std::filesystem::path p(c.out_path);
  if (const char* dir = std::getenv("CVSTEER_OUT_DIR"); dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << body;
}

void emit_table(const Common& c, const Table& t, std::ostream& out) {
  emit(c, c.format == "json" ? render_json(t).dump(2) + "\n" : render_csv(t), out);
}

void check_n(Family f, int n) {
  if (n < 2) throw std::invalid_argument("need at least two modes");
  if (f == Family::cluster && n != 3) throw std::invalid_argument("cluster family is tripartite");
}

void add_common(CLI::App* sub, Common& c, bool grid) {
  sub->add_option("--family", c.family, "epr | ss | ghz | ghz-asym | cluster");
  sub->add_option("--n", c.n, "number of modes");
  if (grid) sub->add_option("--grid", c.grid, "r grid start:stop:points");
  sub->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out_path, "output file (relative paths honour CVSTEER_OUT_DIR)");
  sub->add_flag("--serial", c.serial, "evaluate grid points serially");
}

template <class F>
std::vector<std::vector<double>> sweep(const Common& c, const std::vector<double>& grid, F&& row) {
  return map_indices(grid.size(), !c.serial, [&](std::size_t i) { return row(grid[i]); });
}

void run_state(const Common& c, double r, const std::string& spec_path, std::ostream& out) {
  GaussianState s;
  json meta;
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    if (!in) throw std::invalid_argument("cannot open " + spec_path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(spec_path + ": " + e.what());
    }
    NetworkSpec spec = spec_from_json(doc);
    s = build(spec);
    meta = {{"spec", spec_to_json(spec)}};
  } else {
    Family f = parse_family(c.family);
    check_n(f, c.n);
    s = make_state(f, c.n, r);
    meta = {{"family", family_name(f)}, {"r", r}};
  }
  if (c.format == "json") {
    json cov = json::array();
    for (int i = 0; i < s.cov.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < s.cov.cols(); ++j) row.push_back(s.cov(i, j));
      cov.push_back(row);
    }
    meta["n_modes"] = s.n_modes;
    meta["cov"] = cov;
    meta["physicality_floor"] = physicality_floor(s);
    emit(c, meta.dump(2) + "\n", out);
    return;
  }
  Table t;
  for (int m = 0; m < s.n_modes; ++m) {
    t.columns.push_back("x" + std::to_string(m + 1));
    t.columns.push_back("p" + std::to_string(m + 1));
  }
  for (int i = 0; i < s.cov.rows(); ++i) t.rows.emplace_back(s.cov.row(i).data(), s.cov.row(i).data() + s.cov.cols());
  emit_table(c, t, out);
}

void run_steer(const Common& c, const std::string& method, std::ostream& out) {
  Family f = parse_family(c.family);
  check_n(f, c.n);
  std::vector<double> grid = parse_grid(c.grid);
  Table t{{"r", "S", "closed_form"}, {}};
  t.rows = sweep(c, grid, [&](double r) {
    double s;
    if (method == "optimized") {
      std::vector<int> rest;
      for (int m = 1; m < c.n; ++m) rest.push_back(m);
      s = optimize_steering_gains(make_state(f, c.n, r), {0}, rest).value;
    } else if (f == Family::cluster) {
      s = steering_value(make_state(f, 3, r), cluster_gain_sets()[0]);
    } else {
      s = symmetric_steering(f, c.n, r);
    }
    return std::vector<double>{r, s, closed_form_steering(f, c.n, r)};
  });
  emit_table(c, t, out);
}

void run_gains(const Common& c, const std::string& table, const std::vector<double>& r_values, std::ostream& out) {
  Family f = parse_family(c.family);
  std::vector<double> grid = r_values.empty() ? parse_grid(c.grid) : r_values;
  Table t;
  t.columns = {"r"};
  for (const std::string& h : table_header(table)) t.columns.push_back(h);
  t.rows = sweep(c, grid, [&](double r) {
    std::vector<double> row = {r};
    for (double v : table_row(f, table, r)) row.push_back(v);
    return row;
  });
  emit_table(c, t, out);
}

void run_criteria(const Common& c, const std::string& list, std::ostream& out) {
  Family f = parse_family(c.family);
  check_n(f, c.n);
  std::vector<std::string> names = split(list, ',');
  if (names.empty()) throw std::invalid_argument("no criteria given");
  std::vector<double> grid = parse_grid(c.grid);
  Table t;
  t.columns = {"r"};
  for (const std::string& name : names) {
    t.columns.push_back(name);
    t.columns.push_back(name + ".bound");
    t.columns.push_back(name + ".violated");
  }
  t.rows = sweep(c, grid, [&](double r) {
    std::vector<double> row = {r};
    for (const std::string& name : names) {
      CriterionReport rep = evaluate_criterion(f, c.n, name, r);
      row.insert(row.end(), {rep.value, rep.bound, rep.violated ? 1.0 : 0.0});
    }
    return row;
  });
  emit_table(c, t, out);
}

void run_monogamy(const Common& c, int k1, std::ostream& out) {
  Family f = parse_family(c.family);
  check_n(f, c.n);
  if (k1 < 1 || k1 > c.n) throw std::invalid_argument("--k must name a mode");
  int k = k1 - 1;
  std::vector<int> others;
  for (int m = 0; m < c.n && others.size() < 2; ++m)
    if (m != k) others.push_back(m);
  int l = others[0], m = others[1];
  std::vector<double> grid = parse_grid(c.grid);
  Table t{{"r", "S_k|l", "S_k|m", "S_k|lm", "monogamy-full.lhs", "monogamy-full.rhs", "B_kl", "B_km", "mono1.rhs",
           "S_kl", "S_km", "mono2.lhs", "mono2.rhs"},
          {}};
  t.rows = sweep(c, grid, [&](double r) {
    GaussianState s = make_state(f, c.n, r);
    SteeringParts parts = steering_parts(s, k, l, m);
    MonogamyReport full = steering_monogamy(parts);
    steering_monogamy_base(parts);
    std::vector<MonogamyReport> ent = entanglement_monogamy_dgcz(s, k, l, m, parts.k_lm.value);
    MonogamyReport gen = entanglement_monogamy_general(s, k, l, m, parts.k_lm.value);
    return std::vector<double>{r,
                               parts.k_l.value,
                               parts.k_m.value,
                               parts.k_lm.value,
                               full.lhs,
                               full.rhs,
                               ent[0].extras.at("B_kl"),
                               ent[0].extras.at("B_km"),
                               ent[1].rhs,
                               gen.extras.at("S_kl"),
                               gen.extras.at("S_km"),
                               gen.lhs,
                               gen.rhs};
  });
  emit_table(c, t, out);
}

void run_certify(const Common& c, const std::string& input, std::ostream& out) {
  Certificate cert = certify(load_measurements_file(input));
  if (c.format == "json") {
    emit(c, to_json(cert).dump(2) + "\n", out);
    return;
  }
  std::ostringstream ss;
  ss << "flag,status\n";
  for (const auto& [key, flag] : cert.cls.flags) ss << key << "," << flag_name(flag) << "\n";
  emit(c, ss.str(), out);
}

void run_threshold(const Common& c, const std::string& criterion, double lo, double hi, double tol,
                   std::ostream& out) {
  Family f = parse_family(c.family);
  check_n(f, c.n);
  if (!(lo < hi)) throw std::invalid_argument("threshold bracket needs lo < hi");
  Threshold th = bisect_threshold([&](double r) { return flag_at(f, c.n, criterion, r); }, lo, hi, tol);
  if (c.format == "json") {
    json j = {{"family", family_name(f)}, {"n", c.n}, {"criterion", criterion}, {"r", th.r},
              {"iterations", th.iterations}};
    if (f == Family::ghz_asym) j["r_first"] = ghz_partner_squeezing(c.n, th.r);
    emit(c, j.dump(2) + "\n", out);
    return;
  }
  std::ostringstream ss;
  ss << "family,n,criterion,r,iterations\n"
     << family_name(f) << "," << c.n << "," << criterion << "," << number(th.r) << "," << th.iterations << "\n";
  emit(c, ss.str(), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multipartite Gaussian steering toolkit"};
  app.require_subcommand(1);

  Common c;
  double r = 1.0;
  std::string spec_path, method = "symmetric", table = "1-23", criteria = "criterion1b", input;
  std::vector<double> r_values;
  int k = 1;
  double lo = 0.05, hi = 2.5, tol = 1e-3;

  auto* state = app.add_subcommand("state", "dump a covariance matrix");
  add_common(state, c, false);
  state->add_option("--r", r, "squeezing");
  state->add_option("--spec", spec_path, "network spec JSON file");

  auto* steer = app.add_subcommand("steer", "sweep the full 1|rest steering value");
  add_common(steer, c, true);
  steer->add_option("--method", method)->check(CLI::IsMember({"symmetric", "optimized"}));

  auto* gains = app.add_subcommand("gains", "optimal gain tables");
  add_common(gains, c, true);
  gains->add_option("--table", table)->check(CLI::IsMember({"fixed", "1-23", "23-1"}));
  gains->add_option("--r", r_values, "explicit r values instead of a grid")->delimiter(',');

  auto* crit = app.add_subcommand("criteria", "evaluate criteria against r");
  add_common(crit, c, true);
  crit->add_option("--criterion", criteria, "comma-separated criterion names");

  auto* mono = app.add_subcommand("monogamy", "monogamy relations against r");
  add_common(mono, c, true);
  mono->add_option("--k", k, "steered mode (1-based)");

  auto* cert = app.add_subcommand("certify", "certify a measurement file");
  add_common(cert, c, false);
  cert->add_option("--input", input, "measurement JSON")->required();

  auto* thr = app.add_subcommand("threshold", "bisect the minimal r for a criterion");
  add_common(thr, c, false);
  thr->add_option("--criterion", criteria);
  thr->add_option("--lo", lo);
  thr->add_option("--hi", hi);
  thr->add_option("--tol", tol);

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*state) run_state(c, r, spec_path, out);
    else if (*steer) run_steer(c, method, out);
    else if (*gains) run_gains(c, table, r_values, out);
    else if (*crit) run_criteria(c, criteria, out);
    else if (*mono) run_monogamy(c, k, out);
    else if (*cert) run_certify(c, input, out);
    else if (*thr) run_threshold(c, criteria, lo, hi, tol, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "compute failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace cvsteer::cli
