#pragma once

#include "cvsteer/networks.hpp"

#include <string>
#include <vector>

// Published optimal-gain tables, two decimals.
struct ReferenceRow {
  double r;
  std::vector<double> entries;
};

struct ReferenceTable {
  std::string name;
  cvsteer::Family family;
  std::string kind;
  std::vector<ReferenceRow> rows;
};

inline const std::vector<ReferenceTable>& reference_tables() {
  using cvsteer::Family;
  static const std::vector<ReferenceTable> tables = {
      {"ghz_fixed", Family::ghz, "fixed", {
          {0.0, {0.0, 0.0}},
          {0.25, {-0.27, 0.36}},
          {0.5, {-0.4, 0.68}},
          {0.75, {-0.46, 0.86}},
          {1.0, {-0.49, 0.95}},
          {1.5, {-0.5, 0.99}},
          {2.0, {-0.5, 1.0}},
      }},
      {"ghz_single", Family::ghz, "1-23", {
          {0.25, {-0.27, 0.36, -0.27, 0.36, -0.27, 0.36, -0.27, 0.36}},
          {0.5, {-0.4, 0.68, -0.4, 0.68, -0.4, 0.68, -0.4, 0.68}},
          {0.75, {-0.46, 0.86, -0.46, 0.86, -0.46, 0.86, -0.46, 0.86}},
          {1.0, {-0.49, 0.95, -0.49, 0.95, -0.49, 0.95, -0.49, 0.95}},
          {1.5, {-0.5, 0.99, -0.5, 0.99, -0.5, 0.99, -0.5, 0.99}},
          {2.0, {-0.5, 1.0, -0.5, 1.0, -0.5, 1.0, -0.5, 1.0}},
      }},
      {"ghz_pair", Family::ghz, "23-1", {
          {0.25, {-1.37, 1.87, -1.37, 1.87, -1.37, 1.87, -1.37, 1.87}},
          {0.5, {-0.73, 1.23, -0.73, 1.23, -0.73, 1.23, -0.73, 1.23}},
          {0.75, {-0.58, 1.08, -0.58, 1.08, -0.58, 1.08, -0.58, 1.08}},
          {1.0, {-0.53, 1.03, -0.53, 1.03, -0.53, 1.03, -0.53, 1.03}},
          {1.5, {-0.5, 1.0, -0.5, 1.0, -0.5, 1.0, -0.5, 1.0}},
          {2.0, {-0.5, 1.0, -0.5, 1.0, -0.5, 1.0, -0.5, 1.0}},
      }},
      {"ghz_asym_fixed", Family::ghz_asym, "fixed", {
          {0.0, {0.0, 0.0}},
          {0.25, {-0.34, 0.51}},
          {0.5, {-0.45, 0.8}},
          {0.75, {-0.48, 0.97}},
          {1.0, {-0.49, 0.99}},
          {1.5, {-0.5, 1.0}},
          {2.0, {-0.5, 1.0}},
      }},
      {"ghz_asym_single", Family::ghz_asym, "1-23", {
          {0.25, {-0.34, 0.51, -0.34, 0.51, -0.34, 0.51, -0.34, 0.51}},
          {0.5, {-0.45, 0.8, -0.45, 0.8, -0.45, 0.8, -0.45, 0.8}},
          {0.75, {-0.48, 0.93, -0.48, 0.93, -0.48, 0.93, -0.48, 0.93}},
          {1.0, {-0.49, 0.97, -0.49, 0.97, -0.49, 0.97, -0.49, 0.97}},
          {1.5, {-0.49, 0.97, -0.49, 0.97, -0.49, 0.97, -0.49, 0.97}},
          {2.0, {-0.5, 1.0, -0.5, 1.0, -0.5, 1.0, -0.5, 1.0}},
      }},
      {"ghz_asym_pair", Family::ghz_asym, "23-1", {
          {0.25, {-0.98, 1.48, -0.98, 1.48, -0.98, 1.48, -0.98, 1.48}},
          {0.5, {-0.62, 1.12, -0.62, 1.12, -0.62, 1.12, -0.62, 1.12}},
          {0.75, {-0.54, 1.04, -0.54, 1.04, -0.54, 1.04, -0.54, 1.04}},
          {1.0, {-0.51, 1.01, -0.51, 1.01, -0.51, 1.01, -0.51, 1.01}},
          {1.5, {-0.5, 1.0, -0.5, 1.0, -0.5, 1.0, -0.5, 1.0}},
          {2.0, {-0.5, 1.0, -0.5, 1.0, -0.5, 1.0, -0.5, 1.0}},
      }},
      {"epr_single", Family::epr, "1-23", {
          {0.25, {-0.33, 0.33, -0.33, 0.33, -0.35, 0.35, 0.06, 0.06}},
          {0.5, {-0.54, 0.54, -0.54, 0.54, -0.65, 0.65, 0.21, 0.21}},
          {0.75, {-0.64, 0.64, -0.64, 0.64, -0.9, 0.9, 0.4, 0.4}},
          {1.0, {-0.68, 0.68, -0.68, 0.68, -1.08, 1.08, 0.58, 0.58}},
          {1.5, {-0.7, 0.7, -0.7, 0.7, -1.28, 1.28, 0.82, 0.82}},
          {2.0, {-0.71, 0.71, -0.71, 0.71, -1.36, 1.36, 0.93, 0.93}},
      }},
      {"epr_pair", Family::epr, "23-1", {
          {0.25, {-1.53, 1.53, -1.53, 1.53, -2.98, 2.98, 0.52, 0.52}},
          {0.5, {-0.93, 0.93, -0.93, 0.93, -1.71, 1.71, 0.56, 0.56}},
          {0.75, {-0.78, 0.78, -0.78, 0.78, -1.4, 1.4, 0.63, 0.63}},
          {1.0, {-0.73, 0.73, -0.73, 0.73, -1.31, 1.31, 0.7, 0.7}},
          {1.5, {-0.71, 0.71, -0.71, 0.71, -1.32, 1.32, 0.85, 0.85}},
          {2.0, {-0.71, 0.71, -0.71, 0.71, -1.37, 1.37, 0.93, 0.93}},
      }},
      {"ss_single", Family::ss, "1-23", {
          {0.25, {-0.15, 0.18, -0.15, 0.18, -0.15, 0.18, -0.15, 0.18}},
          {0.5, {-0.27, 0.36, -0.27, 0.36, -0.27, 0.36, -0.27, 0.36}},
          {0.75, {-0.35, 0.54, -0.35, 0.54, -0.35, 0.54, -0.35, 0.54}},
          {1.0, {-0.4, 0.68, -0.4, 0.68, -0.4, 0.68, -0.4, 0.68}},
          {1.5, {-0.46, 0.86, -0.46, 0.86, -0.46, 0.86, -0.46, 0.86}},
          {2.0, {-0.49, 0.95, -0.49, 0.95, -0.49, 0.95, -0.49, 0.95}},
      }},
      {"ss_pair", Family::ss, "23-1", {
          {0.25, {-2.81, 3.31, -2.81, 3.31, -2.81, 3.31, -2.81, 3.31}},
          {0.5, {-1.37, 1.87, -1.37, 1.87, -1.37, 1.87, -1.37, 1.87}},
          {0.75, {-0.93, 1.43, -0.93, 1.43, -0.93, 1.43, -0.93, 1.43}},
          {1.0, {-0.73, 1.23, -0.73, 1.23, -0.73, 1.23, -0.73, 1.23}},
          {1.5, {-0.58, 1.08, -0.58, 1.08, -0.58, 1.08, -0.58, 1.08}},
          {2.0, {-0.53, 1.03, -0.53, 1.03, -0.53, 1.03, -0.53, 1.03}},
      }},
  };
  return tables;
}
