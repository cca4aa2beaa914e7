#pragma once

#include "cvsteer/phase_space.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cvsteer {

struct Input {
  double r = 0.0;
  std::optional<Axis> axis;  // empty: vacuum
};

struct Splitter {
  int mode_a = 0;
  int mode_b = 1;
  double R = 0.5;
};

struct NetworkSpec {
  int n_modes = 0;
  std::vector<Input> inputs;
  std::vector<Splitter> splitters;
  std::vector<double> output_phases;  // empty or one per mode
};

enum class Family { epr, ss, ghz, ghz_asym, cluster };

Family parse_family(const std::string& name);
std::string family_name(Family f);

SymplecticOp network_op(const NetworkSpec& spec);
GaussianState build(const NetworkSpec& spec);

// (0,1,R1) followed by (k,k+1,1/(n-k)) for k = 1..n-2
std::vector<Splitter> ladder(int n, double R1);

NetworkSpec epr_spec(int n, double r, double R1 = 0.5);
NetworkSpec ss_spec(int n, double r, double R1 = 0.5);
NetworkSpec ghz_spec(int n, double r_first, double r_rest);
NetworkSpec cluster3_spec(double r, double R1 = 2.0 / 3.0, double R2 = 0.5);

GaussianState cv_epr(int n, double r, double R1 = 0.5);
GaussianState cv_ss(int n, double r, double R1 = 0.5);
GaussianState cv_ghz(int n, double r);
GaussianState cv_ghz_asym(int n, double r2);
GaussianState cluster3(double r, double R1 = 2.0 / 3.0, double R2 = 0.5);

// Squeezing of the p-squeezed GHZ input that balances the others at r2.
double ghz_partner_squeezing(int n, double r2);

GaussianState make_state(Family f, int n, double r);

nlohmann::json spec_to_json(const NetworkSpec& spec);
NetworkSpec spec_from_json(const nlohmann::json& doc);

}  // namespace cvsteer
