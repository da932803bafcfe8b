#pragma once

#include <iosfwd>
#include <vector>

#include "lrfhss/core.hpp"

namespace lrfhss {

// One point of the closed-form reception model. Durations are fixed: a 233 ms
// header replica and a 102 ms slot, so a replica spans ceil(233/102) = 3
// slots and a fragment exactly one.
struct AnalyticScenario {
  int C = 35;
  int T_slots = 1000;
  int P = 10;
  double n_tx = 0.0;
  int replicas = 3;
  Fraction threshold{1, 3};

  static constexpr double header_ms = 233.0;
  static constexpr double slot_ms = 102.0;
};

AnalyticScenario make_scenario(CodingRate cr, int C, int T_slots, int P,
                               double n_tx);

// expected number of transmissions in progress during one frame's airtime
double ongoing_count(double n_tx, int P, int T_slots, int replicas);

// expected number of channels left untouched by n_og interferers
double free_obw(int C, double n_og);

// probability that a d_ms-long emission on one channel suffers a collision
double coll(double d_ms, int C, double n_og);

// probability that at least one of the header replicas survives
double p_header(double coll_233, int replicas);

// probability that enough fragments survive for the coding rate to recover
// the payload; stable up to P of at least 1000
double p_payload(int P, double coll_102, Fraction threshold);

// header and payload survival combined
double p_frame(const AnalyticScenario& sc);

// "fast" (2 replicas, 2/3) or "robust" (3 replicas, 1/3)
std::string config_name(CodingRate cr);
CodingRate config_from_name(const std::string& name);

// CSV with columns: n_tx,P,config,p_hdr,p_pld,p_frame
void emit_analytic_csv(int C, int T_slots, const std::vector<int>& P_values,
                       const std::vector<double>& ntx_values,
                       const std::vector<CodingRate>& configs,
                       std::ostream& out);

}  // namespace lrfhss
