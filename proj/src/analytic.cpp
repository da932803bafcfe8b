#include "lrfhss/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lrfhss/errors.hpp"
#include "lrfhss/textio.hpp"

namespace lrfhss {

AnalyticScenario make_scenario(CodingRate cr, int C, int T_slots, int P,
                               double n_tx) {
  AnalyticScenario sc;
  sc.C = C;
  sc.T_slots = T_slots;
  sc.P = P;
  sc.n_tx = n_tx;
  sc.replicas = replicas_for(cr);
  sc.threshold = cr_threshold(cr);
  return sc;
}

double ongoing_count(double n_tx, int P, int T_slots, int replicas) {
  if (n_tx < 0 || P < 1 || T_slots < 1 || replicas < 1) {
    throw Error("ongoing_count: arguments out of range");
  }
  return (replicas * AnalyticScenario::header_ms +
          P * AnalyticScenario::slot_ms) *
         n_tx / (AnalyticScenario::slot_ms * T_slots);
}

double free_obw(int C, double n_og) {
  if (C < 1 || n_og < 0) throw Error("free_obw: arguments out of range");
  return C * std::pow(1.0 - 1.0 / C, n_og);
}

double coll(double d_ms, int C, double n_og) {
  if (d_ms <= 0) throw Error("coll: duration must be positive");
  const double slots = std::ceil(d_ms / AnalyticScenario::slot_ms);
  const double ratio = free_obw(C, n_og) / C;
  return 1.0 - std::pow(ratio, slots);
}

double p_header(double coll_233, int replicas) {
  if (coll_233 < 0 || coll_233 > 1 || replicas < 1) {
    throw Error("p_header: arguments out of range");
  }
  return 1.0 - std::pow(coll_233, replicas);
}

double p_payload(int P, double coll_102, Fraction threshold) {
  if (P < 1 || coll_102 < 0 || coll_102 > 1) {
    throw Error("p_payload: arguments out of range");
  }
  if (coll_102 <= 0.0) return 1.0;
  if (coll_102 >= 1.0) return 0.0;
  const int i0 = required_count(threshold, P);
  const double q = 1.0 - coll_102;
  const double log_q = std::log(q);
  const double log_c = std::log(coll_102);
  const double lg_p1 = std::lgamma(P + 1.0);
  double sum = 0.0;
  for (int i = i0; i <= P; ++i) {
    sum += std::exp(lg_p1 - std::lgamma(i + 1.0) - std::lgamma(P - i + 1.0) +
                    i * log_q + (P - i) * log_c);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double p_frame(const AnalyticScenario& sc) {
  const double n_og = ongoing_count(sc.n_tx, sc.P, sc.T_slots, sc.replicas);
  const double c233 = coll(AnalyticScenario::header_ms, sc.C, n_og);
  const double c102 = coll(AnalyticScenario::slot_ms, sc.C, n_og);
  return p_header(c233, sc.replicas) * p_payload(sc.P, c102, sc.threshold);
}

std::string config_name(CodingRate cr) {
  return cr == CodingRate::cr_1_3 ? "robust" : "fast";
}

CodingRate config_from_name(const std::string& name) {
  if (name == "robust") return CodingRate::cr_1_3;
  if (name == "fast") return CodingRate::cr_2_3;
  throw Error("unknown config name: " + name + " (want fast or robust)");
}

void emit_analytic_csv(int C, int T_slots, const std::vector<int>& P_values,
                       const std::vector<double>& ntx_values,
                       const std::vector<CodingRate>& configs,
                       std::ostream& out) {
  out << "n_tx,P,config,p_hdr,p_pld,p_frame\n";
  for (CodingRate cr : configs) {
    for (int P : P_values) {
      for (double n_tx : ntx_values) {
        const auto sc = make_scenario(cr, C, T_slots, P, n_tx);
        const double n_og = ongoing_count(n_tx, P, T_slots, sc.replicas);
        const double hdr = p_header(coll(sc.header_ms, C, n_og), sc.replicas);
        const double pld = p_payload(P, coll(sc.slot_ms, C, n_og),
                                     sc.threshold);
        out << fmt_double(n_tx) << ',' << P << ',' << config_name(cr) << ','
            << fmt_double(hdr) << ',' << fmt_double(pld) << ','
            << fmt_double(hdr * pld) << '\n';
      }
    }
  }
}

}  // namespace lrfhss
