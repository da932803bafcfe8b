#include "lrfhss/metrics.hpp"

#include <unordered_set>

#include "lrfhss/errors.hpp"

namespace lrfhss {

namespace {

std::uint64_t pair_key(int s, int t) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t)) << 32) |
         static_cast<std::uint32_t>(s);
}

}  // namespace

DetectionReport score_detection(const TransmissionSet& tx,
                                const DecodedSet& dec,
                                double occupancy_value) {
  DetectionReport rep;
  rep.occupancy = occupancy_value;

  std::unordered_set<std::uint64_t> truth;
  truth.reserve(tx.size() * 2);
  for (const auto& item : tx) {
    rep.total_fragments += item.p;
    truth.insert(pair_key(item.s, item.t));
  }

  for (std::uint64_t key : truth) {
    const int t = static_cast<int>(key >> 32);
    const int s = static_cast<int>(key & 0xffffffffu);
    if (dec.contains(s, t)) {
      ++rep.tp;
    } else {
      ++rep.fn;
    }
  }
  rep.fp = static_cast<long long>(dec.size()) - rep.tp;

  const long long denom = 2 * rep.tp + rep.fp + rep.fn;
  rep.f1 = denom == 0 ? 1.0 : 2.0 * rep.tp / static_cast<double>(denom);
  return rep;
}

double score_extraction(const TransmissionSet& tx, const DecodedSet& dec,
                        const CollisionMap& cmap, const SequenceSet& seqs,
                        Fraction threshold) {
  if (tx.empty()) return 0.0;
  long long extracted = 0;
  for (const auto& item : tx) {
    if (!dec.contains(item.s, item.t)) continue;
    const auto& hops = seqs.hops(item.s);
    const int needed = required_count(threshold, item.p);
    int clean = 0;
    for (int k = 0; k < item.p; ++k) {
      if (cmap.count(item.t + k, hops[k]) == 1) ++clean;
    }
    if (clean >= needed) ++extracted;
  }
  return static_cast<double>(extracted) / static_cast<double>(tx.size());
}

double headerfull_baseline(const AnalyticScenario& sc) { return p_frame(sc); }

ExtractionReport score_extraction_report(const TransmissionSet& tx,
                                         const DecodedSet& dec,
                                         const CollisionMap& cmap,
                                         const SequenceSet& seqs,
                                         CodingRate config,
                                         const AnalyticScenario& baseline) {
  ExtractionReport rep;
  rep.config = config;
  rep.headerless_rate =
      score_extraction(tx, dec, cmap, seqs, cr_threshold(config));
  rep.headerfull_rate = headerfull_baseline(baseline);
  return rep;
}

}  // namespace lrfhss
