#pragma once

#include "lrfhss/analytic.hpp"
#include "lrfhss/core.hpp"
#include "lrfhss/decoder.hpp"
#include "lrfhss/simulator.hpp"

namespace lrfhss {

struct DetectionReport {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  double f1 = 1.0;
  double occupancy = 0.0;
  long long total_fragments = 0;
};

// Pair membership over distinct (s,t): a transmission repeated in the truth
// counts once, since the decoded set cannot represent multiplicity. f1 is
// 2tp / (2tp + fp + fn), defined as 1 when all three counts are zero.
// occupancy_value is carried through to the report.
DetectionReport score_detection(const TransmissionSet& tx,
                                const DecodedSet& dec,
                                double occupancy_value = 0.0);

// Fraction of transmitted frames (full multiset) that were detected and kept
// enough collision-free fragments for the coding rate: at least
// ceil(threshold * p) of the frame's cells hold exactly one fragment.
double score_extraction(const TransmissionSet& tx, const DecodedSet& dec,
                        const CollisionMap& cmap, const SequenceSet& seqs,
                        Fraction threshold);

// closed-form reception rate of a header-dependent receiver under the same
// load, used as the comparison baseline
double headerfull_baseline(const AnalyticScenario& sc);

struct ExtractionReport {
  double headerless_rate = 0.0;
  double headerfull_rate = 0.0;
  CodingRate config = CodingRate::cr_1_3;
};

ExtractionReport score_extraction_report(const TransmissionSet& tx,
                                         const DecodedSet& dec,
                                         const CollisionMap& cmap,
                                         const SequenceSet& seqs,
                                         CodingRate config,
                                         const AnalyticScenario& baseline);

}  // namespace lrfhss
