#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lrfhss/metrics.hpp"

namespace lrfhss {

enum class DecoderKind { greedy, online, exact };

std::string to_string(DecoderKind kind);
DecoderKind decoder_from_name(const std::string& name);

// 500, 600, ..., 3300
std::vector<int> default_frame_range();

struct ExperimentConfig {
  int C = 35;
  int S = 512;
  int T_slots = 1000;
  int P_max = 90;
  std::vector<int> frame_range = default_frame_range();
  std::vector<int> fragment_values = {10, 30, 50, 70, 90};
  int runs_per_step = 10;
  std::uint64_t base_seed = 1;
  DecoderKind decoder = DecoderKind::greedy;
  double match_fraction = 1.0;
  int workers = 1;
};

void validate(const ExperimentConfig& cfg);

struct RunRecord {
  int F = 0;
  int P = 0;
  int run = 0;
  std::uint64_t seed = 0;
  DecoderKind decoder = DecoderKind::greedy;
  DetectionReport detection;
  double extraction_fast = 0.0;
  double extraction_robust = 0.0;
  double headerfull_fast = 0.0;
  double headerfull_robust = 0.0;
  double decode_seconds = 0.0;
};

// dispatches on kind; match_fraction below 1 relaxes the window scan
DecodedSet run_decoder(DecoderKind kind, const ObservedMatrix& m,
                       const SequenceSet& seqs, int P,
                       double match_fraction = 1.0);

// One record per (F, P, run) triple, in that nesting order. Each run draws a
// fresh sequence set and traffic from seeds derived with mix_seed, so any
// record can be recreated in isolation. Runs may execute on several workers;
// the returned order never depends on scheduling. Per-run errors are
// collected and raised together after the sweep drains.
std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg);

struct StepStat {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct StepAggregate {
  int F = 0;
  int P = 0;
  int runs = 0;
  DecoderKind decoder = DecoderKind::greedy;
  long long total_fragments = 0;
  double headerfull_fast = 0.0;
  double headerfull_robust = 0.0;
  StepStat tp, fp, fn, f1, occupancy, extraction_fast, extraction_robust,
      decode_seconds;
};

// groups consecutive records that share (F, P)
std::vector<StepAggregate> aggregate_steps(
    const std::vector<RunRecord>& records);

// One row per record plus one aggregate row per step. Aggregate rows carry
// the per-step mean in the base metric columns and fill the *_min / *_max
// columns. Columns whose name starts with decode_seconds are wall-clock
// measurements and vary between repeated runs; everything else is a pure
// function of the config and base seed.
void emit_csv(const std::vector<RunRecord>& records, std::ostream& out);
void write_csv(const std::vector<RunRecord>& records,
               const std::filesystem::path& path);

struct BenchRow {
  int F = 0;
  int P = 0;
  int runs = 0;
  DecoderKind decoder = DecoderKind::greedy;
  double mean_seconds = 0.0;
  double min_seconds = 0.0;
  double max_seconds = 0.0;
  long long total_fragments = 0;
};

struct BenchTable {
  std::vector<BenchRow> rows;
  std::string cpu_model;
  int cores = 0;
};

// decode-only wall-clock timing per step, on instances drawn with the same
// seed derivation as run_sweep
BenchTable benchmark(const ExperimentConfig& cfg);
void write_bench_csv(const BenchTable& table, std::ostream& out);

}  // namespace lrfhss
