#include "lrfhss/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "lrfhss/analytic.hpp"
#include "lrfhss/decoder.hpp"
#include "lrfhss/errors.hpp"
#include "lrfhss/rng.hpp"
#include "lrfhss/textio.hpp"

namespace lrfhss {

std::string to_string(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::greedy: return "greedy";
    case DecoderKind::online: return "online";
    case DecoderKind::exact: return "exact";
  }
  throw Error("invalid decoder kind");
}

DecoderKind decoder_from_name(const std::string& name) {
  if (name == "greedy") return DecoderKind::greedy;
  if (name == "online") return DecoderKind::online;
  if (name == "exact") return DecoderKind::exact;
  throw Error("unknown decoder '" + name + "', expected greedy, online or exact");
}

std::vector<int> default_frame_range() {
  std::vector<int> range;
  for (int f = 500; f <= 3300; f += 100) range.push_back(f);
  return range;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.C < 1) throw Error("config: C must be at least 1");
  if (cfg.S < 1) throw Error("config: S must be at least 1");
  if (cfg.T_slots < 1) throw Error("config: T_slots must be at least 1");
  if (cfg.P_max < 1) throw Error("config: P_max must be at least 1");
  if (cfg.frame_range.empty()) throw Error("config: frame_range is empty");
  for (int f : cfg.frame_range) {
    if (f < 0) throw Error("config: frame counts must be non-negative");
  }
  if (cfg.fragment_values.empty())
    throw Error("config: fragment_values is empty");
  for (int p : cfg.fragment_values) {
    if (p < 1 || p > cfg.P_max)
      throw Error("config: fragment count " + std::to_string(p) +
                  " outside [1, " + std::to_string(cfg.P_max) + "]");
    if (p > cfg.T_slots)
      throw Error("config: fragment count " + std::to_string(p) +
                  " exceeds horizon " + std::to_string(cfg.T_slots));
  }
  if (cfg.runs_per_step < 1)
    throw Error("config: runs_per_step must be at least 1");
  if (cfg.workers < 1) throw Error("config: workers must be at least 1");
  if (!(cfg.match_fraction > 0.0) || cfg.match_fraction > 1.0)
    throw Error("config: match_fraction must be in (0, 1]");
  if (cfg.match_fraction < 1.0 && cfg.decoder != DecoderKind::greedy)
    throw Error("config: partial matching is only available with the greedy decoder");
}

DecodedSet run_decoder(DecoderKind kind, const ObservedMatrix& m,
                       const SequenceSet& seqs, int P, double match_fraction) {
  if (match_fraction < 1.0 && kind != DecoderKind::greedy)
    throw Error("partial matching is only available with the greedy decoder");
  switch (kind) {
    case DecoderKind::greedy:
      if (match_fraction < 1.0) return decode_partial(m, seqs, P, match_fraction);
      return decode_greedy(m, seqs, P);
    case DecoderKind::online: return decode_online(m, seqs, P);
    case DecoderKind::exact: return decode_exact(m, seqs, P);
  }
  throw Error("invalid decoder kind");
}

namespace {

struct Job {
  int F = 0;
  int P = 0;
  int run = 0;
};

RunRecord execute(const ExperimentConfig& cfg, const Job& job) {
  RunRecord rec;
  rec.F = job.F;
  rec.P = job.P;
  rec.run = job.run;
  rec.seed = mix_seed(cfg.base_seed, static_cast<std::uint64_t>(job.F),
                      static_cast<std::uint64_t>(job.P),
                      static_cast<std::uint64_t>(job.run));
  rec.decoder = cfg.decoder;

  SequenceSet seqs = generate_sequences(cfg.S, cfg.C, cfg.P_max,
                                        mix_seed(rec.seed, 1, 0, 0));
  TransmissionSet tx = generate_traffic(job.F, seqs, cfg.T_slots, job.P,
                                        mix_seed(rec.seed, 2, 0, 0));
  Observation obs = observe(tx, seqs, cfg.T_slots, cfg.C);

  auto start = std::chrono::steady_clock::now();
  DecodedSet dec =
      run_decoder(cfg.decoder, obs.matrix, seqs, job.P, cfg.match_fraction);
  rec.decode_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  rec.detection = score_detection(tx, dec, occupancy(obs.matrix));
  rec.extraction_fast = score_extraction(tx, dec, obs.collisions, seqs,
                                         cr_threshold(CodingRate::cr_2_3));
  rec.extraction_robust = score_extraction(tx, dec, obs.collisions, seqs,
                                           cr_threshold(CodingRate::cr_1_3));
  rec.headerfull_fast = headerfull_baseline(make_scenario(
      CodingRate::cr_2_3, cfg.C, cfg.T_slots, job.P, job.F));
  rec.headerfull_robust = headerfull_baseline(make_scenario(
      CodingRate::cr_1_3, cfg.C, cfg.T_slots, job.P, job.F));
  return rec;
}

std::string read_cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) != 0) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) break;
    auto value = line.substr(colon + 1);
    auto first = value.find_first_not_of(" \t");
    if (first == std::string::npos) break;
    return value.substr(first);
  }
  return "unknown";
}

}  // namespace

std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg) {
  validate(cfg);

  std::vector<Job> jobs;
  for (int F : cfg.frame_range)
    for (int P : cfg.fragment_values)
      for (int run = 0; run < cfg.runs_per_step; ++run)
        jobs.push_back({F, P, run});

  std::vector<RunRecord> records(jobs.size());
  std::vector<std::string> failures;

  if (cfg.workers == 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      try {
        records[i] = execute(cfg, jobs[i]);
      } catch (const std::exception& e) {
        failures.push_back("F=" + std::to_string(jobs[i].F) +
                           " P=" + std::to_string(jobs[i].P) +
                           " run=" + std::to_string(jobs[i].run) + ": " +
                           e.what());
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        try {
          records[i] = execute(cfg, jobs[i]);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          failures.push_back("F=" + std::to_string(jobs[i].F) +
                             " P=" + std::to_string(jobs[i].P) +
                             " run=" + std::to_string(jobs[i].run) + ": " +
                             e.what());
        }
      }
    };
    std::size_t n = std::min<std::size_t>(cfg.workers, jobs.size());
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (!failures.empty()) {
    std::string msg = std::to_string(failures.size()) + " run(s) failed:";
    for (const auto& f : failures) msg += "\n  " + f;
    throw Error(msg);
  }
  return records;
}

std::vector<StepAggregate> aggregate_steps(
    const std::vector<RunRecord>& records) {
  std::vector<StepAggregate> steps;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    while (j < records.size() && records[j].F == records[i].F &&
           records[j].P == records[i].P)
      ++j;

    StepAggregate agg;
    agg.F = records[i].F;
    agg.P = records[i].P;
    agg.runs = static_cast<int>(j - i);
    agg.decoder = records[i].decoder;
    agg.total_fragments =
        static_cast<long long>(agg.F) * static_cast<long long>(agg.P);
    agg.headerfull_fast = records[i].headerfull_fast;
    agg.headerfull_robust = records[i].headerfull_robust;

    auto fold = [&](StepStat& stat, auto getter) {
      stat.min = getter(records[i]);
      stat.max = stat.min;
      double sum = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        double v = getter(records[k]);
        stat.min = std::min(stat.min, v);
        stat.max = std::max(stat.max, v);
        sum += v;
      }
      stat.mean = sum / static_cast<double>(j - i);
    };
    fold(agg.tp, [](const RunRecord& r) { return double(r.detection.tp); });
    fold(agg.fp, [](const RunRecord& r) { return double(r.detection.fp); });
    fold(agg.fn, [](const RunRecord& r) { return double(r.detection.fn); });
    fold(agg.f1, [](const RunRecord& r) { return r.detection.f1; });
    fold(agg.occupancy,
         [](const RunRecord& r) { return r.detection.occupancy; });
    fold(agg.extraction_fast,
         [](const RunRecord& r) { return r.extraction_fast; });
    fold(agg.extraction_robust,
         [](const RunRecord& r) { return r.extraction_robust; });
    fold(agg.decode_seconds,
         [](const RunRecord& r) { return r.decode_seconds; });

    steps.push_back(agg);
    i = j;
  }
  return steps;
}

namespace {

constexpr const char* kSweepHeader =
    "kind,F,P,run,seed,decoder,tp,fp,fn,f1,occupancy,total_fragments,"
    "extraction_fast,extraction_robust,headerfull_fast,headerfull_robust,"
    "decode_seconds,tp_min,tp_max,fp_min,fp_max,fn_min,fn_max,f1_min,f1_max,"
    "occupancy_min,occupancy_max,extraction_fast_min,extraction_fast_max,"
    "extraction_robust_min,extraction_robust_max,decode_seconds_min,"
    "decode_seconds_max";

void write_run_row(std::ostream& out, const RunRecord& r) {
  out << "run," << r.F << ',' << r.P << ',' << r.run << ',' << r.seed << ','
      << to_string(r.decoder) << ',' << r.detection.tp << ',' << r.detection.fp
      << ',' << r.detection.fn << ',' << fmt_double(r.detection.f1) << ','
      << fmt_double(r.detection.occupancy) << ','
      << r.detection.total_fragments << ',' << fmt_double(r.extraction_fast)
      << ',' << fmt_double(r.extraction_robust) << ','
      << fmt_double(r.headerfull_fast) << ',' << fmt_double(r.headerfull_robust)
      << ',' << fmt_double(r.decode_seconds)
      << ",,,,,,,,,,,,,,,,\n";
}

void write_step_row(std::ostream& out, const StepAggregate& a) {
  out << "step," << a.F << ',' << a.P << ",,," << to_string(a.decoder) << ','
      << fmt_double(a.tp.mean) << ',' << fmt_double(a.fp.mean) << ','
      << fmt_double(a.fn.mean) << ',' << fmt_double(a.f1.mean) << ','
      << fmt_double(a.occupancy.mean) << ',' << a.total_fragments << ','
      << fmt_double(a.extraction_fast.mean) << ','
      << fmt_double(a.extraction_robust.mean) << ','
      << fmt_double(a.headerfull_fast) << ',' << fmt_double(a.headerfull_robust)
      << ',' << fmt_double(a.decode_seconds.mean) << ','
      << fmt_double(a.tp.min) << ',' << fmt_double(a.tp.max) << ','
      << fmt_double(a.fp.min) << ',' << fmt_double(a.fp.max) << ','
      << fmt_double(a.fn.min) << ',' << fmt_double(a.fn.max) << ','
      << fmt_double(a.f1.min) << ',' << fmt_double(a.f1.max) << ','
      << fmt_double(a.occupancy.min) << ',' << fmt_double(a.occupancy.max)
      << ',' << fmt_double(a.extraction_fast.min) << ','
      << fmt_double(a.extraction_fast.max) << ','
      << fmt_double(a.extraction_robust.min) << ','
      << fmt_double(a.extraction_robust.max) << ','
      << fmt_double(a.decode_seconds.min) << ','
      << fmt_double(a.decode_seconds.max) << '\n';
}

}  // namespace

void emit_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << kSweepHeader << '\n';
  auto steps = aggregate_steps(records);
  std::size_t i = 0;
  for (const auto& step : steps) {
    while (i < records.size() && records[i].F == step.F &&
           records[i].P == step.P) {
      write_run_row(out, records[i]);
      ++i;
    }
    write_step_row(out, step);
  }
}

void write_csv(const std::vector<RunRecord>& records,
               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  emit_csv(records, out);
  if (!out) throw IoError("failed writing " + path.string());
}

BenchTable benchmark(const ExperimentConfig& cfg) {
  BenchTable table;
  table.cpu_model = read_cpu_model();
  table.cores = static_cast<int>(std::thread::hardware_concurrency());
  for (const auto& step : aggregate_steps(run_sweep(cfg))) {
    BenchRow row;
    row.F = step.F;
    row.P = step.P;
    row.runs = step.runs;
    row.decoder = step.decoder;
    row.mean_seconds = step.decode_seconds.mean;
    row.min_seconds = step.decode_seconds.min;
    row.max_seconds = step.decode_seconds.max;
    row.total_fragments = step.total_fragments;
    table.rows.push_back(row);
  }
  return table;
}

void write_bench_csv(const BenchTable& table, std::ostream& out) {
  out << "F,P,decoder,runs,mean_seconds,min_seconds,max_seconds,"
         "total_fragments,cpu,cores\n";
  for (const auto& row : table.rows) {
    out << row.F << ',' << row.P << ',' << to_string(row.decoder) << ','
        << row.runs << ',' << fmt_double(row.mean_seconds) << ','
        << fmt_double(row.min_seconds) << ',' << fmt_double(row.max_seconds)
        << ',' << row.total_fragments << ',' << csv_quote(table.cpu_model)
        << ',' << table.cores << '\n';
  }
}

}  // namespace lrfhss
