#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lrfhss/analytic.hpp"
#include "lrfhss/decoder.hpp"
#include "lrfhss/errors.hpp"
#include "lrfhss/harness.hpp"
#include "lrfhss/plots.hpp"
#include "lrfhss/rng.hpp"
#include "lrfhss/simulator.hpp"

namespace {

using namespace lrfhss;

template <typename Fn>
void with_output(const std::string& path, Fn fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  fn(out);
  if (!out) throw IoError("failed writing " + path);
}

struct SweepArgs {
  ExperimentConfig cfg;
  std::string decoder = "greedy";
  std::string out;
  std::string plots;
};

void add_grid_options(CLI::App* cmd, SweepArgs& args) {
  cmd->add_option("--obws", args.cfg.C, "channels in the observed matrix")
      ->capture_default_str();
  cmd->add_option("--slots", args.cfg.T_slots, "time slots per horizon")
      ->capture_default_str();
  cmd->add_option("--sequences", args.cfg.S, "hopping sequences per set")
      ->capture_default_str();
  cmd->add_option("--max-fragments", args.cfg.P_max,
                  "generated sequence length, the highest usable fragment count")
      ->capture_default_str();
  cmd->add_option("--frames", args.cfg.frame_range,
                  "frame counts, one sweep step per value")
      ->expected(-1);
  cmd->add_option("--fragments", args.cfg.fragment_values,
                  "fragments per frame, one series per value")
      ->expected(-1);
  cmd->add_option("--runs", args.cfg.runs_per_step, "repetitions per step")
      ->capture_default_str();
  cmd->add_option("--seed", args.cfg.base_seed, "base seed for all runs")
      ->capture_default_str();
  cmd->add_option("--decoder", args.decoder, "greedy, online or exact")
      ->check(CLI::IsMember({"greedy", "online", "exact"}))
      ->capture_default_str();
  cmd->add_option("--match-fraction", args.cfg.match_fraction,
                  "fraction of window cells that must be busy (greedy only)")
      ->capture_default_str();
  cmd->add_option("--workers", args.cfg.workers, "concurrent runs")
      ->capture_default_str();
}

int run_sweep_cmd(SweepArgs& args) {
  args.cfg.decoder = decoder_from_name(args.decoder);
  auto records = run_sweep(args.cfg);
  with_output(args.out, [&](std::ostream& out) { emit_csv(records, out); });
  if (!args.plots.empty()) {
    auto files = emit_plots(args.cfg, records, args.plots);
    for (const auto& f : files) std::cerr << "wrote " << f.string() << '\n';
  }
  return 0;
}

int run_bench_cmd(SweepArgs& args) {
  args.cfg.decoder = decoder_from_name(args.decoder);
  auto table = benchmark(args.cfg);
  with_output(args.out,
              [&](std::ostream& out) { write_bench_csv(table, out); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LR-FHSS headerless frame recovery toolkit"};
  app.set_version_flag("--version", "lrfhss 1.0.0");
  app.set_config("--config", "",
                 "read option defaults from a config file; sections are named "
                 "after subcommands and command-line flags take precedence");
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "run the experiment grid and emit the results CSV");
  add_grid_options(sweep, sweep_args);
  sweep->add_option("-o,--out", sweep_args.out,
                    "CSV output path (stdout when omitted)");
  sweep->add_option("--plots", sweep_args.plots,
                    "also render SVG figures at this path prefix");
  sweep->callback([&] { run_sweep_cmd(sweep_args); });

  SweepArgs bench_args;
  auto* bench = app.add_subcommand(
      "bench", "time the decoder across the grid and emit a timing CSV");
  add_grid_options(bench, bench_args);
  bench->add_option("-o,--out", bench_args.out,
                    "CSV output path (stdout when omitted)");
  bench->callback([&] { run_bench_cmd(bench_args); });

  struct {
    std::string matrix, sequences, out;
    int P = 0;
    std::string decoder = "greedy";
    double match_fraction = 1.0;
  } dec;
  auto* decode = app.add_subcommand(
      "decode", "recover transmissions from a saved matrix and sequence set");
  decode->add_option("matrix", dec.matrix, "matrix file")->required();
  decode->add_option("sequences", dec.sequences, "sequence set file")
      ->required();
  decode->add_option("--fragments", dec.P, "fragments per frame")->required();
  decode->add_option("--decoder", dec.decoder, "greedy, online or exact")
      ->check(CLI::IsMember({"greedy", "online", "exact"}))
      ->capture_default_str();
  decode->add_option("--match-fraction", dec.match_fraction,
                     "fraction of window cells that must be busy (greedy only)")
      ->capture_default_str();
  decode->add_option("-o,--out", dec.out, "CSV output path (stdout when omitted)");
  decode->callback([&] {
    auto m = load_matrix(dec.matrix);
    auto seqs = load_sequences(dec.sequences);
    auto found = run_decoder(decoder_from_name(dec.decoder), m, seqs, dec.P,
                             dec.match_fraction);
    with_output(dec.out, [&](std::ostream& out) {
      write_transmissions_csv(found.items, out);
    });
  });

  struct {
    std::string matrix, sequences, out;
    int P = 0;
  } lp;
  auto* export_lp_cmd = app.add_subcommand(
      "export-lp", "write the recovery problem as an LP file for an external solver");
  export_lp_cmd->add_option("matrix", lp.matrix, "matrix file")->required();
  export_lp_cmd->add_option("sequences", lp.sequences, "sequence set file")
      ->required();
  export_lp_cmd->add_option("--fragments", lp.P, "fragments per frame")
      ->required();
  export_lp_cmd->add_option("-o,--out", lp.out,
                            "LP output path (stdout when omitted)");
  export_lp_cmd->callback([&] {
    auto m = load_matrix(lp.matrix);
    auto seqs = load_sequences(lp.sequences);
    with_output(lp.out,
                [&](std::ostream& out) { export_lp(m, seqs, lp.P, out); });
  });

  struct {
    int C = 35, T = 1000;
    std::vector<int> fragments = {10, 30, 50, 70, 90};
    double ntx_max = 3000.0, ntx_step = 100.0;
    std::vector<std::string> configs = {"fast", "robust"};
    std::string out;
  } ana;
  auto* analytic = app.add_subcommand(
      "analytic", "evaluate the loss model over a grid and emit a CSV");
  analytic->add_option("--obws", ana.C, "channel count")->capture_default_str();
  analytic->add_option("--slots", ana.T, "time slots per horizon")
      ->capture_default_str();
  analytic->add_option("--fragments", ana.fragments,
                       "fragments per frame, one series per value")
      ->expected(-1);
  analytic->add_option("--ntx-max", ana.ntx_max, "largest transmission count")
      ->capture_default_str();
  analytic->add_option("--ntx-step", ana.ntx_step, "transmission count step")
      ->capture_default_str();
  analytic->add_option("--configs", ana.configs, "fast and/or robust")
      ->expected(-1)
      ->check(CLI::IsMember({"fast", "robust"}));
  analytic->add_option("-o,--out", ana.out,
                       "CSV output path (stdout when omitted)");
  analytic->callback([&] {
    if (ana.ntx_step <= 0.0) throw Error("--ntx-step must be positive");
    std::vector<double> ntx;
    for (double v = 0.0; v <= ana.ntx_max + 1e-9; v += ana.ntx_step)
      ntx.push_back(v);
    std::vector<CodingRate> configs;
    for (const auto& name : ana.configs)
      configs.push_back(config_from_name(name));
    with_output(ana.out, [&](std::ostream& out) {
      emit_analytic_csv(ana.C, ana.T, ana.fragments, ntx, configs, out);
    });
  });

  struct {
    int C = 35, T = 1000, S = 512, max_len = 90, F = 1000, P = 30;
    std::uint64_t seed = 1;
    std::string out_matrix, out_cells, out_sequences, out_truth;
  } sim;
  auto* simulate = app.add_subcommand(
      "simulate", "draw one random instance and save its artifacts");
  simulate->add_option("--obws", sim.C, "channel count")->capture_default_str();
  simulate->add_option("--slots", sim.T, "time slots per horizon")
      ->capture_default_str();
  simulate->add_option("--sequences", sim.S, "hopping sequences per set")
      ->capture_default_str();
  simulate->add_option("--max-fragments", sim.max_len, "generated sequence length")
      ->capture_default_str();
  simulate->add_option("--frames", sim.F, "frames to transmit")
      ->capture_default_str();
  simulate->add_option("--fragments", sim.P, "fragments per frame")
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "instance seed")
      ->capture_default_str();
  simulate->add_option("--out-matrix", sim.out_matrix,
                       "matrix path (stdout when no output is chosen)");
  simulate->add_option("--out-cells", sim.out_cells, "per-cell count CSV path");
  simulate->add_option("--out-sequences", sim.out_sequences,
                       "sequence set path");
  simulate->add_option("--out-truth", sim.out_truth,
                       "ground-truth transmissions CSV path");
  simulate->callback([&] {
    auto seqs = generate_sequences(sim.S, sim.C, sim.max_len,
                                   mix_seed(sim.seed, 1, 0, 0));
    auto tx = generate_traffic(sim.F, seqs, sim.T, sim.P,
                               mix_seed(sim.seed, 2, 0, 0));
    auto obs = observe(tx, seqs, sim.T, sim.C);
    bool any_out = !sim.out_matrix.empty() || !sim.out_cells.empty() ||
                   !sim.out_sequences.empty() || !sim.out_truth.empty();
    if (!any_out || !sim.out_matrix.empty()) {
      with_output(sim.out_matrix,
                  [&](std::ostream& out) { write_matrix(obs.matrix, out); });
    }
    if (!sim.out_cells.empty())
      with_output(sim.out_cells, [&](std::ostream& out) {
        write_cells_csv(obs.collisions, out);
      });
    if (!sim.out_sequences.empty()) save_sequences(seqs, sim.out_sequences);
    if (!sim.out_truth.empty())
      with_output(sim.out_truth, [&](std::ostream& out) {
        write_transmissions_csv(tx, out);
      });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
