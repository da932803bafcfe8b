#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "helpers.hpp"
#include "lrfhss/analytic.hpp"
#include "lrfhss/decoder.hpp"
#include "lrfhss/harness.hpp"
#include "lrfhss/rng.hpp"
#include "lrfhss/simulator.hpp"

using namespace lrfhss;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string binary() {
  const char* bin = std::getenv("LRFHSS_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "LRFHSS_BIN must point at the CLI binary");
  return bin;
}

CliResult run_cli(const std::string& args) {
  testutil::TempDir dir;
  auto out_path = dir.path() / "out";
  auto err_path = dir.path() / "err";
  std::string cmd = binary() + " " + args + " > " + out_path.string() +
                    " 2> " + err_path.string();
  int rc = std::system(cmd.c_str());
  CliResult result;
  result.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  result.out = testutil::slurp(out_path);
  result.err = testutil::slurp(err_path);
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string strip_timing_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::size_t> keep;
  std::ostringstream out;
  bool header = true;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    if (header) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i].rfind("decode_seconds", 0) != 0) keep.push_back(i);
      header = false;
    }
    for (std::size_t k = 0; k < keep.size(); ++k) {
      if (k) out << ',';
      out << fields[keep[k]];
    }
    out << '\n';
  }
  return out.str();
}

constexpr const char* kTinyGrid =
    "--obws 5 --slots 40 --sequences 16 --max-fragments 6 "
    "--frames 5 10 --fragments 2 4 --runs 2 --seed 7";

struct SimFiles {
  testutil::TempDir dir;
  std::filesystem::path matrix, sequences, cells, truth;

  SimFiles() {
    matrix = dir.path() / "m.txt";
    sequences = dir.path() / "s.txt";
    cells = dir.path() / "cells.csv";
    truth = dir.path() / "truth.csv";
    auto r = run_cli(
        "simulate --obws 6 --slots 30 --sequences 12 --max-fragments 5 "
        "--frames 6 --fragments 4 --seed 11 --out-matrix " +
        matrix.string() + " --out-sequences " + sequences.string() +
        " --out-cells " + cells.string() + " --out-truth " + truth.string());
    REQUIRE(r.code == 0);
  }
};

}  // namespace

TEST_CASE("cli requires a subcommand") {
  auto r = run_cli("");
  CHECK(r.code != 0);
  CHECK(!r.err.empty());
}

TEST_CASE("cli help lists every subcommand") {
  auto r = run_cli("--help");
  CHECK(r.code == 0);
  for (const char* name :
       {"sweep", "decode", "analytic", "export-lp", "bench", "simulate"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("cli version flag") {
  auto r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("lrfhss") != std::string::npos);
}

TEST_CASE("simulate artifacts round-trip through the library loaders") {
  SimFiles files;
  auto m = load_matrix(files.matrix);
  CHECK(m.slots() == 30);
  CHECK(m.obws() == 6);
  CHECK(m.ones() > 0);
  auto seqs = load_sequences(files.sequences);
  CHECK(seqs.count() == 12);
  CHECK(seqs.max_len == 5);

  auto truth = lines_of(testutil::slurp(files.truth));
  REQUIRE(truth.size() == 7);
  CHECK(truth[0] == "s,t,p");
  auto cells = lines_of(testutil::slurp(files.cells));
  CHECK(cells[0] == "t,c,count");
  CHECK(cells.size() > 1);

  // the artifacts must describe the same instance
  std::istringstream truth_in(testutil::slurp(files.truth));
  auto tx = read_transmissions_csv(truth_in);
  auto obs = observe(tx, seqs, 30, 6);
  CHECK(obs.matrix == m);
}

TEST_CASE("decode reproduces the library decoders") {
  SimFiles files;
  auto m = load_matrix(files.matrix);
  auto seqs = load_sequences(files.sequences);

  auto greedy = run_cli("decode " + files.matrix.string() + " " +
                        files.sequences.string() + " --fragments 4");
  REQUIRE(greedy.code == 0);
  std::ostringstream expected;
  write_transmissions_csv(decode_greedy(m, seqs, 4).items, expected);
  CHECK(greedy.out == expected.str());

  auto exact = run_cli("decode " + files.matrix.string() + " " +
                       files.sequences.string() +
                       " --fragments 4 --decoder exact");
  REQUIRE(exact.code == 0);
  std::ostringstream expected_exact;
  write_transmissions_csv(decode_exact(m, seqs, 4).items, expected_exact);
  CHECK(exact.out == expected_exact.str());

  auto partial = run_cli("decode " + files.matrix.string() + " " +
                         files.sequences.string() +
                         " --fragments 4 --match-fraction 0.75");
  REQUIRE(partial.code == 0);
  std::ostringstream expected_partial;
  write_transmissions_csv(decode_partial(m, seqs, 4, 0.75).items,
                          expected_partial);
  CHECK(partial.out == expected_partial.str());
}

TEST_CASE("export-lp writes the library program text") {
  SimFiles files;
  auto m = load_matrix(files.matrix);
  auto seqs = load_sequences(files.sequences);
  auto r = run_cli("export-lp " + files.matrix.string() + " " +
                   files.sequences.string() + " --fragments 4");
  REQUIRE(r.code == 0);
  std::ostringstream expected;
  export_lp(m, seqs, 4, expected);
  CHECK(r.out == expected.str());
}

TEST_CASE("analytic emits the pinned header over the requested grid") {
  auto r = run_cli(
      "analytic --obws 35 --slots 1000 --fragments 10 30 --ntx-max 300 "
      "--ntx-step 100");
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 1 + 2 * 2 * 4);
  CHECK(lines[0] == "n_tx,P,config,p_hdr,p_pld,p_frame");

  std::ostringstream expected;
  emit_analytic_csv(35, 1000, {10, 30}, {0.0, 100.0, 200.0, 300.0},
                    {CodingRate::cr_2_3, CodingRate::cr_1_3}, expected);
  CHECK(r.out == expected.str());
}

TEST_CASE("sweep output equals the library harness") {
  auto r = run_cli(std::string("sweep ") + kTinyGrid);
  REQUIRE(r.code == 0);

  ExperimentConfig cfg;
  cfg.C = 5;
  cfg.S = 16;
  cfg.T_slots = 40;
  cfg.P_max = 6;
  cfg.frame_range = {5, 10};
  cfg.fragment_values = {2, 4};
  cfg.runs_per_step = 2;
  cfg.base_seed = 7;
  std::ostringstream expected;
  emit_csv(run_sweep(cfg), expected);
  CHECK(strip_timing_columns(r.out) == strip_timing_columns(expected.str()));
}

TEST_CASE("sweep renders plots on request") {
  testutil::TempDir dir;
  auto prefix = dir.path() / "figs" / "t";
  auto r = run_cli(std::string("sweep ") + kTinyGrid + " --plots " +
                   prefix.string() + " -o " + (dir.path() / "s.csv").string());
  REQUIRE(r.code == 0);
  for (const char* suffix :
       {"_f1.svg", "_detection.svg", "_occupancy.svg", "_extraction_fast.svg",
        "_extraction_robust.svg", "_timing.svg"}) {
    std::filesystem::path p = prefix;
    p += suffix;
    CHECK(std::filesystem::exists(p));
    CHECK(testutil::slurp(p).find("</svg>") != std::string::npos);
  }
  CHECK(!testutil::slurp(dir.path() / "s.csv").empty());
}

TEST_CASE("bench emits one row per step with host metadata") {
  auto r = run_cli(std::string("bench ") + kTinyGrid);
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] ==
        "F,P,decoder,runs,mean_seconds,min_seconds,max_seconds,"
        "total_fragments,cpu,cores");
  CHECK(lines[1].rfind("5,2,greedy,2,", 0) == 0);
}

TEST_CASE("config file supplies defaults and command-line flags win") {
  testutil::TempDir dir;
  auto cfg_path = dir.path() / "cfg.ini";
  testutil::spit(cfg_path,
                 "[sweep]\nobws=5\nslots=40\nsequences=16\nmax-fragments=6\n"
                 "runs=2\nseed=3\n");
  auto from_file = run_cli("--config " + cfg_path.string() +
                           " sweep --frames 5 --fragments 2");
  REQUIRE(from_file.code == 0);
  auto overridden = run_cli("--config " + cfg_path.string() +
                            " sweep --frames 5 --fragments 2 --seed 9");
  REQUIRE(overridden.code == 0);
  auto all_flags = run_cli(
      "sweep --obws 5 --slots 40 --sequences 16 --max-fragments 6 --runs 2 "
      "--frames 5 --fragments 2 --seed 9");
  REQUIRE(all_flags.code == 0);
  CHECK(strip_timing_columns(overridden.out) ==
        strip_timing_columns(all_flags.out));
  CHECK(strip_timing_columns(from_file.out) !=
        strip_timing_columns(overridden.out));
}

TEST_CASE("failures exit nonzero with a diagnostic") {
  auto missing = run_cli("decode missing.txt also-missing.txt --fragments 4");
  CHECK(missing.code == 1);
  CHECK(missing.err.find("error:") != std::string::npos);

  auto bad_decoder = run_cli(std::string("sweep ") + kTinyGrid +
                             " --decoder simplex");
  CHECK(bad_decoder.code != 0);
  CHECK(!bad_decoder.err.empty());

  auto bad_fragments = run_cli(
      "sweep --obws 5 --slots 40 --sequences 16 --max-fragments 6 "
      "--frames 5 --fragments 0 --runs 1 --seed 1");
  CHECK(bad_fragments.code == 1);
  CHECK(bad_fragments.err.find("error:") != std::string::npos);
}
