#include "lrfhss/core.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "lrfhss/errors.hpp"
#include "lrfhss/rng.hpp"

namespace lrfhss {

std::string to_string(CodingRate cr) {
  return cr == CodingRate::cr_1_3 ? "1/3" : "2/3";
}

Fraction cr_threshold(CodingRate cr) {
  return cr == CodingRate::cr_1_3 ? Fraction{1, 3} : Fraction{2, 3};
}

int replicas_for(CodingRate cr) {
  return cr == CodingRate::cr_1_3 ? 3 : 2;
}

namespace {

RegionalPreset make_preset(const std::string& name, int obw_per_grid,
                           int grids, CodingRate cr) {
  RegionalPreset p;
  p.name = name;
  p.obw_per_grid = obw_per_grid;
  p.grids = grids;
  p.obw_total = grids * obw_per_grid;
  p.coding_rate = cr;
  p.header_replicas = replicas_for(cr);
  p.slot_ms = 102.4;
  p.header_ms = 233.0;
  return p;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "EU_DR8", "EU_DR9", "EU_DR10", "EU_DR11", "US_DR5", "US_DR6"};
  return names;
}

RegionalPreset preset(const std::string& name) {
  if (name == "EU_DR8") return make_preset(name, 35, 8, CodingRate::cr_1_3);
  if (name == "EU_DR9") return make_preset(name, 35, 8, CodingRate::cr_2_3);
  if (name == "EU_DR10") return make_preset(name, 86, 8, CodingRate::cr_1_3);
  if (name == "EU_DR11") return make_preset(name, 86, 8, CodingRate::cr_2_3);
  if (name == "US_DR5") return make_preset(name, 60, 52, CodingRate::cr_1_3);
  if (name == "US_DR6") return make_preset(name, 60, 52, CodingRate::cr_2_3);
  throw UnknownPresetError("unknown preset: " + name);
}

namespace {

// obw_count^max_len >= count, with early exit so nothing overflows
bool uniqueness_feasible(int count, int obw_count, int max_len) {
  std::uint64_t capacity = 1;
  for (int i = 0; i < max_len; ++i) {
    if (capacity >= static_cast<std::uint64_t>(count)) return true;
    capacity *= static_cast<std::uint64_t>(obw_count);
  }
  return capacity >= static_cast<std::uint64_t>(count);
}

}  // namespace

SequenceSet generate_sequences(int count, int obw_count, int max_len,
                               std::uint64_t seed) {
  if (count < 1 || obw_count < 1 || max_len < 1) {
    throw Error("generate_sequences: count, obw_count and max_len must be >= 1");
  }
  if (!uniqueness_feasible(count, obw_count, max_len)) {
    throw InfeasibleUniquenessError(
        "cannot draw " + std::to_string(count) + " distinct sequences of " +
        std::to_string(max_len) + " hops over " + std::to_string(obw_count) +
        " channels");
  }

  SequenceSet set;
  set.seed = seed;
  set.obw_count = obw_count;
  set.max_len = max_len;
  set.sequences.reserve(count);

  Rng rng(seed);
  std::set<std::vector<int>> seen;
  std::vector<int> hops(max_len);
  while (set.count() < count) {
    for (int k = 0; k < max_len; ++k) {
      hops[k] = static_cast<int>(
          rng.below(static_cast<std::uint64_t>(obw_count)));
    }
    if (!seen.insert(hops).second) continue;
    HoppingSequence seq;
    seq.id = set.count();
    seq.hops = hops;
    set.sequences.push_back(std::move(seq));
  }
  return set;
}

void write_sequences(const SequenceSet& set, std::ostream& out) {
  for (const auto& seq : set.sequences) {
    if (static_cast<int>(seq.hops.size()) != set.max_len) {
      throw Error("write_sequences: sequence length differs from max_len");
    }
  }
  out << set.count() << ' ' << set.obw_count << ' ' << set.max_len << ' '
      << set.seed << '\n';
  for (const auto& seq : set.sequences) {
    for (std::size_t k = 0; k < seq.hops.size(); ++k) {
      if (k > 0) out << ' ';
      out << seq.hops[k];
    }
    out << '\n';
  }
}

SequenceSet read_sequences(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw ParseError("sequence file: missing header line");
  }
  std::istringstream hs(header);
  long long s_count = 0, c = 0, pmax = 0;
  unsigned long long seed = 0;
  if (!(hs >> s_count >> c >> pmax >> seed)) {
    throw ParseError("sequence file: header must be `S C PMAX SEED`");
  }
  std::string trailing;
  if (hs >> trailing) {
    throw ParseError("sequence file: header has extra fields");
  }
  if (s_count < 1 || c < 1 || pmax < 1) {
    throw ParseError("sequence file: header fields must be positive");
  }

  SequenceSet set;
  set.seed = seed;
  set.obw_count = static_cast<int>(c);
  set.max_len = static_cast<int>(pmax);
  set.sequences.reserve(static_cast<std::size_t>(s_count));
  std::string line;
  for (long long i = 0; i < s_count; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError("sequence file: expected " + std::to_string(s_count) +
                       " sequences, got " + std::to_string(i));
    }
    std::istringstream ls(line);
    HoppingSequence seq;
    seq.id = static_cast<int>(i);
    seq.hops.reserve(static_cast<std::size_t>(pmax));
    long long hop = 0;
    while (ls >> hop) {
      if (hop < 0 || hop >= c) {
        throw ParseError("sequence file: hop " + std::to_string(hop) +
                         " out of range on line " + std::to_string(i + 2));
      }
      seq.hops.push_back(static_cast<int>(hop));
    }
    if (!ls.eof()) {
      throw ParseError("sequence file: malformed hop on line " +
                       std::to_string(i + 2));
    }
    if (static_cast<long long>(seq.hops.size()) != pmax) {
      throw ParseError("sequence file: line " + std::to_string(i + 2) +
                       " has " + std::to_string(seq.hops.size()) +
                       " hops, expected " + std::to_string(pmax));
    }
    set.sequences.push_back(std::move(seq));
  }
  return set;
}

void save_sequences(const SequenceSet& set,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_sequences(set, out);
  if (!out) throw IoError("write failed: " + path.string());
}

SequenceSet load_sequences(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return read_sequences(in);
}

void write_transmissions_csv(const TransmissionSet& tx, std::ostream& out) {
  out << "s,t,p\n";
  for (const auto& item : tx) {
    out << item.s << ',' << item.t << ',' << item.p << '\n';
  }
}

TransmissionSet read_transmissions_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "s,t,p") {
    throw ParseError("transmission csv: expected header `s,t,p`");
  }
  TransmissionSet tx;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Transmission item;
    char c1 = 0, c2 = 0;
    std::istringstream ls(line);
    if (!(ls >> item.s >> c1 >> item.t >> c2 >> item.p) || c1 != ',' ||
        c2 != ',') {
      throw ParseError("transmission csv: malformed line " +
                       std::to_string(lineno));
    }
    std::string extra;
    if (ls >> extra) {
      throw ParseError("transmission csv: trailing fields on line " +
                       std::to_string(lineno));
    }
    tx.push_back(item);
  }
  return tx;
}

}  // namespace lrfhss
