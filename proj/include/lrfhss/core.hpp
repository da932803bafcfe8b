#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace lrfhss {

enum class CodingRate { cr_1_3, cr_2_3 };

std::string to_string(CodingRate cr);

// exact rational threshold, used for coding-rate fragment requirements
struct Fraction {
  int num;
  int den;
};

// smallest k with k >= f*p, computed in integers
inline int required_count(Fraction f, int p) {
  return (f.num * p + f.den - 1) / f.den;
}

// fraction of fragments that must survive for the payload to decode
Fraction cr_threshold(CodingRate cr);

// header replica count paired with the coding rate
int replicas_for(CodingRate cr);

struct RegionalPreset {
  std::string name;
  int obw_per_grid = 0;
  int grids = 0;
  int obw_total = 0;
  CodingRate coding_rate = CodingRate::cr_1_3;
  int header_replicas = 0;
  double slot_ms = 0.0;
  double header_ms = 0.0;
};

// EU_DR8, EU_DR9, EU_DR10, EU_DR11, US_DR5, US_DR6
RegionalPreset preset(const std::string& name);
const std::vector<std::string>& preset_names();

struct HoppingSequence {
  int id = 0;
  std::vector<int> hops;  // OBW indices, each in [0, C)
};

struct SequenceSet {
  std::vector<HoppingSequence> sequences;
  std::uint64_t seed = 0;
  int obw_count = 0;  // C
  int max_len = 0;    // hops per sequence

  int count() const { return static_cast<int>(sequences.size()); }
  const std::vector<int>& hops(int s) const { return sequences[s].hops; }
};

// Draws `count` distinct sequences of `max_len` hops, each hop uniform in
// [0, obw_count). A draw that duplicates an earlier sequence is discarded
// and redrawn whole. Deterministic per seed.
SequenceSet generate_sequences(int count, int obw_count, int max_len,
                               std::uint64_t seed);

// One frame transmission: sequence id, start slot (1-based), fragment count.
struct Transmission {
  int s = 0;
  int t = 0;
  int p = 0;

  friend bool operator==(const Transmission&, const Transmission&) = default;
};

// duplicates permitted
using TransmissionSet = std::vector<Transmission>;

// Text format, one header line then one line per sequence:
//   S C PMAX SEED
//   hop hop hop ...
void write_sequences(const SequenceSet& set, std::ostream& out);
SequenceSet read_sequences(std::istream& in);
void save_sequences(const SequenceSet& set, const std::filesystem::path& path);
SequenceSet load_sequences(const std::filesystem::path& path);

// CSV with columns: s,t,p
void write_transmissions_csv(const TransmissionSet& tx, std::ostream& out);
TransmissionSet read_transmissions_csv(std::istream& in);

}  // namespace lrfhss
