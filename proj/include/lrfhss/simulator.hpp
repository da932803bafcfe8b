#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lrfhss/core.hpp"

namespace lrfhss {

// T x C occupancy bits. Slots are 1-based, channels 0-based. Rows are packed
// into 64-bit words so decoders can probe cells cheaply.
class ObservedMatrix {
 public:
  ObservedMatrix(int slots, int obws);

  int slots() const { return slots_; }
  int obws() const { return obws_; }
  int words_per_row() const { return words_; }

  bool get(int t, int c) const;
  void set(int t, int c);
  void clear(int t, int c);
  long long ones() const;

  // unchecked fast path for scanners; t must be in [1, slots]
  const std::uint64_t* row(int t) const {
    return bits_.data() + static_cast<std::size_t>(t - 1) * words_;
  }
  bool test_unchecked(int t, int c) const {
    return (row(t)[c >> 6] >> (c & 63)) & 1u;
  }

  friend bool operator==(const ObservedMatrix&,
                         const ObservedMatrix&) = default;

 private:
  void check(int t, int c) const;

  int slots_;
  int obws_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

// per-cell overlap counts; busy vs collided is count 1 vs count >= 2
class CollisionMap {
 public:
  CollisionMap(int slots, int obws);

  int slots() const { return slots_; }
  int obws() const { return obws_; }
  std::uint32_t count(int t, int c) const;
  void add(int t, int c);
  long long total() const;

 private:
  void check(int t, int c) const;

  int slots_;
  int obws_;
  std::vector<std::uint32_t> counts_;
};

// F frames: sequence uniform over the set, start slot uniform over the range
// that keeps all P fragments inside the horizon. Duplicates may occur.
TransmissionSet generate_traffic(int F, const SequenceSet& seqs, int T_slots,
                                 int P, std::uint64_t seed);

struct Observation {
  ObservedMatrix matrix;
  CollisionMap collisions;
};

// Renders every fragment of every transmission into the matrix and the
// collision map. Fragment k of (s,t,p) lands at slot t+k on channel
// hops_s[k], k in [0,p). Fragments are never lost.
Observation observe(const TransmissionSet& tx, const SequenceSet& seqs,
                    int T_slots, int C);

// fraction of matrix cells that are busy
double occupancy(const ObservedMatrix& m);

// Text format: header line `T C`, then T rows of C '0'/'1' characters,
// row for slot 1 first.
void write_matrix(const ObservedMatrix& m, std::ostream& out);
ObservedMatrix read_matrix(std::istream& in);
void save_matrix(const ObservedMatrix& m, const std::filesystem::path& path);
ObservedMatrix load_matrix(const std::filesystem::path& path);

// CSV of busy cells with columns: t,c,count
void write_cells_csv(const CollisionMap& cmap, std::ostream& out);

}  // namespace lrfhss
