#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lrfhss/core.hpp"
#include "lrfhss/simulator.hpp"

namespace lrfhss {

// Recovered frames. Membership is unique per (s,t) and items stay sorted by
// (t, s), which is the order every decoder emits.
struct DecodedSet {
  std::vector<Transmission> items;

  bool contains(int s, int t) const;
  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }

  friend bool operator==(const DecodedSet&, const DecodedSet&) = default;
};

// Slides a P-slot window over every start slot and sequence and keeps the
// windows whose every cell is busy. The inner loop short-circuits on the
// first idle cell, worst case O(T * S * P).
DecodedSet decode_greedy(const ObservedMatrix& m, const SequenceSet& seqs,
                         int P);

// Like decode_greedy but tolerates idle cells: a window is kept when at
// least ceil(match_fraction * P) of its cells are busy. match_fraction in
// (0, 1]; 1.0 reproduces decode_greedy.
DecodedSet decode_partial(const ObservedMatrix& m, const SequenceSet& seqs,
                          int P, double match_fraction);

// Optimum of the set-minimization program written by export_lp. A window's
// constraint P * y >= sum only forces y = 1 when the window is fully busy,
// and the minimization drives every unforced y to 0, so the optimum is the
// full-match indicator set. Computed directly from that closed form.
DecodedSet decode_exact(const ObservedMatrix& m, const SequenceSet& seqs,
                        int P);

// Enumerates all 2^n selections over the n = S * (T - P + 1) windows and
// returns a feasible selection of minimum size. Test oracle; n <= 24.
DecodedSet brute_force_ilp(const ObservedMatrix& m, const SequenceSet& seqs,
                           int P);

// Streaming decoder: feed one column per slot, in slot order. Once P columns
// are buffered, every window ending at the newest slot is checked, costing
// O(S * P) time per slot over a P-column ring.
class OnlineDecoder {
 public:
  OnlineDecoder(const SequenceSet& seqs, int P, int C);

  int next_slot() const { return next_; }

  // `words` is a packed bit row of C channels (matrix row layout); returns
  // the matches whose window ends at slot t
  std::vector<Transmission> push_column(int t, const std::uint64_t* words);

 private:
  const SequenceSet* seqs_;
  int P_;
  int C_;
  int words_;
  int next_ = 1;
  std::vector<std::uint64_t> ring_;
};

// replays the matrix column by column through an OnlineDecoder
DecodedSet decode_online(const ObservedMatrix& m, const SequenceSet& seqs,
                         int P);

// Writes the recovery program in LP text format: binary y_t_s per window,
// objective sum of all y, one constraint per fully busy window. Windows with
// sum < P impose no lower bound on their variable and are omitted.
void export_lp(const ObservedMatrix& m, const SequenceSet& seqs, int P,
               std::ostream& out);
void export_lp_file(const ObservedMatrix& m, const SequenceSet& seqs, int P,
                    const std::filesystem::path& path);

}  // namespace lrfhss
