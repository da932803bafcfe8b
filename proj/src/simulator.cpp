#include "lrfhss/simulator.hpp"

#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "lrfhss/errors.hpp"
#include "lrfhss/rng.hpp"

namespace lrfhss {

ObservedMatrix::ObservedMatrix(int slots, int obws)
    : slots_(slots), obws_(obws), words_((obws + 63) / 64) {
  if (slots < 1 || obws < 1) {
    throw Error("ObservedMatrix: dimensions must be >= 1");
  }
  bits_.assign(static_cast<std::size_t>(slots_) * words_, 0);
}

void ObservedMatrix::check(int t, int c) const {
  if (t < 1 || t > slots_ || c < 0 || c >= obws_) {
    throw OutOfRangeError("matrix cell (" + std::to_string(t) + "," +
                          std::to_string(c) + ") outside " +
                          std::to_string(slots_) + "x" +
                          std::to_string(obws_));
  }
}

bool ObservedMatrix::get(int t, int c) const {
  check(t, c);
  return test_unchecked(t, c);
}

void ObservedMatrix::set(int t, int c) {
  check(t, c);
  bits_[static_cast<std::size_t>(t - 1) * words_ + (c >> 6)] |=
      std::uint64_t{1} << (c & 63);
}

void ObservedMatrix::clear(int t, int c) {
  check(t, c);
  bits_[static_cast<std::size_t>(t - 1) * words_ + (c >> 6)] &=
      ~(std::uint64_t{1} << (c & 63));
}

long long ObservedMatrix::ones() const {
  long long n = 0;
  for (std::uint64_t w : bits_) n += __builtin_popcountll(w);
  return n;
}

CollisionMap::CollisionMap(int slots, int obws) : slots_(slots), obws_(obws) {
  if (slots < 1 || obws < 1) {
    throw Error("CollisionMap: dimensions must be >= 1");
  }
  counts_.assign(static_cast<std::size_t>(slots_) * obws_, 0);
}

void CollisionMap::check(int t, int c) const {
  if (t < 1 || t > slots_ || c < 0 || c >= obws_) {
    throw OutOfRangeError("collision cell (" + std::to_string(t) + "," +
                          std::to_string(c) + ") outside " +
                          std::to_string(slots_) + "x" +
                          std::to_string(obws_));
  }
}

std::uint32_t CollisionMap::count(int t, int c) const {
  check(t, c);
  return counts_[static_cast<std::size_t>(t - 1) * obws_ + c];
}

void CollisionMap::add(int t, int c) {
  check(t, c);
  ++counts_[static_cast<std::size_t>(t - 1) * obws_ + c];
}

long long CollisionMap::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0LL);
}

TransmissionSet generate_traffic(int F, const SequenceSet& seqs, int T_slots,
                                 int P, std::uint64_t seed) {
  if (F < 0) throw Error("generate_traffic: negative frame count");
  if (seqs.count() < 1) throw Error("generate_traffic: empty sequence set");
  if (P < 1 || P > seqs.max_len) {
    throw Error("generate_traffic: fragment count outside sequence length");
  }
  if (T_slots < P) {
    throw InvalidHorizonError("horizon of " + std::to_string(T_slots) +
                              " slots cannot contain " + std::to_string(P) +
                              " fragments");
  }
  Rng rng(seed);
  const auto s_count = static_cast<std::uint64_t>(seqs.count());
  const auto t_range = static_cast<std::uint64_t>(T_slots - P + 1);
  TransmissionSet tx;
  tx.reserve(static_cast<std::size_t>(F));
  for (int i = 0; i < F; ++i) {
    Transmission item;
    item.s = static_cast<int>(rng.below(s_count));
    item.t = 1 + static_cast<int>(rng.below(t_range));
    item.p = P;
    tx.push_back(item);
  }
  return tx;
}

Observation observe(const TransmissionSet& tx, const SequenceSet& seqs,
                    int T_slots, int C) {
  Observation obs{ObservedMatrix(T_slots, C), CollisionMap(T_slots, C)};
  for (const auto& item : tx) {
    if (item.s < 0 || item.s >= seqs.count()) {
      throw OutOfRangeError("transmission uses unknown sequence " +
                            std::to_string(item.s));
    }
    if (item.p < 1 || item.p > static_cast<int>(seqs.hops(item.s).size())) {
      throw OutOfRangeError("transmission fragment count " +
                            std::to_string(item.p) +
                            " exceeds sequence length");
    }
    if (item.t < 1 || item.t + item.p - 1 > T_slots) {
      throw OutOfRangeError("transmission at slot " + std::to_string(item.t) +
                            " with " + std::to_string(item.p) +
                            " fragments leaves the horizon");
    }
    const auto& hops = seqs.hops(item.s);
    for (int k = 0; k < item.p; ++k) {
      obs.collisions.add(item.t + k, hops[k]);
      obs.matrix.set(item.t + k, hops[k]);
    }
  }
  return obs;
}

double occupancy(const ObservedMatrix& m) {
  return static_cast<double>(m.ones()) /
         (static_cast<double>(m.slots()) * m.obws());
}

void write_matrix(const ObservedMatrix& m, std::ostream& out) {
  out << m.slots() << ' ' << m.obws() << '\n';
  std::string line(static_cast<std::size_t>(m.obws()), '0');
  for (int t = 1; t <= m.slots(); ++t) {
    for (int c = 0; c < m.obws(); ++c) {
      line[static_cast<std::size_t>(c)] = m.test_unchecked(t, c) ? '1' : '0';
    }
    out << line << '\n';
  }
}

ObservedMatrix read_matrix(std::istream& in) {
  int slots = 0, obws = 0;
  if (!(in >> slots >> obws) || slots < 1 || obws < 1) {
    throw ParseError("matrix file: header must be `T C` with positive dims");
  }
  std::string rest;
  std::getline(in, rest);
  if (!rest.empty()) throw ParseError("matrix file: header has extra fields");
  ObservedMatrix m(slots, obws);
  std::string line;
  for (int t = 1; t <= slots; ++t) {
    if (!std::getline(in, line)) {
      throw ParseError("matrix file: expected " + std::to_string(slots) +
                       " rows, got " + std::to_string(t - 1));
    }
    if (static_cast<int>(line.size()) != obws) {
      throw ParseError("matrix file: row " + std::to_string(t) + " has " +
                       std::to_string(line.size()) + " cells, expected " +
                       std::to_string(obws));
    }
    for (int c = 0; c < obws; ++c) {
      if (line[static_cast<std::size_t>(c)] == '1') {
        m.set(t, c);
      } else if (line[static_cast<std::size_t>(c)] != '0') {
        throw ParseError("matrix file: row " + std::to_string(t) +
                         " contains a character other than 0/1");
      }
    }
  }
  return m;
}

void save_matrix(const ObservedMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_matrix(m, out);
  if (!out) throw IoError("write failed: " + path.string());
}

ObservedMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return read_matrix(in);
}

void write_cells_csv(const CollisionMap& cmap, std::ostream& out) {
  out << "t,c,count\n";
  for (int t = 1; t <= cmap.slots(); ++t) {
    for (int c = 0; c < cmap.obws(); ++c) {
      const auto n = cmap.count(t, c);
      if (n > 0) out << t << ',' << c << ',' << n << '\n';
    }
  }
}

}  // namespace lrfhss
