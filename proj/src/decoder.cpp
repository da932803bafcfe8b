#include "lrfhss/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>

#include "lrfhss/errors.hpp"

namespace lrfhss {

bool DecodedSet::contains(int s, int t) const {
  auto it = std::lower_bound(items.begin(), items.end(), std::pair{t, s},
                             [](const Transmission& a, std::pair<int, int> b) {
                               return std::pair{a.t, a.s} < b;
                             });
  return it != items.end() && it->t == t && it->s == s;
}

namespace {

void validate_instance(const ObservedMatrix& m, const SequenceSet& seqs,
                       int P) {
  if (P < 1) throw Error("decode: fragment count must be >= 1");
  if (P > seqs.max_len) {
    throw Error("decode: fragment count exceeds sequence length");
  }
  if (P > m.slots()) {
    throw InvalidHorizonError("decode: fragment count exceeds the horizon");
  }
  if (seqs.obw_count > m.obws()) {
    throw OutOfRangeError("decode: sequences address " +
                          std::to_string(seqs.obw_count) +
                          " channels, matrix has " +
                          std::to_string(m.obws()));
  }
}

// shared scanner: keep a window once `required` of its P cells are busy
DecodedSet scan_windows(const ObservedMatrix& m, const SequenceSet& seqs,
                        int P, int required) {
  const int t_max = m.slots() - P + 1;
  const int allowed_misses = P - required;
  DecodedSet out;
  for (int t = 1; t <= t_max; ++t) {
    for (int s = 0; s < seqs.count(); ++s) {
      const int* hops = seqs.hops(s).data();
      int misses = 0;
      for (int k = 0; k < P; ++k) {
        if (!m.test_unchecked(t + k, hops[k])) {
          if (++misses > allowed_misses) break;
        }
      }
      if (misses <= allowed_misses) {
        out.items.push_back({s, t, P});
      }
    }
  }
  return out;
}

}  // namespace

DecodedSet decode_greedy(const ObservedMatrix& m, const SequenceSet& seqs,
                         int P) {
  validate_instance(m, seqs, P);
  return scan_windows(m, seqs, P, P);
}

DecodedSet decode_partial(const ObservedMatrix& m, const SequenceSet& seqs,
                          int P, double match_fraction) {
  validate_instance(m, seqs, P);
  if (!(match_fraction > 0.0) || match_fraction > 1.0) {
    throw Error("decode_partial: match_fraction must be in (0, 1]");
  }
  const int required = static_cast<int>(
      std::ceil(match_fraction * P - 1e-9));
  return scan_windows(m, seqs, P, std::max(required, 1));
}

DecodedSet decode_exact(const ObservedMatrix& m, const SequenceSet& seqs,
                        int P) {
  validate_instance(m, seqs, P);
  const int t_max = m.slots() - P + 1;
  DecodedSet out;
  for (int t = 1; t <= t_max; ++t) {
    for (int s = 0; s < seqs.count(); ++s) {
      const auto& hops = seqs.hops(s);
      int sum = 0;
      for (int k = 0; k < P; ++k) {
        sum += m.test_unchecked(t + k, hops[k]) ? 1 : 0;
      }
      if (sum == P) out.items.push_back({s, t, P});
    }
  }
  return out;
}

DecodedSet brute_force_ilp(const ObservedMatrix& m, const SequenceSet& seqs,
                           int P) {
  validate_instance(m, seqs, P);
  const int t_max = m.slots() - P + 1;
  const long long n = static_cast<long long>(t_max) * seqs.count();
  if (n > 24) {
    throw InstanceTooLargeError("brute_force_ilp: " + std::to_string(n) +
                                " windows exceed the 24-window bound");
  }

  // windows indexed w = (t-1)*S + s; a fully busy window forces y_w = 1
  std::uint32_t forced = 0;
  for (int t = 1; t <= t_max; ++t) {
    for (int s = 0; s < seqs.count(); ++s) {
      const auto& hops = seqs.hops(s);
      int sum = 0;
      for (int k = 0; k < P; ++k) {
        sum += m.test_unchecked(t + k, hops[k]) ? 1 : 0;
      }
      if (sum == P) {
        forced |= std::uint32_t{1} << ((t - 1) * seqs.count() + s);
      }
    }
  }

  bool found = false;
  std::uint32_t best = 0;
  int best_size = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const auto y = static_cast<std::uint32_t>(mask);
    if ((y & forced) != forced) continue;  // a forced window was dropped
    const int size = std::popcount(y);
    if (!found || size < best_size) {
      found = true;
      best = y;
      best_size = size;
    }
  }

  DecodedSet out;
  for (int w = 0; w < n; ++w) {
    if ((best >> w) & 1u) {
      out.items.push_back({w % seqs.count(), w / seqs.count() + 1, P});
    }
  }
  return out;
}

OnlineDecoder::OnlineDecoder(const SequenceSet& seqs, int P, int C)
    : seqs_(&seqs), P_(P), C_(C), words_((C + 63) / 64) {
  if (P < 1 || P > seqs.max_len) {
    throw Error("OnlineDecoder: fragment count outside sequence length");
  }
  if (seqs.obw_count > C) {
    throw OutOfRangeError("OnlineDecoder: sequences address more channels "
                          "than the column width");
  }
  ring_.assign(static_cast<std::size_t>(P_) * words_, 0);
}

std::vector<Transmission> OnlineDecoder::push_column(
    int t, const std::uint64_t* words) {
  if (t != next_) {
    throw OutOfOrderColumnError("expected column for slot " +
                                std::to_string(next_) + ", got " +
                                std::to_string(t));
  }
  ++next_;
  std::memcpy(ring_.data() + static_cast<std::size_t>((t - 1) % P_) * words_,
              words, sizeof(std::uint64_t) * static_cast<std::size_t>(words_));

  std::vector<Transmission> matched;
  if (t < P_) return matched;

  const int start = t - P_ + 1;
  for (int s = 0; s < seqs_->count(); ++s) {
    const int* hops = seqs_->hops(s).data();
    bool full = true;
    for (int k = 0; k < P_; ++k) {
      const std::uint64_t* row =
          ring_.data() + static_cast<std::size_t>((start + k - 1) % P_) * words_;
      const int c = hops[k];
      if (!((row[c >> 6] >> (c & 63)) & 1u)) {
        full = false;
        break;
      }
    }
    if (full) matched.push_back({s, start, P_});
  }
  return matched;
}

DecodedSet decode_online(const ObservedMatrix& m, const SequenceSet& seqs,
                         int P) {
  validate_instance(m, seqs, P);
  OnlineDecoder dec(seqs, P, m.obws());
  DecodedSet out;
  for (int t = 1; t <= m.slots(); ++t) {
    auto matched = dec.push_column(t, m.row(t));
    out.items.insert(out.items.end(), matched.begin(), matched.end());
  }
  return out;
}

void export_lp(const ObservedMatrix& m, const SequenceSet& seqs, int P,
               std::ostream& out) {
  validate_instance(m, seqs, P);
  const int t_max = m.slots() - P + 1;

  out << "\\ headerless frame recovery as a set-minimization program\n";
  out << "\\ T=" << m.slots() << " C=" << m.obws() << " S=" << seqs.count()
      << " P=" << P << '\n';
  out << "\\ y_t_s selects the window of sequence s starting at slot t;\n";
  out << "\\ windows with observed sum below P impose no lower bound on y\n";
  out << "\\ and are omitted\n";
  out << "Minimize\n";
  std::string line = " obj:";
  bool first = true;
  for (int t = 1; t <= t_max; ++t) {
    for (int s = 0; s < seqs.count(); ++s) {
      std::string term = (first ? " y_" : " + y_") + std::to_string(t) + "_" +
                         std::to_string(s);
      first = false;
      if (line.size() + term.size() > 72) {
        out << line << '\n';
        line = " ";
      }
      line += term;
    }
  }
  out << line << '\n';

  out << "Subject To\n";
  for (int t = 1; t <= t_max; ++t) {
    for (int s = 0; s < seqs.count(); ++s) {
      const auto& hops = seqs.hops(s);
      int sum = 0;
      for (int k = 0; k < P; ++k) {
        sum += m.test_unchecked(t + k, hops[k]) ? 1 : 0;
      }
      if (sum == P) {
        out << " c_" << t << '_' << s << ": " << P << " y_" << t << '_' << s
            << " >= " << sum << '\n';
      }
    }
  }

  out << "Binary\n";
  for (int t = 1; t <= t_max; ++t) {
    for (int s = 0; s < seqs.count(); ++s) {
      out << " y_" << t << '_' << s << '\n';
    }
  }
  out << "End\n";
}

void export_lp_file(const ObservedMatrix& m, const SequenceSet& seqs, int P,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  export_lp(m, seqs, P, out);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace lrfhss
