#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dna.hpp"
#include "errors.hpp"
#include "substitution.hpp"

namespace dnacodec {

inline size_t alphabet_size(int m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    size_t M = 3;
    for (int i = 1; i < m; ++i) M *= 4;
    return M;  // 3 * 4^(m-1)
}

// All length-m tuples with x_i != x_{i+1} (1-based i), in lexicographic order.
inline std::vector<std::string> enumerate_valid_tuples(int m, int i) {
    if (m < 2) throw std::invalid_argument("tuple enumeration needs m >= 2");
    if (i < 1 || i >= m) throw std::invalid_argument("constraint index out of range");
    std::vector<std::string> out;
    std::string t(m, 'A');
    std::vector<int> v(m, 0);
    while (true) {
        if (v[i - 1] != v[i]) {
            for (int p = 0; p < m; ++p) t[p] = "ACGT"[v[p]];
            out.push_back(t);
        }
        int p = m - 1;
        while (p >= 0 && v[p] == 3) v[p--] = 0;
        if (p < 0) break;
        ++v[p];
    }
    return out;
}

// 48-symbol Gray sequence: consecutive entries differ in exactly one bit.
inline const std::vector<int>& gray_sequence_48() {
    static const std::vector<int> g = {
        0,  1,  3,  2,  6,  7,  5,  4,  12, 13, 15, 14, 10, 11, 9,  25,
        27, 26, 30, 31, 29, 28, 20, 21, 23, 22, 18, 19, 17, 16, 24, 8,
        40, 42, 43, 41, 45, 47, 46, 44, 36, 37, 39, 38, 34, 35, 33, 32};
    return g;
}

// Bijection between symbols [0, M) and valid m-nt tuples.
class MappingTable {
  public:
    MappingTable(int m, std::vector<std::string> tuples) : m_(m), tuples_(std::move(tuples)) {
        size_t M = alphabet_size(m);
        if (tuples_.size() != M) throw std::invalid_argument("mapping table: wrong entry count");
        for (auto& t : tuples_) {
            if (t.size() != static_cast<size_t>(m))
                throw std::invalid_argument("mapping table: tuple length mismatch");
            DnaSequence seq(t);  // validates characters, canonicalizes case
            t = seq.str();
            if (t[m - 2] == t[m - 1])
                throw std::invalid_argument("mapping table: last two bases equal in " + t);
        }
        for (size_t s = 0; s < tuples_.size(); ++s) {
            if (!index_.emplace(tuples_[s], static_cast<int>(s)).second)
                throw std::invalid_argument("mapping table: duplicate tuple " + tuples_[s]);
        }
        if (m_ == 3) {
            lut_.fill(-1);
            for (size_t s = 0; s < tuples_.size(); ++s) lut_[triple_key(tuples_[s])] = int(s);
        }
    }

    int m() const { return m_; }
    size_t size() const { return tuples_.size(); }
    const std::string& tuple(int symbol) const {
        if (symbol < 0 || static_cast<size_t>(symbol) >= tuples_.size())
            throw std::invalid_argument("symbol out of range");
        return tuples_[static_cast<size_t>(symbol)];
    }

    DnaSequence encode_symbol(int symbol) const { return DnaSequence(tuple(symbol)); }

    int decode_symbol(std::string_view t) const {
        if (t.size() == 3 && m_ == 3) {
            int key = triple_key(t);
            int s = key < 0 ? -1 : lut_[static_cast<size_t>(key)];
            if (s < 0) throw CorruptionError("invalid tuple " + std::string(t));
            return s;
        }
        auto it = index_.find(t);
        if (it == index_.end()) throw CorruptionError("invalid tuple " + std::string(t));
        return it->second;
    }

    std::string to_lines() const {
        std::ostringstream os;
        for (size_t s = 0; s < tuples_.size(); ++s) os << s << "," << tuples_[s] << "\n";
        return os.str();
    }

    static MappingTable from_lines(std::istream& in, int m) {
        std::vector<std::string> tuples(alphabet_size(m));
        std::vector<bool> seen(tuples.size(), false);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto comma = line.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("mapping table line missing comma: " + line);
            size_t s = std::stoul(line.substr(0, comma));
            if (s >= tuples.size() || seen[s])
                throw std::invalid_argument("mapping table: bad or duplicate symbol " + line);
            tuples[s] = line.substr(comma + 1);
            seen[s] = true;
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
            throw std::invalid_argument("mapping table: missing symbols");
        return MappingTable(m, std::move(tuples));
    }

  private:
    static int triple_key(std::string_view t) {
        int k = 0;
        for (char c : t) {
            int v;
            switch (c) {
                case 'A': v = 0; break;
                case 'C': v = 1; break;
                case 'G': v = 2; break;
                case 'T': v = 3; break;
                default: return -1;
            }
            k = k * 4 + v;
        }
        return k;
    }

    int m_;
    std::vector<std::string> tuples_;
    std::map<std::string, int, std::less<>> index_;
    std::array<int, 64> lut_{};
};

// The shipped 48-ary table (m=3). This exact assignment is the codec's wire
// format; the greedy builder below regenerates a similar chain but the
// canonical constant is authoritative.
inline const MappingTable& canonical_table48() {
    static const MappingTable t(3, {
        "AAC", "AAT", "TAT", "GAT", "AGC", "AGT", "TGT", "CGT",
        "GAG", "ACT", "ACA", "ACG", "ATC", "ATA", "GCA", "GTA",
        "TAG", "TCG", "TTA", "TCA", "CAC", "TAC", "TTC", "TGC",
        "AAG", "GCT", "CCT", "TCT", "CAT", "CAG", "CCA", "CCG",
        "GCG", "GGT", "GAC", "GGC", "TGA", "CGC", "GTC", "CTC",
        "GTG", "CTG", "ATG", "TTG", "GGA", "CTA", "AGA", "CGA"});
    return t;
}

// For m != 3 no substitution statistics exist, so symbols are assigned in
// lexicographic tuple order.
inline MappingTable lexicographic_table(int m) {
    return MappingTable(m, enumerate_valid_tuples(m, m - 1));
}

namespace detail {
inline bool tuple_valid48(const std::string& t) { return t[1] != t[2]; }
}

// Orders the 48 valid triples by repeated "most likely single substitution"
// moves. Ties are broken by earliest substituted position, then by
// lexicographic order of the candidate. When no unvisited single-substitution
// neighbour remains, the two-substitution candidate with the largest product
// of rates is chosen.
inline std::vector<std::string> greedy_tuple_chain(const SubstitutionMatrix& subs,
                                                   const std::string& start) {
    DnaSequence s(start);
    if (s.size() != 3 || s.char_at(1) == s.char_at(2))
        throw std::invalid_argument("start tuple must be a valid triple");
    std::string cur = s.str();
    std::vector<std::string> chain{cur};
    std::map<std::string, bool> visited{{cur, true}};
    const std::string bases = "ACGT";
    while (chain.size() < 48) {
        std::string best;
        long long best_u = -1;
        int best_pos = 9;
        for (int pos = 0; pos < 3; ++pos) {
            for (char b : bases) {
                if (b == cur[pos]) continue;
                std::string cand = cur;
                cand[pos] = b;
                if (!detail::tuple_valid48(cand) || visited.count(cand)) continue;
                long long u = subs.unit(nucleotide_from_char(cur[pos]), nucleotide_from_char(b));
                if (u > best_u || (u == best_u && (pos < best_pos ||
                                                  (pos == best_pos && cand < best)))) {
                    best = cand;
                    best_u = u;
                    best_pos = pos;
                }
            }
        }
        if (best.empty()) {
            // two substitutions; score by product of the two rates
            long long best_prod = -1;
            for (char b0 : bases)
                for (char b1 : bases)
                    for (char b2 : bases) {
                        std::string cand{b0, b1, b2};
                        if (!detail::tuple_valid48(cand) || visited.count(cand)) continue;
                        int diffs = (cand[0] != cur[0]) + (cand[1] != cur[1]) + (cand[2] != cur[2]);
                        if (diffs != 2) continue;
                        long long prod = 1;
                        for (int p = 0; p < 3; ++p)
                            if (cand[p] != cur[p])
                                prod *= subs.unit(nucleotide_from_char(cur[p]),
                                                  nucleotide_from_char(cand[p]));
                        if (prod > best_prod || (prod == best_prod && cand < best)) {
                            best = cand;
                            best_prod = prod;
                        }
                    }
        }
        if (best.empty()) {
            // only tuples three substitutions away remain; take the smallest
            for (char b0 : bases)
                for (char b1 : bases)
                    for (char b2 : bases) {
                        std::string cand{b0, b1, b2};
                        if (detail::tuple_valid48(cand) && !visited.count(cand)) {
                            best = cand;
                            break;
                        }
                    }
        }
        visited[best] = true;
        chain.push_back(best);
        cur = best;
    }
    return chain;
}

// Chain position i gets Gray symbol i, so neighbouring chain tuples map to
// symbols one bit apart.
inline MappingTable build_greedy_table(const SubstitutionMatrix& subs,
                                       const std::string& start = "AAC") {
    auto chain = greedy_tuple_chain(subs, start);
    const auto& gray = gray_sequence_48();
    std::vector<std::string> tuples(48);
    for (size_t i = 0; i < 48; ++i) tuples[static_cast<size_t>(gray[i])] = chain[i];
    return MappingTable(3, tuples);
}

struct PairBitError {
    Nucleotide from, to;
    int events = 0;
    long long hamming_total = 0;
    double mean() const { return events ? double(hamming_total) / events : 0.0; }
};

struct BitErrorReport {
    std::vector<PairBitError> pairs;
    long long overall_num = 0, overall_den = 1;  // exact weighted mean
    double overall() const { return double(overall_num) / double(overall_den); }
};

namespace detail {
struct Frac64 {
    long long n = 0, d = 1;
    void add(long long an, long long ad) {
        __int128 nn = static_cast<__int128>(n) * ad + static_cast<__int128>(an) * d;
        __int128 dd = static_cast<__int128>(d) * ad;
        if (nn > INT64_MAX || nn < INT64_MIN || dd > INT64_MAX)
            throw std::overflow_error("fraction accumulator overflow");
        n = static_cast<long long>(nn);
        d = static_cast<long long>(dd);
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
    }
};
}  // namespace detail

// For every substitution event (valid tuple, position, base change) whose
// result is again a valid table tuple, the bit damage is the Hamming distance
// between the two 6-bit symbols. Per-pair means are averaged with the event
// distribution, renormalized over pairs that have at least one valid event.
inline BitErrorReport average_bit_error(const MappingTable& table,
                                        const SubstitutionMatrix& subs) {
    if (table.m() != 3) throw std::invalid_argument("bit error analysis is 48-ary only");
    BitErrorReport rep;
    detail::Frac64 weighted;  // sum of u_i * mean_i
    long long weight_sum = 0;
    for (int f = 0; f < 4; ++f) {
        for (int t = 0; t < 4; ++t) {
            if (f == t) continue;
            PairBitError p{static_cast<Nucleotide>(f), static_cast<Nucleotide>(t), 0, 0};
            for (int s = 0; s < 48; ++s) {
                const std::string& tup = table.tuple(s);
                for (int pos = 0; pos < 3; ++pos) {
                    if (tup[pos] != to_char(p.from)) continue;
                    std::string cand = tup;
                    cand[pos] = to_char(p.to);
                    if (!detail::tuple_valid48(cand)) continue;
                    int s2 = table.decode_symbol(cand);
                    p.hamming_total += __builtin_popcount(static_cast<unsigned>(s ^ s2));
                    ++p.events;
                }
            }
            if (p.events > 0) {
                long long u = subs.unit(p.from, p.to);
                weighted.add(u * p.hamming_total, p.events);
                weight_sum += u;
            }
            rep.pairs.push_back(p);
        }
    }
    if (weight_sum == 0) throw std::invalid_argument("no valid substitution events");
    detail::Frac64 overall = weighted;
    overall.d *= weight_sum;
    long long g = std::gcd(overall.n < 0 ? -overall.n : overall.n, overall.d);
    rep.overall_num = overall.n / g;
    rep.overall_den = overall.d / g;
    return rep;
}

// Expected Hamming distance between two distinct uniform 6-bit symbols in
// [0,48): the baseline a randomly filled table would give.
inline Ratio random_table_average_bit_error_exact() {
    long long total = 0, count = 0;
    for (int a = 0; a < 48; ++a)
        for (int b = 0; b < 48; ++b) {
            if (a == b) continue;
            total += __builtin_popcount(static_cast<unsigned>(a ^ b));
            ++count;
        }
    return Ratio(total, count);
}

inline double random_table_average_bit_error() {
    return random_table_average_bit_error_exact().value();
}

// True when a 1-nt prefix can never push a run past m: leading runs of valid
// tuples are at most m-1, so prefix + tuple stays within m.
inline bool run_prefix_safety_check(const MappingTable& table, int m) {
    for (unsigned p = 0; p < 4; ++p) {
        for (size_t s = 0; s < table.size(); ++s) {
            DnaSequence strand;
            strand.push_back(nucleotide_from_value(p));
            strand.append(DnaSequence(table.tuple(static_cast<int>(s))));
            if (max_run_length(strand) > static_cast<size_t>(m)) return false;
        }
    }
    return true;
}

}  // namespace dnacodec
