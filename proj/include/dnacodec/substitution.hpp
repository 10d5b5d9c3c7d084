#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dna.hpp"
#include "ratio.hpp"

namespace dnacodec {

// Substitution event distribution over the 12 ordered base pairs (from != to).
// Entries are exact: stored as integer numerators over a power-of-ten scale so
// downstream averages stay rational.
class SubstitutionMatrix {
  public:
    static constexpr long long kScale = 100000;  // default entries have 5 decimals

    // Rates measured from a sequencing experiment; they sum to 0.99997 and are
    // used as a probability distribution over substitution events.
    static SubstitutionMatrix measured() {
        SubstitutionMatrix m;
        const struct { char from, to; long long u; } rows[] = {
            {'G', 'A', 14133}, {'G', 'T', 13773}, {'C', 'A', 8894}, {'C', 'T', 7842},
            {'T', 'C', 7142},  {'A', 'G', 7067},  {'T', 'A', 7050}, {'A', 'T', 7046},
            {'T', 'G', 6948},  {'G', 'C', 6889},  {'A', 'C', 6826}, {'C', 'G', 6387},
        };
        for (const auto& r : rows)
            m.set(nucleotide_from_char(r.from), nucleotide_from_char(r.to), r.u);
        m.scale_ = kScale;
        m.check();
        return m;
    }

    // Reads 12 lines of "from,to,probability" (decimal probabilities).
    static SubstitutionMatrix from_stream(std::istream& in) {
        SubstitutionMatrix m;
        long long max_pow = 1;
        struct Row { int f, t; long long num, pow; };
        std::array<Row, 12> rows;
        int count = 0;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (count >= 12) throw std::invalid_argument("substitution matrix: more than 12 rows");
            std::istringstream ls(line);
            std::string from, to, prob;
            if (!std::getline(ls, from, ',') || !std::getline(ls, to, ',') ||
                !std::getline(ls, prob))
                throw std::invalid_argument("substitution matrix: bad row: " + line);
            Ratio r = parse_ratio(prob);
            if (r.num <= 0) throw std::invalid_argument("substitution probability must be > 0");
            int f = static_cast<int>(nucleotide_from_char(from.at(0)));
            int t = static_cast<int>(nucleotide_from_char(to.at(0)));
            if (f == t) throw std::invalid_argument("substitution matrix: diagonal entry");
            rows[count++] = {f, t, r.num, r.den};
            if (r.den > max_pow) max_pow = r.den;
        }
        if (count != 12) throw std::invalid_argument("substitution matrix: expected 12 rows");
        for (int i = 0; i < count; ++i) {
            const Row& r = rows[i];
            if (max_pow % r.pow != 0)
                throw std::invalid_argument("substitution matrix: incompatible precisions");
            long long u = r.num * (max_pow / r.pow);
            if (m.units_[r.f][r.t] != 0)
                throw std::invalid_argument("substitution matrix: duplicate pair");
            m.units_[r.f][r.t] = u;
        }
        m.scale_ = max_pow;
        m.check();
        return m;
    }

    long long unit(Nucleotide from, Nucleotide to) const {
        long long u = units_[static_cast<int>(from)][static_cast<int>(to)];
        if (u == 0) throw std::invalid_argument("substitution pair undefined");
        return u;
    }
    long long scale() const { return scale_; }
    double prob(Nucleotide from, Nucleotide to) const {
        return static_cast<double>(unit(from, to)) / static_cast<double>(scale_);
    }

  private:
    void set(Nucleotide f, Nucleotide t, long long u) {
        units_[static_cast<int>(f)][static_cast<int>(t)] = u;
    }
    void check() const {
        long long sum = 0;
        for (int f = 0; f < 4; ++f)
            for (int t = 0; t < 4; ++t) {
                if (f == t) {
                    if (units_[f][t] != 0)
                        throw std::invalid_argument("substitution matrix: diagonal set");
                    continue;
                }
                if (units_[f][t] <= 0 || units_[f][t] >= scale_)
                    throw std::invalid_argument("substitution matrix: entry outside (0,1)");
                sum += units_[f][t];
            }
        // the 12 entries are read as an event distribution; allow small
        // measurement shortfall but reject anything far from 1
        if (sum < scale_ * 99 / 100 || sum > scale_ * 101 / 100)
            throw std::invalid_argument("substitution matrix: entries do not sum to ~1");
    }

    std::array<std::array<long long, 4>, 4> units_{};
    long long scale_ = kScale;
};

}  // namespace dnacodec
