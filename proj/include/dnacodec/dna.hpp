#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ratio.hpp"

namespace dnacodec {

enum class Nucleotide : uint8_t { A = 0, C = 1, G = 2, T = 3 };

inline char to_char(Nucleotide b) {
    return "ACGT"[static_cast<int>(b)];
}

inline Nucleotide nucleotide_from_value(unsigned v) {
    if (v > 3) throw std::invalid_argument("nucleotide value out of range");
    return static_cast<Nucleotide>(v);
}

inline Nucleotide nucleotide_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'A': return Nucleotide::A;
        case 'C': return Nucleotide::C;
        case 'G': return Nucleotide::G;
        case 'T': return Nucleotide::T;
        default: break;
    }
    throw std::invalid_argument(std::string("not a nucleotide: '") + c + "'");
}

// Ordered nucleotide string. Stored in canonical uppercase text form so the
// FASTA representation is the identity.
class DnaSequence {
  public:
    DnaSequence() = default;
    explicit DnaSequence(std::string_view text) {
        bases_.reserve(text.size());
        for (char c : text) bases_.push_back(to_char(nucleotide_from_char(c)));
    }

    size_t size() const { return bases_.size(); }
    bool empty() const { return bases_.empty(); }

    Nucleotide operator[](size_t i) const { return nucleotide_from_char(bases_[i]); }
    int value_at(size_t i) const { return static_cast<int>((*this)[i]); }
    char char_at(size_t i) const { return bases_[i]; }

    void push_back(Nucleotide b) { bases_.push_back(to_char(b)); }
    void append(const DnaSequence& other) { bases_ += other.bases_; }

    DnaSequence subseq(size_t pos, size_t len) const {
        DnaSequence s;
        s.bases_ = bases_.substr(pos, len);
        return s;
    }

    const std::string& str() const { return bases_; }

    friend bool operator==(const DnaSequence& a, const DnaSequence& b) {
        return a.bases_ == b.bases_;
    }

  private:
    std::string bases_;
};

inline size_t gc_count(const DnaSequence& seq, size_t begin, size_t end) {
    size_t n = 0;
    for (size_t i = begin; i < end; ++i) {
        char c = seq.char_at(i);
        if (c == 'G' || c == 'C') ++n;
    }
    return n;
}

inline double gc_ratio(const DnaSequence& seq) {
    if (seq.empty()) throw std::invalid_argument("gc_ratio of empty sequence");
    return static_cast<double>(gc_count(seq, 0, seq.size())) / seq.size();
}

inline size_t max_run_length(const DnaSequence& seq) {
    size_t best = 0, run = 0;
    char prev = 0;
    for (size_t i = 0; i < seq.size(); ++i) {
        char c = seq.char_at(i);
        run = (c == prev) ? run + 1 : 1;
        prev = c;
        if (run > best) best = run;
    }
    return best;
}

inline bool contains_pattern(const DnaSequence& seq, const DnaSequence& pattern) {
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    return seq.str().find(pattern.str()) != std::string::npos;
}

enum class GcScope { payload_only, full_strand };

struct ConstraintSet {
    int max_run = 3;
    Ratio alpha{1, 20};
    std::vector<DnaSequence> forbidden;
    GcScope gc_scope = GcScope::payload_only;

    void validate() const {
        if (max_run < 1) throw std::invalid_argument("max_run must be >= 1");
        if (alpha.num < 0 || Ratio(1, 2) < alpha)
            throw std::invalid_argument("alpha must lie in [0, 1/2]");
        for (const auto& p : forbidden)
            if (p.empty()) throw std::invalid_argument("empty forbidden pattern");
    }
};

struct Violation {
    enum Kind { run_length, gc_ratio, forbidden_pattern } kind;
    double measured;
    std::string detail;
};

struct Verdict {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks a strand against the constraint set. Run length and forbidden
// patterns always apply to the full strand; the GC window applies to the
// region selected by gc_scope. Violations are collected exhaustively.
inline Verdict verify(const DnaSequence& strand, size_t payload_begin, size_t payload_end,
                      const ConstraintSet& cs) {
    if (payload_begin > payload_end || payload_end > strand.size())
        throw std::invalid_argument("invalid payload range");
    cs.validate();
    Verdict v;

    size_t run = max_run_length(strand);
    if (run > static_cast<size_t>(cs.max_run))
        v.violations.push_back({Violation::run_length, static_cast<double>(run),
                                "run of " + std::to_string(run) + " exceeds " +
                                    std::to_string(cs.max_run)});

    size_t b = payload_begin, e = payload_end;
    if (cs.gc_scope == GcScope::full_strand) { b = 0; e = strand.size(); }
    size_t len = e - b;
    if (len > 0) {
        long long g = static_cast<long long>(gc_count(strand, b, e));
        long long L = static_cast<long long>(len);
        // g/L in [1/2 - alpha, 1/2 + alpha], cross-multiplied to stay exact
        bool low_ok = L * (cs.alpha.den - 2 * cs.alpha.num) <= 2 * cs.alpha.den * g;
        bool high_ok = 2 * cs.alpha.den * g <= L * (cs.alpha.den + 2 * cs.alpha.num);
        if (!low_ok || !high_ok) {
            double ratio = static_cast<double>(g) / static_cast<double>(L);
            v.violations.push_back({Violation::gc_ratio, ratio,
                                    "GC ratio " + std::to_string(ratio) + " outside 0.5 +/- " +
                                        std::to_string(cs.alpha.value())});
        }
    }

    for (const auto& p : cs.forbidden)
        if (contains_pattern(strand, p))
            v.violations.push_back({Violation::forbidden_pattern, 0.0,
                                    "forbidden pattern " + p.str() + " present"});
    return v;
}

}  // namespace dnacodec
