#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "analysis.hpp"
#include "bits.hpp"
#include "dna.hpp"
#include "errors.hpp"
#include "mapping.hpp"
#include "randomizer.hpp"
#include "ratio.hpp"

namespace dnacodec {

enum class MappingMethod { whole_stream, block11 };

inline std::string method_name(MappingMethod m) {
    return m == MappingMethod::block11 ? "block11" : "whole_stream";
}

inline MappingMethod method_from_name(const std::string& name) {
    if (name == "block11") return MappingMethod::block11;
    if (name == "whole_stream") return MappingMethod::whole_stream;
    throw std::invalid_argument("unknown mapping method: " + name);
}

struct CodecParams {
    MappingMethod method = MappingMethod::block11;
    int m = 3;
    ConstraintSet constraints{};
    int n = 198;  // payload nucleotides per full strand
    int max_iterations = 4;
    std::optional<int> source_k;  // Huffman symbol width; disengaged when absent
    std::string hash_name = "SHA3-512";
    Ratio tail_eps{1, 1000000};  // residual failure budget for widened tail windows

    void validate() const {
        if (m < 2) throw std::invalid_argument("m must be >= 2");
        constraints.validate();
        if (constraints.max_run != m)
            throw std::invalid_argument("run limit must equal the tuple length m");
        // the iteration index travels as one nucleotide, so at most 4 attempts
        if (max_iterations < 1 || max_iterations > 4)
            throw std::invalid_argument("max_iterations must be in [1,4]");
        if (method == MappingMethod::block11) {
            if (m != 3) throw std::invalid_argument("block11 requires m = 3");
            if (n < 6 || n % 6 != 0)
                throw std::invalid_argument("block11 requires n to be a positive multiple of 6");
        } else {
            if (n < m || n % m != 0)
                throw std::invalid_argument("n must be a positive multiple of m");
        }
        if (source_k && (*source_k < 1 || *source_k > 32))
            throw std::invalid_argument("source symbol width must be in [1,32]");
        if (tail_eps.num <= 0) throw std::invalid_argument("tail failure budget must be positive");
    }
};

inline MappingTable table_for(const CodecParams& p) {
    p.validate();
    if (p.m == 3) return canonical_table48();
    return lexicographic_table(p.m);
}

// Bits that fit in one full strand: 11 per block, or the capacity of n/m
// base-K digits for the whole-stream conversion.
inline size_t chunk_bit_capacity(const CodecParams& p) {
    if (p.method == MappingMethod::block11)
        return 11u * (static_cast<size_t>(p.n) / 6u);
    BigInt P = boost::multiprecision::pow(BigInt(alphabet_size(p.m)),
                                          static_cast<unsigned>(p.n / p.m));
    return static_cast<size_t>(boost::multiprecision::msb(P));
}

// Fewest base-K digits whose capacity covers `bits`.
inline size_t whole_stream_digit_count(const MappingTable& table, size_t bits) {
    if (bits == 0) throw std::invalid_argument("bit count must be positive");
    BigInt K = table.size(), P = 1;
    size_t s = 0;
    do {
        P *= K;
        ++s;
    } while (static_cast<size_t>(boost::multiprecision::msb(P)) < bits);
    return s;
}

inline size_t payload_nt_for_bits(const CodecParams& p, const MappingTable& table, size_t bits) {
    if (p.method == MappingMethod::block11) return 6u * ((bits + 10) / 11);
    return static_cast<size_t>(table.m()) * whole_stream_digit_count(table, bits);
}

// 11-bit groups, each split into two base-48 digits. A final group shorter
// than 11 bits is zero-padded at the low end.
inline DnaSequence map_block11(const BitVec& chunk, const MappingTable& table) {
    if (chunk.empty()) throw std::invalid_argument("empty chunk");
    size_t nblocks = (chunk.size() + 10) / 11;
    DnaSequence out;
    for (size_t b = 0; b < nblocks; ++b) {
        auto width = static_cast<unsigned>(std::min<size_t>(11, chunk.size() - 11 * b));
        auto v = static_cast<unsigned>(chunk.read_bits(11 * b, width)) << (11 - width);
        out.append(table.encode_symbol(static_cast<int>(v / 48)));
        out.append(table.encode_symbol(static_cast<int>(v % 48)));
    }
    return out;
}

inline BitVec unmap_block11(const DnaSequence& payload, size_t bit_count,
                            const MappingTable& table) {
    if (bit_count == 0) throw std::invalid_argument("bit count must be positive");
    if (payload.size() % 6 != 0)
        throw CorruptionError("payload length is not a multiple of 6");
    size_t nblocks = payload.size() / 6;
    if (nblocks != (bit_count + 10) / 11)
        throw CorruptionError("payload holds " + std::to_string(nblocks) + " blocks, expected " +
                              std::to_string((bit_count + 10) / 11));
    const std::string& s = payload.str();
    BitVec out;
    for (size_t b = 0; b < nblocks; ++b) {
        int d1 = table.decode_symbol(std::string_view(s).substr(6 * b, 3));
        int d2 = table.decode_symbol(std::string_view(s).substr(6 * b + 3, 3));
        unsigned v = static_cast<unsigned>(48 * d1 + d2);
        if (v >= 2048)
            throw CorruptionError("block value " + std::to_string(v) + " out of range");
        auto width = static_cast<unsigned>(std::min<size_t>(11, bit_count - 11 * b));
        unsigned pad = 11 - width;
        if (pad && (v & ((1u << pad) - 1)))
            throw CorruptionError("nonzero padding bits in final block");
        out.append_bits(v >> pad, width);
    }
    return out;
}

// The whole chunk as one integer, rewritten in base K, one tuple per digit.
inline DnaSequence map_whole_stream(const BitVec& chunk, const MappingTable& table) {
    if (chunk.empty()) throw std::invalid_argument("empty chunk");
    size_t s = whole_stream_digit_count(table, chunk.size());
    auto bytes = chunk.to_bytes();
    BigInt u = 0;
    boost::multiprecision::import_bits(u, bytes.begin(), bytes.end(), 8, true);
    u >>= bytes.size() * 8 - chunk.size();
    BigInt K = table.size();
    std::vector<int> digits(s);
    for (size_t i = s; i-- > 0;) {
        digits[i] = static_cast<int>(u % K);
        u /= K;
    }
    DnaSequence out;
    for (int d : digits) out.append(table.encode_symbol(d));
    return out;
}

inline BitVec unmap_whole_stream(const DnaSequence& payload, size_t bit_count,
                                 const MappingTable& table) {
    if (bit_count == 0) throw std::invalid_argument("bit count must be positive");
    auto m = static_cast<size_t>(table.m());
    if (payload.size() % m != 0)
        throw CorruptionError("payload length is not a multiple of the tuple length");
    size_t s = payload.size() / m;
    if (s != whole_stream_digit_count(table, bit_count))
        throw CorruptionError("payload holds " + std::to_string(s) + " digits, expected " +
                              std::to_string(whole_stream_digit_count(table, bit_count)));
    const std::string& str = payload.str();
    BigInt u = 0, K = table.size();
    for (size_t i = 0; i < s; ++i)
        u = u * K + table.decode_symbol(std::string_view(str).substr(i * m, m));
    if (u != 0 && boost::multiprecision::msb(u) >= bit_count)
        throw CorruptionError("decoded value exceeds the recorded bit length");
    BitVec out;
    for (size_t i = bit_count; i-- > 0;) out.push_back(boost::multiprecision::bit_test(u, static_cast<unsigned>(i)));
    return out;
}

// Exact GC distribution of a short final strand's payload for `bits` tail bits.
inline GcDistribution tail_gc_distribution(const CodecParams& p, const MappingTable& table,
                                           size_t bits) {
    if (bits == 0) throw std::invalid_argument("bit count must be positive");
    std::vector<int> sym_gc(table.size());
    for (size_t i = 0; i < table.size(); ++i) {
        int g = 0;
        for (char c : table.tuple(static_cast<int>(i)))
            if (c == 'G' || c == 'C') ++g;
        sym_gc[i] = g;
    }
    if (p.method == MappingMethod::block11) {
        size_t nblocks = (bits + 10) / 11;
        auto bfin = static_cast<unsigned>(bits - 11 * (nblocks - 1));
        GcDistribution d = distribution_power(block_gc_distribution(table), nblocks - 1);
        GcDistribution fin;
        fin.counts.assign(7, 0);
        fin.total = BigInt(1) << bfin;
        for (unsigned u = 0; u < (1u << bfin); ++u) {
            unsigned v = u << (11 - bfin);
            ++fin.counts[static_cast<size_t>(sym_gc[v / 48] + sym_gc[v % 48])];
        }
        return convolve(d, fin);
    }
    size_t s = whole_stream_digit_count(table, bits);
    if (bits <= 16) {
        // small enough to push the uniform value distribution through exactly
        GcDistribution d;
        d.counts.assign(static_cast<size_t>(table.m()) * s + 1, 0);
        d.total = BigInt(1) << bits;
        auto K = static_cast<unsigned long long>(table.size());
        for (unsigned long long u = 0; u < (1ull << bits); ++u) {
            unsigned long long v = u;
            int g = 0;
            for (size_t i = 0; i < s; ++i) {
                g += sym_gc[static_cast<size_t>(v % K)];
                v /= K;
            }
            ++d.counts[static_cast<size_t>(g)];
        }
        return d;
    }
    // larger tails: digits are nearly uniform, so use the per-tuple distribution
    return distribution_power(tuple_gc_distribution(table), s);
}

// Short strands cannot meet a tight GC window, so the window is widened to the
// smallest grid alpha whose residual failure chance is below eps.
inline Ratio effective_tail_alpha(const CodecParams& p, const MappingTable& table, size_t bits,
                                  const Ratio& eps = Ratio(1, 1000000)) {
    Ratio widened = min_alpha(tail_gc_distribution(p, table, bits), p.max_iterations, eps);
    return p.constraints.alpha < widened ? widened : p.constraints.alpha;
}

struct EncodedArchive {
    CodecParams params;
    uint64_t original_bit_length = 0;    // before source coding
    uint64_t compressed_bit_length = 0;  // bits actually mapped onto strands
    std::vector<uint8_t> codebook_blob;  // empty when source coding is off
    std::vector<DnaSequence> strands;
    std::vector<int> r_values;  // iteration index per strand

    size_t total_nt() const {
        size_t n = 0;
        for (const auto& s : strands) n += s.size();
        return n;
    }
};

class Codec {
  public:
    explicit Codec(CodecParams params)
        : params_(std::move(params)), table_(table_for(params_)), rand_(params_.hash_name) {
        for (int r = 0; r < params_.max_iterations; ++r)
            digests_.push_back(rand_.digest(static_cast<unsigned long long>(r)));
    }

    const CodecParams& params() const { return params_; }
    const MappingTable& table() const { return table_; }

    EncodedArchive encode(const BitVec& bits) const {
        EncodedArchive a;
        a.params = params_;
        a.original_bit_length = bits.size();
        a.compressed_bit_length = bits.size();
        size_t C = chunk_bit_capacity(params_);
        size_t full = bits.size() / C, rem = bits.size() % C;
        size_t chunks = full + (rem ? 1 : 0);
        a.strands.reserve(chunks);
        a.r_values.reserve(chunks);
        for (size_t i = 0; i < chunks; ++i) {
            size_t b = i < full ? C : rem;
            BitVec chunk = bits.slice(i * C, b);
            ConstraintSet cs = params_.constraints;
            if (b < C) cs.alpha = effective_tail_alpha(params_, table_, b, params_.tail_eps);
            encode_chunk(chunk, i, cs, a);
        }
        return a;
    }

    BitVec decode(const EncodedArchive& a) const {
        size_t C = chunk_bit_capacity(params_);
        size_t B = a.compressed_bit_length;
        size_t full = B / C, rem = B % C;
        size_t expected = full + (rem ? 1 : 0);
        if (a.strands.size() != expected)
            throw CorruptionError("archive has " + std::to_string(a.strands.size()) +
                                  " strands, expected " + std::to_string(expected));
        if (a.r_values.size() != a.strands.size())
            throw CorruptionError("iteration record does not match strand count");
        BitVec out;
        for (size_t i = 0; i < a.strands.size(); ++i) {
            size_t b = i < full ? C : rem;
            const DnaSequence& strand = a.strands[i];
            size_t want = 1 + payload_nt_for_bits(params_, table_, b);
            if (strand.size() != want)
                throw DecodeError(i, "length " + std::to_string(strand.size()) + ", expected " +
                                         std::to_string(want));
            int r = a.r_values[i];
            if (r < 0 || r >= params_.max_iterations)
                throw DecodeError(i, "iteration index " + std::to_string(r) + " out of range");
            if (strand[0] != nucleotide_from_value(static_cast<unsigned>(r)))
                throw DecodeError(i, "prefix nucleotide does not match recorded iteration");
            try {
                DnaSequence payload = strand.subseq(1, strand.size() - 1);
                BitVec chunk = params_.method == MappingMethod::block11
                                   ? unmap_block11(payload, b, table_)
                                   : unmap_whole_stream(payload, b, table_);
                chunk.xor_cyclic(digests_[static_cast<size_t>(r)]);
                out.append(chunk);
            } catch (const CorruptionError& e) {
                throw DecodeError(i, e.what());
            }
        }
        return out;
    }

  private:
    void encode_chunk(const BitVec& chunk, size_t index, const ConstraintSet& cs,
                      EncodedArchive& a) const {
        for (int r = 0; r < params_.max_iterations; ++r) {
            BitVec work = chunk;
            work.xor_cyclic(digests_[static_cast<size_t>(r)]);
            DnaSequence strand;
            strand.push_back(nucleotide_from_value(static_cast<unsigned>(r)));
            strand.append(params_.method == MappingMethod::block11
                              ? map_block11(work, table_)
                              : map_whole_stream(work, table_));
            if (verify(strand, 1, strand.size(), cs).ok()) {
                a.strands.push_back(std::move(strand));
                a.r_values.push_back(r);
                return;
            }
        }
        throw EncodingFailure(index, "chunk " + std::to_string(index) + ": no strand satisfied " +
                                         "the constraints in " +
                                         std::to_string(params_.max_iterations) + " iterations");
    }

    CodecParams params_;
    MappingTable table_;
    Randomizer rand_;
    std::vector<std::vector<uint8_t>> digests_;
};

}  // namespace dnacodec
