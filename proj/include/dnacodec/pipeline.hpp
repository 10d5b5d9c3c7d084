#pragma once

#include <array>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "codec.hpp"
#include "huffman.hpp"

namespace dnacodec {

struct RunReport {
    CodecParams params;
    bool source_coded = false;
    uint64_t input_bits = 0;       // original payload
    uint64_t mapped_bits = 0;      // after optional source coding
    size_t strand_count = 0;
    size_t total_nt = 0;           // includes the per-strand prefix nucleotide
    std::array<size_t, 4> iteration_histogram{};

    double density() const {
        return total_nt ? static_cast<double>(input_bits) / static_cast<double>(total_nt) : 0.0;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "method:              " << method_name(params.method) << "\n";
        os << "m (run limit):       " << params.m << "\n";
        os << "alpha:               " << params.constraints.alpha.str() << " ("
           << params.constraints.alpha.value() << ")\n";
        os << "strand payload n:    " << params.n << "\n";
        os << "max iterations:      " << params.max_iterations << "\n";
        if (source_coded)
            os << "source coding:       huffman k=" << params.source_k.value_or(0) << "\n";
        else
            os << "source coding:       none\n";
        os << "input bits:          " << input_bits << "\n";
        os << "mapped bits:         " << mapped_bits << "\n";
        os << "strands:             " << strand_count << "\n";
        os << "total nucleotides:   " << total_nt << "\n";
        os << "density (bits/nt):   " << std::fixed << std::setprecision(4) << density() << "\n";
        os << "iteration histogram:";
        for (int r = 0; r < params.max_iterations; ++r)
            os << " r" << r << "=" << iteration_histogram[static_cast<size_t>(r)];
        os << "\n";
        return os.str();
    }
};

struct PipelineResult {
    EncodedArchive archive;
    RunReport report;
};

inline PipelineResult encode_bits(const BitVec& input, CodecParams params, bool use_huffman) {
    params.validate();
    BitVec stream = input;
    std::vector<uint8_t> codebook_blob;
    if (use_huffman) {
        int k = params.source_k.value_or(16);
        params.source_k = k;
        Codebook cb = Codebook::from_data(input, k);
        stream = cb.compress(input);
        codebook_blob = cb.serialize();
    } else {
        params.source_k.reset();
    }
    Codec codec(params);
    EncodedArchive a = codec.encode(stream);
    a.original_bit_length = input.size();
    a.codebook_blob = std::move(codebook_blob);

    RunReport rep;
    rep.params = params;
    rep.source_coded = use_huffman;
    rep.input_bits = input.size();
    rep.mapped_bits = a.compressed_bit_length;
    rep.strand_count = a.strands.size();
    rep.total_nt = a.total_nt();
    for (int r : a.r_values) ++rep.iteration_histogram[static_cast<size_t>(r)];
    return {std::move(a), rep};
}

inline PipelineResult encode_bytes(const std::vector<uint8_t>& data, const CodecParams& params,
                                   bool use_huffman) {
    return encode_bits(BitVec::from_bytes(data), params, use_huffman);
}

inline BitVec decode_archive_bits(const EncodedArchive& a) {
    Codec codec(a.params);
    BitVec stream = codec.decode(a);
    if (a.params.source_k) {
        Codebook cb = Codebook::deserialize(a.codebook_blob);
        if (cb.k() != *a.params.source_k)
            throw CorruptionError("codebook symbol width disagrees with archive metadata");
        return cb.decompress(stream, a.original_bit_length);
    }
    if (a.original_bit_length != a.compressed_bit_length)
        throw CorruptionError("bit lengths disagree for an archive without source coding");
    return stream;
}

inline std::vector<uint8_t> decode_archive_bytes(const EncodedArchive& a) {
    BitVec bits = decode_archive_bits(a);
    if (bits.size() % 8 != 0)
        throw CorruptionError("archive payload is not a whole number of bytes");
    return bits.to_bytes();
}

}  // namespace dnacodec
