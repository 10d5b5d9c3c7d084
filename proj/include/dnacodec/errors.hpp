#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dnacodec {

// A strand chunk exhausted its randomization attempts without satisfying the
// constraints.
struct EncodingFailure : std::runtime_error {
    size_t chunk_index;
    EncodingFailure(size_t chunk, const std::string& what)
        : std::runtime_error(what), chunk_index(chunk) {}
};

// Data-level inconsistency: invalid tuple, out-of-range block value, header
// mismatch, undecodable bit stream.
struct CorruptionError : std::runtime_error {
    explicit CorruptionError(const std::string& what) : std::runtime_error(what) {}
};

// Per-strand decode problem; carries the strand index for diagnostics.
struct DecodeError : std::runtime_error {
    size_t strand_index;
    DecodeError(size_t strand, const std::string& what)
        : std::runtime_error("strand " + std::to_string(strand) + ": " + what),
          strand_index(strand) {}
};

}  // namespace dnacodec
