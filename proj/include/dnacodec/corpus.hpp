#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace dnacodec {

// Bundled 490-byte sample text used by the demos and the self-test corpus.
inline std::string_view poem_text() {
    static constexpr std::string_view text =
        "Where the mind is without fear and the head is held high\n"
        "Where knowledge is free\n"
        "Where the world has not been broken into fragments by narrow domestic walls\n"
        "Where words come from the depth of truth\n"
        "Where tireless striving stretches its arms towards perfection\n"
        "Where the clear stream of reason has not lost its way into the dreary desert sand of "
        "dead habit\n"
        "Where the mind is led forward by thee into ever-widening thought and action\n"
        "Into that heaven of freedom my Father let my country awake";
    static_assert(text.size() == 490);
    return text;
}

// Reproducible pseudo-random bytes standing in for raw 8-bit image data.
inline std::vector<uint8_t> deterministic_bytes(size_t count, uint32_t seed) {
    std::mt19937 engine(seed);
    std::vector<uint8_t> out(count);
    for (auto& b : out) b = static_cast<uint8_t>(engine() & 0xFFu);
    return out;
}

inline constexpr uint32_t kImageSeed256 = 256;
inline constexpr uint32_t kImageSeed512 = 512;

inline std::vector<uint8_t> image_corpus_256() { return deterministic_bytes(256 * 256, kImageSeed256); }
inline std::vector<uint8_t> image_corpus_512() { return deterministic_bytes(512 * 512, kImageSeed512); }

}  // namespace dnacodec
