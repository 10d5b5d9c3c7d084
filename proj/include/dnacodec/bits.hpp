#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dnacodec {

// MSB-first bit string. Bit i lives in byte i/8 at mask 0x80 >> (i%8); unused
// trailing bits of the last byte are kept zero so equality works on the bytes.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t nbits) : bytes_((nbits + 7) / 8, 0), nbits_(nbits) {}

    static BitVec from_bytes(const std::vector<uint8_t>& bytes) {
        BitVec b;
        b.bytes_ = bytes;
        b.nbits_ = bytes.size() * 8;
        return b;
    }
    static BitVec from_bytes(const std::vector<uint8_t>& bytes, size_t nbits) {
        if (nbits > bytes.size() * 8) throw std::invalid_argument("bit count exceeds data");
        BitVec b;
        b.bytes_.assign(bytes.begin(), bytes.begin() + (nbits + 7) / 8);
        b.nbits_ = nbits;
        b.mask_tail();
        return b;
    }

    size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(size_t i) const {
        if (i >= nbits_) throw std::out_of_range("bit index");
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
    }
    void set(size_t i, bool v) {
        if (i >= nbits_) throw std::out_of_range("bit index");
        uint8_t m = uint8_t(0x80u >> (i & 7));
        if (v) bytes_[i >> 3] |= m; else bytes_[i >> 3] &= uint8_t(~m);
    }

    void push_back(bool v) {
        if (nbits_ % 8 == 0) bytes_.push_back(0);
        ++nbits_;
        if (v) set(nbits_ - 1, true);
    }

    // Appends `width` bits of `value`, most significant first.
    void append_bits(uint64_t value, unsigned width) {
        if (width > 64) throw std::invalid_argument("width > 64");
        for (unsigned i = width; i-- > 0;) push_back((value >> i) & 1);
    }

    // Reads `width` bits at `pos`; positions past the end read as zero, which
    // is the padding convention for tail blocks.
    uint64_t read_bits_padded(size_t pos, unsigned width) const {
        if (width > 64) throw std::invalid_argument("width > 64");
        uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) {
            size_t p = pos + i;
            v = (v << 1) | (p < nbits_ ? (get(p) ? 1u : 0u) : 0u);
        }
        return v;
    }
    uint64_t read_bits(size_t pos, unsigned width) const {
        if (pos + width > nbits_) throw std::out_of_range("bit range");
        return read_bits_padded(pos, width);
    }

    BitVec slice(size_t pos, size_t len) const {
        if (pos + len > nbits_) throw std::out_of_range("slice range");
        BitVec out(len);
        for (size_t i = 0; i < len; ++i)
            if (get(pos + i)) out.set(i, true);
        return out;
    }

    void append(const BitVec& other) {
        for (size_t i = 0; i < other.size(); ++i) push_back(other.get(i));
    }

    // Truncates or zero-extends to `nbits`.
    void resize(size_t nbits) {
        bytes_.resize((nbits + 7) / 8, 0);
        nbits_ = nbits;
        if (!bytes_.empty()) mask_tail();
    }

    // XOR with `key` repeated cyclically over the whole bit string.
    void xor_cyclic(const std::vector<uint8_t>& key) {
        if (key.empty()) throw std::invalid_argument("empty keystream");
        for (size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= key[i % key.size()];
        mask_tail();
    }

    size_t hamming(const BitVec& other) const {
        if (nbits_ != other.nbits_) throw std::invalid_argument("length mismatch");
        size_t d = 0;
        for (size_t i = 0; i < bytes_.size(); ++i)
            d += static_cast<size_t>(__builtin_popcount(bytes_[i] ^ other.bytes_[i]));
        return d;
    }

    std::vector<uint8_t> to_bytes() const { return bytes_; }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.nbits_ == b.nbits_ && a.bytes_ == b.bytes_;
    }

  private:
    void mask_tail() {
        unsigned extra = static_cast<unsigned>(bytes_.size() * 8 - nbits_);
        if (extra) bytes_.back() &= uint8_t(0xFFu << extra);
    }

    std::vector<uint8_t> bytes_;
    size_t nbits_ = 0;
};

}  // namespace dnacodec
