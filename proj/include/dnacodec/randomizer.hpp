#pragma once

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "bits.hpp"

namespace dnacodec {

// Deterministic whitening keyed by the attempt index r. The key stream is the
// hash of the 8-digit zero-padded decimal rendering of r, repeated cyclically;
// XOR-ing twice with the same r restores the input.
class Randomizer {
  public:
    explicit Randomizer(const std::string& hash_name = "SHA3-512") : name_(hash_name) {
        md_ = EVP_get_digestbyname(hash_name.c_str());
        if (!md_) throw std::invalid_argument("unknown hash function: " + hash_name);
    }

    const std::string& hash_name() const { return name_; }

    size_t output_bits() const { return static_cast<size_t>(EVP_MD_get_size(md_)) * 8; }

    std::vector<uint8_t> digest(unsigned long long r) const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%08llu", r);
        std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                    &EVP_MD_CTX_free);
        if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
        std::vector<uint8_t> out(static_cast<size_t>(EVP_MD_get_size(md_)));
        unsigned int len = 0;
        if (EVP_DigestInit_ex(ctx.get(), md_, nullptr) != 1 ||
            EVP_DigestUpdate(ctx.get(), buf, std::char_traits<char>::length(buf)) != 1 ||
            EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1)
            throw std::runtime_error("digest computation failed");
        out.resize(len);
        return out;
    }

    BitVec keystream(unsigned long long r, size_t nbits) const {
        auto key = digest(r);
        BitVec ks;
        size_t key_bits = key.size() * 8;
        for (size_t i = 0; i < nbits; ++i) {
            size_t j = i % key_bits;
            ks.push_back((key[j / 8] >> (7 - j % 8)) & 1);
        }
        return ks;
    }

    void apply(BitVec& bits, unsigned long long r) const { bits.xor_cyclic(digest(r)); }

  private:
    std::string name_;
    const EVP_MD* md_;
};

}  // namespace dnacodec
