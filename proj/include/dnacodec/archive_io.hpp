#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "codec.hpp"
#include "errors.hpp"

namespace dnacodec {

inline std::string sidecar_path(const std::string& fasta_path) { return fasta_path + ".meta"; }

namespace detail {

inline std::string hex_encode(const std::vector<uint8_t>& data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out += digits[b >> 4];
        out += digits[b & 0xF];
    }
    return out;
}

inline std::vector<uint8_t> hex_decode(const std::string& text) {
    if (text.size() % 2) throw CorruptionError("odd-length hex string");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw CorruptionError("bad hex digit");
    };
    std::vector<uint8_t> out(text.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>(nibble(text[2 * i]) << 4 | nibble(text[2 * i + 1]));
    return out;
}

// Writes content to <path>.tmp and renames it into place, so a failed run
// never leaves a partial file.
inline void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot open " + tmp + " for writing");
        out << content;
        if (!out.good()) throw std::runtime_error("write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline std::string to_fasta(const EncodedArchive& a, size_t columns = 70) {
    std::ostringstream os;
    for (size_t i = 0; i < a.strands.size(); ++i) {
        os << ">strand_" << i << " r=" << a.r_values[i] << "\n";
        const std::string& s = a.strands[i].str();
        for (size_t pos = 0; pos < s.size(); pos += columns)
            os << s.substr(pos, columns) << "\n";
    }
    return os.str();
}

inline std::string to_sidecar(const EncodedArchive& a) {
    const CodecParams& p = a.params;
    std::ostringstream os;
    os << "magic=DNACODEC\n";
    os << "version=1\n";
    os << "method=" << method_name(p.method) << "\n";
    os << "m=" << p.m << "\n";
    os << "alpha=" << p.constraints.alpha.str() << "\n";
    os << "n=" << p.n << "\n";
    os << "I=" << p.max_iterations << "\n";
    os << "gc_scope=" << (p.constraints.gc_scope == GcScope::full_strand ? "full" : "payload")
       << "\n";
    if (!p.constraints.forbidden.empty()) {
        os << "forbidden=";
        for (size_t i = 0; i < p.constraints.forbidden.size(); ++i)
            os << (i ? "," : "") << p.constraints.forbidden[i].str();
        os << "\n";
    }
    os << "hash=" << p.hash_name << "\n";
    os << "original_bit_length=" << a.original_bit_length << "\n";
    os << "compressed_bit_length=" << a.compressed_bit_length << "\n";
    os << "strands=" << a.strands.size() << "\n";
    if (p.source_k) {
        os << "k=" << *p.source_k << "\n";
        os << "codebook=" << detail::hex_encode(a.codebook_blob) << "\n";
    }
    return os.str();
}

inline void write_archive(const EncodedArchive& a, const std::string& fasta_path) {
    detail::atomic_write(sidecar_path(fasta_path), to_sidecar(a));
    detail::atomic_write(fasta_path, to_fasta(a));
}

namespace detail {

inline std::map<std::string, std::string> parse_keyvalues(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw CorruptionError("sidecar line missing '=': " + line);
        if (!kv.emplace(line.substr(0, eq), line.substr(eq + 1)).second)
            throw CorruptionError("duplicate sidecar key: " + line.substr(0, eq));
    }
    return kv;
}

inline const std::string& require(const std::map<std::string, std::string>& kv,
                                  const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw CorruptionError("sidecar is missing key '" + key + "'");
    return it->second;
}

}  // namespace detail

inline EncodedArchive parse_archive(std::istream& fasta, std::istream& sidecar) {
    auto kv = detail::parse_keyvalues(sidecar);
    if (detail::require(kv, "magic") != "DNACODEC")
        throw CorruptionError("sidecar magic mismatch");
    if (detail::require(kv, "version") != "1")
        throw CorruptionError("unsupported archive version " + kv["version"]);

    EncodedArchive a;
    CodecParams& p = a.params;
    p.method = method_from_name(detail::require(kv, "method"));
    p.m = std::stoi(detail::require(kv, "m"));
    p.constraints.max_run = p.m;
    p.constraints.alpha = parse_ratio(detail::require(kv, "alpha"));
    p.n = std::stoi(detail::require(kv, "n"));
    p.max_iterations = std::stoi(detail::require(kv, "I"));
    const std::string& scope = detail::require(kv, "gc_scope");
    if (scope == "payload")
        p.constraints.gc_scope = GcScope::payload_only;
    else if (scope == "full")
        p.constraints.gc_scope = GcScope::full_strand;
    else
        throw CorruptionError("unknown gc_scope '" + scope + "'");
    if (auto it = kv.find("forbidden"); it != kv.end() && !it->second.empty()) {
        std::istringstream fs(it->second);
        std::string pat;
        while (std::getline(fs, pat, ',')) p.constraints.forbidden.emplace_back(pat);
    }
    if (auto it = kv.find("hash"); it != kv.end()) p.hash_name = it->second;
    a.original_bit_length = std::stoull(detail::require(kv, "original_bit_length"));
    a.compressed_bit_length = std::stoull(detail::require(kv, "compressed_bit_length"));
    auto strand_count = std::stoull(detail::require(kv, "strands"));
    if (auto it = kv.find("k"); it != kv.end()) {
        p.source_k = std::stoi(it->second);
        a.codebook_blob = detail::hex_decode(detail::require(kv, "codebook"));
    }
    p.validate();

    std::string line, seq;
    bool in_record = false;
    long long r = -1;
    auto flush = [&]() {
        if (!in_record) return;
        if (seq.empty()) throw CorruptionError("FASTA record with empty sequence");
        if (r < 0 || r > 3) throw CorruptionError("iteration index out of range in FASTA header");
        try {
            a.strands.emplace_back(seq);
        } catch (const std::invalid_argument& e) {
            throw CorruptionError(std::string("bad strand data: ") + e.what());
        }
        a.r_values.push_back(static_cast<int>(r));
        seq.clear();
    };
    while (std::getline(fasta, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            flush();
            auto rpos = line.find(" r=");
            if (line.rfind(">strand_", 0) != 0 || rpos == std::string::npos)
                throw CorruptionError("malformed FASTA header: " + line);
            r = std::stoll(line.substr(rpos + 3));
            in_record = true;
        } else {
            if (!in_record) throw CorruptionError("sequence data before first FASTA header");
            seq += line;
        }
    }
    flush();
    if (a.strands.size() != strand_count)
        throw CorruptionError("FASTA holds " + std::to_string(a.strands.size()) +
                              " strands but sidecar declares " + std::to_string(strand_count));
    return a;
}

inline EncodedArchive read_archive(const std::string& fasta_path) {
    std::string meta = sidecar_path(fasta_path);
    if (!std::filesystem::exists(fasta_path))
        throw std::invalid_argument("archive file not found: " + fasta_path);
    if (!std::filesystem::exists(meta))
        throw std::invalid_argument("archive sidecar not found: " + meta);
    std::ifstream ff(fasta_path, std::ios::binary), mf(meta, std::ios::binary);
    if (!ff || !mf) throw std::invalid_argument("cannot open archive files");
    return parse_archive(ff, mf);
}

}  // namespace dnacodec
