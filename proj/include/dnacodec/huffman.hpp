#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace dnacodec {

// Canonical Huffman code over k-bit symbols (1 <= k <= 32). The tree is built
// with the two-queue method; on weight ties the leaf queue is popped first,
// which among all optimal trees picks one with minimum length variance.
class Codebook {
  public:
    struct CodeEntry {
        uint32_t symbol = 0;
        uint16_t length = 0;
        uint64_t code = 0;  // MSB-first, `length` significant bits
    };

    Codebook() = default;

    static Codebook from_frequencies(const std::map<uint32_t, uint64_t>& freq, int k) {
        check_k(k);
        Codebook cb;
        cb.k_ = k;
        if (freq.empty()) return cb;
        for (auto& [sym, count] : freq) {
            if (count == 0) throw std::invalid_argument("zero frequency in histogram");
            if (k < 32 && sym >= (1u << k)) throw std::invalid_argument("symbol exceeds k bits");
        }
        std::vector<uint16_t> lengths = tree_lengths(freq);
        size_t i = 0;
        cb.entries_.resize(freq.size());
        for (auto& [sym, count] : freq) {
            cb.entries_[i].symbol = sym;
            cb.entries_[i].length = lengths[i];
            ++i;
        }
        cb.assign_canonical_codes();
        return cb;
    }

    static Codebook from_data(const BitVec& data, int k) {
        return from_frequencies(histogram(data, k), k);
    }

    static std::map<uint32_t, uint64_t> histogram(const BitVec& data, int k) {
        check_k(k);
        std::map<uint32_t, uint64_t> freq;
        size_t nsym = (data.size() + static_cast<size_t>(k) - 1) / static_cast<size_t>(k);
        for (size_t i = 0; i < nsym; ++i)
            ++freq[static_cast<uint32_t>(data.read_bits_padded(i * static_cast<size_t>(k), k))];
        return freq;
    }

    int k() const { return k_; }
    const std::vector<CodeEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    const CodeEntry& entry(uint32_t symbol) const {
        auto it = lookup_.find(symbol);
        if (it == lookup_.end())
            throw std::invalid_argument("symbol " + std::to_string(symbol) + " not in codebook");
        return entries_[it->second];
    }

    BitVec compress(const BitVec& data) const {
        BitVec out;
        size_t nsym = (data.size() + static_cast<size_t>(k_) - 1) / static_cast<size_t>(k_);
        for (size_t i = 0; i < nsym; ++i) {
            auto sym = static_cast<uint32_t>(data.read_bits_padded(i * static_cast<size_t>(k_), k_));
            const CodeEntry& e = entry(sym);
            out.append_bits(e.code, e.length);
        }
        return out;
    }

    // original_bit_length tells how many payload bits the caller wants back;
    // the symbol count is derived from it, and the stream must contain exactly
    // the codes for those symbols.
    BitVec decompress(const BitVec& bits, size_t original_bit_length) const {
        BitVec out;
        if (original_bit_length == 0) {
            if (bits.size() != 0) throw CorruptionError("compressed stream should be empty");
            return out;
        }
        if (entries_.empty()) throw CorruptionError("empty codebook cannot decode data");
        size_t nsym =
            (original_bit_length + static_cast<size_t>(k_) - 1) / static_cast<size_t>(k_);
        size_t pos = 0;
        for (size_t i = 0; i < nsym; ++i) {
            uint64_t acc = 0;
            uint16_t len = 0;
            int sym = -1;
            while (sym < 0) {
                if (pos >= bits.size())
                    throw CorruptionError("compressed stream ends inside a code word");
                acc = (acc << 1) | bits.get(pos++);
                ++len;
                if (len > max_length_) throw CorruptionError("bit pattern matches no code word");
                const LengthRow& row = rows_[len];
                if (row.count && acc >= row.first_code && acc - row.first_code < row.count)
                    sym = static_cast<int>(
                        ordered_symbols_[row.first_index + (acc - row.first_code)]);
            }
            out.append_bits(static_cast<uint64_t>(sym), k_);
        }
        if (pos != bits.size()) throw CorruptionError("trailing bits after final code word");
        out.resize(original_bit_length);
        return out;
    }

    // serialized form: [u8 k][u32 entry count][u32 symbol, u16 length]... LE;
    // codes are reconstructed canonically so only lengths travel
    std::vector<uint8_t> serialize() const {
        std::vector<uint8_t> out;
        out.push_back(static_cast<uint8_t>(k_));
        put_le(out, static_cast<uint32_t>(entries_.size()), 4);
        for (const auto& e : entries_) {
            put_le(out, e.symbol, 4);
            put_le(out, e.length, 2);
        }
        return out;
    }

    static Codebook deserialize(const std::vector<uint8_t>& blob) {
        if (blob.size() < 5) throw CorruptionError("codebook blob too short");
        Codebook cb;
        cb.k_ = blob[0];
        check_k(cb.k_);
        uint64_t count = get_le(blob, 1, 4);
        if (blob.size() != 5 + count * 6) throw CorruptionError("codebook blob size mismatch");
        cb.entries_.resize(count);
        for (uint64_t i = 0; i < count; ++i) {
            cb.entries_[i].symbol = static_cast<uint32_t>(get_le(blob, 5 + i * 6, 4));
            cb.entries_[i].length = static_cast<uint16_t>(get_le(blob, 5 + i * 6 + 4, 2));
            if (cb.entries_[i].length == 0 || cb.entries_[i].length > 63)
                throw CorruptionError("codebook blob has invalid code length");
        }
        if (count) cb.assign_canonical_codes();
        return cb;
    }

    std::string dump() const {
        std::ostringstream os;
        os << "k=" << k_ << " symbols=" << entries_.size() << "\n";
        for (const auto& e : entries_) {
            std::string bitstr;
            for (int b = e.length - 1; b >= 0; --b) bitstr += ((e.code >> b) & 1) ? '1' : '0';
            os << e.symbol << " len=" << e.length << " code=" << bitstr << "\n";
        }
        return os.str();
    }

  private:
    static void check_k(int k) {
        if (k < 1 || k > 32) throw std::invalid_argument("symbol width k must be in [1,32]");
    }

    static void put_le(std::vector<uint8_t>& out, uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    static uint64_t get_le(const std::vector<uint8_t>& in, size_t pos, int bytes) {
        uint64_t v = 0;
        for (int i = 0; i < bytes; ++i) v |= static_cast<uint64_t>(in[pos + i]) << (8 * i);
        return v;
    }

    // code lengths per histogram entry, in the histogram's (symbol-ascending)
    // iteration order
    static std::vector<uint16_t> tree_lengths(const std::map<uint32_t, uint64_t>& freq) {
        struct Node {
            uint64_t weight;
            int left = -1, right = -1;
        };
        if (freq.size() == 1) return {1};

        std::vector<std::pair<uint64_t, uint32_t>> leaves;  // (weight, symbol)
        for (auto& [sym, count] : freq) leaves.emplace_back(count, sym);
        std::sort(leaves.begin(), leaves.end());

        std::vector<Node> nodes(leaves.size());
        std::map<uint32_t, size_t> node_of_symbol;
        for (size_t i = 0; i < leaves.size(); ++i) {
            nodes[i].weight = leaves[i].first;
            node_of_symbol[leaves[i].second] = i;
        }
        std::deque<int> leaf_q, merge_q;
        for (size_t i = 0; i < leaves.size(); ++i) leaf_q.push_back(static_cast<int>(i));

        auto pop_min = [&]() {
            // <= : equal weights favour the leaf queue
            int id;
            if (!leaf_q.empty() &&
                (merge_q.empty() ||
                 nodes[static_cast<size_t>(leaf_q.front())].weight <=
                     nodes[static_cast<size_t>(merge_q.front())].weight)) {
                id = leaf_q.front();
                leaf_q.pop_front();
            } else {
                id = merge_q.front();
                merge_q.pop_front();
            }
            return id;
        };
        while (leaf_q.size() + merge_q.size() > 1) {
            int a = pop_min();
            int b = pop_min();
            Node parent;
            parent.weight = nodes[static_cast<size_t>(a)].weight +
                            nodes[static_cast<size_t>(b)].weight;
            parent.left = a;
            parent.right = b;
            nodes.push_back(parent);
            merge_q.push_back(static_cast<int>(nodes.size() - 1));
        }
        int root = pop_min();

        std::vector<uint16_t> depth(nodes.size(), 0);
        // children always have smaller indices than their parent, so walking
        // the node list backwards fixes every depth in one pass
        for (size_t i = nodes.size(); i-- > 0;) {
            const Node& nd = nodes[i];
            if (nd.left >= 0) {
                depth[static_cast<size_t>(nd.left)] =
                    static_cast<uint16_t>(depth[i] + 1);
                depth[static_cast<size_t>(nd.right)] =
                    static_cast<uint16_t>(depth[i] + 1);
            }
        }
        (void)root;
        std::vector<uint16_t> lengths;
        lengths.reserve(freq.size());
        for (auto& [sym, count] : freq) lengths.push_back(depth[node_of_symbol[sym]]);
        return lengths;
    }

    void assign_canonical_codes() {
        std::sort(entries_.begin(), entries_.end(), [](const CodeEntry& a, const CodeEntry& b) {
            return a.length != b.length ? a.length < b.length : a.symbol < b.symbol;
        });
        uint64_t code = 0;
        uint16_t prev_len = entries_.front().length;
        __int128 kraft = 0;
        for (auto& e : entries_) {
            code <<= (e.length - prev_len);
            e.code = code;
            ++code;
            prev_len = e.length;
            kraft += static_cast<__int128>(1) << (63 - e.length);
        }
        if (kraft > (static_cast<__int128>(1) << 63))
            throw CorruptionError("code lengths violate the Kraft inequality");

        max_length_ = entries_.back().length;
        rows_.assign(max_length_ + 1u, LengthRow{});
        ordered_symbols_.clear();
        ordered_symbols_.reserve(entries_.size());
        lookup_.clear();
        for (size_t i = 0; i < entries_.size(); ++i) {
            const CodeEntry& e = entries_[i];
            LengthRow& row = rows_[e.length];
            if (row.count == 0) {
                row.first_code = e.code;
                row.first_index = ordered_symbols_.size();
            }
            ++row.count;
            ordered_symbols_.push_back(e.symbol);
            lookup_[e.symbol] = i;
        }
    }

    struct LengthRow {
        uint64_t first_code = 0;
        size_t first_index = 0;
        uint64_t count = 0;
    };

    int k_ = 8;
    std::vector<CodeEntry> entries_;  // sorted by (length, symbol)
    std::map<uint32_t, size_t> lookup_;
    std::vector<LengthRow> rows_;
    std::vector<uint32_t> ordered_symbols_;
    uint16_t max_length_ = 0;
};

}  // namespace dnacodec
