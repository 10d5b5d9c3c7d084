#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dna.hpp"
#include "mapping.hpp"
#include "ratio.hpp"

namespace dnacodec {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Reference capacity of the run-length-3, 5%-GC-window constrained channel;
// the efficiency figure is quoted against this value.
inline constexpr double kConstraintCapacity = 1.9824;

// Bits per nucleotide of the 3*4^(m-1)-ary construction: log2(3*4^(m-1)) / m.
inline double info_density(int m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    return (std::log2(3.0) + 2.0 * (m - 1)) / m;
}

inline double coding_efficiency(int m, double capacity = kConstraintCapacity) {
    return info_density(m) / capacity;
}

// Exact distribution of a GC count: counts[g] ways out of `total`.
struct GcDistribution {
    std::vector<BigInt> counts;
    BigInt total = 0;

    int max_count() const { return static_cast<int>(counts.size()) - 1; }

    void check() const {
        BigInt s = 0;
        for (const auto& c : counts) s += c;
        if (s != total) throw std::logic_error("distribution counts do not sum to total");
    }
};

inline GcDistribution convolve(const GcDistribution& a, const GcDistribution& b) {
    GcDistribution out;
    out.counts.assign(a.counts.size() + b.counts.size() - 1, 0);
    for (size_t i = 0; i < a.counts.size(); ++i) {
        if (a.counts[i] == 0) continue;
        for (size_t j = 0; j < b.counts.size(); ++j)
            out.counts[i + j] += a.counts[i] * b.counts[j];
    }
    out.total = a.total * b.total;
    return out;
}

inline GcDistribution distribution_power(const GcDistribution& d, size_t k) {
    if (k == 0) return GcDistribution{{1}, 1};
    GcDistribution acc = d;
    for (size_t i = 1; i < k; ++i) acc = convolve(acc, d);
    return acc;
}

// GC distribution of a single mapped tuple under a uniform symbol.
inline GcDistribution tuple_gc_distribution(const MappingTable& table) {
    GcDistribution d;
    d.counts.assign(static_cast<size_t>(table.m()) + 1, 0);
    for (size_t s = 0; s < table.size(); ++s) {
        size_t g = 0;
        for (char c : table.tuple(static_cast<int>(s)))
            if (c == 'G' || c == 'C') ++g;
        ++d.counts[g];
    }
    d.total = table.size();
    return d;
}

namespace detail {
inline std::string block_image(const MappingTable& table, unsigned v) {
    return table.tuple(static_cast<int>(v / 48)) + table.tuple(static_cast<int>(v % 48));
}
}  // namespace detail

// GC distribution of the 6-nt image of a uniform 11-bit block (48-ary only).
inline GcDistribution block_gc_distribution(const MappingTable& table) {
    if (table.m() != 3) throw std::invalid_argument("block analysis is 48-ary only");
    GcDistribution d;
    d.counts.assign(7, 0);
    for (unsigned v = 0; v < 2048; ++v) {
        std::string img = detail::block_image(table, v);
        size_t g = 0;
        for (char c : img)
            if (c == 'G' || c == 'C') ++g;
        ++d.counts[g];
    }
    d.total = 2048;
    return d;
}

// GC distribution of the first t positions (1 <= t <= 5) of the block image.
inline GcDistribution partial_block_distribution(const MappingTable& table, int t) {
    if (table.m() != 3) throw std::invalid_argument("block analysis is 48-ary only");
    if (t < 1 || t > 5) throw std::invalid_argument("partial width must be in [1,5]");
    GcDistribution d;
    d.counts.assign(static_cast<size_t>(t) + 1, 0);
    for (unsigned v = 0; v < 2048; ++v) {
        std::string img = detail::block_image(table, v);
        size_t g = 0;
        for (int i = 0; i < t; ++i)
            if (img[static_cast<size_t>(i)] == 'G' || img[static_cast<size_t>(i)] == 'C') ++g;
        ++d.counts[g];
    }
    d.total = 2048;
    return d;
}

// GC distribution of an n-nt payload built from uniform 11-bit blocks: whole
// blocks convolved together, plus the marginal of the first n mod 6 positions
// of one more block when n is not a multiple of 6.
inline GcDistribution payload_gc_distribution(const MappingTable& table, int n) {
    if (n < 1) throw std::invalid_argument("payload length must be positive");
    int blocks = n / 6, rem = n % 6;
    GcDistribution d = distribution_power(block_gc_distribution(table), static_cast<size_t>(blocks));
    if (rem) d = convolve(d, partial_block_distribution(table, rem));
    return d;
}

namespace detail {
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}
inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }
}  // namespace detail

// Integer window [lo, hi] of admissible GC counts for |g/n - 1/2| <= alpha.
inline std::pair<long long, long long> gc_window(int n, const Ratio& alpha) {
    BigInt num = alpha.num, den = alpha.den;
    BigInt lo = detail::ceil_div(BigInt(n) * (den - 2 * num), 2 * den);
    BigInt hi = detail::floor_div(BigInt(n) * (den + 2 * num), 2 * den);
    if (lo < 0) lo = 0;
    if (hi > n) hi = n;
    return {static_cast<long long>(lo), static_cast<long long>(hi)};
}

// Probability that the GC count lands inside the alpha window.
inline BigRat window_probability(const GcDistribution& d, const Ratio& alpha) {
    int n = d.max_count();
    auto [lo, hi] = gc_window(n, alpha);
    BigInt s = 0;
    for (long long g = lo; g <= hi; ++g) s += d.counts[static_cast<size_t>(g)];
    return BigRat(s, d.total);
}

inline BigRat balance_probability(const MappingTable& table, int n, const Ratio& alpha) {
    return window_probability(payload_gc_distribution(table, n), alpha);
}

// Probability that at least one of I independent attempts lands in-window.
inline BigRat success_probability(const BigRat& p, int iterations) {
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    BigRat q = 1 - p;
    BigRat qi = 1;
    for (int i = 0; i < iterations; ++i) qi *= q;
    return 1 - qi;
}

// Exact test of (1-p)^I <= eps without leaving integer arithmetic:
// ((total-S)/total)^I <= eps_num/eps_den  <=>  (total-S)^I * eps_den <= eps_num * total^I.
inline bool meets_failure_budget(const GcDistribution& d, const Ratio& alpha, int iterations,
                                 const Ratio& eps) {
    if (eps.num <= 0) throw std::invalid_argument("failure budget must be positive");
    int n = d.max_count();
    auto [lo, hi] = gc_window(n, alpha);
    BigInt s = 0;
    for (long long g = lo; g <= hi; ++g) s += d.counts[static_cast<size_t>(g)];
    BigInt miss = d.total - s;
    BigInt lhs = boost::multiprecision::pow(miss, static_cast<unsigned>(iterations)) * eps.den;
    BigInt rhs =
        BigInt(eps.num) * boost::multiprecision::pow(d.total, static_cast<unsigned>(iterations));
    return lhs <= rhs;
}

// Smallest alpha on the 0.001 grid whose failure probability after I
// iterations is within eps.
inline Ratio min_alpha(const GcDistribution& d, int iterations, const Ratio& eps) {
    if (eps.num <= 0) throw std::invalid_argument("failure budget must be positive");
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    int n = d.max_count();
    std::vector<BigInt> prefix(d.counts.size() + 1, 0);
    for (size_t i = 0; i < d.counts.size(); ++i) prefix[i + 1] = prefix[i] + d.counts[i];
    BigInt eps_rhs_base = BigInt(eps.num);
    BigInt total_pow = boost::multiprecision::pow(d.total, static_cast<unsigned>(iterations));
    for (long long millis = 0; millis <= 500; ++millis) {
        Ratio alpha(millis, 1000);
        auto [lo, hi] = gc_window(n, alpha);
        BigInt s = prefix[static_cast<size_t>(hi) + 1] - prefix[static_cast<size_t>(lo)];
        BigInt miss = d.total - s;
        if (boost::multiprecision::pow(miss, static_cast<unsigned>(iterations)) * eps.den <=
            eps_rhs_base * total_pow)
            return alpha;
    }
    throw std::runtime_error("no alpha on the grid meets the failure budget");
}

inline Ratio min_alpha(const MappingTable& table, int n, int iterations, const Ratio& eps) {
    return min_alpha(payload_gc_distribution(table, n), iterations, eps);
}

}  // namespace dnacodec
