#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <dnacodec/codec.hpp>

using namespace dnacodec;

static BitVec bits_of(std::initializer_list<int> bits) {
    BitVec b;
    for (int v : bits) b.push_back(v != 0);
    return b;
}

static BitVec random_bits(size_t n, uint32_t seed) {
    std::mt19937 rng(seed);
    BitVec b;
    for (size_t i = 0; i < n; ++i) b.push_back(rng() & 1);
    return b;
}

TEST_CASE("parameter validation") {
    CodecParams p;
    CHECK_NOTHROW(p.validate());
    SECTION("block11 shape") {
        p.n = 200;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p.n = 198;
        p.m = 4;
        p.constraints.max_run = 4;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SECTION("run limit ties to m") {
        p.constraints.max_run = 2;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SECTION("iteration bounds") {
        p.max_iterations = 0;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p.max_iterations = 5;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SECTION("whole stream shape") {
        p.method = MappingMethod::whole_stream;
        p.m = 4;
        p.constraints.max_run = 4;
        p.n = 198;  // not a multiple of 4
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p.n = 200;
        CHECK_NOTHROW(p.validate());
    }
    SECTION("source symbol width") {
        p.source_k = 33;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
}

TEST_CASE("method names") {
    CHECK(method_name(MappingMethod::block11) == "block11");
    CHECK(method_from_name("whole_stream") == MappingMethod::whole_stream);
    CHECK_THROWS_AS(method_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("chunk capacities at the default strand length") {
    CodecParams p;
    CHECK(chunk_bit_capacity(p) == 363);  // 33 blocks of 11 bits
    p.method = MappingMethod::whole_stream;
    CHECK(chunk_bit_capacity(p) == 368);  // floor(66 * log2 48)
}

TEST_CASE("whole stream digit counts") {
    const auto& t = canonical_table48();
    CHECK(whole_stream_digit_count(t, 1) == 1);
    CHECK(whole_stream_digit_count(t, 5) == 1);
    CHECK(whole_stream_digit_count(t, 6) == 2);
    CHECK(whole_stream_digit_count(t, 368) == 66);
    CHECK_THROWS_AS(whole_stream_digit_count(t, 0), std::invalid_argument);
}

TEST_CASE("block mapping on reference values") {
    const auto& t = canonical_table48();
    BitVec zeros(11);
    CHECK(map_block11(zeros, t).str() == "AACAAC");  // value 0 -> digits (0, 0)

    BitVec ones;
    ones.append_bits(2047, 11);  // digits (42, 31)
    CHECK(map_block11(ones, t).str() == "ATGCCG");

    BitVec v49;
    v49.append_bits(49, 11);  // digits (1, 1)
    CHECK(map_block11(v49, t).str() == "AATAAT");

    BitVec two_blocks;
    two_blocks.append_bits(0, 11);
    two_blocks.append_bits(49, 11);
    CHECK(map_block11(two_blocks, t).str() == "AACAACAATAAT");
}

TEST_CASE("block unmapping inverts and validates") {
    const auto& t = canonical_table48();
    BitVec v49;
    v49.append_bits(49, 11);
    CHECK(unmap_block11(DnaSequence("AATAAT"), 11, t) == v49);

    // digits (43, 0) name the value 2064 which no 11-bit block reaches
    CHECK_THROWS_AS(unmap_block11(DnaSequence("TTGAAC"), 11, t), CorruptionError);
    // AAA is not a valid tuple
    CHECK_THROWS_AS(unmap_block11(DnaSequence("AAAAAC"), 11, t), CorruptionError);
    // payload length must be whole blocks
    CHECK_THROWS_AS(unmap_block11(DnaSequence("AAC"), 11, t), CorruptionError);
    // block count must match the bit count
    CHECK_THROWS_AS(unmap_block11(DnaSequence("AACAACAACAAC"), 11, t), CorruptionError);
}

TEST_CASE("short final block pads at the low end") {
    const auto& t = canonical_table48();
    // 4 tail bits 1011 -> value 1011'0000000 = 1408 -> digits (29, 16)
    BitVec tail = bits_of({1, 0, 1, 1});
    auto seq = map_block11(tail, t);
    CHECK(seq.str() == t.tuple(1408 / 48) + t.tuple(1408 % 48));
    CHECK(unmap_block11(seq, 4, t) == tail);
    // nonzero padding is rejected: value 1409 has a low bit set
    DnaSequence bad(t.tuple(1409 / 48) + t.tuple(1409 % 48));
    CHECK_THROWS_AS(unmap_block11(bad, 4, t), CorruptionError);
}

TEST_CASE("whole stream mapping on reference values") {
    const auto& t = canonical_table48();
    BitVec zeros(6);  // needs two digits; value 0
    CHECK(map_whole_stream(zeros, t).str() == "AACAAC");

    BitVec v48;
    v48.append_bits(48, 6);  // digits (1, 0)
    CHECK(map_whole_stream(v48, t).str() == "AATAAC");

    BitVec v5 = bits_of({1, 0, 1});  // single digit 5
    CHECK(map_whole_stream(v5, t).str() == "AGT");

    CHECK(unmap_whole_stream(DnaSequence("AATAAC"), 6, t) == v48);
    CHECK(unmap_whole_stream(DnaSequence("AGT"), 3, t) == v5);
}

TEST_CASE("whole stream unmapping validates") {
    const auto& t = canonical_table48();
    // AGT encodes 5, which does not fit in 2 bits
    CHECK_THROWS_AS(unmap_whole_stream(DnaSequence("AGT"), 2, t), CorruptionError);
    CHECK_THROWS_AS(unmap_whole_stream(DnaSequence("AAAAAC"), 6, t), CorruptionError);
    CHECK_THROWS_AS(unmap_whole_stream(DnaSequence("AGTA"), 3, t), CorruptionError);
    // digit count disagrees with the bit count
    CHECK_THROWS_AS(unmap_whole_stream(DnaSequence("AACAACAAC"), 6, t), CorruptionError);
}

TEST_CASE("strand prefixes record the iteration index") {
    CodecParams p;
    Codec codec(p);
    auto bits = random_bits(363 * 3, 99);
    auto a = codec.encode(bits);
    REQUIRE(a.strands.size() == 3);
    for (size_t i = 0; i < a.strands.size(); ++i) {
        int r = a.r_values[i];
        CHECK(a.strands[i][0] == nucleotide_from_value(static_cast<unsigned>(r)));
        CHECK(a.strands[i].size() == 199);
    }
    CHECK(codec.decode(a) == bits);
}

TEST_CASE("encoded strands satisfy the constraints") {
    CodecParams p;
    Codec codec(p);
    auto bits = random_bits(363 * 5, 123);
    auto a = codec.encode(bits);
    for (const auto& s : a.strands) {
        CHECK(max_run_length(s) <= 3);
        size_t g = gc_count(s, 1, s.size());
        // payload of 198 nt within the alpha = 0.05 window: [90, 108]
        CHECK(g >= 90);
        CHECK(g <= 108);
    }
}

TEST_CASE("round trips at varied lengths") {
    for (auto method : {MappingMethod::block11, MappingMethod::whole_stream}) {
        CodecParams p;
        p.method = method;
        Codec codec(p);
        uint32_t seed = 1000;
        for (size_t nbits : {1ul, 7ul, 11ul, 12ul, 363ul, 364ul, 368ul, 726ul, 1000ul, 5000ul}) {
            auto bits = random_bits(nbits, seed++);
            auto a = codec.encode(bits);
            CHECK(a.compressed_bit_length == nbits);
            CHECK(codec.decode(a) == bits);
        }
    }
}

TEST_CASE("tail strands are shorter") {
    CodecParams p;
    Codec codec(p);
    auto bits = random_bits(363 + 8, 7);  // one full strand + 8 tail bits
    auto a = codec.encode(bits);
    REQUIRE(a.strands.size() == 2);
    CHECK(a.strands[0].size() == 199);
    CHECK(a.strands[1].size() == 7);  // one 6-nt block + prefix
    CHECK(codec.decode(a) == bits);

    auto bits14 = random_bits(363 + 14, 8);  // 14 tail bits need two blocks
    auto a14 = codec.encode(bits14);
    REQUIRE(a14.strands.size() == 2);
    CHECK(a14.strands[1].size() == 13);
    CHECK(codec.decode(a14) == bits14);
}

TEST_CASE("tail window widens only as much as needed") {
    CodecParams p;
    const auto& t = canonical_table48();
    // at alpha = 0.05 any sub-chunk tail needs a wider window to keep the
    // residual failure chance under one in a million
    Ratio user = p.constraints.alpha;
    CHECK(user < effective_tail_alpha(p, t, 8));
    CHECK(user < effective_tail_alpha(p, t, 352));
    // a user window that is already maximal stays put
    CodecParams wide = p;
    wide.constraints.alpha = Ratio(1, 2);
    CHECK(effective_tail_alpha(wide, t, 8) == Ratio(1, 2));
}

TEST_CASE("m=2 and m=4 whole stream round trips") {
    for (int m : {2, 4}) {
        CodecParams p;
        p.method = MappingMethod::whole_stream;
        p.m = m;
        p.constraints.max_run = m;
        p.constraints.alpha = Ratio(1, 2);  // tiny alphabets need the full window
        p.n = 12 * m;
        Codec codec(p);
        auto bits = random_bits(500, static_cast<uint32_t>(m));
        auto a = codec.encode(bits);
        CHECK(codec.decode(a) == bits);
        for (const auto& s : a.strands) CHECK(max_run_length(s) <= static_cast<size_t>(m));
    }
}

TEST_CASE("empty input encodes to an empty archive") {
    CodecParams p;
    Codec codec(p);
    auto a = codec.encode(BitVec());
    CHECK(a.strands.empty());
    CHECK(a.total_nt() == 0);
    CHECK(codec.decode(a).empty());
}

TEST_CASE("unsatisfiable constraints raise an encoding failure") {
    CodecParams p;
    // every strand contains at least one of the four bases
    p.constraints.forbidden = {DnaSequence("A"), DnaSequence("C"), DnaSequence("G"),
                               DnaSequence("T")};
    Codec codec(p);
    auto bits = random_bits(363, 5);
    try {
        codec.encode(bits);
        FAIL("expected EncodingFailure");
    } catch (const EncodingFailure& e) {
        CHECK(e.chunk_index == 0);
    }
}

TEST_CASE("forbidden patterns are respected") {
    CodecParams p;
    p.constraints.forbidden = {DnaSequence("GGTGGT")};
    Codec codec(p);
    auto bits = random_bits(363 * 3, 321);
    auto a = codec.encode(bits);
    for (const auto& s : a.strands) CHECK_FALSE(contains_pattern(s, p.constraints.forbidden[0]));
    CHECK(codec.decode(a) == bits);
}

TEST_CASE("decode rejects inconsistent archives") {
    CodecParams p;
    Codec codec(p);
    auto bits = random_bits(363 * 2, 42);
    auto good = codec.encode(bits);

    SECTION("strand count") {
        auto a = good;
        a.strands.pop_back();
        a.r_values.pop_back();
        CHECK_THROWS_AS(codec.decode(a), CorruptionError);
    }
    SECTION("iteration record length") {
        auto a = good;
        a.r_values.pop_back();
        CHECK_THROWS_AS(codec.decode(a), CorruptionError);
    }
    SECTION("prefix against the recorded iteration") {
        auto a = good;
        a.r_values[0] = (a.r_values[0] + 1) % 4;
        try {
            codec.decode(a);
            FAIL("expected DecodeError");
        } catch (const DecodeError& e) {
            CHECK(e.strand_index == 0);
        }
    }
    SECTION("iteration index out of range") {
        auto a = good;
        a.r_values[1] = 7;
        CHECK_THROWS_AS(codec.decode(a), DecodeError);
    }
    SECTION("strand length") {
        auto a = good;
        a.strands[1] = a.strands[1].subseq(0, 100);
        CHECK_THROWS_AS(codec.decode(a), DecodeError);
    }
    SECTION("invalid tuple inside a strand") {
        auto a = good;
        std::string s = a.strands[0].str();
        s[1] = s[2] = s[3] = 'A';  // force AAA into the first tuple
        a.strands[0] = DnaSequence(s);
        CHECK_THROWS_AS(codec.decode(a), DecodeError);
    }
}

TEST_CASE("full-strand gc scope includes the prefix") {
    CodecParams p;
    p.constraints.gc_scope = GcScope::full_strand;
    Codec codec(p);
    auto bits = random_bits(363 * 2, 77);
    auto a = codec.encode(bits);
    for (const auto& s : a.strands) {
        long long g = static_cast<long long>(gc_count(s, 0, s.size()));
        // 199 nt in [0.45, 0.55]: [90, 109]
        CHECK(g >= 90);
        CHECK(g <= 109);
    }
    CHECK(codec.decode(a) == bits);
}
