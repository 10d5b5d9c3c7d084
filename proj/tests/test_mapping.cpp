#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include <dnacodec/mapping.hpp>

using namespace dnacodec;

TEST_CASE("alphabet sizes") {
    CHECK(alphabet_size(1) == 3);
    CHECK(alphabet_size(2) == 12);
    CHECK(alphabet_size(3) == 48);
    CHECK(alphabet_size(4) == 192);
    CHECK_THROWS_AS(alphabet_size(0), std::invalid_argument);
}

TEST_CASE("valid tuple enumeration") {
    auto t3 = enumerate_valid_tuples(3, 2);
    CHECK(t3.size() == 48);
    // lexicographic, first entries fixed
    CHECK(t3[0] == "AAC");
    CHECK(t3[1] == "AAG");
    CHECK(t3[2] == "AAT");
    for (const auto& t : t3) CHECK(t[1] != t[2]);

    auto t2 = enumerate_valid_tuples(2, 1);
    REQUIRE(t2.size() == 12);
    CHECK(t2 == std::vector<std::string>{"AC", "AG", "AT", "CA", "CG", "CT", "GA", "GC", "GT",
                                         "TA", "TC", "TG"});

    CHECK_THROWS_AS(enumerate_valid_tuples(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_valid_tuples(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_valid_tuples(3, 0), std::invalid_argument);
}

TEST_CASE("gray sequence steps one bit at a time") {
    const auto& g = gray_sequence_48();
    REQUIRE(g.size() == 48);
    std::set<int> seen(g.begin(), g.end());
    CHECK(seen.size() == 48);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 47);
    for (size_t i = 1; i < g.size(); ++i)
        CHECK(__builtin_popcount(static_cast<unsigned>(g[i - 1] ^ g[i])) == 1);
}

TEST_CASE("canonical table spot values") {
    const auto& t = canonical_table48();
    CHECK(t.m() == 3);
    CHECK(t.size() == 48);
    CHECK(t.tuple(0) == "AAC");
    CHECK(t.tuple(1) == "AAT");
    CHECK(t.tuple(2) == "TAT");
    CHECK(t.tuple(3) == "GAT");
    CHECK(t.tuple(8) == "GAG");
    CHECK(t.tuple(24) == "AAG");
    CHECK(t.tuple(32) == "GCG");
    CHECK(t.tuple(42) == "ATG");
    CHECK(t.tuple(47) == "CGA");
    CHECK(t.decode_symbol("AAC") == 0);
    CHECK(t.decode_symbol("GCG") == 32);
}

TEST_CASE("canonical table is a bijection with balanced base usage") {
    const auto& t = canonical_table48();
    std::set<std::string> tuples;
    std::array<int, 4> base_count{};
    for (int s = 0; s < 48; ++s) {
        const auto& tup = t.tuple(s);
        tuples.insert(tup);
        CHECK(tup[1] != tup[2]);
        for (char c : tup)
            ++base_count[static_cast<size_t>(nucleotide_from_char(c))];
    }
    CHECK(tuples.size() == 48);
    // each base appears equally often across the table
    for (int b = 0; b < 4; ++b) CHECK(base_count[static_cast<size_t>(b)] == 36);
}

TEST_CASE("any tuple concatenation keeps runs at three or less") {
    const auto& t = canonical_table48();
    for (int a = 0; a < 48; ++a)
        for (int b = 0; b < 48; ++b) {
            DnaSequence s(t.tuple(a) + t.tuple(b));
            CHECK(max_run_length(s) <= 3);
        }
}

TEST_CASE("one-nucleotide prefixes never break the run limit") {
    CHECK(run_prefix_safety_check(canonical_table48(), 3));
    CHECK(run_prefix_safety_check(lexicographic_table(2), 2));
    CHECK(run_prefix_safety_check(lexicographic_table(4), 4));
}

TEST_CASE("decode rejects invalid tuples") {
    const auto& t = canonical_table48();
    CHECK_THROWS_AS(t.decode_symbol("AAA"), CorruptionError);  // repeated tail pair
    CHECK_THROWS_AS(t.decode_symbol("AXA"), CorruptionError);
    CHECK_THROWS_AS(t.encode_symbol(48), std::invalid_argument);
    CHECK_THROWS_AS(t.encode_symbol(-1), std::invalid_argument);
}

TEST_CASE("table construction validates input") {
    auto tuples = enumerate_valid_tuples(3, 2);
    CHECK_NOTHROW(MappingTable(3, tuples));
    auto dup = tuples;
    dup[1] = dup[0];
    CHECK_THROWS_AS(MappingTable(3, dup), std::invalid_argument);
    auto bad = tuples;
    bad[0] = "ACC";  // last two equal
    CHECK_THROWS_AS(MappingTable(3, bad), std::invalid_argument);
    tuples.pop_back();
    CHECK_THROWS_AS(MappingTable(3, tuples), std::invalid_argument);
}

TEST_CASE("table export and import round trip") {
    const auto& t = canonical_table48();
    std::string lines = t.to_lines();
    CHECK(lines.substr(0, 6) == "0,AAC\n");
    CHECK(lines.find("32,GCG\n") != std::string::npos);
    std::istringstream in(lines);
    auto back = MappingTable::from_lines(in, 3);
    for (int s = 0; s < 48; ++s) CHECK(back.tuple(s) == t.tuple(s));

    std::istringstream missing("0,AAC\n");
    CHECK_THROWS_AS(MappingTable::from_lines(missing, 3), std::invalid_argument);
}

TEST_CASE("greedy chain follows the most likely substitutions") {
    auto chain = greedy_tuple_chain(SubstitutionMatrix::measured(), "AAC");
    REQUIRE(chain.size() == 48);
    // first moves: C->T at position 3, then A->G / G->T / T->C at position 1
    CHECK(chain[0] == "AAC");
    CHECK(chain[1] == "AAT");
    CHECK(chain[2] == "GAT");
    CHECK(chain[3] == "TAT");
    // from TAT the largest available rate is T->C at the first position
    CHECK(chain[4] == "CAT");
    std::set<std::string> unique(chain.begin(), chain.end());
    CHECK(unique.size() == 48);
    CHECK_THROWS_AS(greedy_tuple_chain(SubstitutionMatrix::measured(), "AAA"),
                    std::invalid_argument);
}

TEST_CASE("greedy builder produces a valid gray-labelled table") {
    auto t = build_greedy_table(SubstitutionMatrix::measured());
    CHECK(t.size() == 48);
    CHECK(t.tuple(0) == "AAC");  // chain start carries Gray symbol 0
    CHECK(t.tuple(1) == "AAT");
    CHECK(run_prefix_safety_check(t, 3));
    // neighbouring chain entries differ by one substitution or the documented
    // two-substitution fallback; their symbols differ in exactly one bit
    auto chain = greedy_tuple_chain(SubstitutionMatrix::measured(), "AAC");
    const auto& gray = gray_sequence_48();
    for (size_t i = 0; i < chain.size(); ++i) CHECK(t.tuple(gray[i]) == chain[i]);
}

static double pair_mean(const BitErrorReport& rep, Nucleotide f, Nucleotide t) {
    for (const auto& p : rep.pairs)
        if (p.from == f && p.to == t) return p.mean();
    throw std::logic_error("pair not found");
}

TEST_CASE("average bit error of the canonical table") {
    auto rep = average_bit_error(canonical_table48(), SubstitutionMatrix::measured());
    REQUIRE(rep.pairs.size() == 12);
    for (const auto& p : rep.pairs) CHECK(p.events == 28);

    CHECK(pair_mean(rep, Nucleotide::G, Nucleotide::A) == 2.0);
    CHECK(pair_mean(rep, Nucleotide::A, Nucleotide::G) == 2.0);
    CHECK(pair_mean(rep, Nucleotide::G, Nucleotide::T) == Catch::Approx(33.0 / 14));
    CHECK(pair_mean(rep, Nucleotide::C, Nucleotide::T) == Catch::Approx(33.0 / 14));
    CHECK(pair_mean(rep, Nucleotide::T, Nucleotide::C) == Catch::Approx(33.0 / 14));
    CHECK(pair_mean(rep, Nucleotide::T, Nucleotide::G) == Catch::Approx(33.0 / 14));
    CHECK(pair_mean(rep, Nucleotide::C, Nucleotide::A) == Catch::Approx(31.0 / 14));
    CHECK(pair_mean(rep, Nucleotide::A, Nucleotide::C) == Catch::Approx(31.0 / 14));
    CHECK(pair_mean(rep, Nucleotide::T, Nucleotide::A) == 2.5);
    CHECK(pair_mean(rep, Nucleotide::A, Nucleotide::T) == 2.5);
    CHECK(pair_mean(rep, Nucleotide::G, Nucleotide::C) == Catch::Approx(20.0 / 7));
    CHECK(pair_mean(rep, Nucleotide::C, Nucleotide::G) == Catch::Approx(20.0 / 7));

    CHECK(rep.overall_num == 3283585);
    CHECK(rep.overall_den == 1399958);
    CHECK(rep.overall() == Catch::Approx(2.3455).margin(0.0005));
}

TEST_CASE("random assignment baseline and improvement") {
    auto exact = random_table_average_bit_error_exact();
    CHECK(exact == Ratio(416, 141));
    CHECK(random_table_average_bit_error() == Catch::Approx(2.9504).margin(0.0001));

    auto rep = average_bit_error(canonical_table48(), SubstitutionMatrix::measured());
    double reduction = 1.0 - rep.overall() / random_table_average_bit_error();
    CHECK(reduction * 100 == Catch::Approx(20.5).margin(0.1));
}
