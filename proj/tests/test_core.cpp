#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <vector>

#include "qc/errors.hpp"
#include "qc/gamma.hpp"
#include "qc/rng.hpp"
#include "qc/vertex_set.hpp"

using namespace qc;

TEST_CASE("splitmix64 reference vectors") {
    // Classic splitmix64 outputs for seed 0; pins both stream flavours to the
    // published sequence so nobody silently swaps the mixer.
    rng::stream s(0);
    CHECK(s.next() == 16294208416658607535ull);
    CHECK(s.next() == 7960286522194355700ull);
    CHECK(s.next() == 487617019471545679ull);

    rng::counter_stream cs(0);
    CHECK(cs.at(0) == 16294208416658607535ull);
    CHECK(cs.at(1) == 7960286522194355700ull);
    CHECK(cs.at(2) == 487617019471545679ull);
}

TEST_CASE("counter stream is pure and order-independent") {
    rng::counter_stream cs(987654321);
    const auto a = cs.at(41);
    const auto b = cs.at(7);
    CHECK(cs.at(7) == b);
    CHECK(cs.at(41) == a);
    CHECK(a != b);

    // counter stream must agree with the sequential stream on the same key
    rng::stream s(987654321);
    for (std::uint64_t c = 0; c < 20; ++c) CHECK(s.next() == cs.at(c));
}

TEST_CASE("derive separates sub-streams") {
    CHECK(rng::derive(42, 1) == 12234890524640051791ull);
    CHECK(rng::derive(42, 1) != rng::derive(42, 2));
    CHECK(rng::derive(42, 1) != rng::derive(43, 1));
    // deriving must not be the identity on either argument
    CHECK(rng::derive(0, 0) != 0);
}

TEST_CASE("unit doubles live in [0,1)") {
    rng::stream s(2026);
    for (int i = 0; i < 10000; ++i) {
        const double u = s.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(rng::to_unit(0) == 0.0);
    CHECK(rng::to_unit(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("next_below stays in range and varies") {
    rng::stream s(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto v = s.next_below(17);
        CHECK(v < 17);
        seen.insert(v);
    }
    CHECK(seen.size() == 17);  // all residues hit over 1000 draws
}

TEST_CASE("pair_index enumerates pairs lexicographically") {
    CHECK(rng::pair_index(0, 1) == 0);
    CHECK(rng::pair_index(0, 2) == 1);
    CHECK(rng::pair_index(1, 2) == 2);
    CHECK(rng::pair_index(0, 3) == 3);

    // bijective onto 0..C(n,2)-1 and independent of any universe size
    const int n = 40;
    std::set<std::uint64_t> seen;
    std::uint64_t expected = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            const auto idx = rng::pair_index(i, j);
            CHECK(idx == expected);
            ++expected;
            seen.insert(idx);
        }
    CHECK(seen.size() == std::size_t(n) * (n - 1) / 2);
}

TEST_CASE("gamma parsing and reduction") {
    CHECK(gamma_ratio::parse("1/2") == gamma_ratio(1, 2));
    CHECK(gamma_ratio::parse("7/10") == gamma_ratio(7, 10));
    CHECK(gamma_ratio::parse("4/8") == gamma_ratio(1, 2));  // reduced
    CHECK(gamma_ratio::parse("1") == gamma_ratio(1, 1));
    CHECK(gamma_ratio::parse("0") == gamma_ratio(0, 1));
    CHECK(gamma_ratio::parse("0.7") == gamma_ratio(7, 10));
    CHECK(gamma_ratio::parse("0.5") == gamma_ratio(1, 2));
    CHECK(gamma_ratio(3, 5).str() == "3/5");
    CHECK(gamma_ratio(1, 1).is_one());
    CHECK(gamma_ratio(0, 7).is_zero());
    CHECK(gamma_ratio(3, 4).value() == doctest::Approx(0.75));
}

TEST_CASE("gamma rejects out-of-range and malformed input") {
    CHECK_THROWS_AS(gamma_ratio::parse("5/4"), parse_error);
    CHECK_THROWS_AS(gamma_ratio::parse("-1/2"), parse_error);
    CHECK_THROWS_AS(gamma_ratio::parse("1/0"), parse_error);
    CHECK_THROWS_AS(gamma_ratio::parse("abc"), parse_error);
    CHECK_THROWS_AS(gamma_ratio::parse(""), parse_error);
    CHECK_THROWS_AS(gamma_ratio(3, 2), parse_error);
    CHECK_THROWS_AS(gamma_ratio(-1, 2), parse_error);
}

TEST_CASE("gamma ordering is exact") {
    CHECK(gamma_ratio(1, 2) < gamma_ratio(3, 5));
    CHECK(gamma_ratio(3, 5) < gamma_ratio(3, 4));
    CHECK(gamma_ratio(9, 10) < gamma_ratio(1, 1));
    CHECK(gamma_ratio(1, 2) <= gamma_ratio(1, 2));
    CHECK_FALSE(gamma_ratio(3, 4) < gamma_ratio(3, 4));
}

TEST_CASE("required_edges matches the ceiling definition") {
    CHECK(required_edges(5, gamma_ratio(1, 2)) == 5);   // ceil(0.5 * 10)
    CHECK(required_edges(5, gamma_ratio(3, 5)) == 6);   // ceil(0.6 * 10)
    CHECK(required_edges(5, gamma_ratio(1, 1)) == 10);
    CHECK(required_edges(1, gamma_ratio(9, 10)) == 0);
    CHECK(required_edges(0, gamma_ratio(9, 10)) == 0);
    CHECK(required_edges(2, gamma_ratio(1, 10)) == 1);  // any positive gamma needs the edge
    CHECK(required_edges(2, gamma_ratio(0, 1)) == 0);

    // cross-check the ceiling against a double-precision reference on a grid
    for (std::int64_t den = 1; den <= 9; ++den)
        for (std::int64_t num = 0; num <= den; ++num)
            for (std::int64_t r = 0; r <= 40; ++r) {
                const gamma_ratio g(num, den);
                const double target = g.value() * r * (r - 1) / 2.0;
                const auto got = required_edges(r, g);
                CHECK(got >= target - 1e-9);
                CHECK(got - 1 < target + 1e-9);
            }
}

TEST_CASE("is_gamma_dense at exact thresholds") {
    // C5: 5 edges on 5 vertices is exactly half of C(5,2)
    CHECK(is_gamma_dense(5, 5, gamma_ratio(1, 2)));
    CHECK_FALSE(is_gamma_dense(5, 4, gamma_ratio(1, 2)));
    CHECK_FALSE(is_gamma_dense(5, 5, gamma_ratio(3, 5)));
    CHECK(is_gamma_dense(3, 3, gamma_ratio(1, 1)));
    CHECK(is_gamma_dense(1, 0, gamma_ratio(1, 1)));
}

TEST_CASE("vertex_set basics") {
    vertex_set s(130);
    CHECK(s.empty());
    CHECK(s.count() == 0);
    s.add(0);
    s.add(63);
    s.add(64);
    s.add(129);
    CHECK(s.count() == 4);
    CHECK(s.test(63));
    CHECK(s.test(64));
    CHECK_FALSE(s.test(1));
    s.remove(63);
    CHECK_FALSE(s.test(63));
    CHECK(s.count() == 3);
    CHECK(s.members() == std::vector<int>{0, 64, 129});
    CHECK(vertex_set::all(5).count() == 5);
}

TEST_CASE("vertex_set next_member walks ascending") {
    vertex_set s(200);
    for (int v : {3, 65, 66, 190}) s.add(v);
    CHECK(s.next_member(0) == 3);
    CHECK(s.next_member(3) == 3);
    CHECK(s.next_member(4) == 65);
    CHECK(s.next_member(66) == 66);
    CHECK(s.next_member(67) == 190);
    CHECK(s.next_member(191) == -1);
}

TEST_CASE("keep_above clears a prefix") {
    vertex_set s = vertex_set::all(130);
    s.keep_above(-1);
    CHECK(s.count() == 130);
    s.keep_above(63);  // word-boundary edge
    CHECK(s.count() == 130 - 64);
    CHECK_FALSE(s.test(63));
    CHECK(s.test(64));
    s.keep_above(64);
    CHECK_FALSE(s.test(64));
    CHECK(s.test(65));
    s.keep_above(128);
    CHECK(s.members() == std::vector<int>{129});
}

TEST_CASE("subset and bit operations") {
    vertex_set a(70), b(70);
    a.add(1);
    a.add(68);
    b.add(1);
    b.add(68);
    b.add(3);
    CHECK(a.is_subset_of(b));
    CHECK_FALSE(b.is_subset_of(a));
    CHECK((a & b) == a);
    CHECK((a | b) == b);
    vertex_set c = a;
    c &= b;
    CHECK(c == a);
}

TEST_CASE("mask_less orders by bitmask value") {
    auto make = [](std::initializer_list<int> vs) {
        vertex_set s(70);
        for (int v : vs) s.add(v);
        return s;
    };
    // {0,1,2} = 7 < {0,1,3} = 11 < {3,4,5} = 56
    CHECK(vertex_set::mask_less(make({0, 1, 2}), make({0, 1, 3})));
    CHECK(vertex_set::mask_less(make({0, 1, 3}), make({3, 4, 5})));
    CHECK_FALSE(vertex_set::mask_less(make({3, 4, 5}), make({0, 1, 2})));
    CHECK_FALSE(vertex_set::mask_less(make({1, 2}), make({1, 2})));
    // high word dominates
    CHECK(vertex_set::mask_less(make({0, 1, 2, 3}), make({68})));
}

TEST_CASE("for_each visits every member once in order") {
    vertex_set s(150);
    for (int v : {0, 1, 63, 64, 127, 128, 149}) s.add(v);
    std::vector<int> seen;
    s.for_each([&](int v) { seen.push_back(v); });
    CHECK(seen == s.members());
    CHECK(int(seen.size()) == s.count());
}
