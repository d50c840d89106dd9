// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "gridfst/grid.hpp"
#include "gridfst/rng.hpp"

using namespace gridfst;

namespace {
Alphabet add2_alphabet() { return Alphabet::arithmetic(2, "+"); }
}  // namespace

TEST_CASE("empty world reads the empty symbol everywhere") {
    const Alphabet a = add2_alphabet();
    WorldState w(a);
    CHECK(w.read({0, 0}) == a.lambda());
    CHECK(w.read({-100000, 99999}) == a.lambda());
    CHECK(w.occupied() == 0);
}

TEST_CASE("write/read roundtrip and lambda deletion") {
    const Alphabet a = add2_alphabet();
    WorldState w(a);
    w.write({3, 0}, 1);
    CHECK(w.read({3, 0}) == 1);
    w.write({3, 0}, a.lambda());
    CHECK(w.read({3, 0}) == a.lambda());
    CHECK(w.occupied() == 0);

    // writing lambda to an empty cell changes nothing
    w.write({5, 5}, a.lambda());
    CHECK(w.occupied() == 0);

    // last writer wins
    w.write({1, 1}, 0);
    w.write({1, 1}, 1);
    CHECK(w.read({1, 1}) == 1);

    CHECK_THROWS_AS(w.write({0, 0}, 99), Error);
}

TEST_CASE("a million distinct cells stay stored") {
    const Alphabet a = add2_alphabet();
    WorldState w(a);
    std::size_t expected = 0;  // independent count loop
    for (int i = 0; i < 1000; ++i) {
        for (int j = 0; j < 1000; ++j) {
            w.write({i, j}, 1);
            ++expected;
        }
    }
    CHECK(expected == 1000000);
    CHECK(w.occupied() == expected);
}

TEST_CASE("motions shift by unit vectors") {
    CHECK(apply_motion({0, 0}, Motion::Stay) == Position{0, 0});
    CHECK(apply_motion({0, 0}, Motion::Right) == Position{1, 0});
    CHECK(apply_motion({5, -2}, Motion::Up) == Position{5, -1});
    CHECK(apply_motion({5, -2}, Motion::Down) == Position{5, -3});
    CHECK(apply_motion({5, -2}, Motion::Left) == Position{4, -2});
}

TEST_CASE("motions move at most one unit along one axis") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Position p{rng.range(-50, 50), rng.range(-50, 50)};
        const auto m = static_cast<Motion>(rng.index(kNumMotions));
        const Position p2 = apply_motion(p, m);
        const std::int64_t dc = p2.col - p.col, dr = p2.row - p.row;
        CHECK(dc * dc + dr * dr <= 1);
    }
}

TEST_CASE("write_string places glyphs left to right") {
    const Alphabet a = add2_alphabet();
    WorldState w(a);
    write_string(w, a, {0, 0}, "101+11");
    CHECK(w.read({0, 0}) == 1);
    CHECK(w.read({1, 0}) == 0);
    CHECK(w.read({2, 0}) == 1);
    CHECK(w.read({3, 0}) == a.operator_index());
    CHECK(w.read({4, 0}) == 1);
    CHECK(w.read({5, 0}) == 1);

    WorldState w2(a);
    write_string(w2, a, {7, 3}, "");
    CHECK(w2.occupied() == 0);

    const Alphabet m10 = Alphabet::arithmetic(10, "\xc3\x97");
    WorldState w3(m10);
    write_string(w3, m10, {2, 1}, "9\xc3\x97"
                                  "9");
    CHECK(w3.read({3, 1}) == m10.operator_index());

    CHECK_THROWS_AS(write_string(w2, a, {0, 0}, "12"), Error);  // '2' not binary
}

TEST_CASE("read_answer extracts the single run") {
    const Alphabet a = add2_alphabet();
    WorldState w(a);
    write_string(w, a, {4, 0}, "1000");
    CHECK(read_answer(w, a) == "1000");

    WorldState empty(a);
    CHECK_THROWS_AS(read_answer(empty, a), Error);

    WorldState two_rows(a);
    write_string(two_rows, a, {0, 0}, "10");
    write_string(two_rows, a, {0, 1}, "1");
    CHECK_THROWS_AS(read_answer(two_rows, a), Error);

    WorldState gap(a);
    gap.write({0, 0}, 1);
    gap.write({2, 0}, 1);
    CHECK_THROWS_AS(read_answer(gap, a), Error);
}

TEST_CASE("write_string then read_answer is the identity on digit strings") {
    const Alphabet a = Alphabet::arithmetic(10, "+");
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto len = static_cast<std::size_t>(rng.range(1, 30));
        std::string s;
        for (std::size_t i = 0; i < len; ++i)
            s.push_back(static_cast<char>('0' + rng.index(10)));
        WorldState w(a);
        write_string(w, a, {rng.range(-20, 20), rng.range(-20, 20)}, s);
        CHECK(read_answer(w, a) == s);
    }
}
