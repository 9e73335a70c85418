#include <doctest.h>

#include "searchlab/path.h"
#include "searchlab/rational.h"
#include "searchlab/rng.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

using namespace searchlab;

TEST_CASE("RngStream: identical (seed, stream) pairs replay identical bytes") {
    RngStream a(123, 7);
    RngStream b(123, 7);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("RngStream: frozen golden outputs") {
    // Pinned so any change to seeding or the generator is caught loudly;
    // downstream per-trial reproducibility depends on these exact bytes.
    RngStream r(42, 0);
    CHECK(r.next_u64() == 1465110069942198125ULL);
    CHECK(r.next_u64() == 8438897617078086014ULL);
    CHECK(r.next_u64() == 3347935021581563387ULL);
    CHECK(r.next_u64() == 8911128220003305604ULL);

    RngStream s1(42, 1);
    CHECK(s1.next_u64() == 17726628638998322835ULL);
    RngStream s2(7, 3);
    CHECK(s2.next_u64() == 15825208910507400208ULL);
}

TEST_CASE("RngStream: adjacent streams are decorrelated") {
    RngStream a(9, 0);
    RngStream b(9, 1);
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64())
            ++equal;
    CHECK(equal == 0);
}

TEST_CASE("uniform_below stays in range and hits every residue") {
    RngStream r(1, 0);
    std::vector<int> seen(10, 0);
    for (int i = 0; i < 5000; ++i) {
        const uint64_t v = r.uniform_below(10);
        REQUIRE(v < 10);
        ++seen[static_cast<size_t>(v)];
    }
    for (int c : seen)
        CHECK(c > 300);  // each residue expected ~500 times
    CHECK(r.uniform_below(1) == 0);
}

TEST_CASE("uniform01 lies in [0, 1)") {
    RngStream r(2, 0);
    for (int i = 0; i < 1000; ++i) {
        const double v = r.uniform01();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("sample_without_replacement: distinct, in range, deterministic") {
    RngStream r(5, 2);
    const auto v = sample_without_replacement(r, 100, 5);
    CHECK(v == std::vector<uint64_t>{68, 18, 28, 30, 2});  // frozen

    RngStream r2(77, 4);
    const auto w = sample_without_replacement(r2, 1000000000000ULL, 50);
    std::set<uint64_t> distinct(w.begin(), w.end());
    CHECK(distinct.size() == 50);
    for (uint64_t x : w)
        CHECK(x < 1000000000000ULL);
}

TEST_CASE("sample_without_replacement: k == n yields a permutation") {
    RngStream r(3, 9);
    auto v = sample_without_replacement(r, 12, 12);
    std::sort(v.begin(), v.end());
    for (uint64_t i = 0; i < 12; ++i)
        CHECK(v[static_cast<size_t>(i)] == i);
}

TEST_CASE("sample_without_replacement: single draws are uniform-ish") {
    // Each of {0,...,7} should be picked roughly 1/8 of the time.
    std::vector<int> hits(8, 0);
    const int trials = 8000;
    for (int i = 0; i < trials; ++i) {
        RngStream r(11, static_cast<uint64_t>(i));
        ++hits[static_cast<size_t>(sample_without_replacement(r, 8, 1)[0])];
    }
    for (int c : hits) {
        CHECK(c > 800);  // expected 1000, sd ~ 29.6
        CHECK(c < 1200);
    }
}

TEST_CASE("to_decimal renders exact fixed-significant-digit decimals") {
    CHECK(to_decimal(Rational(0)) == "0");
    CHECK(to_decimal(Rational(5)) == "5");
    CHECK(to_decimal(Rational(385)) == "385");
    CHECK(to_decimal(Rational(24576, 1365)) == "18.0044");
    CHECK(to_decimal(Rational(1, 3)) == "0.333333");
    CHECK(to_decimal(Rational(2, 3)) == "0.666667");
    CHECK(to_decimal(Rational(6827, 2)) == "3413.5");
    CHECK(to_decimal(Rational(9, 2)) == "4.5");
    CHECK(to_decimal(Rational(384, 91393)) == "0.00420163");
}

TEST_CASE("to_decimal rounds halves away from zero") {
    CHECK(to_decimal(Rational(1, 4), 1) == "0.3");
    CHECK(to_decimal(Rational(-1, 4), 1) == "-0.3");
    CHECK(to_decimal(Rational(25), 1) == "3e+01");
    CHECK(to_decimal(Rational(15, 100), 1) == "0.2");
    CHECK(to_decimal(Rational(125, 1000), 2) == "0.13");
}

TEST_CASE("to_decimal switches to scientific notation like %g") {
    CHECK(to_decimal(Rational(1234567)) == "1.23457e+06");
    CHECK(to_decimal(Rational(1, 100000000)) == "1e-08");
    CHECK(to_decimal(Rational(1, 10000)) == "0.0001");   // e10 = -4: still fixed
    CHECK(to_decimal(Rational(1, 100000)) == "1e-05");   // e10 = -5: scientific
    CHECK(to_decimal(Rational(999999)) == "999999");
    CHECK(to_decimal(Rational(9999995, 10)) == "1e+06");  // rounding carries over
}

TEST_CASE("to_fraction and parse_rational round-trip") {
    CHECK(to_fraction(Rational(3, 2)) == "3/2");
    CHECK(to_fraction(Rational(-3, 2)) == "-3/2");
    CHECK(to_fraction(Rational(7)) == "7");
    CHECK(to_fraction(Rational(0)) == "0");

    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("1e3") == Rational(1000));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));

    for (const Rational& v :
         {Rational(0), Rational(17), Rational(-8192, 455), Rational(1, 1000000)})
        CHECK(parse_rational(to_fraction(v)) == v);
}

TEST_CASE("parse_rational rejects malformed input") {
    for (const char* bad : {"", "abc", "1/0", "1.2.3", "1/", "/2", "--3", "1e", "0x10", "3 "})
        CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("ceil_rational") {
    CHECK(ceil_rational(Rational(8192, 455)) == 19);
    CHECK(ceil_rational(Rational(3)) == 3);
    CHECK(ceil_rational(Rational(7, 2)) == 4);
    CHECK(ceil_rational(Rational(-3, 2)) == -1);
    CHECK(ceil_rational(Rational(-4, 2)) == -2);
    CHECK(ceil_rational(Rational(0)) == 0);
}

TEST_CASE("Path length conventions and concat") {
    Path<int> a{{1, 2, 3}};
    CHECK(a.num_states() == 3);
    CHECK(a.num_transitions() == 2);
    CHECK(a.first() == 1);
    CHECK(a.last() == 3);

    Path<int> b{{3, 4}};
    const auto shared = concat(a, b);
    CHECK(shared.states == std::vector<int>{1, 2, 3, 4});

    Path<int> c{{4, 5}};
    const auto fresh = concat(a, c, ConcatForm::FRESH);
    CHECK(fresh.states == std::vector<int>{1, 2, 3, 4, 5});

    CHECK_THROWS_AS(concat(a, c), std::invalid_argument);  // endpoints differ
    Path<int> empty{};
    CHECK_THROWS_AS(concat(a, empty), std::invalid_argument);
}
