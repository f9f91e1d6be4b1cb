#include "divlab/interval_union.hpp"
#include "divlab/rational.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace divlab;

namespace {

Rational from(const oracle::Q& v) { return Rational(mpq_class(v)); }

IntervalUnion from_pieces(const oracle::Pieces& pieces) {
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& [lo, hi] : pieces) pairs.emplace_back(from(lo), from(hi));
    return IntervalUnion::normalize(pairs);
}

IntervalUnion random_union(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(0, 5);
    std::uniform_int_distribution<long> endpoint(-24, 24);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (int i = count(rng); i > 0; --i) {
        long a = endpoint(rng);
        long b = endpoint(rng);
        if (a > b) std::swap(a, b);
        pairs.emplace_back(Rational(a, 8), Rational(b, 8));
    }
    return IntervalUnion::normalize(pairs);
}

const oracle::Pieces kSetA1 = oracle::digit_pieces(12, 1, {oracle::q(-4), oracle::q(-2), oracle::q(0)}, oracle::q(1, 24));
const oracle::Pieces kSetB1 =
    oracle::digit_pieces(12, 1, {oracle::q(0), oracle::q(1), oracle::q(2), oracle::q(3)}, oracle::q(1, 24));

}  // namespace

TEST_CASE("rational parsing and canonical rendering") {
    CHECK(Rational::parse("6/8").str() == "3/4");
    CHECK(Rational::parse("-1/96").str() == "-1/96");
    CHECK(Rational::parse("3").str() == "3/1");
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse("4/-6") == Rational(-2, 3));
    CHECK_THROWS_AS((void)Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS((void)Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS((void)Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact") {
    const Rational third(1, 3);
    CHECK(third + third + third == Rational(1));
    CHECK(Rational(1, 8) - Rational(1, 96) == Rational(11, 96));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational::pow(Rational(12), -2) == Rational(1, 144));
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(-3, 5).abs() == Rational(3, 5));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(RationalHash{}(Rational(2, 4)) == RationalHash{}(Rational(1, 2)));
}

TEST_CASE("normalize merges overlaps and drops empty pairs") {
    const std::vector<std::pair<Rational, Rational>> pairs{{0, Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}};
    const IntervalUnion u = IntervalUnion::normalize(pairs);
    REQUIRE(u.size() == 1);
    CHECK(u.intervals()[0] == Interval(0, Rational(3, 4)));
    CHECK(IntervalUnion::normalize(std::vector<std::pair<Rational, Rational>>{}).empty());

    const std::vector<std::pair<Rational, Rational>> touching{{0, 1}, {1, 2}, {3, 3}};
    const IntervalUnion t = IntervalUnion::normalize(touching);
    REQUIRE(t.size() == 1);
    CHECK(t.measure() == Rational(2));

    const std::vector<std::pair<Rational, Rational>> bad{{1, 0}};
    CHECK_THROWS_AS((void)IntervalUnion::normalize(bad), std::invalid_argument);
    CHECK_THROWS_AS(Interval(1, 1), std::invalid_argument);
}

TEST_CASE("depth-1 set A is already canonical") {
    const IntervalUnion a = from_pieces(kSetA1);
    REQUIRE(a.size() == 3);
    CHECK(a.intervals()[0] == Interval(Rational(-1, 3), Rational(-7, 24)));
    CHECK(a.intervals()[1] == Interval(Rational(-1, 6), Rational(-1, 8)));
    CHECK(a.intervals()[2] == Interval(0, Rational(1, 24)));
    CHECK(IntervalUnion::normalize(a.intervals()) == a);
}

TEST_CASE("measure") {
    CHECK(IntervalUnion::single(0, Rational(3, 4)).measure() == Rational(3, 4));
    const oracle::Pieces d = oracle::digit_pieces(
        12, 1, {oracle::q(-11), oracle::q(-10), oracle::q(-9), oracle::q(-8), oracle::q(-7), oracle::q(-6),
                oracle::q(-5), oracle::q(-4), oracle::q(-3), oracle::q(-2), oracle::q(-1), oracle::q(0)},
        oracle::q(1, 96));
    CHECK(from_pieces(d).measure() == Rational(1, 8));
    const oracle::Pieces a2 = oracle::digit_pieces(12, 2, {oracle::q(-4), oracle::q(-2), oracle::q(0)}, oracle::q(1, 288));
    CHECK(from(oracle::union_measure(a2)) == Rational(1, 32));
    CHECK(from_pieces(a2).measure() == Rational(1, 32));
}

TEST_CASE("intersect") {
    const IntervalUnion left = IntervalUnion::single(0, 1);
    CHECK(intersect(left, IntervalUnion::single(2, 3)).empty());

    const std::vector<std::pair<Rational, Rational>> right{{0, Rational(1, 48)}, {Rational(1, 24), Rational(1, 16)}};
    const IntervalUnion r = intersect(IntervalUnion::single(0, Rational(1, 24)), IntervalUnion::normalize(right));
    REQUIRE(r.size() == 1);
    CHECK(r.intervals()[0] == Interval(0, Rational(1, 48)));

    const IntervalUnion ab = intersect(from_pieces(kSetA1), from_pieces(kSetB1));
    CHECK(ab == from_pieces(oracle::clip(kSetA1, kSetB1)));
    REQUIRE(ab.size() == 1);
    CHECK(ab.intervals()[0] == Interval(0, Rational(1, 24)));
}

TEST_CASE("affine image") {
    const IntervalUnion b = from_pieces(kSetB1);
    CHECK(b.affine_image(1, 0) == b);
    CHECK(b.affine_image(Rational(1, 2), 0).measure() == Rational(1, 12));
    const oracle::Pieces c1 = oracle::digit_pieces(
        12, 1, {oracle::q(0), oracle::q(2), oracle::q(4), oracle::q(6), oracle::q(8), oracle::q(10)}, oracle::q(1, 24));
    CHECK(from_pieces(c1).affine_image(Rational(1, 3), 0).intervals().front() == Interval(0, Rational(1, 72)));

    const IntervalUnion flipped = IntervalUnion::single(1, 3).affine_image(-2, 1);
    REQUIRE(flipped.size() == 1);
    CHECK(flipped.intervals()[0] == Interval(-5, -1));
    CHECK_THROWS_AS((void)b.affine_image(0, 1), std::invalid_argument);
}

TEST_CASE("subset") {
    CHECK(subset(IntervalUnion{}, IntervalUnion::single(0, 1)));
    CHECK(subset(IntervalUnion::single(0, Rational(1, 48)), IntervalUnion::single(0, Rational(1, 24))));
    CHECK_FALSE(subset(IntervalUnion::single(0, Rational(1, 24)), IntervalUnion::single(0, Rational(1, 48))));
}

TEST_CASE("locate, contains and bounds") {
    const IntervalUnion a = from_pieces(kSetA1);
    CHECK(a.contains(Rational(-1, 3)));
    CHECK_FALSE(a.contains(Rational(-7, 24)));
    CHECK(a.locate(Rational(1, 48)) == std::optional<std::size_t>(2));
    CHECK_FALSE(a.locate(Rational(1)).has_value());
    CHECK(a.inf() == std::optional<Rational>(Rational(-1, 3)));
    CHECK(a.sup() == std::optional<Rational>(Rational(1, 24)));
    CHECK_FALSE(IntervalUnion{}.inf().has_value());
}

TEST_CASE("property: inclusion-exclusion, scaling, idempotence") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> coef(-6, 6);
    for (int trial = 0; trial < 300; ++trial) {
        const IntervalUnion u = random_union(rng);
        const IntervalUnion v = random_union(rng);
        CHECK(intersect(u, v).measure() + unite(u, v).measure() == u.measure() + v.measure());
        CHECK(difference(u, v).measure() == u.measure() - intersect(u, v).measure());
        CHECK(intersect(u, v) == intersect(v, u));
        CHECK(IntervalUnion::normalize(u.intervals()) == u);
        CHECK(subset(u, u));
        CHECK(subset(intersect(u, v), u));
        CHECK(subset(u, unite(u, v)));

        long a = coef(rng);
        if (a == 0) a = 1;
        const Rational scale(a, 1 + static_cast<long>(trial % 5));
        const Rational shift(coef(rng), 7);
        CHECK(u.affine_image(scale, shift).measure() == scale.abs() * u.measure());
        CHECK(u.affine_image(scale, shift).affine_image(scale.inverse(), -shift / scale) == u);

        oracle::Pieces pu;
        oracle::Pieces pv;
        for (const auto& i : u.intervals()) pu.emplace_back(i.lo.raw(), i.hi.raw());
        for (const auto& i : v.intervals()) pv.emplace_back(i.lo.raw(), i.hi.raw());
        CHECK(intersect(u, v).measure() == from(oracle::union_measure(oracle::clip(pu, pv))));
    }
}
