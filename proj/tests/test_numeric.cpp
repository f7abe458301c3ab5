#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/rational.hpp"
#include "spectra/surd.hpp"

using namespace spectra;

TEST_CASE("squarefree decomposition") {
    auto [s, f] = squarefree_decompose(12);
    CHECK(s == 2);
    CHECK(f == 3);
    std::tie(s, f) = squarefree_decompose(1);
    CHECK(s == 1);
    CHECK(f == 1);
    std::tie(s, f) = squarefree_decompose(49);
    CHECK(s == 7);
    CHECK(f == 1);
    std::tie(s, f) = squarefree_decompose(462);  // 2*3*7*11
    CHECK(s == 1);
    CHECK(f == 462);
    // Large square factor beyond trial division (1000003 is prime).
    Int p(1000003);
    std::tie(s, f) = squarefree_decompose(p * p * 5);
    CHECK(s == p);
    CHECK(f == 5);
}

TEST_CASE("surd canonicalization and arithmetic") {
    Surd x(Rat(0), Rat(1), 12);  // sqrt(12) = 2 sqrt(3)
    CHECK(x.radicand() == 3);
    CHECK(x.radical_coeff() == 2);

    Surd r(Rat(0), Rat(3), 16);  // 3*4 rationalizes
    CHECK(r.is_rational());
    CHECK(r.rational_part() == 12);

    Surd g(Rat(-1, 2), Rat(1, 2), 5);  // golden ratio conjugate (sqrt5-1)/2
    CHECK(g.sign() == 1);
    Surd prod = g * (g + Surd(Rat(1)));  // x(x+1) = 1
    CHECK(prod.is_rational());
    CHECK(prod.rational_part() == 1);

    Surd q = Surd(Rat(1)) / g;  // 1/x = x+1
    CHECK(q == g + Surd(Rat(1)));

    CHECK(Surd(Rat(1), Rat(1), 2) > Surd(Rat(2)));       // 1+sqrt2 > 2
    CHECK(Surd(Rat(1), Rat(-1), 2) < Surd(Rat(0), Rat(1), 25) * Rat(1));
    CHECK((Surd(Rat(0), Rat(1), 8)).radicand() == 2);    // 2 sqrt 2
}

TEST_CASE("surd sums across fields") {
    SurdSum s = SurdSum(Surd(Rat(0), Rat(1), 2)) + SurdSum(Surd(Rat(0), Rat(1), 3));
    CHECK(s.radical_terms().size() == 2);
    CHECK(s.sign() == 1);
    SurdSum t = s - SurdSum(Surd(Rat(0), Rat(1), 3));
    CHECK(t.radical_terms().size() == 1);
    CHECK(t == SurdSum(Surd(Rat(0), Rat(1), 2)));

    // sqrt2 * sqrt3 = sqrt6; sqrt6 * sqrt6 = 6
    SurdSum p = SurdSum(Surd(Rat(0), Rat(1), 2)) * SurdSum(Surd(Rat(0), Rat(1), 3));
    CHECK(p == SurdSum(Surd(Rat(0), Rat(1), 6)));
    CHECK(p * p == SurdSum(Rat(6)));

    // sqrt6 * sqrt10 = 2 sqrt15
    SurdSum m = p * SurdSum(Surd(Rat(0), Rat(1), 10));
    CHECK(m == SurdSum(Surd(Rat(0), Rat(2), 15)));

    // sign of a near-cancellation: sqrt2 + sqrt3 - sqrt(5+2*sqrt6) == 0
    // (sqrt2+sqrt3)^2 = 5 + 2 sqrt6, so instead test a strict inequality.
    SurdSum close = SurdSum(Surd(Rat(0), Rat(1), 2)) + SurdSum(Surd(Rat(0), Rat(1), 3)) -
                    SurdSum(make_rat(314626437, 100000000));
    CHECK(close.sign() == -1);  // sqrt2+sqrt3 = 3.14626436...
}

TEST_CASE("enclosures and decimal digits") {
    Surd s(Rat(0), Rat(1), 2);
    RatInterval e = s.enclosure(128);
    CHECK(e.lo < e.hi);
    CHECK(e.width() < make_rat(1, Int(1) << 100));
    CHECK(e.lo * e.lo < 2);
    CHECK(e.hi * e.hi > 2);

    CHECK(SurdSum(Surd(Rat(0), Rat(1), 2)).decimal(10) == "1.4142135623");
    CHECK(SurdSum(make_rat(-1, 3)).decimal(4) == "-0.3334");  // truncation toward -inf
    CHECK(SurdSum(Rat(2)).decimal(3) == "2.000");
}

TEST_CASE("rational interval arithmetic") {
    RatInterval a{Rat(1), Rat(2)}, b{Rat(-3), Rat(5)};
    RatInterval p = a * b;
    CHECK(p.lo == -6);
    CHECK(p.hi == 10);
    RatInterval r = a.reciprocal();
    CHECK(r.lo == make_rat(1, 2));
    CHECK(r.hi == 1);
    RatInterval s = sqrt_enclosure(5, 64);
    CHECK(s.lo * s.lo <= 5);
    CHECK(s.hi * s.hi >= 5);
    CHECK(s.width() <= make_rat(1, Int(1) << 63));
}
