#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flowlab/interval.hpp"

using namespace flowlab;

TEST_CASE("pi enclosure") {
    auto [lo, hi] = pi_bounds(128);
    CHECK(lo < hi);
    CHECK(lo > parse_rational("3.14159265"));
    CHECK(hi < parse_rational("3.14159266"));
}

TEST_CASE("arithmetic encloses exact rationals") {
    Interval a(Rat(1, 3)), b(Rat(2, 7));
    CHECK((a + b).contains(Rat(1, 3) + Rat(2, 7)));
    CHECK((a - b).contains(Rat(1, 3) - Rat(2, 7)));
    CHECK((a * b).contains(Rat(2, 21)));
    CHECK((a / b).contains(Rat(7, 6)));
    CHECK((-a).contains(Rat(-1, 3)));
    CHECK(a.square().contains(Rat(1, 9)));
}

TEST_CASE("sin_pi exact special points") {
    CHECK(sin_pi(Rat(0)).contains(Rat(0)));
    CHECK(sin_pi(Rat(1)).contains(Rat(0)));
    CHECK(sin_pi(Rat(1, 2)).lower() == Rat(1));
    CHECK(sin_pi(Rat(3, 2)).upper() == Rat(-1));
    // sin(pi/6) = 1/2
    CHECK(sin_pi(Rat(1, 6)).contains(Rat(1, 2)));
    // oddness: the enclosures of sin_pi(x) and -sin_pi(-x) overlap tightly
    Interval p = sin_pi(Rat(2, 7));
    Interval m = sin_pi(Rat(-2, 7));
    CHECK(p.lower() > Rat(0));
    CHECK(m.upper() < Rat(0));
    Rat slack = p.width() + m.width();
    CHECK(abs_rat(p.lower() + m.upper()) <= slack);
    CHECK(abs_rat(p.upper() + m.lower()) <= slack);
}

TEST_CASE("sin over interval crossing a max hits 1") {
    Interval x = Interval::pi() * Interval(Rat(1, 2)) + Interval(Rat(-1, 100));
    Interval wide = x + Interval(Rat(1, 50));  // widen so pi/2 is interior-ish
    Interval s = (Interval::pi() * Interval(Rat(1, 2), 128)).sin();
    CHECK(s.upper() >= Rat(1));
    CHECK(s.lower() <= Rat(1));
    (void)wide;
}

TEST_CASE("sin_pi just off the maximum stays enclosed below 1") {
    // f = 1/2 + 2^-60 lands inside the non-monotone fallback window
    Rat f = Rat(1, 2) + Rat(1) / Rat(Int(1) << 60);
    Interval v = sin_pi(f, 128);
    CHECK(v.upper() <= Rat(1));
    CHECK(v.lower() > parse_rational("0.99999999999999999"));
    Rat g = Rat(1, 2) - Rat(1) / Rat(Int(1) << 60);
    Interval w = sin_pi(g, 128);
    CHECK(w.upper() <= Rat(1));
    CHECK(w.lower() > parse_rational("0.99999999999999999"));
}

TEST_CASE("log monotone enclosure") {
    Interval e(parse_rational("2.718281828"));
    Interval l = e.log();
    CHECK(l.contains(Rat(999999999, 1000000000)) == (l.lower() <= Rat(999999999, 1000000000) &&
                                                     l.upper() >= Rat(999999999, 1000000000)));
    CHECK(l.lower() > Rat(9, 10));
    CHECK(l.upper() < Rat(11, 10));
}

TEST_CASE("width shrinks with precision") {
    Rat x(1, 7);
    Interval a = sin_pi(x, 64);
    Interval b = sin_pi(x, 256);
    CHECK(b.width() < a.width());
    CHECK(b.lower() >= a.lower());
    CHECK(b.upper() <= a.upper());
}
