#pragma once

// Exact rational arithmetic substrate. Everything downstream (continued
// fractions, step functions, Ostrowski digits) computes with these helpers;
// no floating point enters except through interval.hpp.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flowlab {

using Int = mpz_class;
using Rat = mpq_class;

// canonicalizing constructor; mpq_class(a, b) alone leaves the fraction
// unreduced and GMP comparisons assume canonical form
inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

// floor(x) as an integer
inline Int floor_int(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// fractional part {x}, in [0,1)
inline Rat frac(const Rat& x) { return x - Rat(floor_int(x)); }

// fold to the centered window [-1/2, 1/2)
inline Rat fold_centered(const Rat& x) {
    Rat f = frac(x);
    if (f >= Rat(1, 2)) f -= 1;
    return f;
}

// ||x||: distance from x to the nearest integer, in [0, 1/2]
inline Rat norm_dist(const Rat& x) {
    Rat f = frac(x);
    Rat g = 1 - f;
    return f <= g ? f : g;
}

// nearest integer to x; exact halves round toward zero (deterministic)
inline Int nearest_int(const Rat& x) {
    Int fl = floor_int(x);
    Rat f = x - Rat(fl);
    if (f > Rat(1, 2)) return fl + 1;
    if (f < Rat(1, 2)) return fl;
    return fl >= 0 ? fl : fl + 1;  // half: toward zero
}

inline Rat abs_rat(const Rat& x) { return x >= 0 ? x : Rat(-x); }

// range of ||t|| as t runs over the closed interval [lo, hi]
inline std::pair<Rat, Rat> norm_dist_range(const Rat& lo, const Rat& hi) {
    if (hi - lo >= 1) return {Rat(0), Rat(1, 2)};
    Rat a = frac(lo);
    Rat b = a + (hi - lo);  // b < a + 1 < 2
    Rat mn = norm_dist(a), mx = mn;
    Rat nb = norm_dist(b);
    if (nb < mn) mn = nb;
    if (nb > mx) mx = nb;
    // interior extrema at half-integers (||.|| = 1/2) and integers (||.|| = 0)
    for (int k = 0; k <= 4; ++k) {
        Rat c = Rat(k) / 2;
        if (a < c && c < b) {
            if (k % 2 == 0) mn = Rat(0);
            else mx = Rat(1, 2);
        }
    }
    return {mn, mx};
}

// sum of floor((a + b*i) / m) for i = 0..n-1, m > 0. Euclidean-style
// recursion; used for single-point ergodic sums of step functions.
inline Int floor_sum(Int n, Int a, Int b, Int m) {
    if (n <= 0) return Int(0);
    Int ans = 0;
    if (a < 0) {
        Int a2;
        mpz_fdiv_q(a2.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        ans += n * a2;
        a -= a2 * m;
    }
    if (b < 0) {
        Int b2;
        mpz_fdiv_q(b2.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
        ans += n * (n - 1) / 2 * b2;
        b -= b2 * m;
    }
    while (true) {
        if (a >= m) {
            ans += n * (a / m);
            a %= m;
        }
        if (b >= m) {
            ans += n * (n - 1) / 2 * (b / m);
            b %= m;
        }
        Int y_max = a + b * n;
        if (y_max < m) break;
        n = y_max / m;
        a = y_max % m;
        std::swap(m, b);
    }
    return ans;
}

// exact fraction string "p/q" (or "p" when q == 1)
inline std::string to_fraction(const Rat& x) { return x.get_str(); }

// decimal rendering with `digits` places after the point, round-to-nearest
// (ties away from zero); the result is a plain fixed-point string
inline std::string to_decimal(const Rat& x, int digits = 24) {
    bool neg = x < 0;
    Rat a = abs_rat(x);
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rat scaled = a * Rat(scale);
    Int whole = floor_int(scaled);
    if (scaled - Rat(whole) >= Rat(1, 2)) whole += 1;
    std::string s = whole.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    // trim trailing zeros but keep at least one decimal
    size_t last = s.find_last_not_of('0');
    if (s[last] == '.') ++last;
    s.erase(last + 1);
    return (neg ? "-" : "") + s;
}

// parse "p/q", integers, or fixed-point decimals like "0.125" / "-3.5"
inline Rat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rat r(text, 10);
        r.canonicalize();
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        return Rat(Int(text, 10));
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        neg = digits[0] == '-';
        digits.erase(0, 1);
    }
    if (digits.empty()) throw std::invalid_argument("bad decimal: " + text);
    Int num(digits, 10);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(text.size() - dot - 1));
    Rat r(num, den);
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

}  // namespace flowlab
