#pragma once

// Directed-rounding interval arithmetic over MPFR. Only transcendental
// quantities (sin, log, pi) go through here; every endpoint is a dyadic
// rational, so intervals convert back to exact Rat bounds losslessly.

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "flowlab/rational.hpp"

namespace flowlab {

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Rat& x, mpfr_prec_t prec = 128) : Interval(prec) {
        mpfr_set_q(lo_, x.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, x.get_mpq_t(), MPFR_RNDU);
    }
    Interval(const Interval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, 2);
        mpfr_init2(hi_, 2);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(Interval o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval pi(mpfr_prec_t prec = 128) {
        Interval r(prec);
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return prec_; }

    Interval operator+(const Interval& o) const {
        Interval r(std::max(prec_, o.prec_));
        mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
        return r;
    }
    Interval operator-(const Interval& o) const {
        Interval r(std::max(prec_, o.prec_));
        mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
        return r;
    }
    Interval operator-() const {
        Interval r(prec_);
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        return r;
    }
    Interval operator*(const Interval& o) const {
        Interval r(std::max(prec_, o.prec_));
        mpfr_t c[4];
        for (auto& t : c) mpfr_init2(t, r.prec_);
        mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDD);
        mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDD);
        mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDD);
        mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, c[0], c[1], MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, c[2], MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, c[3], MPFR_RNDD);
        mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDU);
        mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDU);
        mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDU);
        mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, c[0], c[1], MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, c[2], MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, c[3], MPFR_RNDU);
        for (auto& t : c) mpfr_clear(t);
        return r;
    }
    Interval operator/(const Interval& o) const {
        if (o.contains_zero()) throw std::domain_error("interval division by zero");
        Interval r(std::max(prec_, o.prec_));
        mpfr_t c[4];
        for (auto& t : c) mpfr_init2(t, r.prec_);
        mpfr_div(c[0], lo_, o.lo_, MPFR_RNDD);
        mpfr_div(c[1], lo_, o.hi_, MPFR_RNDD);
        mpfr_div(c[2], hi_, o.lo_, MPFR_RNDD);
        mpfr_div(c[3], hi_, o.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, c[0], c[1], MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, c[2], MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, c[3], MPFR_RNDD);
        mpfr_div(c[0], lo_, o.lo_, MPFR_RNDU);
        mpfr_div(c[1], lo_, o.hi_, MPFR_RNDU);
        mpfr_div(c[2], hi_, o.lo_, MPFR_RNDU);
        mpfr_div(c[3], hi_, o.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, c[0], c[1], MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, c[2], MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, c[3], MPFR_RNDU);
        for (auto& t : c) mpfr_clear(t);
        return r;
    }

    Interval abs() const {
        Interval r(prec_);
        if (mpfr_sgn(lo_) >= 0) return *this;
        if (mpfr_sgn(hi_) <= 0) return -*this;
        mpfr_set_zero(r.lo_, 1);
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_neg(t, lo_, MPFR_RNDU);
        mpfr_max(r.hi_, t, hi_, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }
    Interval square() const {
        Interval a = abs();
        return a * a;
    }

    // natural log; requires lo > 0
    Interval log() const {
        if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of non-positive interval");
        Interval r(prec_);
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    // sine of the interval (argument in radians)
    Interval sin() const {
        Interval r(prec_);
        // wide argument: give up and return [-1, 1]
        mpfr_t w;
        mpfr_init2(w, prec_);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        if (mpfr_cmp_d(w, 6.3) >= 0) {
            mpfr_clear(w);
            mpfr_set_si(r.lo_, -1, MPFR_RNDD);
            mpfr_set_si(r.hi_, 1, MPFR_RNDU);
            return r;
        }
        mpfr_clear(w);
        mpfr_t s1, s2;
        mpfr_init2(s1, prec_);
        mpfr_init2(s2, prec_);
        mpfr_sin(s1, lo_, MPFR_RNDD);
        mpfr_sin(s2, hi_, MPFR_RNDD);
        mpfr_min(r.lo_, s1, s2, MPFR_RNDD);
        mpfr_sin(s1, lo_, MPFR_RNDU);
        mpfr_sin(s2, hi_, MPFR_RNDU);
        mpfr_max(r.hi_, s1, s2, MPFR_RNDU);
        mpfr_clear(s1);
        mpfr_clear(s2);
        // critical points: contains (k + 1/2)pi for integer k?
        Interval halves = *this / pi(prec_) - Interval(Rat(1, 2), prec_);
        long k_lo = halves.ceil_lo();
        long k_hi = halves.floor_hi();
        for (long k = k_lo; k <= k_hi; ++k) {
            if (((k % 2) + 2) % 2 == 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
            else mpfr_set_si(r.lo_, -1, MPFR_RNDD);
        }
        return r;
    }

    // sine of an interval known to lie in a monotone region of sin
    // (increasing on [0, pi/2], decreasing on [pi/2, pi])
    Interval sin_monotone(bool increasing) const {
        Interval r(prec_);
        if (increasing) {
            mpfr_sin(r.lo_, lo_, MPFR_RNDD);
            mpfr_sin(r.hi_, hi_, MPFR_RNDU);
        } else {
            mpfr_sin(r.lo_, hi_, MPFR_RNDD);
            mpfr_sin(r.hi_, lo_, MPFR_RNDU);
        }
        return r;
    }

    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool contains(const Rat& x) const {
        return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
    }
    int sign_lo() const { return mpfr_sgn(lo_); }
    int sign_hi() const { return mpfr_sgn(hi_); }

    // exact endpoints as rationals (MPFR values are dyadic)
    Rat lower() const { return mpfr_to_rat(lo_); }
    Rat upper() const { return mpfr_to_rat(hi_); }
    Rat width() const { return upper() - lower(); }

    std::string str(int digits = 20) const {
        return "[" + to_decimal(lower(), digits) + ", " + to_decimal(upper(), digits) + "]";
    }

private:
    long ceil_lo() const {
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_ceil(t, lo_);
        long v = mpfr_get_si(t, MPFR_RNDN);
        mpfr_clear(t);
        return v;
    }
    long floor_hi() const {
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_floor(t, hi_);
        long v = mpfr_get_si(t, MPFR_RNDN);
        mpfr_clear(t);
        return v;
    }
    static Rat mpfr_to_rat(const mpfr_t v) {
        if (mpfr_zero_p(v)) return Rat(0);
        if (!mpfr_number_p(v)) throw std::domain_error("non-finite interval endpoint");
        mpz_class mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
        Rat r(mant);
        if (e >= 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
            r *= Rat(p);
        } else {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
            r /= Rat(p);
        }
        return r;
    }

    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

// sin(pi * x) for exact rational x, as a tight interval
inline Interval sin_pi(const Rat& x, mpfr_prec_t prec = 128) {
    Rat f = frac(x);  // sin(pi .) has period 2; fold to [0,2) via [0,1) and sign
    // sin(pi(x)) = sin(pi {x}) when floor(x) even, else -sin(pi {x})
    bool negate = mpz_odd_p(floor_int(x).get_mpz_t());
    if (f == 0) return Interval(Rat(0), prec);
    if (f == Rat(1, 2)) return Interval(negate ? Rat(-1) : Rat(1), prec);
    // away from the maximum, sin is monotone on the tiny enclosure of pi f,
    // and the side of 1/2 is decided exactly; the margin keeps the rounded
    // argument interval clear of pi/2
    static const Rat margin = Rat(1) / Rat(Int(1) << 48);
    Interval v(prec);
    if (f < Rat(1, 2) - margin || f > Rat(1, 2) + margin) {
        Interval arg = Interval::pi(prec) * Interval(f, prec);
        v = arg.sin_monotone(f < Rat(1, 2));
    } else {
        v = (Interval::pi(prec) * Interval(f, prec)).sin();
    }
    return negate ? -v : v;
}

// rational enclosure of pi itself (handy where formulas carry 1/pi factors)
inline std::pair<Rat, Rat> pi_bounds(mpfr_prec_t prec = 128) {
    Interval p = Interval::pi(prec);
    return {p.lower(), p.upper()};
}

}  // namespace flowlab
