#pragma once

// Trigonometric polynomials with exact bookkeeping: finite sums
//   f(x) = sum_j w_j e^{2 pi i (r_j x + phi_j)}
// with rational complex weights w_j and rational phases phi_j (mod 1).
// Rotation by a rational angle and Birkhoff summation stay inside this class,
// so cocycle identities can be checked exactly; only L2 norms need interval
// evaluation of the phase exponentials.

#include <map>
#include <stdexcept>
#include <utility>

#include "flowlab/interval.hpp"
#include "flowlab/rational.hpp"

namespace flowlab {

struct CRat {
    Rat re, im;
    CRat() : re(0), im(0) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
    CRat operator*(const Rat& s) const { return {re * s, im * s}; }
    bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
    bool zero() const { return re == 0 && im == 0; }
};

class TrigPoly {
public:
    // value -> coefficient dictionary keyed by (frequency, phase mod 1)
    using PhaseMap = std::map<Rat, CRat>;

    TrigPoly() = default;

    static TrigPoly cosine(long r, const Rat& amplitude = Rat(1)) {
        TrigPoly f;
        Rat half = amplitude / 2;
        f.add_term(r, Rat(0), CRat(half, Rat(0)));
        f.add_term(-r, Rat(0), CRat(half, Rat(0)));
        return f;
    }
    static TrigPoly sine(long r, const Rat& amplitude = Rat(1)) {
        TrigPoly f;
        Rat half = amplitude / 2;
        // sin t = (e^{it} - e^{-it}) / (2i)
        f.add_term(r, Rat(0), CRat(Rat(0), -half));
        f.add_term(-r, Rat(0), CRat(Rat(0), half));
        return f;
    }

    bool empty() const { return terms_.empty(); }

    void add_term(long freq, const Rat& phase, const CRat& w) {
        if (w.zero()) return;
        auto& slot = terms_[freq][frac(phase)];
        slot = slot + w;
        if (slot.zero()) {
            terms_[freq].erase(frac(phase));
            if (terms_[freq].empty()) terms_.erase(freq);
        }
    }

    TrigPoly operator+(const TrigPoly& o) const {
        TrigPoly r = *this;
        for (const auto& [freq, phases] : o.terms_)
            for (const auto& [ph, w] : phases) r.add_term(freq, ph, w);
        return r;
    }
    TrigPoly operator-(const TrigPoly& o) const { return *this + o.scale(Rat(-1)); }

    TrigPoly scale(const Rat& s) const {
        TrigPoly r;
        if (s == 0) return r;
        for (const auto& [freq, phases] : terms_)
            for (const auto& [ph, w] : phases) r.add_term(freq, ph, w * s);
        return r;
    }

    // x -> f(x + gamma): each term picks up phase r * gamma
    TrigPoly rotate(const Rat& gamma) const {
        TrigPoly r;
        for (const auto& [freq, phases] : terms_)
            for (const auto& [ph, w] : phases) r.add_term(freq, ph + Rat(freq) * gamma, w);
        return r;
    }

    // Birkhoff sum f + f(.+alpha) + ... + f(.+(n-1) alpha), term by term
    TrigPoly ergodic_sum(const Rat& alpha, long n) const {
        TrigPoly r;
        for (long j = 0; j < n; ++j) {
            for (const auto& [freq, phases] : terms_)
                for (const auto& [ph, w] : phases)
                    r.add_term(freq, ph + Rat(freq) * Rat(j) * alpha, w);
        }
        return r;
    }

    bool operator==(const TrigPoly& o) const { return terms_ == o.terms_; }

    // enclosure of ||f||_2^2 = sum_r |sum_phases w e^{2 pi i phi}|^2
    Interval norm_l2_sq(mpfr_prec_t prec = 128) const {
        Interval total(Rat(0), prec);
        for (const auto& [freq, phases] : terms_) {
            Interval re(Rat(0), prec), im(Rat(0), prec);
            for (const auto& [ph, w] : phases) {
                Interval c = sin_pi(2 * ph + Rat(1, 2), prec);  // cos(2 pi ph)
                Interval s = sin_pi(2 * ph, prec);
                re = re + Interval(w.re, prec) * c - Interval(w.im, prec) * s;
                im = im + Interval(w.re, prec) * s + Interval(w.im, prec) * c;
            }
            total = total + re.square() + im.square();
        }
        return total;
    }

    // pointwise enclosure
    Interval eval(const Rat& x, mpfr_prec_t prec = 128) const {
        Interval total(Rat(0), prec);
        for (const auto& [freq, phases] : terms_)
            for (const auto& [ph, w] : phases) {
                Rat arg = Rat(freq) * x + ph;
                Interval c = sin_pi(2 * arg + Rat(1, 2), prec);
                Interval s = sin_pi(2 * arg, prec);
                // real part of w e^{2 pi i arg}
                total = total + Interval(w.re, prec) * c - Interval(w.im, prec) * s;
            }
        return total;
    }

    const std::map<long, PhaseMap>& terms() const { return terms_; }

private:
    std::map<long, PhaseMap> terms_;
};

}  // namespace flowlab
