#pragma once

// Ostrowski numeration of beta in the base (q_n alpha): greedy digit
// extraction, exact synthesis, the H_r(alpha) partial sums, and the
// condition checkers for the Guenais-Parreau and lacunarity hypotheses.
//
// Digits are Z-valued (the underlying expansion theorem allows that); the
// classical non-negative digit bounds are checked and reported, not forced.
// The extraction is validated by the round-trip bound |residual| <= ||q_N a||
// rather than by construction.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowlab/continued_fraction.hpp"
#include "flowlab/rational.hpp"

namespace flowlab {

struct OstrowskiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OstrowskiExpansion {
    std::vector<Int> coefficients;  // b_0 .. b_N
    Rat residual;                   // fold(beta - sum b_n q_n alpha), in [-1/2, 1/2)
    bool digit_bound_ok = false;    // 0 <= b_n <= a_{n+1} with the no-carry side condition
};

// exact value of sum b_n q_n alpha mod 1
inline Rat synth_beta(const CFExpansion& cf, const std::vector<Int>& coefficients) {
    if (static_cast<int>(coefficients.size()) > cf.validated_depth() + 1)
        throw OstrowskiError("coefficients extend beyond validated depth");
    Rat s(0);
    for (size_t n = 0; n < coefficients.size(); ++n)
        s += Rat(coefficients[n] * cf.den(static_cast<int>(n))) * cf.approximant();
    return frac(s);
}

inline bool digit_bounds_hold(const CFExpansion& cf, const std::vector<Int>& b) {
    for (size_t n = 0; n < b.size(); ++n) {
        if (b[n] < 0 || b[n] > cf.quotient(static_cast<int>(n) + 1)) return false;
        if (n > 0 && b[n] == cf.quotient(static_cast<int>(n) + 1) && b[n - 1] != 0) return false;
    }
    return true;
}

// greedy extraction, coarsest scale theta_0 first: at scale n the digit is
// the nearest integer to residual / theta_n (ties toward zero), which halves
// the folded residual against |theta_n| at every step and so ends with
// |residual| <= ||q_N alpha|| / 2
inline OstrowskiExpansion ostrowski_expand(const CFExpansion& cf, const Rat& beta, int N) {
    if (N > cf.validated_depth()) throw OstrowskiError("depth beyond validated range");
    OstrowskiExpansion out;
    Rat rho = fold_centered(beta);
    for (int n = 0; n <= N; ++n) {
        Rat th = cf.theta(n);
        Int b = nearest_int(rho / th);
        rho = fold_centered(rho - Rat(b) * th);
        out.coefficients.push_back(b);
    }
    out.residual = rho;
    out.digit_bound_ok = digit_bounds_hold(cf, out.coefficients);
    return out;
}

enum class Trend { Decreasing, Flat, Increasing };

inline std::string trend_name(Trend t) {
    switch (t) {
        case Trend::Decreasing: return "decreasing";
        case Trend::Flat: return "flat";
        default: return "increasing";
    }
}

struct HrPartial {
    // finite r: enclosure of sum ||q_n beta||^r (exact pair; equal for integer r)
    Rat partial_lo;
    Rat partial_hi;
    // r = infinity: sup of ||q_n beta|| over the last third of indices
    std::optional<Rat> tail_sup;
    Trend trend = Trend::Flat;
};

namespace detail {

inline Rat pow_rat(const Rat& x, unsigned long e) {
    Rat r(1);
    Rat base = x;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// trend of a non-negative sequence: compare the final third against the
// middle third
inline Trend thirds_trend(const std::vector<Rat>& vals) {
    if (vals.size() < 3) return Trend::Flat;
    size_t third = vals.size() / 3;
    Rat mid(0), last(0);
    for (size_t i = third; i < 2 * third; ++i)
        if (vals[i] > mid) mid = vals[i];
    for (size_t i = vals.size() - third; i < vals.size(); ++i)
        if (vals[i] > last) last = vals[i];
    if (last < mid) return Trend::Decreasing;
    if (last > mid) return Trend::Increasing;
    return Trend::Flat;
}

}  // namespace detail

// partial sums of the H_r(alpha) membership series: sum_n ||q_n beta||^r for
// finite r (non-integer rational r is enclosed between the two neighbouring
// integer exponents, valid since ||.|| <= 1), tail sup for r = infinity
inline HrPartial h_r_partial(const CFExpansion& cf, const Rat& beta, const std::optional<Rat>& r,
                             int N) {
    if (N > cf.validated_depth()) throw OstrowskiError("depth beyond validated range");
    HrPartial out;
    std::vector<Rat> terms;
    for (int n = 0; n <= N; ++n) terms.push_back(norm_dist(Rat(cf.den(n)) * beta));
    if (!r) {  // r = infinity
        Rat sup(0);
        int from = std::max(0, N - (N + 1) / 3);
        for (int n = from; n <= N; ++n)
            if (terms[n] > sup) sup = terms[n];
        out.tail_sup = sup;
        out.trend = detail::thirds_trend(terms);
        return out;
    }
    if (*r <= 0) throw OstrowskiError("r must be positive");
    Int lo_e = floor_int(*r);
    Int hi_e = lo_e;
    if (Rat(lo_e) < *r) hi_e = lo_e + 1;
    Rat sum_lo(0), sum_hi(0);
    std::vector<Rat> increments;
    for (const auto& t : terms) {
        // t <= 1, so t^(ceil r) <= t^r <= t^(floor r)
        Rat plo = detail::pow_rat(t, hi_e.get_ui());
        Rat phi = lo_e == 0 ? Rat(1) : detail::pow_rat(t, lo_e.get_ui());
        sum_lo += plo;
        sum_hi += phi;
        increments.push_back(phi);
    }
    out.partial_lo = sum_lo;
    out.partial_hi = sum_hi;
    out.trend = detail::thirds_trend(increments);
    return out;
}

struct ConditionSums {
    Rat ostro_sum;                 // sum |b_n| / a_{n+1}
    Rat lacunarity_sum;            // sum (b_n / b_{n+1})^2 over consecutive nonzero pairs
    int skipped_zero_gaps = 0;     // nonzero pairs separated by zero digits
    std::optional<Rat> s_sum;      // sum ||b_n s||^2, when s supplied
};

// the checkable hypotheses of the Ostrowski-side theorems: the Guenais-
// Parreau digit sum, the lacunarity ratio sum, and the ||b_n s||^2 sum
inline ConditionSums condition_checks(const CFExpansion& cf, const std::vector<Int>& b,
                                      const std::optional<Rat>& s = std::nullopt) {
    if (static_cast<int>(b.size()) > cf.validated_depth() + 1)
        throw OstrowskiError("coefficients extend beyond validated depth");
    ConditionSums out;
    out.ostro_sum = 0;
    out.lacunarity_sum = 0;
    for (size_t n = 0; n < b.size(); ++n) {
        Int ab = b[n] >= 0 ? b[n] : Int(-b[n]);
        out.ostro_sum += Rat(ab) / Rat(cf.quotient(static_cast<int>(n) + 1));
    }
    std::vector<size_t> nonzero;
    for (size_t n = 0; n < b.size(); ++n)
        if (b[n] != 0) nonzero.push_back(n);
    for (size_t i = 0; i + 1 < nonzero.size(); ++i) {
        if (nonzero[i + 1] != nonzero[i] + 1) ++out.skipped_zero_gaps;
        Rat ratio = Rat(b[nonzero[i]]) / Rat(b[nonzero[i + 1]]);
        out.lacunarity_sum += ratio * ratio;
    }
    if (s) {
        Rat acc(0);
        for (const auto& bn : b) {
            Rat d = norm_dist(Rat(bn) * (*s));
            acc += d * d;
        }
        out.s_sum = acc;
    }
    return out;
}

struct NonregularCandidate {
    Rat beta;
    std::vector<Int> coefficients;
    ConditionSums checks;
    bool trivial = false;  // all-zero schedule
};

// digit schedule for the non-regularity construction: caller supplies the
// digits (typically b_n growing fast against a fast-growing a_{n+1}); the op
// synthesizes beta and verifies the two hypothesis sums stay below the caps.
inline NonregularCandidate nonregular_candidate(const CFExpansion& cf, const std::vector<Int>& b,
                                                const Rat& ostro_cap = Rat(2),
                                                const Rat& lacunarity_cap = Rat(1)) {
    if (static_cast<int>(b.size()) > cf.validated_depth() + 1)
        throw OstrowskiError("schedule incompatible with validated depth");
    NonregularCandidate out;
    out.coefficients = b;
    out.checks = condition_checks(cf, b);
    out.beta = synth_beta(cf, b);
    bool all_zero = true;
    for (const auto& x : b)
        if (x != 0) all_zero = false;
    if (all_zero) {
        out.trivial = true;
        return out;
    }
    if (out.checks.ostro_sum > ostro_cap)
        throw OstrowskiError("schedule rejected: sum |b_n|/a_{n+1} = " +
                             to_fraction(out.checks.ostro_sum) + " exceeds cap");
    if (out.checks.lacunarity_sum > lacunarity_cap)
        throw OstrowskiError("schedule rejected: sum (b_n/b_{n+1})^2 = " +
                             to_fraction(out.checks.lacunarity_sum) + " exceeds cap");
    return out;
}

}  // namespace flowlab
