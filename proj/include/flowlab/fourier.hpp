#pragma once

// Fourier-side computations: closed-form ergodic-sum L2 norms with rigorous
// tails, the Fourier-method lower-bound hypotheses, the lacunary Hoelder roof
// construction with its bounds, and the telescoping transfer-function series.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "flowlab/continued_fraction.hpp"
#include "flowlab/interval.hpp"
#include "flowlab/ostrowski.hpp"
#include "flowlab/step_function.hpp"
#include "flowlab/trig_poly.hpp"

namespace flowlab {

struct FourierError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A Fourier-series description of a cocycle:
//  - TrigTerms: explicit finite list of (frequency, complex coefficient)
//  - SquareWave: the +-1 square wave F with c_r = 2/(pi i r) on odd r
//  - Lacunary: the roof F_s + delta F_1 built from denominators of alpha
struct FourierSeriesSpec {
    struct TrigTerm {
        long frequency;  // nonzero
        CRat coefficient;
    };
    struct TrigTerms {
        std::vector<TrigTerm> terms;
    };
    struct SquareWave {};
    struct Lacunary {
        std::vector<int> schedule;  // indices m_k into the denominators, increasing
        Rat delta;
        int K;                      // number of terms kept in each of F_s and F_1
    };
    std::variant<TrigTerms, SquareWave, Lacunary> v;

    static FourierSeriesSpec square_wave() { return {SquareWave{}}; }
};

struct SeriesNorm {
    Rat norm_sq_lo;  // enclosure of the truncated series
    Rat norm_sq_hi;
    Rat tail_bound;  // rigorous bound on the omitted tail (0 for finite specs)
};

namespace fdetail {

// (sin(pi q r alpha) / sin(pi r alpha))^2 as an interval
inline Interval ratio_sq(const Rat& alpha, const Int& q, const Int& r, mpfr_prec_t prec) {
    Rat den_arg = Rat(r) * alpha;
    if (norm_dist(den_arg) == 0) throw FourierError("sin(pi r alpha) vanishes: r too large");
    Interval num = sin_pi(Rat(q) * den_arg, prec);
    Interval den = sin_pi(den_arg, prec);
    return (num / den).square();
}

// rational upper/lower bounds of pi at fixed precision
inline const std::pair<Rat, Rat>& pi_rat() {
    static const std::pair<Rat, Rat> p = pi_bounds(192);
    return p;
}

}  // namespace fdetail

// ||phi^(q)||_2^2 = sum |c_r|^2 (sin pi q r alpha / sin pi r alpha)^2 over
// |r| <= truncation, with the tail bounded via |gamma_r| <= sup|gamma| and
// |sin(pi q r alpha)/sin(pi r alpha)| <= q
inline SeriesNorm series_norm(const FourierSeriesSpec& spec, const CFExpansion& cf, const Int& q,
                              long truncation, mpfr_prec_t prec = 128) {
    if (q < 1) throw FourierError("q must be >= 1");
    const Rat& alpha = cf.approximant();
    Interval acc(Rat(0), prec);
    Rat tail(0);
    if (auto* tp = std::get_if<FourierSeriesSpec::TrigTerms>(&spec.v)) {
        for (const auto& t : tp->terms) {
            if (t.frequency == 0) throw FourierError("zero frequency in spec");
            if (std::abs(t.frequency) > truncation)
                throw FourierError("truncation below an explicit frequency");
            Rat mag_sq = t.coefficient.re * t.coefficient.re + t.coefficient.im * t.coefficient.im;
            acc = acc + Interval(mag_sq, prec) * fdetail::ratio_sq(alpha, q, Int(t.frequency), prec);
        }
    } else if (std::get_if<FourierSeriesSpec::SquareWave>(&spec.v)) {
        // |c_r|^2 = 4 / (pi^2 r^2) on odd r; +-r contribute equally
        Interval inv_pi_sq = (Interval(Rat(1), prec) / Interval::pi(prec)).square();
        for (long r = 1; r <= truncation; r += 2) {
            Interval term = fdetail::ratio_sq(alpha, q, Int(r), prec);
            acc = acc + Interval(rat(8, r) / Rat(r), prec) * inv_pi_sq * term;
        }
        // sup|gamma| = 2/pi; sum_{|r| > T} 1/r^2 < 2/T
        const auto& [pi_lo, pi_hi] = fdetail::pi_rat();
        tail = Rat(4) / (pi_lo * pi_lo) * Rat(q) * Rat(q) * Rat(2) / Rat(truncation);
    } else {
        const auto& lac = std::get<FourierSeriesSpec::Lacunary>(spec.v);
        // sin amplitudes per frequency; coincident frequencies add
        std::map<Int, Rat> amps;
        for (int k = 0; k < lac.K; ++k) {
            const Int& qs = cf.den(lac.schedule.at(static_cast<size_t>(k)));
            amps[qs] += Rat(1) / Rat(qs);
            const Int& q1 = cf.den(k + 1);
            amps[q1] += lac.delta / Rat(q1);
        }
        for (const auto& [freq, amp] : amps) {
            if (freq > truncation) throw FourierError("truncation below an explicit frequency");
            // ||a sin(2 pi n .)||_2^2 = a^2 / 2
            acc = acc +
                  Interval(amp * amp / 2, prec) * fdetail::ratio_sq(alpha, q, freq, prec);
        }
    }
    SeriesNorm out;
    out.norm_sq_lo = acc.lower();
    out.norm_sq_hi = acc.upper();
    out.tail_bound = tail;
    return out;
}

struct GammaCoeff {
    Rat pi_scaled_lo;  // enclosure of pi * |gamma_q| = 2^{v-1} prod |sin(pi q beta_j)|
    Rat pi_scaled_hi;
    std::optional<Rat> exact_pi_scaled;  // set when every factor is exactly rational
    std::string decimal;                 // midpoint rendering of |gamma_q| itself
};

// |gamma_q(phi_{beta_1..beta_v})| = (2^{v-1}/pi) prod_j |sin(pi q beta_j)|;
// returned pi-scaled so the 1/pi factor stays symbolic
inline GammaCoeff gamma_coeff(const CFExpansion& cf, const std::vector<Rat>& betas, const Int& q,
                              mpfr_prec_t prec = 128) {
    (void)cf;
    if (betas.empty()) throw FourierError("need at least one beta");
    Interval prod(Rat(1), prec);
    bool exact = true;
    Rat exact_val(1);
    for (const auto& b : betas) {
        Rat d = norm_dist(Rat(q) * b);  // |sin(pi q b)| = sin(pi ||q b||)
        if (d == 0) {
            exact_val = 0;
            prod = Interval(Rat(0), prec);
            break;
        }
        if (d == Rat(1, 2)) {
            // factor is exactly 1
        } else if (d == Rat(1, 6)) {
            exact_val *= Rat(1, 2);
        } else {
            exact = false;
        }
        prod = prod * sin_pi(d, prec).abs();
    }
    Rat two_pow(1);
    for (size_t i = 1; i < betas.size(); ++i) two_pow *= 2;
    GammaCoeff out;
    Interval scaled = Interval(two_pow, prec) * prod;
    out.pi_scaled_lo = scaled.lower();
    out.pi_scaled_hi = scaled.upper();
    if (exact || exact_val == 0) out.exact_pi_scaled = exact_val == 0 ? Rat(0) : two_pow * exact_val;
    Interval value = scaled / Interval::pi(prec);
    out.decimal = to_decimal((value.lower() + value.upper()) / 2, 12);
    return out;
}

struct FourMethCheck {
    bool condgamma_ok = false;        // |gamma_{q_{n_k}}| >= delta on the whole subsequence
    bool condak_ok = true;            // sup over {k: a_{n_k+1} = 1} of a_{n_k} finite
    std::optional<Int> M;             // the sup itself, when the set is nonempty
    std::vector<Rat> gamma_lowers;    // per-index certified lower bounds (pi-scaled)
};

// hypotheses of the Fourier-method essential-value criterion over a supplied
// subsequence of denominator indices; delta compares against |gamma|, so the
// pi-scaled enclosure is divided by the rational pi upper bound
inline FourMethCheck fourmeth_check(const CFExpansion& cf, const std::vector<Rat>& betas,
                                    const Rat& delta, const std::vector<int>& indices) {
    FourMethCheck out;
    out.condgamma_ok = true;
    const auto& [pi_lo, pi_hi] = fdetail::pi_rat();
    for (int n : indices) {
        auto g = gamma_coeff(cf, betas, cf.den(n));
        Rat lower = g.pi_scaled_lo / pi_hi;  // certified lower bound of |gamma|
        out.gamma_lowers.push_back(lower);
        if (lower < delta) out.condgamma_ok = false;
        if (cf.quotient(n + 1) == 1) {
            Int an = cf.quotient(n);
            if (!out.M || an > *out.M) out.M = an;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hoelder roof construction: F = F_s + delta F_1 truncated at K terms each

inline FourierSeriesSpec hoelder_build(const CFExpansion& cf, const std::vector<int>& schedule,
                                       const Rat& delta, int K,
                                       std::optional<Int> bounded_type_A = std::nullopt) {
    if (K < 1 || static_cast<int>(schedule.size()) < K) throw FourierError("need K schedule terms");
    for (int k = 0; k + 1 < K; ++k)
        if (schedule[k] >= schedule[k + 1]) throw FourierError("schedule must be increasing");
    int top = std::max(schedule[static_cast<size_t>(K) - 1], K);
    if (top > cf.validated_depth()) throw FourierError("schedule beyond validated depth");
    // lacunarity: q_n >= (1 + 1/(A+1)) q_{n-1} with A the quotient bound; an
    // observed quotient above a supplied A breaks the bounded-type requirement
    Int observed(0);
    for (int n = 1; n <= top + 1; ++n)
        if (cf.quotient(n) > observed) observed = cf.quotient(n);
    Int A = bounded_type_A.value_or(observed);
    if (observed > A)
        throw FourierError("denominators not lacunary at the claimed bound: partial quotient " +
                           observed.get_str() + " exceeds the bounded-type constant " +
                           A.get_str());
    // q_n (A + 1) >= (A + 2) q_{n-1}, the lacunarity inequality cleared of
    // fractions; it kicks in from n = 3 (q_1 = q_0 is possible below that)
    for (int n = 3; n <= top; ++n) {
        if (cf.den(n) * (A + 1) < (A + 2) * cf.den(n - 1))
            throw FourierError("denominators not lacunary: bounded-type requirement fails at n = " +
                               std::to_string(n));
    }
    FourierSeriesSpec spec;
    spec.v = FourierSeriesSpec::Lacunary{schedule, delta, K};
    return spec;
}

// interval evaluation of a lacunary roof at a point
inline Interval hoelder_eval(const FourierSeriesSpec& spec, const CFExpansion& cf, const Rat& x,
                             mpfr_prec_t prec = 128) {
    const auto* lac = std::get_if<FourierSeriesSpec::Lacunary>(&spec.v);
    if (!lac) throw FourierError("not a lacunary spec");
    Interval acc(Rat(0), prec);
    for (int k = 0; k < lac->K; ++k) {
        const Int& qs = cf.den(lac->schedule.at(static_cast<size_t>(k)));
        acc = acc + sin_pi(2 * Rat(qs) * x, prec) * Interval(Rat(1) / Rat(qs), prec);
        const Int& q1 = cf.den(k + 1);
        acc = acc + sin_pi(2 * Rat(q1) * x, prec) * Interval(lac->delta / Rat(q1), prec);
    }
    return acc;
}

struct HoelderModulus {
    Rat empirical_C;     // certified upper bound of the worst sampled ratio
    std::string decimal;
    Rat worst_x, worst_h;
};

// samples |F(x+h) - F(x)| / (|h| log(1/|h|)) over dyadic h and a uniform x
// grid; a finite value stable under refinement is the regularity check
inline HoelderModulus hoelder_modulus(const FourierSeriesSpec& spec, const CFExpansion& cf,
                                      int samples, mpfr_prec_t prec = 128) {
    if (samples < 10) throw FourierError("need samples >= 10");
    HoelderModulus out;
    out.empirical_C = 0;
    out.worst_x = 0;
    out.worst_h = 0;
    int jmax = 4;
    while ((1 << jmax) < samples && jmax < 24) ++jmax;
    Interval log2 = Interval(Rat(2), prec).log();
    for (int j = 2; j <= jmax; ++j) {
        Rat h = Rat(1) / Rat(Int(1) << j);
        Interval log_inv_h = Interval(Rat(j), prec) * log2;  // log(2^j)
        for (int i = 0; i < samples; ++i) {
            Rat x = Rat(i) / Rat(samples);
            Interval diff = (hoelder_eval(spec, cf, x + h, prec) -
                             hoelder_eval(spec, cf, x, prec)).abs();
            Interval ratio = diff / (Interval(h, prec) * log_inv_h);
            Rat hi = ratio.upper();
            if (hi > out.empirical_C) {
                out.empirical_C = hi;
                out.worst_x = x;
                out.worst_h = h;
            }
        }
    }
    out.decimal = to_decimal(out.empirical_C, 8);
    return out;
}

struct LacunaryBounds {
    Rat A_lo, A_hi;   // bound on the head sum
    Rat B_lo, B_hi;   // the single k = n term
    Rat C_lo, C_hi;   // bound on the tail sum
    bool maj1_ok = false;
    bool maj2_ok = false;
    Rat B_rational_floor;  // (2/pi) min(1, (1-t)/t) with t = q ||q alpha||
};

namespace fdetail {

// rational lower bound of sqrt(5)
inline Rat sqrt5_lower() {
    Int scaled;
    Int five_sq("5" + std::string(40, '0'), 10);  // 5 * 10^40
    mpz_sqrt(scaled.get_mpz_t(), five_sq.get_mpz_t());
    Int den_pow;
    mpz_ui_pow_ui(den_pow.get_mpz_t(), 10, 20);
    return rat(scaled, den_pow);
}

}  // namespace fdetail

// the head/diagonal/tail decomposition of the ergodic sum of F_s at time
// q_{m_n}, with the two denominator-growth inequalities checked exactly
inline LacunaryBounds lacunary_bounds(const CFExpansion& cf, const std::vector<int>& schedule,
                                      int n, mpfr_prec_t prec = 128) {
    if (n < 0 || n >= static_cast<int>(schedule.size()))
        throw FourierError("n outside the schedule");
    const Rat& alpha = cf.approximant();
    const Int& t = cf.den(schedule[static_cast<size_t>(n)]);
    auto term_bound = [&](int k) {
        const Int& qk = cf.den(schedule[static_cast<size_t>(k)]);
        Interval num = sin_pi(Rat(qk) * Rat(t) * alpha, prec).abs();
        Interval den = sin_pi(Rat(qk) * alpha, prec).abs();
        return (num / den) * Interval(Rat(1) / Rat(qk), prec);
    };
    LacunaryBounds out;
    Interval A(Rat(0), prec), C(Rat(0), prec);
    for (int k = 0; k < n; ++k) A = A + term_bound(k);
    for (int k = n + 1; k < static_cast<int>(schedule.size()); ++k) C = C + term_bound(k);
    Interval B = term_bound(n);
    out.A_lo = A.lower();
    out.A_hi = A.upper();
    out.B_lo = B.lower();
    out.B_hi = B.upper();
    out.C_lo = C.lower();
    out.C_hi = C.upper();
    // maj1: q_1 + ... + q_j <= 2 q_{j+1} for every validated j
    out.maj1_ok = true;
    Int acc(0);
    for (int j = 1; j <= cf.validated_depth(); ++j) {
        acc += cf.den(j);
        if (acc > 2 * cf.den(j + 1)) out.maj1_ok = false;
    }
    // maj2: sum_k 1/q_{j+k} <= (5 + 2 sqrt 5) / q_{j+1}, partial sums over the
    // validated range (30 terms when available)
    out.maj2_ok = true;
    Rat C_const = Rat(5) + 2 * fdetail::sqrt5_lower();
    for (int j = 1; j + 2 <= cf.validated_depth() + 1; ++j) {
        Rat s(0);
        for (int k = 1; k <= 30 && j + k <= cf.validated_depth() + 1; ++k)
            s += Rat(1) / Rat(cf.den(j + k));
        if (s > C_const / Rat(cf.den(j + 1))) out.maj2_ok = false;
    }
    // |B_n| >= (2/pi) min(1, (1-t)/t) with t = q ||q alpha|| in [1/(A+1), 1)
    {
        const Int& q = t;
        Rat tt = Rat(q) * cf.qn_alpha_dist(schedule[static_cast<size_t>(n)]);
        const auto& [pi_lo, pi_hi] = fdetail::pi_rat();
        Rat m = (Rat(1) - tt) / tt;
        if (m > 1) m = 1;
        out.B_rational_floor = Rat(2) / pi_hi * m;
    }
    return out;
}

// ---------------------------------------------------------------------------
// transfer-function series: the telescoping construction of a solution of
// f(. + beta_K) - f = g_K o R_alpha - g_K, exact at every finite K

struct TransferSeries {
    Rat beta_K;
    std::vector<Rat> increment_norm_sq_lo;  // ||f^(q_{n_k})||_2^2 enclosures
    std::vector<Rat> increment_norm_sq_hi;  // (equal for step roofs)
    bool identity_ok = false;               // exact telescoping identity
    Rat residual_l2_sq;                     // exactly zero when identity_ok
    bool increments_not_decreasing = false; // warning flag
};

namespace fdetail {

template <typename Roof>
TransferSeries transfer_series_impl(const Roof& roof, const CFExpansion& cf,
                                    const std::vector<int>& subsequence, int K,
                                    long breakpoint_budget) {
    if (K < 1 || static_cast<int>(subsequence.size()) < K)
        throw FourierError("need K subsequence indices");
    TransferSeries out;
    const Rat& alpha = cf.approximant();
    Rat beta(0);
    Roof g;
    for (int k = 0; k < K; ++k) {
        int idx = subsequence[static_cast<size_t>(k)];
        if (idx > cf.validated_depth()) throw FourierError("subsequence beyond validated depth");
        const Int& q = cf.den(idx);
        Roof inc;
        if constexpr (std::is_same_v<Roof, StepFunction>) {
            inc = roof.ergodic_sum(alpha, q.get_si(), breakpoint_budget);
            Rat nsq = inc.norm_l2_sq();
            out.increment_norm_sq_lo.push_back(nsq);
            out.increment_norm_sq_hi.push_back(nsq);
        } else {
            inc = roof.ergodic_sum(alpha, q.get_si());
            Interval nsq = inc.norm_l2_sq();
            out.increment_norm_sq_lo.push_back(nsq.lower());
            out.increment_norm_sq_hi.push_back(nsq.upper());
        }
        g = g + inc.rotate(beta);
        beta = frac(beta + Rat(q) * alpha);
    }
    out.beta_K = beta;
    Roof lhs = roof.rotate(beta) - roof;
    Roof rhs = g.rotate(alpha) - g;
    out.identity_ok = lhs == rhs;
    if (!out.identity_ok)
        throw std::logic_error("transfer telescoping identity failed; this is a bug");
    out.residual_l2_sq = 0;
    // decay certificate: each increment certifiably below its predecessor
    for (size_t k = 1; k < out.increment_norm_sq_hi.size(); ++k)
        if (!(out.increment_norm_sq_hi[k] < out.increment_norm_sq_lo[k - 1]))
            out.increments_not_decreasing = true;
    return out;
}

}  // namespace fdetail

inline TransferSeries transfer_series(const StepFunction& roof, const CFExpansion& cf,
                                      const std::vector<int>& subsequence, int K,
                                      long breakpoint_budget = 10'000'000) {
    return fdetail::transfer_series_impl(roof, cf, subsequence, K, breakpoint_budget);
}

inline TransferSeries transfer_series(const TrigPoly& roof, const CFExpansion& cf,
                                      const std::vector<int>& subsequence, int K) {
    return fdetail::transfer_series_impl(roof, cf, subsequence, K, 0);
}

// ---------------------------------------------------------------------------
// L2 coboundary series for phi_{beta, gamma}

struct L2CobSum {
    Rat plain_sum;   // sum over 0 < |n| <= N of ||n beta||^2 ||n gamma||^2 / (n^2 ||n alpha||^2)
    Rat scaled_lo;   // enclosure of the sine-weighted transfer norm, via 2||x|| <= |sin pi x| <= pi ||x||
    Rat scaled_hi;
    Trend trend = Trend::Flat;
};

inline L2CobSum l2_cob_sum(const CFExpansion& cf, const Rat& beta, const Rat& gamma, long N) {
    if (N < 1) throw FourierError("N must be >= 1");
    const Rat& alpha = cf.approximant();
    Rat sum(0);
    Rat at_quarter(0), at_half(0);
    for (long n = 1; n <= N; ++n) {
        Rat da = norm_dist(Rat(n) * alpha);
        if (da == 0) throw FourierError("||n alpha|| vanished: N exceeds the approximant's reach");
        Rat db = norm_dist(Rat(n) * beta);
        Rat dg = norm_dist(Rat(n) * gamma);
        sum += 2 * db * db * dg * dg / (Rat(n) * Rat(n) * da * da);
        if (n == N / 4) at_quarter = sum;
        if (n == N / 2) at_half = sum;
    }
    L2CobSum out;
    out.plain_sum = sum;
    const auto& [pi_lo, pi_hi] = fdetail::pi_rat();
    out.scaled_lo = Rat(16) / (pi_hi * pi_hi * pi_hi * pi_hi) * sum;
    out.scaled_hi = pi_hi * pi_hi / 4 * sum;
    Rat d1 = at_half - at_quarter;
    Rat d2 = sum - at_half;
    out.trend = d2 < d1 ? Trend::Decreasing : (d2 == d1 ? Trend::Flat : Trend::Increasing);
    return out;
}

}  // namespace flowlab
