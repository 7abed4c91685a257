#pragma once

// Special-flow layer: orbit queries for the flow under a step roof, the skew
// product, and the rigidity experiment for the roofs f_{a,b}.
//
// Orbit queries never materialize the full ergodic sum: f^(n)(x) at a single
// point reduces to counting orbit hits in the arcs of f, which floor_sum
// evaluates in O(log) big-integer steps per arc.

#include <optional>
#include <stdexcept>
#include <vector>

#include "flowlab/continued_fraction.hpp"
#include "flowlab/rational.hpp"
#include "flowlab/step_function.hpp"

namespace flowlab {

struct FlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// #{ 0 <= j < n : frac(x + j alpha) < t } for t in [0,1], exact
inline Int orbit_count_below(const Rat& x, const Rat& alpha, const Int& n, const Rat& t) {
    if (t <= 0) return Int(0);
    if (t >= 1) return n;
    // {y} < t  <=>  floor(y) - floor(y - t) = 1
    Int common_den = x.get_den();
    mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), alpha.get_den_mpz_t());
    mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), t.get_den_mpz_t());
    Int ax = x.get_num() * (common_den / x.get_den());
    Int aa = alpha.get_num() * (common_den / alpha.get_den());
    Int at = t.get_num() * (common_den / t.get_den());
    return floor_sum(n, ax, aa, common_den) - floor_sum(n, ax - at, aa, common_den);
}

// f^(n)(x) at one point for n >= 0, via per-arc orbit counting
inline Rat ergodic_sum_at(const StepFunction& f, const Rat& alpha, const Int& n, const Rat& x) {
    if (n == 0) return Rat(0);
    if (n < 0) {
        // cocycle identity: f^(-m)(x) = -f^(m)(x - m alpha)
        Int m = -n;
        return -ergodic_sum_at(f, alpha, m, x + Rat(n) * alpha);
    }
    Rat x0 = frac(x);
    const auto& breaks = f.breakpoints();
    const auto& values = f.values();
    size_t k = breaks.size();
    if (k == 1) return Rat(n) * values[0];
    Rat total(0);
    Int counted(0);
    for (size_t i = 0; i < k; ++i) {
        Int below_hi = (i + 1 < k) ? orbit_count_below(x0, alpha, n, breaks[i + 1]) : n;
        Int below_lo = orbit_count_below(x0, alpha, n, breaks[i]);
        Int in_arc = below_hi - below_lo;
        total += values[i] * Rat(in_arc);
        counted += in_arc;
    }
    // wrap arc [b_last, 1) u [0, b_0) carries values.back(); the loop above
    // counted [b_last, 1) within i = k-1 and missed [0, b_0)
    Int head = orbit_count_below(x0, alpha, n, breaks[0]);
    total += values.back() * Rat(head);
    counted += head;
    if (counted != n) throw FlowError("orbit counting mismatch; this is a bug");
    return total;
}

struct FlowPoint {
    Rat x;  // base point in [0,1)
    Rat s;  // height, 0 <= s < roof(x)
};

// T^f_t(x, s) = (x + n alpha, t + s - f^(n)(x)) with the unique n such that
// f^(n)(x) <= t + s < f^(n+1)(x); n is located by exponential search plus
// bisection over exact one-point ergodic sums
inline FlowPoint flow_step(const StepFunction& roof, const Rat& alpha, const FlowPoint& p,
                           const Rat& t) {
    for (const auto& v : roof.values())
        if (v <= 0) throw FlowError("roof must be strictly positive");
    if (p.s < 0 || p.s >= roof.at(p.x)) throw FlowError("point not under the roof");
    Rat target = t + p.s;
    auto S = [&](const Int& n) { return ergodic_sum_at(roof, alpha, n, p.x); };
    // bracket: S(lo) <= target < S(hi)
    Int lo(0), hi(0);
    if (target >= 0) {
        Int step(1);
        hi = 1;
        while (S(hi) <= target) {
            lo = hi;
            step *= 2;
            hi += step;
        }
    } else {
        Int step(1);
        lo = -1;
        while (S(lo) > target) {
            hi = lo;
            step *= 2;
            lo -= step;
        }
    }
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (S(mid) <= target) lo = mid;
        else hi = mid;
    }
    FlowPoint out;
    out.x = frac(p.x + Rat(lo) * alpha);
    out.s = target - S(lo);
    return out;
}

// n-fold skew product step in one shot: (x, r) -> (x + n alpha, r + f^(n)(x))
inline std::pair<Rat, Rat> skew_step(const StepFunction& f, const Rat& alpha,
                                     const std::pair<Rat, Rat>& point, const Int& n) {
    return {frac(point.first + Rat(n) * alpha),
            point.second + ergodic_sum_at(f, alpha, n, point.first)};
}

// ---------------------------------------------------------------------------
// rigidity experiment for the centered roof F = f_{a,b} - mean

struct RigidityEntry {
    Int time;
    Rat time_alpha_dist;       // ||r alpha||
    DistributionTable distribution;
    Rat l2_norm_sq;            // ||F^(r)||_2^2
    std::optional<int> denominator_index;  // n when the time is q_n
    bool half_law_checked = false;         // odd q_n: distribution {-1:1/2, +1:1/2}
    bool even_bound_checked = false;       // even q_n: ||F^(q)||^2 <= 4/a_{n+1}
};

struct RigidityReport {
    Rat a, b;
    bool centered_is_square_wave = false;  // a - b = 2
    std::vector<RigidityEntry> entries;
    std::optional<Rat> min_norm_sq_on_range;  // min ||F^(s)||_2^2 over [s0, s1]
    std::optional<Int> min_norm_argmin;
};

// exact distributions and L2 norms of the centered-roof sums along the given
// times; for odd denominators the half/half two-point law is asserted, for
// even denominators the 4/a_{n+1} norm bound; optionally scans a whole range
// [s0, s1] for the minimum L2 norm (the blocked-rigidity regression value)
inline RigidityReport rigidity_experiment(const Rat& a, const Rat& b, const CFExpansion& cf,
                                          const std::vector<Int>& times,
                                          std::optional<std::pair<long, long>> scan_range =
                                              std::nullopt,
                                          long breakpoint_budget = 10'000'000) {
    if (a <= 0 || b <= 0) throw FlowError("roof values must be positive");
    RigidityReport rep;
    rep.a = a;
    rep.b = b;
    rep.centered_is_square_wave = (a - b == 2);
    StepFunction roof = StepFunction::roof_ab(a, b);
    StepFunction centered = roof - StepFunction::constant(roof.integral());
    for (const auto& r : times) {
        RigidityEntry e;
        e.time = r;
        e.time_alpha_dist = norm_dist(Rat(r) * cf.approximant());
        StepFunction s = centered.ergodic_sum(cf.approximant(), r.get_si(), breakpoint_budget);
        e.distribution = DistributionTable::of(s);
        e.l2_norm_sq = s.norm_l2_sq();
        for (int n = 0; n <= cf.validated_depth(); ++n) {
            if (cf.den(n) == r) {
                e.denominator_index = n;
                break;
            }
        }
        if (e.denominator_index && rep.centered_is_square_wave) {
            int n = *e.denominator_index;
            bool odd = mpz_odd_p(cf.den(n).get_mpz_t());
            if (odd && Rat(cf.den(n)) * cf.qn_alpha_dist(n) < Rat(1, 2)) {
                if (e.distribution.mass(Rat(1)) != Rat(1, 2) ||
                    e.distribution.mass(Rat(-1)) != Rat(1, 2))
                    throw FlowError("odd-denominator half/half law failed; this is a bug");
                e.half_law_checked = true;
            } else if (!odd && n >= 1) {
                if (e.l2_norm_sq > Rat(4) / Rat(cf.quotient(n + 1)))
                    throw FlowError("even-denominator norm bound failed; this is a bug");
                e.even_bound_checked = true;
            }
        }
        rep.entries.push_back(std::move(e));
    }
    if (scan_range) {
        auto [s0, s1] = *scan_range;
        if (s0 < 1 || s1 < s0) throw FlowError("bad scan range");
        Rat best(-1);
        Int arg(0);
        for (long s = s0; s <= s1; ++s) {
            Rat nsq = centered.ergodic_sum(cf.approximant(), s, breakpoint_budget).norm_l2_sq();
            if (best < 0 || nsq < best) {
                best = nsq;
                arg = s;
            }
        }
        rep.min_norm_sq_on_range = best;
        rep.min_norm_argmin = arg;
    }
    return rep;
}

// total-variation distance between two exact distributions
inline Rat tv_distance(const DistributionTable& p, const DistributionTable& q) {
    Rat s(0);
    for (const auto& [v, m] : p.entries) s += abs_rat(m - q.mass(v));
    for (const auto& [v, m] : q.entries)
        if (!p.entries.count(v)) s += m;
    return s / 2;
}

// pushforward of a distribution under r -> m r
inline DistributionTable scale_distribution(const DistributionTable& p, const Rat& m) {
    DistributionTable out;
    for (const auto& [v, mass] : p.entries) out.entries[v * m] += mass;
    return out;
}

}  // namespace flowlab
