#pragma once

// Non-coboundary machinery for the cocycle Phi_beta over R_alpha: the
// two-case square-wave sum dichotomy, exact discontinuity labeling of
// ergodic sums, separation tests, support experiments along rigidity-type
// times, essential-value scans, and the finite-evidence (alpha, beta)
// classifier. Verdicts are evidence, never proofs: each one cites the exact
// quantities it was computed from.

#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowlab/continued_fraction.hpp"
#include "flowlab/ostrowski.hpp"
#include "flowlab/step_function.hpp"

namespace flowlab {

struct DiagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LemmaHalfResult {
    int case_id = 0;               // 1: q_n odd, 2: q_n even
    std::set<Rat> value_set;       // values taken by F^(q_n)
    Rat exceptional_measure;       // case 2: mu(F^(q_n) != 0); case 1: mu(F^(q_n) not in {-1,1})
    DistributionTable distribution;
};

// F^(q_n) dichotomy: odd q_n gives values exactly {-1,+1}; even q_n gives
// values in {-2,0,+2} with mu(!=0) <= 1/a_{n+1}. Requires q_n ||q_n a|| < 1/2.
inline LemmaHalfResult verify_lemma_half(const CFExpansion& cf, int n) {
    Rat qd = Rat(cf.den(n)) * cf.qn_alpha_dist(n);
    if (!(qd < Rat(1, 2)))
        throw DiagError("lemma inapplicable: q_n ||q_n alpha|| = " + to_fraction(qd) + " >= 1/2");
    StepFunction F = StepFunction::square_wave();
    StepFunction s = F.ergodic_sum(cf.approximant(), cf.den(n).get_si());
    LemmaHalfResult r;
    r.distribution = DistributionTable::of(s);
    for (const auto& [v, m] : r.distribution.entries) r.value_set.insert(v);
    bool odd = mpz_odd_p(cf.den(n).get_mpz_t());
    r.case_id = odd ? 1 : 2;
    if (odd) {
        if (r.value_set != std::set<Rat>{Rat(-1), Rat(1)})
            throw DiagError("case 1 value set is not {-1,+1}");
        r.exceptional_measure = 0;
    } else {
        for (const auto& v : r.value_set)
            if (v != 0 && v != 2 && v != -2) throw DiagError("case 2 values escape {-2,0,2}");
        r.exceptional_measure = r.distribution.mass(Rat(2)) + r.distribution.mass(Rat(-2));
        if (r.exceptional_measure > Rat(1) / Rat(cf.quotient(n + 1)))
            throw DiagError("case 2 exceptional measure exceeds 1/a_{n+1}");
    }
    return r;
}

struct DiscontinuityLabel {
    Rat gamma;
    Int k;          // grid index in [0, q_n)
    Int t_gamma_n;  // integer part: q_n gamma = t + eps ||q_n gamma||
    int epsilon;    // +-1
    Int u;          // u_n(k, gamma) in [0, q_n)
    Rat location;   // zeta(gamma, k, n) mod 1
    Rat zeta_raw;   // unfolded zeta(gamma, k, n) (increasing in k)
};

// decompose q_n gamma = t + eps * ||q_n gamma||; eps = +1 on exact halves,
// matching the convention 1/2 = q_n'/q_n + (1/2)/q_n for odd q_n
inline void gamma_decompose(const CFExpansion& cf, const Rat& gamma, int n, Int& t, int& eps) {
    Rat qg = Rat(cf.den(n)) * gamma;
    Rat f = frac(qg);
    if (f == Rat(1, 2)) {
        t = floor_int(qg);
        eps = 1;
        return;
    }
    if (f < Rat(1, 2)) {
        t = floor_int(qg);
        eps = 1;
        return;
    }
    t = floor_int(qg) + 1;
    eps = -1;
}

// labels of the q_n discontinuities of type gamma of an ergodic sum at time
// q_n: zeta(gamma, k, n) = k/q_n + (A_n(gamma) + B_n(gamma, k))/q_n with
// A = eps ||q_n gamma||, B = (-1)^{n-1} u_n(k, gamma) ||q_n alpha||
inline std::vector<DiscontinuityLabel> label_discontinuities_one(const CFExpansion& cf,
                                                                 const Rat& gamma, int n) {
    const Int& qn = cf.den(n);
    if (mpz_even_p(qn.get_mpz_t()) && frac(gamma) == Rat(1, 2))
        throw DiagError("gamma = 1/2 with even q_n: representation of 1/2 is not unique");
    Int t;
    int eps;
    gamma_decompose(cf, gamma, n, t, eps);
    Rat qg_dist = norm_dist(Rat(qn) * gamma);
    Rat qa_dist = cf.qn_alpha_dist(n);
    int sgn = (n % 2 == 1) ? 1 : -1;  // (-1)^{n-1}
    std::vector<DiscontinuityLabel> out;
    out.reserve(mpz_fits_slong_p(qn.get_mpz_t()) ? qn.get_si() : 0);
    for (Int k = 0; k < qn; ++k) {
        DiscontinuityLabel lab;
        lab.gamma = gamma;
        lab.k = k;
        lab.t_gamma_n = t;
        lab.epsilon = eps;
        Int u = ((t - k) * cf.den(n - 1)) % qn;
        if (sgn < 0) u = -u;
        u %= qn;
        if (u < 0) u += qn;
        lab.u = u;
        Rat A = Rat(eps) * qg_dist;
        Rat B = Rat(sgn) * Rat(u) * qa_dist;
        lab.zeta_raw = (Rat(k) + A + B) / Rat(qn);
        lab.location = frac(lab.zeta_raw);
        out.push_back(std::move(lab));
    }
    return out;
}

inline std::vector<DiscontinuityLabel> label_discontinuities(const CFExpansion& cf, int n,
                                                             const std::vector<Rat>& gammas) {
    std::vector<DiscontinuityLabel> out;
    for (const auto& g : gammas) {
        auto one = label_discontinuities_one(cf, g, n);
        out.insert(out.end(), one.begin(), one.end());
    }
    return out;
}

struct SeparationResult {
    Rat min_gap;          // min over |j| < b, t in {beta, 1/2} of ||t - j alpha||
    Rat min_gap_times_b;
    std::optional<bool> bound_ok;  // vs delta^2/8 when hypotheses supplied
};

// well-separation of the discontinuity types of Phi_beta along an orbit
// window of length b; with (delta, n) supplied, checks the hypotheses
// ||q_n beta|| >= delta and b in [delta q_n / 4, delta q_n / 2] and compares
// the scaled gap against delta^2 / 8
inline SeparationResult separation_test(const CFExpansion& cf, const Rat& beta, const Int& b,
                                        std::optional<Rat> delta = std::nullopt,
                                        std::optional<int> n = std::nullopt) {
    if (b < 1) throw DiagError("b must be >= 1");
    SeparationResult r;
    const Rat& alpha = cf.approximant();
    Rat best(1);
    for (Int j = -(b - 1); j < b; ++j) {
        Rat ja = Rat(j) * alpha;
        for (const Rat& t : {beta, Rat(1, 2)}) {
            Rat d = norm_dist(t - ja);
            if (d < best) best = d;
        }
    }
    r.min_gap = best;
    r.min_gap_times_b = best * Rat(b);
    if (delta && n) {
        Rat qb = norm_dist(Rat(cf.den(*n)) * beta);
        bool hyp = qb >= *delta && Rat(b) >= *delta * Rat(cf.den(*n)) / 4 &&
                   Rat(b) <= *delta * Rat(cf.den(*n)) / 2;
        if (!hyp) r.bound_ok = std::nullopt;
        else r.bound_ok = r.min_gap_times_b >= (*delta) * (*delta) / 8;
    }
    return r;
}

struct SupportExperiment {
    long L = 0;
    Int time;              // L * q_n
    Rat measure_ge_1;      // mu(|Phi_beta^(L q_n)| >= 1)
    Rat lower_bound;       // delta / 2
    bool hypotheses_hold = false;  // c_n(beta) >= 2 and q_n odd
    Rat c_n;
    DistributionTable distribution;
};

// the case-B experiment: with L = floor(delta a_{n+1}), the support of
// Phi_beta^(L q_n) stays of measure >= delta/2 even though L q_n is a
// rigidity-type time
inline SupportExperiment support_experiment(const CFExpansion& cf, const Rat& beta, int n,
                                            const Rat& delta,
                                            long breakpoint_budget = 10'000'000) {
    if (!(delta > 0 && delta < Rat(1, 2))) throw DiagError("delta must lie in (0, 1/2)");
    if (mpz_even_p(cf.den(n).get_mpz_t())) throw DiagError("experiment requires odd q_n");
    Rat La = delta * Rat(cf.quotient(n + 1));
    Int Lz = floor_int(La);
    if (Lz < 1) throw DiagError("hypotheses require large a_{n+1}: floor(delta a_{n+1}) = 0");
    SupportExperiment r;
    r.L = Lz.get_si();
    r.time = Lz * cf.den(n);
    r.c_n = c_ratio(cf, beta, n);
    r.hypotheses_hold = r.c_n >= 2;
    StepFunction phi = StepFunction::phi_beta(beta);
    StepFunction s = phi.ergodic_sum(cf.approximant(), r.time.get_si(), breakpoint_budget);
    r.distribution = DistributionTable::of(s);
    r.measure_ge_1 = r.distribution.mass_abs_ge(Rat(1));
    r.lower_bound = delta / 2;
    if (r.hypotheses_hold && r.measure_ge_1 < r.lower_bound)
        throw DiagError("support lower bound delta/2 failed with hypotheses satisfied");
    return r;
}

struct EssentialValueScan {
    std::vector<Int> times;
    std::vector<DistributionTable> tables;
    std::vector<Rat> candidates;  // values with mass >= delta in every table
    Rat delta;
};

// pushforward distributions of f^(r) along candidate rigidity times; values
// whose mass stays >= delta across the whole sequence are essential-value
// candidates in the visit-criterion sense
inline EssentialValueScan essential_value_scan(const StepFunction& f, const CFExpansion& cf,
                                               const std::vector<Int>& times,
                                               const Rat& delta = Rat(1, 100)) {
    EssentialValueScan r;
    r.times = times;
    r.delta = delta;
    for (const auto& t : times) {
        StepFunction s = f.ergodic_sum(cf.approximant(), t.get_si());
        r.tables.push_back(DistributionTable::of(s));
    }
    if (!r.tables.empty()) {
        for (const auto& [v, m] : r.tables.front().entries) {
            if (m < delta) continue;
            bool everywhere = true;
            for (const auto& tab : r.tables)
                if (tab.mass(v) < delta) everywhere = false;
            if (everywhere) r.candidates.push_back(v);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// classifier

enum class Verdict {
    TrivialCoboundary,
    EvidenceNotCoboundary,
    EvidenceErgodic,
    Inconclusive,
};

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::TrivialCoboundary: return "TrivialCoboundary";
        case Verdict::EvidenceNotCoboundary: return "EvidenceNotCoboundary";
        case Verdict::EvidenceErgodic: return "EvidenceErgodic";
        default: return "Inconclusive";
    }
}

struct EvidenceRecord {
    int n = -1;
    Int q_n;
    bool q_odd = false;
    Rat qn_beta_dist;
    Rat c_n;
    std::string note;
};

struct ClassifyBudget {
    int depth = 0;                   // 0: use validated depth
    long breakpoint_budget = 10'000'000;
    long trivial_k_max = 16;         // exact screen beta = k alpha + m
    long rational_s_max = 64;        // exact screen s beta = k alpha + m
    Int bounded_quotient_sup = 32;   // "bounded type" cutoff on sup a_{n+1}
    Int even_q_sup = 32;             // cutoff for the even-denominator branch
    Rat delta = Rat(1, 100);         // subsequence threshold for ||q_n beta||
    Rat support_delta = Rat(1, 4);   // case-B experiment delta
    Int support_min_quotient = 16;   // smallest a_{n+1} worth the experiment
};

struct DiagnosisReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string criterion;   // id of the branch that produced the verdict
    std::vector<EvidenceRecord> evidence;
    std::vector<std::string> trail;  // failed-criterion trail for Inconclusive
    long budget_used = 0;
};

namespace detail {

inline EvidenceRecord evidence_at(const CFExpansion& cf, const Rat& beta, int n,
                                  const std::string& note) {
    EvidenceRecord e;
    e.n = n;
    e.q_n = cf.den(n);
    e.q_odd = mpz_odd_p(cf.den(n).get_mpz_t());
    e.qn_beta_dist = norm_dist(Rat(cf.den(n)) * beta);
    e.c_n = c_ratio(cf, beta, n);
    e.note = note;
    return e;
}

// exact screen: s beta = k alpha + m for integers |k| <= k_max, 1 <= s <= s_max
inline std::optional<std::pair<long, long>> rational_combination(const CFExpansion& cf,
                                                                 const Rat& beta, long s_max,
                                                                 long k_max) {
    for (long s = 1; s <= s_max; ++s) {
        Rat sb = Rat(s) * beta;
        for (long k = -k_max; k <= k_max; ++k) {
            if (frac(sb - Rat(k) * cf.approximant()) == 0) return std::make_pair(s, k);
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Decision tree over finite evidence:
//   (i)   triviality screen (exact beta = k alpha + m, then Kraaikamp-Liardet)
//   (ii)  all-odd denominator tail:
//           phi-half branch, ||q_n beta|| >= delta subsequence branch,
//           ||q_n beta|| -> 0 support-experiment branch
//   (iii) bounded partial quotients (even denominators recurring): ergodic
//   (iv)  even denominators with bounded quotients: R beta reduction and the
//         rational branch
// Anything else: Inconclusive, carrying the trail of failed criteria.
inline DiagnosisReport classify_coboundary(const CFExpansion& cf, const Rat& beta_in,
                                           ClassifyBudget budget = {}) {
    DiagnosisReport rep;
    Rat beta = frac(beta_in);
    int depth = budget.depth > 0 ? std::min(budget.depth, cf.validated_depth())
                                 : cf.validated_depth();

    // (i) exact triviality screen
    for (long k = -budget.trivial_k_max; k <= budget.trivial_k_max; ++k) {
        ++rep.budget_used;
        if (frac(beta - Rat(k) * cf.approximant()) == 0) {
            rep.verdict = Verdict::TrivialCoboundary;
            rep.criterion = "exact: beta = " + std::to_string(k) + " alpha mod 1";
            rep.evidence.push_back(detail::evidence_at(cf, beta, 1, rep.criterion));
            return rep;
        }
    }
    // (i') Ostrowski screen: a zero residual means beta = (sum b_n q_n) alpha
    // mod 1 exactly, i.e. beta is trivial with a possibly large multiplier
    {
        auto ost = ostrowski_expand(cf, beta, depth);
        rep.budget_used += depth + 1;
        if (ost.residual == 0) {
            Int k(0);
            for (size_t m = 0; m < ost.coefficients.size(); ++m)
                k += ost.coefficients[m] * cf.den(static_cast<int>(m));
            rep.verdict = Verdict::TrivialCoboundary;
            rep.criterion = "ostrowski: beta = " + k.get_str() + " alpha mod 1 (zero residual)";
            rep.evidence.push_back(detail::evidence_at(cf, beta, 1, rep.criterion));
            return rep;
        }
    }
    // (i'') Kraaikamp-Liardet evidence over the tail window
    {
        int n0 = std::max(1, depth / 3);
        auto kl = kl_test(cf, beta, n0, depth);
        rep.budget_used += depth - n0 + 1;
        if (kl.holds_on_range) {
            rep.verdict = Verdict::TrivialCoboundary;
            rep.criterion = "kl_test: ||q_n beta|| <= (1/4) q_n ||q_n alpha|| on [" +
                            std::to_string(n0) + ", " + std::to_string(depth) + "]";
            for (int n = n0; n <= depth; ++n)
                rep.evidence.push_back(detail::evidence_at(cf, beta, n, "KL holds"));
            return rep;
        }
        rep.trail.push_back("KL screen: violated at n = " + std::to_string(*kl.first_violation));
    }

    auto profile = parity_profile(cf, depth);
    // odd tail must cover at least the last half of the validated range
    bool odd_tail = profile.odd_tail_from && *profile.odd_tail_from <= depth / 2 &&
                    depth - *profile.odd_tail_from >= 3;
    Int quotient_sup(0);
    for (int n = std::max(1, depth / 3); n <= depth; ++n)
        if (cf.quotient(n + 1) > quotient_sup) quotient_sup = cf.quotient(n + 1);

    if (odd_tail) {
        int from = std::max(1, *profile.odd_tail_from);
        // phi-half: Phi_{1/2} = -F, and F^(q_n) = +-1 on the odd tail
        if (frac(beta - Rat(1, 2)) == 0) {
            rep.verdict = Verdict::EvidenceNotCoboundary;
            rep.criterion = "phi_half: Phi_{1/2} = -F with |F^(q_n)| = 1 on the odd tail";
            for (int n = from; n <= depth; ++n) {
                try {
                    auto lh = verify_lemma_half(cf, n);
                    rep.budget_used += cf.den(n).get_si();
                    rep.evidence.push_back(detail::evidence_at(
                        cf, beta, n, "F^(q_n) value set {-1,+1}, case " +
                                         std::to_string(lh.case_id)));
                } catch (const DiagError&) {
                    continue;  // lemma precondition can fail at early indices
                }
                if (rep.evidence.size() >= 4) break;
            }
            if (!rep.evidence.empty()) return rep;
            rep.trail.push_back("phi_half: lemma precondition failed on the whole tail");
        }
        // ||q_n beta|| >= delta along the tail of the odd range: the limsup
        // statement is judged on the last third of the validated window
        int w0 = std::max(from, 2 * depth / 3);
        std::vector<int> hits;
        for (int n = w0; n <= depth; ++n) {
            ++rep.budget_used;
            if (norm_dist(Rat(cf.den(n)) * beta) >= budget.delta) hits.push_back(n);
        }
        int window = depth - w0 + 1;
        if (static_cast<int>(hits.size()) >= std::max(1, (window + 1) / 2)) {
            rep.verdict = Verdict::EvidenceNotCoboundary;
            rep.criterion = "regularprop: odd q_n subsequence with ||q_n beta|| >= " +
                            to_fraction(budget.delta) + " on the tail window";
            for (int n : hits)
                rep.evidence.push_back(detail::evidence_at(cf, beta, n, "||q_n beta|| >= delta"));
            return rep;
        }
        rep.trail.push_back("regularprop: only " + std::to_string(hits.size()) + " of " +
                            std::to_string(window) + " tail indices with ||q_n beta|| >= delta");
        // ||q_n beta|| -> 0 operationalized: < 1/n over the last third
        bool to_zero = true;
        for (int n = std::max(from, 2 * depth / 3); n <= depth; ++n) {
            ++rep.budget_used;
            if (norm_dist(Rat(cf.den(n)) * beta) >= Rat(1, n)) to_zero = false;
        }
        if (to_zero) {
            // case-B experiment at the largest index with a big quotient
            int pick = -1;
            for (int n = depth; n >= from; --n) {
                if (cf.quotient(n + 1) >= budget.support_min_quotient &&
                    mpz_odd_p(cf.den(n).get_mpz_t())) {
                    pick = n;
                    break;
                }
            }
            if (pick < 0) {
                rep.trail.push_back("case B: no validated index with a_{n+1} >= " +
                                    budget.support_min_quotient.get_str());
            } else {
                Rat beta_eff = beta;
                Rat c = c_ratio(cf, beta, pick);
                std::string amplified;
                if (c > Rat(1, 4) && c < 2) {
                    // the 8 beta amplification from the case-B reduction
                    beta_eff = frac(8 * beta);
                    c = c_ratio(cf, beta_eff, pick);
                    amplified = " (amplified beta' = 8 beta)";
                }
                try {
                    auto ex = support_experiment(cf, beta_eff, pick, budget.support_delta,
                                                 budget.breakpoint_budget);
                    rep.budget_used += ex.time.get_si();
                    if (ex.hypotheses_hold && ex.measure_ge_1 >= ex.lower_bound) {
                        rep.verdict = Verdict::EvidenceNotCoboundary;
                        rep.criterion = "thmfunctEqu1 case B: mu(|Phi^(Lq_n)| >= 1) = " +
                                        to_fraction(ex.measure_ge_1) + " >= delta/2" + amplified;
                        rep.evidence.push_back(detail::evidence_at(
                            cf, beta_eff, pick,
                            "support measure " + to_fraction(ex.measure_ge_1) + ", L = " +
                                std::to_string(ex.L)));
                        return rep;
                    }
                    rep.trail.push_back("case B: hypotheses not met (c_n = " + to_fraction(c) +
                                        ")");
                } catch (const std::exception& e) {
                    rep.trail.push_back(std::string("case B: ") + e.what());
                }
            }
        } else {
            rep.trail.push_back("case B: ||q_n beta|| does not trend to 0 over the last third");
        }
    } else {
        rep.trail.push_back("odd-tail branch: even denominators recur in the validated window");
        // (iii) bounded partial quotients: ergodic for nontrivial beta
        if (quotient_sup <= budget.bounded_quotient_sup) {
            rep.verdict = Verdict::EvidenceErgodic;
            rep.criterion = "zergodic: sup a_{n+1} = " + quotient_sup.get_str() +
                            " <= " + budget.bounded_quotient_sup.get_str() +
                            " over the tail window and beta passed the nontriviality screens";
            for (int n = std::max(1, depth - 3); n <= depth; ++n)
                rep.evidence.push_back(
                    detail::evidence_at(cf, beta, n, "a_{n+1} = " + cf.quotient(n + 1).get_str()));
            return rep;
        }
        rep.trail.push_back("zergodic: quotient sup " + quotient_sup.get_str() + " exceeds cutoff");
    }

    // (iv) even denominators with bounded even-position quotients
    if (!odd_tail && profile.even_q_quotient_sup &&
        *profile.even_q_quotient_sup <= budget.even_q_sup) {
        // the odd-subsequence criterion comes first, exactly as the even-case
        // theorem's proof opens: ||q_n beta|| >= delta along odd q_n
        {
            int w0 = std::max(1, 2 * depth / 3);
            std::vector<int> hits;
            int odd_count = 0;
            for (int n = w0; n <= depth; ++n) {
                if (!mpz_odd_p(cf.den(n).get_mpz_t())) continue;
                ++odd_count;
                ++rep.budget_used;
                if (norm_dist(Rat(cf.den(n)) * beta) >= budget.delta) hits.push_back(n);
            }
            if (odd_count > 0 && static_cast<int>(hits.size()) >= std::max(1, (odd_count + 1) / 2)) {
                rep.verdict = Verdict::EvidenceNotCoboundary;
                rep.criterion = "regularprop: odd q_n among recurring-parity denominators with "
                                "||q_n beta|| >= " + to_fraction(budget.delta);
                for (int n : hits)
                    rep.evidence.push_back(
                        detail::evidence_at(cf, beta, n, "||q_n beta|| >= delta"));
                return rep;
            }
            rep.trail.push_back("regularprop (even branch): only " +
                                std::to_string(hits.size()) + " of " +
                                std::to_string(odd_count) + " odd tail indices hit delta");
        }
        // rational branch: beta in (Q alpha + Q) \ (Z alpha + Z) with some
        // quotient value recurring in the window
        auto rc = detail::rational_combination(cf, beta, budget.rational_s_max,
                                               budget.trivial_k_max);
        rep.budget_used += budget.rational_s_max * (2 * budget.trivial_k_max + 1);
        bool quotient_recurs = false;
        {
            std::map<Int, int> counts;
            for (int n = std::max(1, depth / 3); n <= depth; ++n)
                if (++counts[cf.quotient(n + 1)] >= 2) quotient_recurs = true;
        }
        if (rc && quotient_recurs) {
            rep.verdict = Verdict::EvidenceNotCoboundary;
            rep.criterion = "rational1: " + std::to_string(rc->first) + " beta = " +
                            std::to_string(rc->second) + " alpha mod 1 with recurring quotients";
            rep.evidence.push_back(detail::evidence_at(cf, beta, depth, rep.criterion));
            return rep;
        }
        if (rc) rep.trail.push_back("rational1: combination found but no quotient value recurs");
        else rep.trail.push_back("rational1: no small rational combination found");
        // R beta reduction: R = product of the distinct even-position quotient values
        std::set<Int> values;
        for (int n = 1; n <= depth; ++n)
            if (mpz_even_p(cf.den(n).get_mpz_t())) values.insert(cf.quotient(n + 1));
        Int R(1);
        for (const auto& v : values) R *= v;
        Rat rbeta = frac(Rat(R) * beta);
        bool to_zero = true;
        for (int n = std::max(1, 2 * depth / 3); n <= depth; ++n)
            if (norm_dist(Rat(cf.den(n)) * rbeta) >= Rat(1, n)) to_zero = false;
        if (to_zero && rbeta != 0) {
            int pick = -1;
            for (int n = depth; n >= 1; --n)
                if (cf.quotient(n + 1) >= budget.support_min_quotient &&
                    mpz_odd_p(cf.den(n).get_mpz_t())) {
                    pick = n;
                    break;
                }
            if (pick >= 0) {
                Rat c = c_ratio(cf, rbeta, pick);
                Rat beta_eff = rbeta;
                if (c > Rat(1, 4) && c < 2) {
                    beta_eff = frac(8 * rbeta);
                    c = c_ratio(cf, beta_eff, pick);
                }
                try {
                    auto ex = support_experiment(cf, beta_eff, pick, budget.support_delta,
                                                 budget.breakpoint_budget);
                    rep.budget_used += ex.time.get_si();
                    if (ex.hypotheses_hold && ex.measure_ge_1 >= ex.lower_bound) {
                        rep.verdict = Verdict::EvidenceNotCoboundary;
                        rep.criterion = "evenThm1: case B applies to R beta with R = " + R.get_str();
                        rep.evidence.push_back(detail::evidence_at(
                            cf, beta_eff, pick, "support measure " + to_fraction(ex.measure_ge_1)));
                        return rep;
                    }
                    rep.trail.push_back("evenThm1: case-B hypotheses failed for R beta");
                } catch (const std::exception& e) {
                    rep.trail.push_back(std::string("evenThm1: ") + e.what());
                }
            } else {
                rep.trail.push_back("evenThm1: no odd index with a large quotient");
            }
        } else {
            rep.trail.push_back("evenThm1: ||q_n R beta|| does not trend to 0");
        }
    }

    rep.verdict = Verdict::Inconclusive;
    rep.criterion = "no criterion reached a verdict";
    rep.evidence.push_back(detail::evidence_at(cf, beta, depth, "final window state"));
    return rep;
}

}  // namespace flowlab
