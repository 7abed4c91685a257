// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// throughout. Every tolerance is pinned in this file; the suite exits
// nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "flowlab/diagnostics.hpp"
#include "flowlab/emit.hpp"
#include "flowlab/flow.hpp"
#include "flowlab/fourier.hpp"
#include "flowlab/ostrowski.hpp"
#include "flowlab/report.hpp"

using namespace flowlab;

namespace {

int g_failures = 0;

void run_criterion(int id, const std::string& label, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
        body();
    } catch (const std::exception& e) {
        failure = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (failure.empty()) {
        std::cout << "[PASS] criterion " << id << ": " << label << " (" << ms << " ms)\n";
    } else {
        std::cout << "[FAIL] criterion " << id << ": " << label << " (" << ms
                  << " ms): " << failure << "\n";
        ++g_failures;
    }
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

CFExpansion cf_list(std::vector<long> a, int depth) {
    std::vector<Int> q;
    for (long v : a) q.push_back(Int(v));
    return CFExpansion::from_quotients(q, depth);
}

std::vector<Rat> orbit_points(const CFExpansion& cf, const Rat& gamma, int n) {
    std::vector<Rat> pts;
    for (Int l = 0; l < cf.den(n); ++l) pts.push_back(frac(gamma - Rat(l) * cf.approximant()));
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

int main() {
    run_criterion(1, "square-wave sums at odd denominators take values exactly {-1,+1}", [] {
        CFExpansion cf = cf_list({3, 2, 2, 2, 2, 2}, 6);
        long expect_q[] = {1, 3, 7, 17, 41, 99, 239};
        for (int n = 0; n <= 6; ++n) require(cf.den(n) == expect_q[n], "denominator mismatch");
        for (int n = 1; n <= 6; ++n) {
            auto r = verify_lemma_half(cf, n);
            require(r.case_id == 1, "expected the odd case");
            require(r.value_set == std::set<Rat>{Rat(-1), Rat(1)}, "value set must be {-1,+1}");
        }
    });

    run_criterion(2, "even denominator with a_{n+1} = 100: values in {-2,0,2}, mu(!=0) <= 1/100",
                  [] {
        CFExpansion cf = cf_list({2, 100, 2, 100}, 4);
        for (int n : {1, 3}) {
            require(mpz_even_p(cf.den(n).get_mpz_t()), "expected an even denominator");
            require(cf.quotient(n + 1) == 100, "expected a_{n+1} = 100");
            auto r = verify_lemma_half(cf, n);
            require(r.case_id == 2, "expected the even case");
            for (const auto& v : r.value_set)
                require(v == 0 || v == 2 || v == -2, "values must lie in {-2,0,2}");
            require(r.exceptional_measure <= Rat(1, 100), "mu(!=0) must be <= 1/100");
        }
    });

    run_criterion(3, "figure data: counts 4 / 28 / <= 84 and the exact three-rotate identity", [] {
        CFExpansion cf = CFExpansion::from_named("pi-3", 256, 6);
        require(cf.den(1) == 7, "q_1 must be 7");
        Rat beta = named_constant("2-sqrt2", 256);
        ExperimentConfig config;
        config.exact_csv = true;
        std::string dir = "/tmp/flowlab_acceptance_figs";
        // figure_emit itself asserts Phi^(21) = sum of three rotated Phi^(7)
        auto figs = figure_emit(config, cf, beta, {1, 7, 21}, dir);
        require(figs.discontinuity_counts[0] == 4, "Phi_beta must have 4 discontinuities");
        require(figs.discontinuity_counts[1] == 28, "Phi_beta^(7) must have 28 discontinuities");
        require(figs.discontinuity_counts[2] <= 84, "Phi_beta^(21) must have <= 84");
        StepFunction s7 = StepFunction::phi_beta(beta).ergodic_sum(cf.approximant(), 7);
        for (const auto& v : s7.values())
            require(v == 0 || v == 1 || v == -1, "Phi_beta^(7) values must lie in {-1,0,1}");
        // and the identity re-checked here, independently of figure_emit
        StepFunction phi = StepFunction::phi_beta(beta);
        StepFunction lhs = phi.ergodic_sum(cf.approximant(), 21);
        StepFunction rhs;
        for (long i = 0; i < 3; ++i)
            rhs = rhs + s7.rotate(Rat(7 * i) * cf.approximant());
        require(lhs == rhs, "three-rotate identity failed");
    });

    run_criterion(4, "discontinuity labels equal brute-force orbit sorting on three alphas", [] {
        std::mt19937_64 rng(20240601);
        std::vector<CFExpansion> cfs;
        cfs.push_back(CFExpansion::from_named("pi-3", 512, 8));
        cfs.push_back(CFExpansion::from_named("golden", 256, 18));
        cfs.push_back(cf_list(std::vector<long>(14, 2), 12));
        int pairs = 0;
        for (const auto& cf : cfs) {
            // largest n with q_n <= 1e4
            int nmax = 1;
            while (nmax + 1 <= cf.validated_depth() && cf.den(nmax + 1) <= 10000) ++nmax;
            for (int trial = 0; trial < 7; ++trial) {
                int n = 1 + static_cast<int>(rng() % static_cast<unsigned long>(nmax));
                Rat gamma(Int(static_cast<unsigned long>(rng() % 999983UL)), Int(999983));
                auto labels = label_discontinuities_one(cf, gamma, n);
                std::vector<Rat> locs;
                for (const auto& l : labels) locs.push_back(l.location);
                std::sort(locs.begin(), locs.end());
                require(locs == orbit_points(cf, gamma, n), "label/orbit mismatch");
                ++pairs;
            }
        }
        require(pairs >= 20, "need at least 20 pairs");
    });

    run_criterion(5, "support experiment: mu(|Phi^(Lq_n)| >= 1) >= delta/2 with delta = 1/4", [] {
        CFExpansion cf = cf_list({3, 2, 2, 64, 2, 2, 2, 2}, 7);
        for (int n = 0; n <= 7; ++n)
            require(mpz_odd_p(cf.den(n).get_mpz_t()), "alpha must have all odd denominators");
        require(cf.quotient(4) == 64, "test index must carry a_{n+1} = 64");
        Rat beta = frac(Rat(2 * cf.den(3)) * cf.approximant());
        require(c_ratio(cf, beta, 3) == 2, "c_3(beta) must be exactly 2");
        auto ex = support_experiment(cf, beta, 3, Rat(1, 4));
        require(ex.hypotheses_hold, "hypotheses must hold");
        require(ex.lower_bound == Rat(1, 8), "lower bound must be delta/2 = 1/8");
        require(ex.measure_ge_1 >= ex.lower_bound, "support measure below delta/2");
    });

    run_criterion(6, "Fourier series norm within tail_bound of the exact norm, five denominators",
                  [] {
        CFExpansion cf = CFExpansion::from_named("pi-3", 512, 6);
        StepFunction F = StepFunction::square_wave();
        for (int n = 1; n <= 5; ++n) {
            Int q = cf.den(n);
            auto sn = series_norm(FourierSeriesSpec::square_wave(), cf, q, 100000);
            Rat exact = F.ergodic_sum(cf.approximant(), q.get_si()).norm_l2_sq();
            require(sn.norm_sq_lo <= exact, "series lower bound above the exact norm");
            require(exact <= sn.norm_sq_hi + sn.tail_bound,
                    "exact norm escapes the series enclosure plus tail");
        }
    });

    run_criterion(7, "blocked-rigidity regression: min L2 norm over s in [3,500] equals 1", [] {
        std::vector<long> quots(18, 2);
        quots[0] = 3;
        CFExpansion cf = cf_list(quots, 16);
        auto rep = rigidity_experiment(Rat(3), Rat(1), cf, {}, std::make_pair(3L, 500L));
        require(rep.min_norm_sq_on_range.has_value(), "scan missing");
        // frozen exact regression value: computed once, asserted thereafter
        require(*rep.min_norm_sq_on_range == Rat(1), "frozen minimum changed");
        require(*rep.min_norm_argmin == Int(3), "frozen argmin changed");
        require(*rep.min_norm_sq_on_range > 0, "minimum must be positive");
    });

    run_criterion(8, "transfer telescoping exact for K = 1..6 on trig and square-wave roofs", [] {
        CFExpansion gold = CFExpansion::from_named("golden", 320, 20);
        TrigPoly trig_roof = TrigPoly::cosine(1);
        std::vector<int> trig_sched = {2, 4, 6, 8, 10, 12};
        for (int K = 1; K <= 6; ++K) {
            auto ts = transfer_series(trig_roof, gold, trig_sched, K);
            require(ts.identity_ok && ts.residual_l2_sq == 0, "trig residual must vanish");
        }
        CFExpansion cf = cf_list({2, 4, 2, 4, 2, 4, 2, 4, 2, 4, 2, 4, 2, 4}, 13);
        std::vector<int> sched = {1, 3, 5, 7, 9, 11};
        StepFunction F = StepFunction::square_wave();
        for (int K = 1; K <= 6; ++K) {
            auto ts = transfer_series(F, cf, sched, K);
            require(ts.identity_ok && ts.residual_l2_sq == 0, "step residual must vanish");
            for (int k = 0; k < K; ++k) {
                require(mpz_even_p(cf.den(sched[k]).get_mpz_t()), "schedule must be even-q");
                require(ts.increment_norm_sq_hi[k] <= Rat(4) / Rat(cf.quotient(sched[k] + 1)),
                        "increment norm exceeds 4/a_{n+1}");
            }
        }
    });

    run_criterion(9, "denominator-growth inequalities on twenty indices of three expansions", [] {
        Rat sqrt5_lo = [] {
            Int s;
            Int five("5" + std::string(40, '0'), 10);
            mpz_sqrt(s.get_mpz_t(), five.get_mpz_t());
            Int den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, 20);
            return rat(s, den);
        }();
        Rat C_lo = Rat(5) + 2 * sqrt5_lo;
        std::vector<CFExpansion> cfs;
        cfs.push_back(CFExpansion::from_named("golden", 768, 55));
        cfs.push_back(cf_list(std::vector<long>(57, 2), 55));
        cfs.push_back(CFExpansion::from_named("pi-3", 1024, 52));
        for (const auto& cf : cfs) {
            Int acc(0);
            for (int j = 1; j <= 20; ++j) {
                acc += cf.den(j);
                require(acc <= 2 * cf.den(j + 1), "head-sum inequality failed");
            }
            for (int j = 1; j <= 20; ++j) {
                Rat s(0);
                for (int k = 1; k <= 30 && j + k <= cf.validated_depth() + 1; ++k)
                    s += Rat(1) / Rat(cf.den(j + k));
                require(s <= C_lo / Rat(cf.den(j + 1)), "tail-sum inequality failed");
            }
        }
    });

    run_criterion(10, "classifier: trivial / ergodic-evidence / not-coboundary sanity", [] {
        CFExpansion odd = cf_list(std::vector<long>{3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}, 12);
        for (long k : {1L, 4L, 10L}) {
            Rat beta = frac(Rat(k) * odd.approximant());
            auto rep = classify_coboundary(odd, beta);
            require(rep.verdict == Verdict::TrivialCoboundary,
                    "beta = k alpha must be trivial (k = " + std::to_string(k) + ")");
        }
        CFExpansion gold = CFExpansion::from_named("golden", 256, 18);
        auto ergodic = classify_coboundary(gold, Rat(1, 3));
        require(ergodic.verdict == Verdict::EvidenceErgodic,
                "golden ratio with beta = 1/3 must give ergodic evidence");
        auto ncb = classify_coboundary(odd, Rat(1, 2));
        require(ncb.verdict == Verdict::EvidenceNotCoboundary,
                "all-odd-q alpha with beta = 1/2 must give not-coboundary evidence");
    });

    run_criterion(11, "Ostrowski round trip within ||q_20 alpha|| for 100 random beta", [] {
        CFExpansion cf = cf_list(std::vector<long>(22, 2), 20);
        std::mt19937_64 rng(424242);
        Rat bound = cf.qn_alpha_dist(20);
        for (int trial = 0; trial < 100; ++trial) {
            Rat beta(Int(static_cast<unsigned long>(rng() % 2000003UL)), Int(2000003));
            auto e = ostrowski_expand(cf, beta, 20);
            Rat err = abs_rat(fold_centered(synth_beta(cf, e.coefficients) - beta));
            require(err <= bound, "round trip escaped ||q_20 alpha||");
        }
    });

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed\n";
    return 1;
}
