#pragma once

// Continued-fraction engine: partial quotients, convergents, the distances
// ||q_n alpha||, the ratio c_n(beta), the Kraaikamp-Liardet test and
// denominator-combination search for rigidity times.
//
// Irrationals are represented by high-precision rational approximants. Every
// derived quantity carries a validated_depth: quotients up to that index have
// been cross-checked against a second approximant (doubled precision for
// named constants, a +-2^-bits window for explicit values), and operations
// refuse indices beyond it.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowlab/alpha.hpp"
#include "flowlab/rational.hpp"

namespace flowlab {

struct CFError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RationalAlphaError : CFError {
    RationalAlphaError() : CFError("rational alpha") {}
};

struct DepthError : CFError {
    int max_validatable;
    DepthError(int max_depth, int requested)
        : CFError("requested depth " + std::to_string(requested) +
                  " not validatable; max validatable depth is " + std::to_string(max_depth)),
          max_validatable(max_depth) {}
};

namespace detail {

// plain continued-fraction digits of a rational x in [0,1): x = [0; a1, a2, ...]
inline std::vector<Int> cf_digits(Rat x, size_t max_terms) {
    std::vector<Int> a;
    while (x != 0 && a.size() < max_terms) {
        Rat inv = Rat(1) / x;
        Int fl = floor_int(inv);
        a.push_back(fl);
        x = inv - Rat(fl);
    }
    return a;
}

// exact value of the finite continued fraction [0; a_1, ..., a_m]
inline Rat cf_value(const std::vector<Int>& a) {
    Rat v(0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) v = Rat(1) / (Rat(*it) + v);
    return v;
}

inline size_t common_prefix(const std::vector<Int>& u, const std::vector<Int>& v) {
    size_t n = std::min(u.size(), v.size());
    size_t i = 0;
    while (i < n && u[i] == v[i]) ++i;
    return i;
}

}  // namespace detail

class CFExpansion {
public:
    // quotients a_1..a_N with N >= depth+1 convergents worth of data
    static CFExpansion from_quotients(std::vector<Int> quotients, int depth) {
        if (depth < 1) throw CFError("depth must be >= 1");
        // extend by repeating the final quotient, then take the exact value of
        // the finite fraction two levels deeper: the listed quotients are then
        // exactly the leading quotients of the (rational) approximant, and the
        // ||q_n alpha|| identities hold through the requested depth.
        std::vector<Int> ext = quotients;
        while (static_cast<int>(ext.size()) < depth + 2) ext.push_back(ext.back());
        if (static_cast<int>(ext.size()) > depth + 2) ext.resize(depth + 2);
        CFExpansion cf;
        cf.approximant_ = detail::cf_value(ext);
        cf.precision_bits_ = 0;
        cf.quotients_ = std::move(ext);
        cf.validated_depth_ = depth;
        cf.build_convergents();
        return cf;
    }

    static CFExpansion from_named(const std::string& name, unsigned bits, int depth) {
        if (depth < 1) throw CFError("depth must be >= 1");
        Rat coarse = named_constant(name, bits);
        Rat fine = named_constant(name, 2 * bits);
        auto qa = detail::cf_digits(coarse, static_cast<size_t>(depth) + 8);
        auto qb = detail::cf_digits(fine, static_cast<size_t>(depth) + 8);
        int agree = static_cast<int>(detail::common_prefix(qa, qb));
        int validated = std::min(agree, depth);
        if (validated < depth) throw DepthError(validated, depth);
        CFExpansion cf;
        cf.approximant_ = fine;
        cf.precision_bits_ = bits;
        cf.quotients_.assign(qb.begin(), qb.begin() + std::min<size_t>(qb.size(), depth + 8));
        cf.validated_depth_ = validated;
        cf.build_convergents();
        return cf;
    }

    // explicit rational approximant with an uncertainty window +-2^-bits
    static CFExpansion from_value(const Rat& value, unsigned bits, int depth) {
        if (depth < 1) throw CFError("depth must be >= 1");
        if (value <= 0 || value >= 1) throw CFError("alpha must lie in (0,1)");
        auto digits = detail::cf_digits(value, static_cast<size_t>(depth) + 8);
        if (static_cast<int>(digits.size()) < depth + 2) throw RationalAlphaError();
        Rat eps;
        {
            Int p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, bits);
            eps = Rat(1) / Rat(p);
        }
        Rat lo = value - eps, hi = value + eps;
        if (lo <= 0) lo = value / 2;
        if (hi >= 1) hi = (value + 1) / 2;
        auto qlo = detail::cf_digits(lo, static_cast<size_t>(depth) + 8);
        auto qhi = detail::cf_digits(hi, static_cast<size_t>(depth) + 8);
        int agree = static_cast<int>(
            std::min(detail::common_prefix(qlo, digits), detail::common_prefix(qhi, digits)));
        int validated = std::min(agree, depth);
        if (validated < depth) throw DepthError(validated, depth);
        CFExpansion cf;
        cf.approximant_ = value;
        cf.precision_bits_ = bits;
        cf.quotients_ = std::move(digits);
        cf.validated_depth_ = validated;
        cf.build_convergents();
        return cf;
    }

    const Rat& approximant() const { return approximant_; }
    unsigned precision_bits() const { return precision_bits_; }
    int validated_depth() const { return validated_depth_; }

    // a_n, 1-based; valid for n = 1 .. validated_depth + 1
    const Int& quotient(int n) const {
        require(n - 1);
        return quotients_.at(static_cast<size_t>(n) - 1);
    }
    // q_n / p_n, valid for n = 0 .. validated_depth
    const Int& den(int n) const {
        require(n);
        return q_.at(static_cast<size_t>(n));
    }
    const Int& num(int n) const {
        require(n);
        return p_.at(static_cast<size_t>(n));
    }

    // theta_n = q_n alpha - p_n (signed, theta_n = (-1)^n ||q_n alpha||)
    Rat theta(int n) const {
        require(n);
        return Rat(q_[static_cast<size_t>(n)]) * approximant_ - Rat(p_[static_cast<size_t>(n)]);
    }
    // ||q_n alpha||, exact
    Rat qn_alpha_dist(int n) const { return abs_rat(theta(n)); }

    size_t quotient_count() const { return quotients_.size(); }

private:
    void build_convergents() {
        p_.assign(1, Int(0));
        q_.assign(1, Int(1));
        Int pm1(1), qm1(0);  // p_{-1}, q_{-1}
        for (size_t i = 0; i < quotients_.size(); ++i) {
            Int pn = quotients_[i] * p_.back() + pm1;
            Int qn = quotients_[i] * q_.back() + qm1;
            pm1 = p_.back();
            qm1 = q_.back();
            p_.push_back(pn);
            q_.push_back(qn);
        }
    }
    void require(int n) const {
        if (n < 0 || n > validated_depth_ + 1)
            throw CFError("index " + std::to_string(n) + " beyond validated depth " +
                          std::to_string(validated_depth_));
    }

    Rat approximant_;
    unsigned precision_bits_ = 0;
    std::vector<Int> quotients_;  // a_1, a_2, ...
    std::vector<Int> p_, q_;      // convergents, index 0..quotients_.size()
    int validated_depth_ = 0;
};

inline CFExpansion cf_expand(const ValueSpec& spec, unsigned bits, int depth) {
    if (auto* n = std::get_if<ValueSpec::Named>(&spec.v))
        return CFExpansion::from_named(n->name, bits, depth);
    if (auto* e = std::get_if<ValueSpec::Exact>(&spec.v))
        return CFExpansion::from_value(e->value, bits, depth);
    return CFExpansion::from_quotients(std::get<ValueSpec::Quotients>(spec.v).a, depth);
}

// c_n(beta) = ||q_n beta|| / (q_n ||q_n alpha||)
inline Rat c_ratio(const CFExpansion& cf, const Rat& beta, int n) {
    Rat qb = norm_dist(Rat(cf.den(n)) * beta);
    return qb / (Rat(cf.den(n)) * cf.qn_alpha_dist(n));
}

// c_n over an interval of beta values (used when beta is itself approximated)
inline std::pair<Rat, Rat> c_ratio_interval(const CFExpansion& cf, const Rat& beta_lo,
                                            const Rat& beta_hi, int n) {
    auto [dlo, dhi] = norm_dist_range(Rat(cf.den(n)) * beta_lo, Rat(cf.den(n)) * beta_hi);
    Rat scale = Rat(cf.den(n)) * cf.qn_alpha_dist(n);
    return {dlo / scale, dhi / scale};
}

struct KLResult {
    bool holds_on_range = true;
    std::optional<int> first_violation;
};

// Kraaikamp-Liardet test: ||q_n beta|| <= (1/4) q_n ||q_n alpha|| on [n0, n1].
// Holding on a long range is evidence that beta lies in Z alpha + Z.
inline KLResult kl_test(const CFExpansion& cf, const Rat& beta, int n0, int n1) {
    KLResult r;
    for (int n = n0; n <= n1; ++n) {
        Rat lhs = norm_dist(Rat(cf.den(n)) * beta);
        Rat rhs = Rat(1, 4) * Rat(cf.den(n)) * cf.qn_alpha_dist(n);
        if (lhs > rhs) {
            r.holds_on_range = false;
            r.first_violation = n;
            return r;
        }
    }
    return r;
}

struct ParityProfile {
    struct Entry {
        int n;
        bool q_odd;
        Int next_quotient;  // a_{n+1}
    };
    std::vector<Entry> per_index;
    std::optional<int> odd_tail_from;        // smallest m with q_n odd on [m, upto]
    std::optional<Int> even_q_quotient_sup;  // max a_{n+1} over even q_n
};

inline ParityProfile parity_profile(const CFExpansion& cf, int upto) {
    ParityProfile prof;
    std::optional<Int> sup;
    int tail = upto + 1;
    for (int n = upto; n >= 0; --n) {
        bool odd = mpz_odd_p(cf.den(n).get_mpz_t());
        if (odd && tail == n + 1) tail = n;
    }
    for (int n = 0; n <= upto; ++n) {
        bool odd = mpz_odd_p(cf.den(n).get_mpz_t());
        Int a = cf.quotient(n + 1);
        prof.per_index.push_back({n, odd, a});
        if (!odd) {
            if (!sup || a > *sup) sup = a;
        }
    }
    if (tail <= upto) prof.odd_tail_from = tail;
    prof.even_q_quotient_sup = sup;
    return prof;
}

struct RigidityTimeError : CFError {
    Int best_candidate;
    Rat best_dist;
    RigidityTimeError(Int b, Rat d)
        : CFError("no rigidity time within budget; best b = " + b.get_str() +
                  " with ||b alpha|| = " + to_fraction(d)),
          best_candidate(std::move(b)),
          best_dist(std::move(d)) {}
};

// smallest b in [lambda L, 2 lambda L] with ||b alpha|| <= eps. Denominator
// combinations sum_k e_k q_k with small coefficients are tried before a
// bounded brute-force sweep.
inline Int find_rigidity_time(const CFExpansion& cf, const Rat& lambda, const Int& L,
                              const Rat& eps, long budget = 2'000'000) {
    if (eps <= 0) throw CFError("eps must be positive: exact return is impossible");
    if (lambda <= 0 || L < 1) throw CFError("need lambda > 0 and L >= 1");
    Rat lo_r = lambda * Rat(L), hi_r = 2 * lambda * Rat(L);
    Int lo = floor_int(lo_r);
    if (Rat(lo) < lo_r) lo += 1;
    Int hi = floor_int(hi_r);
    std::optional<Int> best;
    Rat best_dist(1);
    auto consider = [&](const Int& b) {
        if (b < lo || b > hi) return false;
        Rat d = norm_dist(Rat(b) * cf.approximant());
        if (!best || d < best_dist) {
            best = b;
            best_dist = d;
        }
        return d <= eps;
    };
    std::vector<Int> hits;
    // multiples of single denominators
    for (int n = cf.validated_depth(); n >= 0; --n) {
        const Int& qn = cf.den(n);
        if (qn > hi) continue;
        Int m0 = lo / qn;
        for (Int m = m0; m <= m0 + 2; ++m) {
            if (m < 1) continue;
            Int b = m * qn;
            if (consider(b)) hits.push_back(b);
        }
    }
    // two-denominator combinations m q_n + e q_k, small coefficients
    for (int n = cf.validated_depth(); n >= 1; --n) {
        const Int& qn = cf.den(n);
        if (qn > hi) continue;
        for (int k = n - 1; k >= 0; --k) {
            for (long m = 1; m <= 3; ++m) {
                for (long e = 1; e <= 3; ++e) {
                    Int b = Int(m) * qn + Int(e) * cf.den(k);
                    if (consider(b)) hits.push_back(b);
                }
            }
        }
    }
    if (hits.empty()) {
        // brute force within budget
        Int b = lo;
        for (long i = 0; i < budget && b <= hi; ++i, b += 1)
            if (consider(b)) hits.push_back(b);
    }
    if (hits.empty()) throw RigidityTimeError(best ? *best : Int(0), best ? best_dist : Rat(1));
    return *std::min_element(hits.begin(), hits.end());
}

}  // namespace flowlab
