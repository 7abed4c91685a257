#pragma once

// Exact algebra of piecewise-constant functions on the circle [0,1).
// Arcs are right-open/left-closed: the value at a breakpoint is the value of
// the arc starting there. Canonical form merges adjacent arcs with equal
// values, so equality of canonical forms is equality of functions.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowlab/rational.hpp"

namespace flowlab {

struct StepBudgetError : std::runtime_error {
    long budget;
    explicit StepBudgetError(long b)
        : std::runtime_error("breakpoint budget exceeded: " + std::to_string(b)), budget(b) {}
};

class StepFunction {
public:
    // constant zero
    StepFunction() : breaks_{Rat(0)}, values_{Rat(0)} {}

    static StepFunction constant(const Rat& c) {
        StepFunction f;
        f.values_[0] = c;
        return f;
    }

    // value 1 on [lo, hi) (taken mod 1; wrapping intervals allowed), 0 else
    static StepFunction indicator(const Rat& lo, const Rat& hi) {
        Rat a = frac(lo), b = frac(hi);
        if (a == b) return StepFunction();
        std::vector<std::pair<Rat, Rat>> pts;
        if (a < b) {
            pts = {{Rat(0), Rat(0)}, {a, Rat(1)}, {b, Rat(0)}};
        } else {
            pts = {{Rat(0), Rat(1)}, {b, Rat(0)}, {a, Rat(1)}};
        }
        return from_sorted(std::move(pts));
    }

    // F = 1_{[0,1/2)} - 1_{[1/2,1)}, the centered square wave
    static StepFunction square_wave() {
        return from_sorted({{Rat(0), Rat(1)}, {Rat(1, 2), Rat(-1)}});
    }

    // Phi_beta = (1/2) F(. - beta) - (1/2) F; explicitly, for 0 < beta <= 1/2:
    // -1 on [0, beta), +1 on [1/2, beta + 1/2), 0 elsewhere
    static StepFunction phi_beta(const Rat& beta) {
        Rat b = frac(beta);
        if (b == 0) return StepFunction();
        StepFunction f = square_wave();
        return combine_sub(f.rotate(-b).scale(Rat(1, 2)), f.scale(Rat(1, 2)));
    }

    // zeta_beta = 1_{[0,beta)} - beta (centered indicator)
    static StepFunction zeta(const Rat& beta) {
        Rat b = frac(beta);
        return combine_sub(indicator(Rat(0), b), constant(b));
    }

    // roof f_{a,b}: a on [0,1/2), b on [1/2,1)
    static StepFunction roof_ab(const Rat& a, const Rat& b) {
        if (a <= 0 || b <= 0) throw std::invalid_argument("roof values must be positive");
        return from_sorted({{Rat(0), a}, {Rat(1, 2), b}});
    }

    size_t arc_count() const { return breaks_.size(); }
    const std::vector<Rat>& breakpoints() const { return breaks_; }
    const std::vector<Rat>& values() const { return values_; }

    bool operator==(const StepFunction& o) const {
        return breaks_ == o.breaks_ && values_ == o.values_;
    }

    // value at x (x taken mod 1); right-continuous
    const Rat& at(const Rat& x) const {
        Rat t = frac(x);
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
        size_t idx = (it == breaks_.begin()) ? breaks_.size() - 1 : (it - breaks_.begin() - 1);
        return values_[idx];
    }

    // x -> f(x + gamma); breakpoints shift by -gamma mod 1, cyclic order kept
    StepFunction rotate(const Rat& gamma) const {
        Rat g = frac(gamma);
        if (g == 0) return *this;
        StepFunction r;
        r.breaks_.clear();
        r.values_.clear();
        r.breaks_.reserve(breaks_.size());
        r.values_.reserve(values_.size());
        // shifted breakpoint b - g mod 1; find the first original index whose
        // shift is minimal, then emit in cyclic order
        size_t n = breaks_.size();
        size_t start = 0;
        // first breakpoint with b >= g shifts to b - g (smallest non-wrapped)
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), g);
        start = it - breaks_.begin();
        for (size_t i = 0; i < n; ++i) {
            size_t j = (start + i) % n;
            Rat nb = breaks_[j] - g;
            if (nb < 0) nb += 1;
            r.breaks_.push_back(std::move(nb));
            r.values_.push_back(values_[j]);
        }
        r.canonicalize();
        return r;
    }

    StepFunction scale(const Rat& c) const {
        StepFunction r = *this;
        for (auto& v : r.values_) v *= c;
        r.canonicalize();
        return r;
    }

    static StepFunction combine_add(const StepFunction& f, const StepFunction& g) {
        return merge(f, g, false);
    }
    static StepFunction combine_sub(const StepFunction& f, const StepFunction& g) {
        return merge(f, g, true);
    }

    StepFunction operator+(const StepFunction& o) const { return combine_add(*this, o); }
    StepFunction operator-(const StepFunction& o) const { return combine_sub(*this, o); }

    // Birkhoff sum f^(n) = f + f(.+alpha) + ... + f(.+(n-1)alpha), built by a
    // single sorted merge of all n*k translated breakpoints with a running
    // value; negative n via the cocycle identity f^(-m) = -f^(m)(. - m alpha).
    StepFunction ergodic_sum(const Rat& alpha, long n, long breakpoint_budget = 10'000'000) const {
        if (n == 0) return StepFunction();
        if (n < 0) return ergodic_sum(alpha, -n, breakpoint_budget)
                       .rotate(Rat(n) * alpha)
                       .scale(Rat(-1));
        if (n == 1) return *this;
        size_t k = breaks_.size();
        if (static_cast<long double>(n) * k > static_cast<long double>(breakpoint_budget))
            throw StepBudgetError(breakpoint_budget);
        // jumps of f at its breakpoints (value on arc minus value before)
        std::vector<std::pair<Rat, Rat>> events;  // (position, jump)
        events.reserve(static_cast<size_t>(n) * k);
        for (size_t i = 0; i < k; ++i) {
            const Rat& prev = values_[(i + k - 1) % k];
            Rat jump = values_[i] - prev;
            if (jump == 0) continue;
            for (long j = 0; j < n; ++j) {
                // breakpoint of f(. + j alpha) at b - j alpha mod 1
                Rat pos = frac(breaks_[i] - Rat(j) * alpha);
                events.emplace_back(std::move(pos), jump);
            }
        }
        std::sort(events.begin(), events.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // collapse equal positions
        std::vector<std::pair<Rat, Rat>> pts;
        pts.reserve(events.size());
        for (auto& e : events) {
            if (!pts.empty() && pts.back().first == e.first) pts.back().second += e.second;
            else pts.push_back(std::move(e));
        }
        if (pts.empty()) {
            // f is constant: sum is n * c
            return constant(values_[0] * Rat(n));
        }
        // anchor the running value by direct evaluation at the first position
        Rat x0 = pts.front().first;
        Rat v = 0;
        for (long j = 0; j < n; ++j) v += at(x0 + Rat(j) * alpha);
        StepFunction r;
        r.breaks_.clear();
        r.values_.clear();
        r.breaks_.reserve(pts.size());
        r.values_.reserve(pts.size());
        r.breaks_.push_back(pts.front().first);
        r.values_.push_back(v);
        for (size_t i = 1; i < pts.size(); ++i) {
            v += pts[i].second;
            r.breaks_.push_back(pts[i].first);
            r.values_.push_back(v);
        }
        r.canonicalize();
        return r;
    }

    // breakpoints with nonzero jump (value after minus value before), sorted
    std::vector<std::pair<Rat, Rat>> discontinuities() const {
        std::vector<std::pair<Rat, Rat>> out;
        size_t k = breaks_.size();
        for (size_t i = 0; i < k; ++i) {
            Rat jump = values_[i] - values_[(i + k - 1) % k];
            if (jump != 0) out.emplace_back(breaks_[i], std::move(jump));
        }
        return out;
    }

    // exact integral over the circle
    Rat integral() const {
        Rat s = 0;
        size_t k = breaks_.size();
        for (size_t i = 0; i < k; ++i) s += values_[i] * arc_length(i);
        return s;
    }

    Rat norm_l1() const {
        Rat s = 0;
        for (size_t i = 0; i < breaks_.size(); ++i) s += abs_rat(values_[i]) * arc_length(i);
        return s;
    }

    Rat norm_l2_sq() const {
        Rat s = 0;
        for (size_t i = 0; i < breaks_.size(); ++i) s += values_[i] * values_[i] * arc_length(i);
        return s;
    }

    Rat sup_abs() const {
        Rat m = 0;
        for (const auto& v : values_) {
            Rat a = abs_rat(v);
            if (a > m) m = a;
        }
        return m;
    }

    // total variation: sum of |jumps| around the circle
    Rat total_variation() const {
        Rat s = 0;
        for (const auto& [pos, jump] : discontinuities()) s += abs_rat(jump);
        return s;
    }

    // exact level-set measures: value -> total arc length
    std::map<Rat, Rat> level_measures() const {
        std::map<Rat, Rat> m;
        for (size_t i = 0; i < breaks_.size(); ++i) m[values_[i]] += arc_length(i);
        return m;
    }

    Rat arc_length(size_t i) const {
        size_t k = breaks_.size();
        if (k == 1) return Rat(1);
        if (i + 1 < k) return breaks_[i + 1] - breaks_[i];
        return Rat(1) - breaks_[k - 1] + breaks_[0];
    }

private:
    static StepFunction from_sorted(std::vector<std::pair<Rat, Rat>> pts) {
        StepFunction f;
        f.breaks_.clear();
        f.values_.clear();
        for (auto& [b, v] : pts) {
            f.breaks_.push_back(std::move(b));
            f.values_.push_back(std::move(v));
        }
        f.canonicalize();
        return f;
    }

    static StepFunction merge(const StepFunction& f, const StepFunction& g, bool subtract) {
        StepFunction r;
        r.breaks_.clear();
        r.values_.clear();
        size_t i = 0, j = 0;
        const auto& fb = f.breaks_;
        const auto& gb = g.breaks_;
        // current arcs: index of last breakpoint <= position; start at the
        // wrap arc if the first breakpoint is positive
        while (i < fb.size() || j < gb.size()) {
            Rat b;
            if (i < fb.size() && (j >= gb.size() || fb[i] <= gb[j])) b = fb[i];
            else b = gb[j];
            while (i < fb.size() && fb[i] == b) ++i;
            while (j < gb.size() && gb[j] == b) ++j;
            const Rat& fv = f.values_[i == 0 ? f.values_.size() - 1 : i - 1];
            const Rat& gv = g.values_[j == 0 ? g.values_.size() - 1 : j - 1];
            r.breaks_.push_back(b);
            r.values_.push_back(subtract ? Rat(fv - gv) : Rat(fv + gv));
        }
        r.canonicalize();
        return r;
    }

    void canonicalize() {
        if (breaks_.empty()) {
            breaks_ = {Rat(0)};
            values_ = {Rat(0)};
            return;
        }
        std::vector<Rat> nb, nv;
        nb.reserve(breaks_.size());
        nv.reserve(values_.size());
        for (size_t i = 0; i < breaks_.size(); ++i) {
            if (!nv.empty() && nv.back() == values_[i]) continue;
            nb.push_back(breaks_[i]);
            nv.push_back(values_[i]);
        }
        // wrap-around merge: last arc and first arc with equal values
        while (nb.size() > 1 && nv.front() == nv.back()) {
            nb.erase(nb.begin());
            nv.erase(nv.begin());
        }
        // constants are anchored at 0 so canonical forms compare equal
        if (nv.size() == 1) nb[0] = 0;
        breaks_ = std::move(nb);
        values_ = std::move(nv);
    }

    std::vector<Rat> breaks_;  // strictly increasing, in [0,1)
    std::vector<Rat> values_;  // values_[i] on [breaks_[i], breaks_[i+1]) wrapping
};

// distribution table: exact pushforward of a step function (value -> measure)
struct DistributionTable {
    std::map<Rat, Rat> entries;

    static DistributionTable of(const StepFunction& f) {
        DistributionTable t;
        t.entries = f.level_measures();
        return t;
    }

    Rat mass(const Rat& v) const {
        auto it = entries.find(v);
        return it == entries.end() ? Rat(0) : it->second;
    }
    Rat total() const {
        Rat s = 0;
        for (const auto& [v, m] : entries) s += m;
        return s;
    }
    // measure of {|value| >= threshold}
    Rat mass_abs_ge(const Rat& threshold) const {
        Rat s = 0;
        for (const auto& [v, m] : entries)
            if (abs_rat(v) >= threshold) s += m;
        return s;
    }
    bool operator==(const DistributionTable& o) const { return entries == o.entries; }
};

}  // namespace flowlab
