#pragma once

// Named irrational constants. Each generator returns a dyadic-rational
// approximant at the requested binary precision; the continued-fraction layer
// validates quotients by re-running at doubled precision.

#include <mpfr.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "flowlab/interval.hpp"
#include "flowlab/rational.hpp"

namespace flowlab {

inline Rat mpfr_value_to_rat(const mpfr_t v) {
    if (mpfr_zero_p(v)) return Rat(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
    Rat r(mant);
    mpz_class p;
    if (e >= 0) {
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
        r *= Rat(p);
    } else {
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        r /= Rat(p);
    }
    return r;
}

// approximant of a named constant at `bits` of precision, value in (0,1)
inline Rat named_constant(const std::string& name, unsigned bits) {
    mpfr_t v;
    mpfr_init2(v, bits);
    if (name == "pi-3") {
        mpfr_const_pi(v, MPFR_RNDN);
        mpfr_sub_ui(v, v, 3, MPFR_RNDN);
    } else if (name == "2-sqrt2") {
        mpfr_sqrt_ui(v, 2, MPFR_RNDN);
        mpfr_ui_sub(v, 2, v, MPFR_RNDN);
    } else if (name == "sqrt2-1") {
        mpfr_sqrt_ui(v, 2, MPFR_RNDN);
        mpfr_sub_ui(v, v, 1, MPFR_RNDN);
    } else if (name == "golden") {
        // fractional golden ratio (sqrt(5)-1)/2 = [0; 1, 1, 1, ...]
        mpfr_sqrt_ui(v, 5, MPFR_RNDN);
        mpfr_sub_ui(v, v, 1, MPFR_RNDN);
        mpfr_div_ui(v, v, 2, MPFR_RNDN);
    } else {
        mpfr_clear(v);
        throw std::invalid_argument("unknown named constant: " + name);
    }
    Rat r = mpfr_value_to_rat(v);
    mpfr_clear(v);
    return r;
}

inline bool is_named_constant(const std::string& name) {
    return name == "pi-3" || name == "2-sqrt2" || name == "sqrt2-1" || name == "golden";
}

// A value spec as accepted on the command line and in config files:
// a named constant, an explicit rational approximant, or a quotient list.
struct ValueSpec {
    struct Named { std::string name; };
    struct Exact { Rat value; };
    struct Quotients { std::vector<Int> a; };
    std::variant<Named, Exact, Quotients> v;

    static ValueSpec parse(const std::string& text) {
        if (is_named_constant(text)) return {Named{text}};
        std::string t = text;
        bool bracketed = !t.empty() && t.front() == '[' && t.back() == ']';
        if (bracketed) t = t.substr(1, t.size() - 2);
        if (bracketed || t.find(',') != std::string::npos) {
            std::vector<Int> a;
            std::stringstream ss(t);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty()) continue;
                Int q(item, 10);
                if (q <= 0) throw std::invalid_argument("partial quotients must be positive");
                a.push_back(q);
            }
            if (a.empty()) throw std::invalid_argument("empty quotient list");
            return {Quotients{std::move(a)}};
        }
        return {Exact{parse_rational(t)}};
    }
};

}  // namespace flowlab
