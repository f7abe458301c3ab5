#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cmath>
#include <string>
#include <utility>

#include "spectra/precision.hpp"

namespace spectra {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int isqrt_floor(const Int& n) {
    assert(n >= 0);
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Closed rational interval [lo, hi]. All arithmetic is exact, so intervals
// only widen where a genuine irrationality (sqrt) or a power enters.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    explicit RatInterval(const Rat& x) : lo(x), hi(x) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) { assert(lo <= hi); }

    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }

    RatInterval operator-() const { return {-hi, -lo}; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
        Rat lo = c1, hi = c1;
        for (const Rat* c : {&c2, &c3, &c4}) {
            if (*c < lo) lo = *c;
            if (*c > hi) hi = *c;
        }
        return {lo, hi};
    }
    friend RatInterval operator+(const RatInterval& a, const Rat& b) { return {a.lo + b, a.hi + b}; }
    friend RatInterval operator+(const Rat& b, const RatInterval& a) { return a + b; }
    friend RatInterval operator*(const RatInterval& a, const Rat& b) {
        return b >= 0 ? RatInterval{a.lo * b, a.hi * b} : RatInterval{a.hi * b, a.lo * b};
    }

    // Requires 0 outside [lo, hi].
    RatInterval reciprocal() const {
        assert(lo > 0 || hi < 0);
        return {Rat(1) / hi, Rat(1) / lo};
    }

    friend RatInterval operator/(const RatInterval& a, const RatInterval& b) {
        return a * b.reciprocal();
    }

    static RatInterval hull(const RatInterval& a, const RatInterval& b) {
        return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
    }
};

// Enclosure of sqrt(n) for integer n >= 0 with absolute width <= 2^-prec.
inline RatInterval sqrt_enclosure(const Int& n, unsigned prec = precision_bits()) {
    assert(n >= 0);
    if (n == 0) return RatInterval(Rat(0));
    Int scale = Int(1) << prec;
    Int lo = isqrt_floor(n * scale * scale);
    if (lo * lo == n * scale * scale) return RatInterval(make_rat(lo, scale));
    return {make_rat(lo, scale), make_rat(lo + 1, scale)};
}

inline double to_double_down(const Rat& x) {
    double d = x.get_d();  // rounds toward zero
    return std::nextafter(std::nextafter(d, -1e308), -1e308);
}

inline double to_double_up(const Rat& x) {
    double d = x.get_d();
    return std::nextafter(std::nextafter(d, 1e308), 1e308);
}

inline std::string rat_string(const Rat& x) { return x.get_str(); }

}  // namespace spectra
