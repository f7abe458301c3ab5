#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "spectra/rational.hpp"

namespace spectra {

// Writes n = s^2 * f with f squarefree; returns {s, f}. Exact: trial division
// below 10^6, then perfect-square / probable-prime checks and Pollard rho on
// what remains.
std::pair<Int, Int> squarefree_decompose(const Int& n);

// Quadratic field element a + b*sqrt(d) with canonical d: d squarefree and
// >= 2 when b != 0, and (b, d) = (0, 0) for rationals. All arithmetic stays
// inside one field; mixing distinct radicands is a logic error here (SurdSum
// handles sums across fields).
class Surd {
public:
    Surd() : a_(0), b_(0), d_(0) {}
    Surd(Rat a) : a_(std::move(a)), b_(0), d_(0) {}
    Surd(Rat a, Rat b, Int d);

    static Surd sqrt_of(const Int& n) { return Surd(Rat(0), Rat(1), n); }

    // Radicand already squarefree (or 0): skips the decomposition.
    struct canonical_t {};
    Surd(canonical_t, Rat a, Rat b, Int d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        if (b_ == 0 || d_ == 0) {
            b_ = 0;
            d_ = 0;
        }
    }

    const Rat& rational_part() const { return a_; }
    const Rat& radical_coeff() const { return b_; }
    const Int& radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    Surd conjugate() const { return Surd(canonical_t{}, a_, -b_, d_); }
    int sign() const;

    Surd operator-() const { return Surd(canonical_t{}, -a_, -b_, d_); }
    friend Surd operator+(const Surd& x, const Surd& y);
    friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
    friend Surd operator*(const Surd& x, const Surd& y);
    friend Surd operator/(const Surd& x, const Surd& y);

    friend bool operator==(const Surd& x, const Surd& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Surd& x, const Surd& y) { return y < x; }
    friend bool operator<=(const Surd& x, const Surd& y) { return !(y < x); }
    friend bool operator>=(const Surd& x, const Surd& y) { return !(x < y); }

    RatInterval enclosure(unsigned prec = precision_bits()) const;
    double approx() const;
    std::string to_string() const;

private:
    Rat a_, b_;
    Int d_;
};

// Finite sum  r + sum_i c_i * sqrt(d_i)  over distinct squarefree radicands.
// This is the value type for lambda_i and Markov values, whose left and right
// tails generally live in different quadratic fields. Equality is syntactic
// on the canonical form (sqrt of distinct squarefree integers are linearly
// independent over Q), so sign refinement below terminates on any nonzero
// value.
class SurdSum {
public:
    SurdSum() : r_(0) {}
    SurdSum(Rat r) : r_(std::move(r)) {}
    SurdSum(const Surd& s);

    static SurdSum zero() { return SurdSum(); }

    bool is_zero() const { return r_ == 0 && terms_.empty(); }
    bool is_rational() const { return terms_.empty(); }
    const Rat& rational_part() const { return r_; }
    const std::map<Int, Rat>& radical_terms() const { return terms_; }

    // Exact single-field view, when the value happens to involve at most one
    // radicand.
    std::optional<Surd> as_surd() const;

    SurdSum operator-() const;
    SurdSum& operator+=(const SurdSum& o);
    SurdSum& operator-=(const SurdSum& o) { return *this += -o; }
    SurdSum& operator*=(const Rat& c);
    friend SurdSum operator+(SurdSum x, const SurdSum& y) { return x += y; }
    friend SurdSum operator-(SurdSum x, const SurdSum& y) { return x -= y; }
    friend SurdSum operator*(SurdSum x, const Rat& c) { return x *= c; }
    friend SurdSum operator*(const SurdSum& x, const SurdSum& y);

    int sign() const;

    friend bool operator==(const SurdSum& x, const SurdSum& y) {
        return x.r_ == y.r_ && x.terms_ == y.terms_;
    }
    friend bool operator<(const SurdSum& x, const SurdSum& y) { return (x - y).sign() < 0; }
    friend bool operator>(const SurdSum& x, const SurdSum& y) { return y < x; }
    friend bool operator<=(const SurdSum& x, const SurdSum& y) { return !(y < x); }
    friend bool operator>=(const SurdSum& x, const SurdSum& y) { return !(x < y); }

    RatInterval enclosure(unsigned prec = precision_bits()) const;
    double approx() const;

    // Decimal expansion truncated (not rounded) to `digits` fractional
    // digits, refining the enclosure until the truncation is determined.
    std::string decimal(int digits) const;

    std::string to_string() const;

private:
    Rat r_;
    std::map<Int, Rat> terms_;
    void add_term(const Int& d, const Rat& c);
};

}  // namespace spectra
