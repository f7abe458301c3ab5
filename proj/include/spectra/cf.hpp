#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectra/rational.hpp"
#include "spectra/surd.hpp"
#include "spectra/word.hpp"

namespace spectra::cf {

// Convergent table p_k/q_k for k = -2 .. n, seeded with p_{-2} = q_{-1} = 0,
// p_{-1} = q_{-2} = 1, so row(k) obeys p_k = a_k p_{k-1} + p_{k-2} for k >= 0
// with a_0 the leading integer digit and a_1.. the word.
class Convergents {
public:
    Convergents(const Word& word, const Int& a0 = 0);

    long depth() const { return static_cast<long>(p_.size()) - 3; }  // largest k
    const Int& p(long k) const { return p_[static_cast<std::size_t>(k + 2)]; }
    const Int& q(long k) const { return q_[static_cast<std::size_t>(k + 2)]; }

    // Value of [a_0; a_1, ..., a_n, tail] for a continuation tail value
    // T = [0; a_{n+1}, ...] in [0, 1]; T = 0 recovers p_n/q_n.
    Rat apply(const Rat& T) const;
    Surd apply(const Surd& T) const;
    RatInterval apply(const RatInterval& T) const;

private:
    std::vector<Int> p_, q_;
};

// The fundamental interval I(a_1,...,a_n) of reals in [0,1] whose expansion
// starts with the word. Endpoints p_n/q_n and (p_n+p_{n-1})/(q_n+q_{n-1});
// which one is the left end alternates with the parity of n.
struct CylinderInterval {
    Word word;
    Rat endpoint_convergent;  // p_n/q_n
    Rat endpoint_mediant;     // (p_n+p_{n-1})/(q_n+q_{n-1})
    Rat length;               // 1/(q_n (q_n + q_{n-1}))

    Rat lo() const { return std::min(endpoint_convergent, endpoint_mediant); }
    Rat hi() const { return std::max(endpoint_convergent, endpoint_mediant); }
    RatInterval interval() const { return {lo(), hi()}; }
};

CylinderInterval cylinder(const Word& word);

// |I(word)| without materializing endpoints.
Rat cylinder_length(const Word& word);

// ---- eventually periodic expansions ------------------------------------

// [a0; pre, overline(period)], or a finite expansion when period is empty.
struct CFExpansion {
    Int a0;
    Word pre;
    Word period;  // empty => finite (rational) expansion

    bool finite() const { return period.empty(); }
    static CFExpansion parse(const std::string& text, int alphabet_bound = 0);
    std::string str() const;
};

// Exact value of an eventually periodic expansion: the fixed point of the
// period's Moebius map, pushed through the preperiod. Throws on an empty
// period; digits are checked against alphabet_bound when one is supplied.
Surd eval_periodic(const Word& pre, const Word& period, const Int& a0 = 0,
                   int alphabet_bound = 0);

Rat eval_finite(const Word& word, const Int& a0 = 0);

// Value of either kind as a single-field Surd.
Surd eval(const CFExpansion& e, int alphabet_bound = 0);

// ---- comparison ----------------------------------------------------------

struct CompareResult {
    int order;           // -1, 0, +1
    long agree_depth;    // digits a_0..a_n agree; -1 when a_0 already differs
    Rat closeness_bound; // 1/2^(n-1) from the agreement depth (only if order != 0)
};

// Exact ordering of two expansions by the first differing digit of their
// canonical digit streams (finite expansions canonicalized to the form not
// ending in 1). Equality is decided structurally.
CompareResult compare(const CFExpansion& a, const CFExpansion& b);

// ---- separation (Lemma "c(N)/q^2" style lower bounds) --------------------

struct SeparationBound {
    Rat bound;       // certified rational lower bound on |alpha - alpha~|
    Surd exact_gap;  // the minimized exact gap the bound was rounded from
    bool degenerate; // N == 1: C_1 is a single point
};

// Lower bound on |alpha - alpha~| over all pairs of N-bounded expansions that
// agree exactly on `prefix` and differ at the next digit. Minimizes, over
// adjacent next-digit pairs, the exact gap between the C_N-restricted pieces
// of consecutive sub-cylinders.
SeparationBound separation_lower_bound(const Word& prefix, int N);

// Empty-prefix case, exposed so nothing downstream hardcodes a constant.
SeparationBound separation_constant(int N);

// ---- distortion -----------------------------------------------------------

// C^ >= 1 with C^-1 |I(a)||I(b)| <= |I(ab)| <= C^ |I(a)||I(b)| for all words
// with |a|,|b| <= depth over alphabet [1,N]. Exhaustive when the pair count
// is small, interval sup-tracking through the concatenation formula above
// that. Non-decreasing in depth.
Rat distortion_constant(int N, int depth);

// lambda_1 <= one-step cylinder contraction <= lambda_2 over [1,N] digits.
std::pair<Rat, Rat> contraction_bounds(int N);

// ---- closed-form cylinder ratios -----------------------------------------

// |I(w a b)| / |I(w)| = (1+r)/((ab+1+br)(ab+a+1+(b+1)r)), r = q_{n-1}/q_n.
Rat two_step_ratio(int a, int b, const Rat& r);
RatInterval two_step_ratio(int a, int b, const RatInterval& r);

// |I(w a b c)| / |I(w)|.
Rat three_step_ratio(int a, int b, int c, const Rat& r);
RatInterval three_step_ratio(int a, int b, int c, const RatInterval& r);

Rat one_step_ratio(int a, const Rat& r);
RatInterval one_step_ratio(int a, const RatInterval& r);

// d/dr of (1+r)/((x+yr)(z+wr)) at r, and the r-free numerator bound
// (x-y)(z-w) - yw that dominates its sign for r >= 0.
Rat ratio_derivative(const Rat& x, const Rat& y, const Rat& z, const Rat& w, const Rat& r);
Rat ratio_derivative_bound_numerator(const Rat& x, const Rat& y, const Rat& z, const Rat& w);

// ---- extremes of C_N and tail enclosures ----------------------------------

// A_N = [0; overline(N,1)] and B_N = [0; overline(1,N)], the extremes of the
// infinite N-bounded continued fractions in (0,1).
Surd A_extreme(int N);
Surd B_extreme(int N);

// Enclosure of [0; digits..., t] over all infinite N-bounded continuations t.
RatInterval tail_enclosure(const std::vector<int>& digits, int N,
                           unsigned prec = precision_bits());

// As above but the first unseen digit is restricted to `first_digits`.
RatInterval tail_enclosure_restricted(const std::vector<int>& digits, int N,
                                      const std::vector<int>& first_digits,
                                      unsigned prec = precision_bits());

// ---- named constants -------------------------------------------------------

struct NamedConstant {
    std::string name;
    SurdSum value;
    std::string reference_digits;  // decimal digits the value is checked against
    bool literature_only;          // stored, not recomputed (t*_1)
};

std::vector<NamedConstant> named_constants();

// max f|Lambda(N) = sqrt(N^2+4N) and min f|Lambda(N) = sqrt(N^2+4N)/N.
Surd max_f(int N);
Surd min_f(int N);

}  // namespace spectra::cf
