#pragma once

#include <optional>
#include <string>

#include "spectra/cf.hpp"
#include "spectra/surd.hpp"
#include "spectra/word.hpp"

namespace spectra::sym {

// Eventually periodic bi-infinite sequence with a marked origin:
//   ... overline(left_period), left_transient ; right_transient, overline(right_period) ...
// Position 0 is the first digit right of ';'. Text form
//   (left_period)*:left_transient;right_transient:(right_period)*
// e.g. "(1)*:;2,2:(1,1)*".
class BiSeq {
public:
    BiSeq(Word left_period, Word left_transient, Word right_transient, Word right_period,
          int alphabet_bound = 0);

    // Purely periodic sequence ... P P ; P P ...
    static BiSeq periodic(const Word& period, int alphabet_bound = 0);
    static BiSeq parse(const std::string& text, int alphabet_bound = 0);

    int digit(long i) const;
    int alphabet_bound() const { return bound_; }
    const Word& left_period() const { return lp_; }
    const Word& left_transient() const { return lt_; }
    const Word& right_transient() const { return rt_; }
    const Word& right_period() const { return rp_; }

    bool purely_periodic() const;

    // sigma^k: position i of the result is position i+k of *this.
    BiSeq shift(long k) const;

    // Right tail [0; a_{i+1}, a_{i+2}, ...] and left tail [0; a_{i-1}, ...].
    Surd right_tail(long i) const;
    Surd left_tail(long i) const;

    std::string str() const;
    friend bool operator==(const BiSeq& a, const BiSeq& b);

private:
    Word lp_, lt_, rt_, rp_;
    int bound_;
    void normalize();
};

// lambda_i(theta) = [0;a_{i+1},...] + a_i + [0;a_{i-1},...], exact.
SurdSum lambda_at(const BiSeq& seq, long i);

struct ValueReport {
    SurdSum value;
    std::optional<long> attaining_index;  // empty: sup is a limsup only
    bool certified;
};

// sup over i of lambda_i, reduced to a certified finite candidate set.
ValueReport markov_value(const BiSeq& seq);

// limsup of lambda_i as i -> +infinity.
ValueReport lagrange_value(const BiSeq& seq);

// Right-infinite eventually periodic word (the beta arguments of the
// two-sided comparison lemma).
struct Ray {
    Word pre;
    Word period;
    Surd value() const { return cf::eval_periodic(pre, period); }
};

struct Lemma24Record {
    bool precondition_ok;
    std::string precondition_error;
    std::vector<SurdSum> margins;  // RHS - LHS per j in [0, 2R+1]
    bool violated;                 // any margin < 0
};

// Checks, for j = 0..2R+1, that
//   lambda_0(sigma^j(alpha_left; alpha_0..alpha_{2R+1}, beta2))
//     < max(m(alpha..beta1), m(alpha~..beta3)) + 1/2^(R-1).
Lemma24Record lemma24_check(const BiSeq& alpha, const BiSeq& alpha_tilde, const Ray& beta1,
                            const Ray& beta2, const Ray& beta3, int R);

}  // namespace spectra::sym
