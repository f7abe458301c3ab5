#include "spectra/biseq.hpp"

#include <algorithm>
#include <stdexcept>

namespace spectra::sym {

namespace {

// Minimal-preperiod, primitive-period form of a right-infinite eventually
// periodic digit stream (pre, overline(period)).
void canonical_ray(std::vector<int>& pre, std::vector<int>& period) {
    for (std::size_t len = 1; len < period.size(); ++len) {
        if (period.size() % len) continue;
        bool rep = true;
        for (std::size_t i = len; i < period.size() && rep; ++i)
            rep = period[i] == period[i % len];
        if (rep) {
            period.resize(len);
            break;
        }
    }
    while (!pre.empty() && pre.back() == period.back()) {
        pre.pop_back();
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
}

std::vector<int> rotated_left(const std::vector<int>& v, std::size_t k) {
    std::vector<int> out = v;
    std::rotate(out.begin(), out.begin() + static_cast<long>(k % v.size()), out.end());
    return out;
}

}  // namespace

BiSeq::BiSeq(Word lp, Word lt, Word rt, Word rp, int bound)
    : lp_(std::move(lp)), lt_(std::move(lt)), rt_(std::move(rt)), rp_(std::move(rp)) {
    if (lp_.empty() || rp_.empty())
        throw std::invalid_argument("BiSeq: both periods must be nonempty");
    bound_ = bound;
    for (const Word* w : {&lp_, &lt_, &rt_, &rp_})
        for (int d : w->digits()) {
            if (bound > 0 && d > bound)
                throw std::invalid_argument("BiSeq: digit exceeds alphabet bound");
            bound_ = std::max(bound_, d);
        }
    normalize();
}

void BiSeq::normalize() {
    std::vector<int> rpre = rt_.digits(), rper = rp_.digits();
    canonical_ray(rpre, rper);
    rt_ = Word(rpre, bound_);
    rp_ = Word(rper, bound_);
    // The left side, read leftward, is the ray (reverse(lt), reverse(lp)).
    std::vector<int> lpre(lt_.digits().rbegin(), lt_.digits().rend());
    std::vector<int> lper(lp_.digits().rbegin(), lp_.digits().rend());
    canonical_ray(lpre, lper);
    lt_ = Word(std::vector<int>(lpre.rbegin(), lpre.rend()), bound_);
    lp_ = Word(std::vector<int>(lper.rbegin(), lper.rend()), bound_);
}

BiSeq BiSeq::periodic(const Word& period, int bound) {
    return BiSeq(period, Word(), Word(), period, bound);
}

BiSeq BiSeq::parse(const std::string& text, int bound) {
    auto strip_period = [](const std::string& s) -> std::string {
        auto open = s.find('(');
        auto close = s.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw std::invalid_argument("BiSeq::parse: malformed period '" + s + "'");
        return s.substr(open + 1, close - open - 1);
    };
    auto semi = text.find(';');
    if (semi == std::string::npos) {
        // Shorthand "(P)*": purely periodic.
        Word p = Word::parse(strip_period(text), bound);
        return periodic(p, bound);
    }
    std::string left = text.substr(0, semi), right = text.substr(semi + 1);
    auto lc = left.find(':');
    auto rc = right.rfind(':');
    if (lc == std::string::npos || rc == std::string::npos)
        throw std::invalid_argument("BiSeq::parse: expected (lp)*:lt;rt:(rp)* in '" + text + "'");
    Word lp = Word::parse(strip_period(left.substr(0, lc)), bound);
    Word lt = Word::parse(left.substr(lc + 1), bound);
    Word rt = Word::parse(right.substr(0, rc), bound);
    Word rp = Word::parse(strip_period(right.substr(rc + 1)), bound);
    return BiSeq(lp, lt, rt, rp, bound);
}

std::string BiSeq::str() const {
    return "(" + lp_.str() + ")*:" + lt_.str() + ";" + rt_.str() + ":(" + rp_.str() + ")*";
}

bool operator==(const BiSeq& a, const BiSeq& b) {
    return a.lp_ == b.lp_ && a.lt_ == b.lt_ && a.rt_ == b.rt_ && a.rp_ == b.rp_;
}

int BiSeq::digit(long i) const {
    if (i >= 0) {
        std::size_t k = static_cast<std::size_t>(i);
        if (k < rt_.size()) return rt_[k];
        return rp_[(k - rt_.size()) % rp_.size()];
    }
    std::size_t k = static_cast<std::size_t>(-1 - i);  // 0-based leftward
    if (k < lt_.size()) return lt_[lt_.size() - 1 - k];
    std::size_t m = (k - lt_.size()) % lp_.size();
    return lp_[lp_.size() - 1 - m];
}

bool BiSeq::purely_periodic() const {
    return lt_.empty() && rt_.empty() && lp_ == rp_;
}

BiSeq BiSeq::shift(long k) const {
    if (k == 0) return *this;
    long t_start = -static_cast<long>(lt_.size());
    long t_end = static_cast<long>(rt_.size());
    long a = std::min(t_start, k), b = std::max(t_end, k);
    std::vector<int> nlt, nrt, nlp, nrp;
    for (long i = a; i < k; ++i) nlt.push_back(digit(i));
    for (long i = k; i < b; ++i) nrt.push_back(digit(i));
    for (long i = a - static_cast<long>(lp_.size()); i < a; ++i) nlp.push_back(digit(i));
    for (long i = b; i < b + static_cast<long>(rp_.size()); ++i) nrp.push_back(digit(i));
    return BiSeq(Word(nlp, bound_), Word(nlt, bound_), Word(nrt, bound_), Word(nrp, bound_),
                 bound_);
}

Surd BiSeq::right_tail(long i) const {
    long t_end = static_cast<long>(rt_.size());
    if (i + 1 >= t_end) {
        std::size_t phase = static_cast<std::size_t>(i + 1 - t_end) % rp_.size();
        return cf::eval_periodic(Word(), Word(rotated_left(rp_.digits(), phase), bound_));
    }
    std::vector<int> pre;
    for (long j = i + 1; j < t_end; ++j) pre.push_back(digit(j));
    return cf::eval_periodic(Word(pre, bound_), rp_);
}

Surd BiSeq::left_tail(long i) const {
    long t_start = -static_cast<long>(lt_.size());
    std::vector<int> rev_lp(lp_.digits().rbegin(), lp_.digits().rend());
    if (i - 1 < t_start) {
        std::size_t k = static_cast<std::size_t>(-1 - (i - 1));
        std::size_t phase = (k - lt_.size()) % lp_.size();
        return cf::eval_periodic(Word(), Word(rotated_left(rev_lp, phase), bound_));
    }
    std::vector<int> pre;
    for (long j = i - 1; j >= t_start; --j) pre.push_back(digit(j));
    return cf::eval_periodic(Word(pre, bound_), Word(rev_lp, bound_));
}

SurdSum lambda_at(const BiSeq& seq, long i) {
    return SurdSum(Rat(seq.digit(i))) + SurdSum(seq.right_tail(i)) + SurdSum(seq.left_tail(i));
}

namespace {

// Max of lambda over one period of the purely periodic sequence, with the
// attaining phase.
std::pair<SurdSum, long> periodic_peak(const Word& period, int bound) {
    BiSeq pure = BiSeq::periodic(period, bound);
    SurdSum best = lambda_at(pure, 0);
    long arg = 0;
    for (long i = 1; i < static_cast<long>(period.size()); ++i) {
        SurdSum v = lambda_at(pure, i);
        if ((v - best).sign() > 0) {
            best = v;
            arg = i;
        }
    }
    return {best, arg};
}

}  // namespace

ValueReport markov_value(const BiSeq& seq) {
    long t_start = -static_cast<long>(seq.left_transient().size());
    long t_end = static_cast<long>(seq.right_transient().size());
    long pl = static_cast<long>(seq.left_period().size());
    long pr = static_cast<long>(seq.right_period().size());

    // The window [t_start - 2 pl, t_end + 2 pr - 1] contains the first member
    // of every residue class mod (2 x period) on both sides. Beyond it, the
    // deviation lambda_i - mu_phase keeps a fixed sign along each class and
    // shrinks strictly (the two-period return map of the far tail is an
    // orientation-preserving contraction), so every out-of-window value is
    // dominated either by its in-window class head or by the side limit mu.
    long lo = t_start - 2 * pl, hi = t_end + 2 * pr - 1;
    SurdSum best = lambda_at(seq, 0);
    long arg = 0;
    for (long i = lo; i <= hi; ++i) {
        if (i == 0) continue;
        SurdSum v = lambda_at(seq, i);
        int c = (v - best).sign();
        if (c > 0 || (c == 0 && std::abs(i) < std::abs(arg))) {
            best = v;
            arg = i;
        }
    }
    SurdSum mu_l = periodic_peak(seq.left_period(), seq.alphabet_bound()).first;
    SurdSum mu_r = periodic_peak(seq.right_period(), seq.alphabet_bound()).first;
    SurdSum mu = (mu_l - mu_r).sign() >= 0 ? mu_l : mu_r;
    if ((best - mu).sign() >= 0) return {best, arg, true};
    return {mu, std::nullopt, true};
}

ValueReport lagrange_value(const BiSeq& seq) {
    auto [mu, phase] = periodic_peak(seq.right_period(), seq.alphabet_bound());
    if (seq.purely_periodic()) return {mu, phase, true};
    return {mu, std::nullopt, true};
}

Lemma24Record lemma24_check(const BiSeq& alpha, const BiSeq& alpha_tilde, const Ray& beta1,
                            const Ray& beta2, const Ray& beta3, int R) {
    Lemma24Record rec{true, "", {}, false};
    if (R < 1) {
        rec.precondition_ok = false;
        rec.precondition_error = "R must be >= 1";
        return rec;
    }
    Surd b1 = beta1.value(), b2 = beta2.value(), b3 = beta3.value();
    if ((SurdSum(b2) - SurdSum(b1)).sign() < 0 || (SurdSum(b3) - SurdSum(b2)).sign() < 0) {
        rec.precondition_ok = false;
        rec.precondition_error = "beta values not ordered: need [0;b1] <= [0;b2] <= [0;b3]";
        return rec;
    }
    for (long j = 0; j <= 2 * R + 1; ++j)
        if (alpha.digit(j) != alpha_tilde.digit(j)) {
            rec.precondition_ok = false;
            rec.precondition_error = "alpha and alpha~ disagree inside positions 0..2R+1";
            return rec;
        }

    auto splice = [&](const BiSeq& left_of, const Ray& beta) {
        std::vector<int> rt;
        for (long j = 0; j <= 2 * R + 1; ++j) rt.push_back(left_of.digit(j));
        for (int d : beta.pre.digits()) rt.push_back(d);
        int bound = std::max({left_of.alphabet_bound(), beta.pre.alphabet_bound(),
                              beta.period.alphabet_bound()});
        return BiSeq(left_of.left_period(), left_of.left_transient(), Word(rt, bound),
                     beta.period, bound);
    };
    BiSeq s1 = splice(alpha, beta1);
    BiSeq s2 = splice(alpha, beta2);
    BiSeq s3 = splice(alpha_tilde, beta3);

    SurdSum m1 = markov_value(s1).value, m3 = markov_value(s3).value;
    SurdSum rhs = ((m1 - m3).sign() >= 0 ? m1 : m3) + SurdSum(make_rat(1, Int(1) << (R - 1)));
    for (long j = 0; j <= 2 * R + 1; ++j) {
        SurdSum margin = rhs - lambda_at(s2, j);
        if (margin.sign() < 0) rec.violated = true;
        rec.margins.push_back(std::move(margin));
    }
    return rec;
}

}  // namespace spectra::sym
