#include "spectra/cf.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>

namespace spectra::cf {

Convergents::Convergents(const Word& word, const Int& a0) {
    std::size_t n = word.size();
    p_.reserve(n + 3);
    q_.reserve(n + 3);
    p_.push_back(0);  // p_{-2}
    q_.push_back(1);  // q_{-2}
    p_.push_back(1);  // p_{-1}
    q_.push_back(0);  // q_{-1}
    Int a = a0;
    for (std::size_t k = 0;; ++k) {
        p_.push_back(a * p_[p_.size() - 1] + p_[p_.size() - 2]);
        q_.push_back(a * q_[q_.size() - 1] + q_[q_.size() - 2]);
        if (k == n) break;
        a = word[k];
    }
}

Rat Convergents::apply(const Rat& T) const {
    long n = depth();
    return make_rat(p(n) * T.get_den() + p(n - 1) * T.get_num(),
                    q(n) * T.get_den() + q(n - 1) * T.get_num());
}

Surd Convergents::apply(const Surd& T) const {
    long n = depth();
    Surd num = Surd(Rat(p(n))) + T * Rat(p(n - 1));
    Surd den = Surd(Rat(q(n))) + T * Rat(q(n - 1));
    return num / den;
}

RatInterval Convergents::apply(const RatInterval& T) const {
    Rat a = apply(T.lo), b = apply(T.hi);
    return a <= b ? RatInterval{a, b} : RatInterval{b, a};
}

CylinderInterval cylinder(const Word& word) {
    if (word.empty()) throw std::invalid_argument("cylinder: empty word");
    Convergents c(word, 0);
    long n = c.depth();
    CylinderInterval out;
    out.word = word;
    out.endpoint_convergent = make_rat(c.p(n), c.q(n));
    out.endpoint_mediant = make_rat(c.p(n) + c.p(n - 1), c.q(n) + c.q(n - 1));
    out.length = make_rat(1, c.q(n) * (c.q(n) + c.q(n - 1)));
    return out;
}

Rat cylinder_length(const Word& word) {
    if (word.empty()) return Rat(1);
    Convergents c(word, 0);
    long n = c.depth();
    return make_rat(1, c.q(n) * (c.q(n) + c.q(n - 1)));
}

// ---- expansions ------------------------------------------------------------

CFExpansion CFExpansion::parse(const std::string& text, int bound) {
    // a0;pre:(period) with optional parts, e.g. "0;2:(2,1)", "0;:(1)*", "0;1,2".
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("CFExpansion::parse: missing ';' in '" + text + "'");
    CFExpansion e;
    e.a0 = Int(text.substr(0, semi));
    std::string rest = text.substr(semi + 1);
    std::string pre_txt = rest, per_txt;
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
        pre_txt = rest.substr(0, colon);
        per_txt = rest.substr(colon + 1);
        auto open = per_txt.find('(');
        auto close = per_txt.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw std::invalid_argument("CFExpansion::parse: malformed period in '" + text + "'");
        per_txt = per_txt.substr(open + 1, close - open - 1);
    }
    e.pre = Word::parse(pre_txt, bound);
    e.period = Word::parse(per_txt, bound);
    return e;
}

std::string CFExpansion::str() const {
    std::string out = a0.get_str() + ";" + pre.str();
    if (!period.empty()) out += ":(" + period.str() + ")*";
    return out;
}

Surd eval_periodic(const Word& pre, const Word& period, const Int& a0, int bound) {
    if (period.empty()) throw std::invalid_argument("eval_periodic: empty period");
    if (bound > 0) {
        for (int d : pre.digits())
            if (d > bound) throw std::invalid_argument("eval_periodic: preperiod digit exceeds alphabet bound");
        for (int d : period.digits())
            if (d > bound) throw std::invalid_argument("eval_periodic: period digit exceeds alphabet bound");
    }
    Convergents c(period, 0);
    long k = c.depth();
    // T = [0; overline(period)] solves q_{k-1} T^2 + (q_k - p_{k-1}) T - p_k = 0;
    // the value is the positive root.
    Int A = c.q(k - 1), B = c.q(k) - c.p(k - 1), C = -c.p(k);
    Int disc = B * B - 4 * A * C;
    Surd T(make_rat(-B, 2 * A), make_rat(1, 2 * A), disc);
    return Convergents(pre, a0).apply(T);
}

Rat eval_finite(const Word& word, const Int& a0) {
    Convergents c(word, a0);
    long n = c.depth();
    return make_rat(c.p(n), c.q(n));
}

Surd eval(const CFExpansion& e, int bound) {
    if (e.finite()) return Surd(eval_finite(e.pre, e.a0));
    return eval_periodic(e.pre, e.period, e.a0, bound);
}

// ---- comparison ------------------------------------------------------------

namespace {

// Canonical digit stream of an expansion: a0 then fractional digits, with a
// sentinel INT_MAX once a finite stream terminates (a terminating tail
// compares like an infinite digit).
struct DigitStream {
    std::vector<Int> lead;     // single element: a0
    std::vector<int> pre;
    std::vector<int> period;   // empty => finite

    int at(long i) const {  // i >= 1: fractional digits
        std::size_t k = static_cast<std::size_t>(i - 1);
        if (k < pre.size()) return pre[k];
        if (period.empty()) return INT_MAX;
        return period[(k - pre.size()) % period.size()];
    }
    bool finite() const { return period.empty(); }
};

DigitStream canonical_stream(const CFExpansion& e) {
    DigitStream s;
    if (e.finite()) {
        // Euclid on the exact value yields the canonical form (never ending
        // in 1, integers as a bare a0), which resolves [...,a,1] = [...,a+1].
        Rat v = eval_finite(e.pre, e.a0);
        Int num = v.get_num(), den = v.get_den();
        Int a = floor_div(num, den);
        s.lead.push_back(a);
        Int r = num - a * den;
        while (r != 0) {
            num = den;
            den = r;
            a = floor_div(num, den);
            s.pre.push_back(static_cast<int>(a.get_si()));
            r = num - a * den;
        }
        return s;
    }
    s.lead.push_back(e.a0);
    s.pre = e.pre.digits();
    s.period = e.period.digits();
    // Primitive period.
    for (std::size_t len = 1; len < s.period.size(); ++len) {
        if (s.period.size() % len) continue;
        bool rep = true;
        for (std::size_t i = len; i < s.period.size() && rep; ++i)
            rep = s.period[i] == s.period[i % len];
        if (rep) {
            s.period.resize(len);
            break;
        }
    }
    // Minimal preperiod: fold matching tail digits into a rotation.
    while (!s.pre.empty() && s.pre.back() == s.period.back()) {
        s.pre.pop_back();
        std::rotate(s.period.rbegin(), s.period.rbegin() + 1, s.period.rend());
    }
    return s;
}

}  // namespace

CompareResult compare(const CFExpansion& a, const CFExpansion& b) {
    DigitStream sa = canonical_stream(a), sb = canonical_stream(b);
    if (sa.lead[0] != sb.lead[0]) {
        int ord = sa.lead[0] > sb.lead[0] ? 1 : -1;
        return {ord, -1, Rat(0)};
    }
    // Walk far enough that two eventually periodic streams without a
    // difference are identical.
    long horizon = static_cast<long>(std::max(sa.pre.size(), sb.pre.size()));
    long pa = sa.finite() ? 1 : static_cast<long>(sa.period.size());
    long pb = sb.finite() ? 1 : static_cast<long>(sb.period.size());
    horizon += std::lcm(pa, pb) + 1;
    for (long i = 1; i <= horizon; ++i) {
        int da = sa.at(i), db = sb.at(i);
        if (da == db) {
            if (da == INT_MAX) break;  // both terminated
            continue;
        }
        long n = i - 1;
        int sign_at_i = (i % 2 == 0) ? 1 : -1;  // (-1)^i
        int ord = (da > db) == (sign_at_i > 0) ? 1 : -1;
        Rat bound = n >= 1 ? make_rat(1, Int(1) << (n - 1)) : Rat(2);
        return {ord, n, bound};
    }
    return {0, horizon, Rat(0)};
}

// ---- separation ------------------------------------------------------------

SeparationBound separation_lower_bound(const Word& prefix, int N) {
    if (N < 1) throw std::invalid_argument("separation_lower_bound: N < 1");
    if (N == 1) return {Rat(0), Surd(Rat(0)), true};
    Surd A = A_extreme(N), B = B_extreme(N);
    Convergents conv(prefix, 0);
    auto piece = [&](int d) {
        // Hull of the C_N part of I(prefix, d): tail T = 1/(d + y), y in [A, B].
        Surd t_min = Surd(Rat(1)) / (Surd(Rat(d)) + B);
        Surd t_max = Surd(Rat(1)) / (Surd(Rat(d)) + A);
        Surd v1 = conv.apply(t_min), v2 = conv.apply(t_max);
        return v1 < v2 ? std::pair{v1, v2} : std::pair{v2, v1};
    };
    std::optional<Surd> best;
    auto prev = piece(1);
    for (int d = 2; d <= N; ++d) {
        auto cur = piece(d);
        Surd gap = cur.first < prev.first ? prev.first - cur.second : cur.first - prev.second;
        if (!best || gap < *best) best = gap;
        prev = cur;
    }
    Rat lo;
    for (unsigned prec = precision_bits();; prec *= 2) {
        lo = best->enclosure(prec).lo;
        if (lo > 0) break;
    }
    return {lo, *best, false};
}

SeparationBound separation_constant(int N) { return separation_lower_bound(Word(), N); }

// ---- distortion ------------------------------------------------------------

namespace {

struct WordMat {  // bottom-heavy slice of the Moebius matrix of a word
    Int p, pp, q, qp;  // p_n, p_{n-1}, q_n, q_{n-1}
};

void enumerate_words(int N, int depth, std::vector<WordMat>& out) {
    // All nonempty words of length <= depth, by DFS.
    struct Frame {
        WordMat m;
        int len;
    };
    std::vector<Frame> stack;
    for (int a = 1; a <= N; ++a)
        stack.push_back({{Int(1), Int(0), Int(a), Int(1)}, 1});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        out.push_back(f.m);
        if (f.len == depth) continue;
        for (int a = 1; a <= N; ++a)
            stack.push_back(
                {{a * f.m.p + f.m.pp, f.m.p, a * f.m.q + f.m.qp, f.m.q}, f.len + 1});
    }
}

Rat interval_len(const WordMat& m) { return make_rat(1, m.q * (m.q + m.qp)); }

}  // namespace

Rat distortion_constant(int N, int depth) {
    if (N < 2 || depth < 1) throw std::invalid_argument("distortion_constant: need N >= 2, depth >= 1");
    double word_count = (std::pow(double(N), depth + 1) - N) / (N - 1);
    std::vector<WordMat> words;
    if (word_count * word_count <= 4e6) {
        enumerate_words(N, depth, words);
        Rat best(1);
        for (const auto& a : words)
            for (const auto& b : words) {
                // Matrix product in the [[q, q'], [p, p']] convention:
                // q_ab = q_a q_b + q'_a p_b, q'_ab = q_a q'_b + q'_a p'_b.
                Int q = a.q * b.q + a.qp * b.p;
                Int qp = a.q * b.qp + a.qp * b.pp;
                Rat ratio = make_rat(a.q * (a.q + a.qp) * b.q * (b.q + b.qp), q * (q + qp));
                if (ratio < 1) ratio = 1 / ratio;
                if (ratio > best) best = ratio;
            }
        return best;
    }
    // Sup-tracking through |I(ab)|/(|I(a)||I(b)|) =
    // (1+ra)(1+rb) / ((1+ra xb)((1+ra xb)+rb(1+ra x'b))) with ra ranging over
    // the hull [A_N, 1] of all reversed-word values.
    enumerate_words(N, std::min(depth, 12), words);
    RatInterval ra(A_extreme(N).enclosure().lo, Rat(1));
    Rat best(1);
    for (const auto& b : words) {
        Rat xb = make_rat(b.p, b.q), rb = make_rat(b.qp, b.q);
        Rat xpb = make_rat(b.pp, b.qp);
        RatInterval num = (ra + Rat(1)) * (Rat(1) + rb);
        RatInterval t = ra * xb + Rat(1);
        RatInterval den = t * (t + (ra * xpb + Rat(1)) * rb);
        RatInterval ratio = num / den;
        if (ratio.hi > best) best = ratio.hi;
        Rat inv = 1 / ratio.lo;
        if (inv > best) best = inv;
    }
    return best;
}

std::pair<Rat, Rat> contraction_bounds(int N) {
    Rat l1 = std::min(make_rat(1, Int(N) * (N + 1)), make_rat(2, Int(N + 1) * (N + 2)));
    return {l1, make_rat(1, 2)};
}

// ---- ratio formulas ----------------------------------------------------------

Rat one_step_ratio(int a, const Rat& r) { return (1 + r) / ((a + r) * (a + 1 + r)); }

RatInterval one_step_ratio(int a, const RatInterval& r) {
    return (r + Rat(1)) / ((r + Rat(a)) * (r + Rat(a + 1)));
}

Rat two_step_ratio(int a, int b, const Rat& r) {
    Int ab = Int(a) * b;
    return (1 + r) / ((Rat(ab + 1) + b * r) * (Rat(ab + a + 1) + (b + 1) * r));
}

RatInterval two_step_ratio(int a, int b, const RatInterval& r) {
    Rat ab(Int(a) * b);
    return (r + Rat(1)) / ((r * Rat(b) + (ab + 1)) * (r * Rat(b + 1) + (ab + a + 1)));
}

Rat three_step_ratio(int a, int b, int c, const Rat& r) {
    Int abc = Int(a) * b * c, bc = Int(b) * c;
    return (1 + r) /
           ((Rat(abc + c + a) + Rat(bc + 1) * r) * (Rat(abc + c + a + Int(a) * b + 1) + Rat(bc + b + 1) * r));
}

RatInterval three_step_ratio(int a, int b, int c, const RatInterval& r) {
    Rat abc(Int(a) * b * c), bc(Int(b) * c), ab(Int(a) * b);
    return (r + Rat(1)) /
           ((r * (bc + 1) + (abc + Rat(c) + Rat(a))) * (r * (bc + Rat(b) + 1) + (abc + Rat(c) + Rat(a) + ab + 1)));
}

Rat ratio_derivative(const Rat& x, const Rat& y, const Rat& z, const Rat& w, const Rat& r) {
    Rat den = (y * w * r * r + (x * w + y * z) * r + x * z);
    return ((x - y) * (z - w) - y * w * (r + 1) * (r + 1)) / (den * den);
}

Rat ratio_derivative_bound_numerator(const Rat& x, const Rat& y, const Rat& z, const Rat& w) {
    return (x - y) * (z - w) - y * w;
}

// ---- C_N extremes and tails -------------------------------------------------

Surd A_extreme(int N) {
    if (N == 1) return eval_periodic(Word(), Word({1}));
    return eval_periodic(Word(), Word({N, 1}));
}

Surd B_extreme(int N) {
    if (N == 1) return eval_periodic(Word(), Word({1}));
    return eval_periodic(Word(), Word({1, N}));
}

RatInterval tail_enclosure(const std::vector<int>& digits, int N, unsigned prec) {
    RatInterval T(A_extreme(N).enclosure(prec).lo, B_extreme(N).enclosure(prec).hi);
    if (digits.empty()) return T;
    return Convergents(Word(digits), 0).apply(T);
}

RatInterval tail_enclosure_restricted(const std::vector<int>& digits, int N,
                                      const std::vector<int>& first_digits, unsigned prec) {
    if (first_digits.empty()) return tail_enclosure(digits, N, prec);
    Rat a_lo = A_extreme(N).enclosure(prec).lo;
    Rat b_hi = B_extreme(N).enclosure(prec).hi;
    std::optional<RatInterval> T;
    for (int d : first_digits) {
        RatInterval piece{Rat(1) / (d + b_hi), Rat(1) / (d + a_lo)};
        T = T ? RatInterval::hull(*T, piece) : piece;
    }
    if (digits.empty()) return *T;
    return Convergents(Word(digits), 0).apply(*T);
}

// ---- named constants ----------------------------------------------------------

Surd max_f(int N) { return Surd(Rat(0), Rat(1), Int(N) * N + 4 * N); }

Surd min_f(int N) { return Surd(Rat(0), make_rat(1, N), Int(N) * N + 4 * N); }

std::vector<NamedConstant> named_constants() {
    std::vector<NamedConstant> out;
    out.push_back({"freiman_cF",
                   SurdSum(Surd(make_rat(2221564096, 491993569), make_rat(283748, 491993569), 462)),
                   "4.52782956616", false});
    SurdSum ov1 = SurdSum(eval_periodic(Word(), Word({1})));
    out.push_back({"junction_gate_2_221",
                   SurdSum(Rat(2)) + ov1 + SurdSum(eval_periodic(Word({2}), Word({2, 1}))),
                   "3.0406", false});
    out.push_back({"eta_floor_2_13_14",
                   SurdSum(Rat(2)) + ov1 + SurdSum(eval_periodic(Word({1, 3}), Word({1, 4}))),
                   "3.4109", false});
    out.push_back({"t1_star_literature", SurdSum(make_rat(3334384, 1000000)), "3.334384", true});
    for (int N : {2, 3, 4}) {
        out.push_back({"max_f_lambda_" + std::to_string(N), SurdSum(max_f(N)), "", false});
        out.push_back({"min_f_lambda_" + std::to_string(N), SurdSum(min_f(N)), "", false});
    }
    return out;
}

}  // namespace spectra::cf
