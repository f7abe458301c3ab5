#include "spectra/surd.hpp"

#include <sstream>

namespace spectra {

namespace {

Int pollard_rho(const Int& n) {
    // Brent's cycle variant; n must be composite and odd.
    if (n % 2 == 0) return 2;
    gmp_randstate_t st;
    gmp_randinit_mt(st);
    gmp_randseed_ui(st, 0xB5);
    Int d = 1;
    while (true) {
        Int c, y;
        mpz_urandomm(y.get_mpz_t(), st, n.get_mpz_t());
        mpz_urandomm(c.get_mpz_t(), st, n.get_mpz_t());
        if (c == 0) c = 1;
        Int x = y, q = 1;
        unsigned long r = 1;
        Int ys = y;
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                unsigned long lim = std::min<unsigned long>(128, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Int diff = x > y ? x - y : y - x;
                    q = q * diff % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        } while (d == 1);
        if (d != n) {
            gmp_randclear(st);
            return d;
        }
        // Backtrack for the rare q == 0 collapse.
        d = 1;
        do {
            ys = (ys * ys + c) % n;
            Int diff = x > ys ? x - ys : ys - x;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (d == 1);
        if (d != n) {
            gmp_randclear(st);
            return d;
        }
    }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32) != 0) {
        ++out[n];
        return;
    }
    if (is_perfect_square(n)) {
        Int r = isqrt_floor(n);
        factor_into(r, out);
        factor_into(r, out);
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::pair<Int, Int> squarefree_decompose(const Int& n) {
    if (n < 0) throw std::domain_error("squarefree_decompose: negative radicand");
    if (n == 0) return {0, 0};
    static thread_local std::map<Int, std::pair<Int, Int>> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    Int rest = n, square = 1, free = 1;
    unsigned long limit = 1000000;
    {
        Int root = isqrt_floor(rest);
        if (root < limit) limit = static_cast<unsigned long>(root.get_ui()) + 1;
    }
    for (unsigned long p = 2; p <= limit; p = (p == 2 ? 3 : p + 2)) {
        if (rest % p != 0) continue;
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2) square *= p;
        if (e % 2) free *= p;
        Int root = isqrt_floor(rest);
        if (root < limit) limit = static_cast<unsigned long>(root.get_ui()) + 1;
    }
    if (rest > 1) {
        if (is_perfect_square(rest)) {
            square *= isqrt_floor(rest);
        } else if (mpz_probab_prime_p(rest.get_mpz_t(), 32) != 0) {
            free *= rest;
        } else {
            std::map<Int, unsigned> fac;
            factor_into(rest, fac);
            for (auto& [p, e] : fac) {
                for (unsigned i = 0; i + 1 < e; i += 2) square *= p;
                if (e % 2) free *= p;
            }
        }
    }
    if (cache.size() > 100000) cache.clear();
    cache.emplace(n, std::pair{square, free});
    return {square, free};
}

Surd::Surd(Rat a, Rat b, Int d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ < 0) throw std::domain_error("Surd: negative radicand");
    if (b_ == 0 || d_ == 0) {
        b_ = 0;
        d_ = 0;
        return;
    }
    auto [sq, fr] = squarefree_decompose(d_);
    if (fr <= 1) {  // perfect square: collapses to a rational
        a_ += b_ * Rat(sq);
        b_ = 0;
        d_ = 0;
        return;
    }
    b_ *= Rat(sq);
    d_ = fr;
}

int Surd::sign() const {
    if (b_ == 0) return sgn(a_);
    if (a_ == 0) return sgn(b_);
    int sa = sgn(a_), sb = sgn(b_);
    if (sa == sb) return sa;
    // Opposite signs: the larger of |a| and |b| sqrt(d) decides.
    Rat lhs = a_ * a_, rhs = b_ * b_ * Rat(d_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

Surd operator+(const Surd& x, const Surd& y) {
    // Radicands are already canonical, so same-field sums need no rework.
    if (x.b_ == 0) return Surd(Surd::canonical_t{}, x.a_ + y.a_, y.b_, y.d_);
    if (y.b_ == 0) return Surd(Surd::canonical_t{}, x.a_ + y.a_, x.b_, x.d_);
    if (x.d_ != y.d_) throw std::domain_error("Surd: radicand mismatch in +");
    return Surd(Surd::canonical_t{}, x.a_ + y.a_, x.b_ + y.b_, x.d_);
}

Surd operator*(const Surd& x, const Surd& y) {
    if (x.b_ == 0) return Surd(Surd::canonical_t{}, x.a_ * y.a_, x.a_ * y.b_, y.d_);
    if (y.b_ == 0) return Surd(Surd::canonical_t{}, x.a_ * y.a_, y.a_ * x.b_, x.d_);
    if (x.d_ != y.d_) throw std::domain_error("Surd: radicand mismatch in *");
    return Surd(Surd::canonical_t{}, x.a_ * y.a_ + x.b_ * y.b_ * Rat(x.d_),
                x.a_ * y.b_ + x.b_ * y.a_, x.d_);
}

Surd operator/(const Surd& x, const Surd& y) {
    if (y.b_ == 0) {
        if (y.a_ == 0) throw std::domain_error("Surd: division by zero");
        return Surd(Surd::canonical_t{}, x.a_ / y.a_, x.b_ / y.a_, x.d_);
    }
    // Multiply by the conjugate; norm = a^2 - b^2 d is nonzero for d not a
    // perfect square.
    Rat norm = y.a_ * y.a_ - y.b_ * y.b_ * Rat(y.d_);
    Surd num = x * y.conjugate();
    return Surd(Surd::canonical_t{}, num.a_ / norm, num.b_ / norm, num.d_);
}

RatInterval Surd::enclosure(unsigned prec) const {
    RatInterval root = b_ == 0 ? RatInterval(Rat(0)) : sqrt_enclosure(d_, prec);
    return RatInterval(a_) + root * b_;
}

double Surd::approx() const { return enclosure(96).mid().get_d(); }

std::string Surd::to_string() const {
    if (b_ == 0) return a_.get_str();
    std::ostringstream os;
    if (a_ != 0) os << a_.get_str() << (b_ > 0 ? " + " : " - ");
    else if (b_ < 0) os << "-";
    Rat ab = abs(b_);
    if (ab != 1) os << ab.get_str() << "*";
    os << "sqrt(" << d_.get_str() << ")";
    return os.str();
}

SurdSum::SurdSum(const Surd& s) : r_(s.rational_part()) {
    if (!s.is_rational()) terms_[s.radicand()] = s.radical_coeff();
}

void SurdSum::add_term(const Int& d, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(d);
    if (it == terms_.end()) {
        terms_.emplace(d, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::optional<Surd> SurdSum::as_surd() const {
    if (terms_.empty()) return Surd(r_);
    if (terms_.size() == 1) {
        auto& [d, c] = *terms_.begin();
        return Surd(r_, c, d);
    }
    return std::nullopt;
}

SurdSum SurdSum::operator-() const {
    SurdSum out;
    out.r_ = -r_;
    for (auto& [d, c] : terms_) out.terms_.emplace(d, -c);
    return out;
}

SurdSum& SurdSum::operator+=(const SurdSum& o) {
    r_ += o.r_;
    for (auto& [d, c] : o.terms_) add_term(d, c);
    return *this;
}

SurdSum& SurdSum::operator*=(const Rat& c) {
    if (c == 0) return *this = SurdSum();
    r_ *= c;
    for (auto& [d, coef] : terms_) coef *= c;
    return *this;
}

SurdSum operator*(const SurdSum& x, const SurdSum& y) {
    SurdSum out(x.r_ * y.r_);
    for (auto& [d, c] : y.terms_) out.add_term(d, x.r_ * c);
    for (auto& [d, c] : x.terms_) out.add_term(d, y.r_ * c);
    for (auto& [d1, c1] : x.terms_)
        for (auto& [d2, c2] : y.terms_) {
            if (d1 == d2) {
                out.r_ += c1 * c2 * Rat(d1);
            } else {
                Int g;
                mpz_gcd(g.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
                // d1, d2 squarefree, so d1 d2 / g^2 is squarefree too.
                out.add_term(d1 / g * (d2 / g), c1 * c2 * Rat(g));
            }
        }
    return out;
}

int SurdSum::sign() const {
    if (is_zero()) return 0;
    if (terms_.empty()) return sgn(r_);
    // Nonzero by linear independence of sqrt of distinct squarefree numbers,
    // so the enclosure separates from 0 at some finite precision.
    for (unsigned prec = 64;; prec *= 2) {
        RatInterval e = enclosure(prec);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
    }
}

RatInterval SurdSum::enclosure(unsigned prec) const {
    RatInterval acc{Rat(r_)};
    for (auto& [d, c] : terms_) acc = acc + sqrt_enclosure(d, prec) * c;
    return acc;
}

double SurdSum::approx() const { return enclosure(96).mid().get_d(); }

std::string SurdSum::decimal(int digits) const {
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    for (unsigned prec = 64;; prec *= 2) {
        RatInterval e = enclosure(prec);
        Int lo = floor_div(e.lo.get_num() * scale, e.lo.get_den());
        Int hi = floor_div(e.hi.get_num() * scale, e.hi.get_den());
        if (lo == hi) {
            bool neg = lo < 0;
            Int a = abs(lo);
            Int ip = a / scale, fp = a % scale;
            std::string frac = fp.get_str();
            frac.insert(0, digits - frac.size(), '0');
            return (neg ? "-" : "") + ip.get_str() + "." + frac;
        }
        if (prec > (1u << 18)) throw std::runtime_error("SurdSum::decimal: value on a digit boundary");
    }
}

std::string SurdSum::to_string() const {
    if (terms_.empty()) return r_.get_str();
    std::ostringstream os;
    bool first = true;
    if (r_ != 0) {
        os << r_.get_str();
        first = false;
    }
    for (auto& [d, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat ac = abs(c);
        if (ac != 1) os << ac.get_str() << "*";
        os << "sqrt(" << d.get_str() << ")";
    }
    return os.str();
}

}  // namespace spectra
