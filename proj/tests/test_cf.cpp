#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spectra/cf.hpp"

using namespace spectra;
using namespace spectra::cf;

namespace {

Word rand_word(std::mt19937_64& rng, int maxlen, int N, int minlen = 1) {
    int len = minlen + static_cast<int>(rng() % (maxlen - minlen + 1));
    std::vector<int> d(len);
    for (int& x : d) x = 1 + static_cast<int>(rng() % N);
    return Word(d, N);
}

}  // namespace

TEST_CASE("convergent tables") {
    // Fibonacci ratios from the all-ones word.
    Convergents fib(Word({1, 1, 1, 1}), 0);
    CHECK(fib.p(4) == 3);
    CHECK(fib.q(4) == 5);

    Convergents c22(Word({2, 2}), 0);
    CHECK(c22.q(1) == 2);
    CHECK(c22.q(2) == 5);

    Convergents seed(Word(), 0);
    CHECK(seed.depth() == 0);
    CHECK(seed.p(-2) == 0);
    CHECK(seed.q(-1) == 0);
    CHECK(seed.p(-1) == 1);
    CHECK(seed.q(-2) == 1);
}

TEST_CASE("determinant and growth invariants on random words") {
    std::mt19937_64 rng(0);
    for (int it = 0; it < 500; ++it) {
        int N = 1 + static_cast<int>(rng() % 4);
        Word w = rand_word(rng, 9, N);
        Convergents c(w, 0);
        for (long k = 0; k <= c.depth(); ++k) {
            Int det = c.p(k) * c.q(k - 1) - c.p(k - 1) * c.q(k);
            CHECK(det == (k % 2 == 0 ? -1 : 1));  // (-1)^(k-1)
            if (k >= 2) {
                CHECK(c.q(k) > c.q(k - 1));
                CHECK(c.q(k - 1) * (N + 1) >= c.q(k));
            }
        }
    }
}

TEST_CASE("cylinder intervals") {
    CylinderInterval one = cylinder(Word({1}));
    CHECK(one.lo() == make_rat(1, 2));
    CHECK(one.hi() == 1);
    CHECK(one.length == make_rat(1, 2));

    CHECK(cylinder(Word({2, 2})).length == make_rat(1, 35));
    CHECK(cylinder(Word({1, 1})).length == make_rat(1, 6));
    CHECK_THROWS(cylinder(Word()));

    // Orientation alternates with the parity of n: p_n/q_n approaches from
    // below for even n, from above for odd n.
    CylinderInterval w1 = cylinder(Word({2}));
    CHECK(w1.endpoint_convergent == w1.hi());
    CylinderInterval w2 = cylinder(Word({2, 1}));
    CHECK(w2.endpoint_convergent == w2.lo());
}

TEST_CASE("length formula equals endpoint difference, exhaustive n<=6 N<=4") {
    for (int N = 1; N <= 4; ++N) {
        std::vector<std::vector<int>> stack{{}};
        while (!stack.empty()) {
            std::vector<int> w = stack.back();
            stack.pop_back();
            if (!w.empty()) {
                CylinderInterval ci = cylinder(Word(w, N));
                CHECK(ci.length == ci.hi() - ci.lo());
            }
            if (w.size() < 6)
                for (int a = 1; a <= N; ++a) {
                    auto x = w;
                    x.push_back(a);
                    stack.push_back(std::move(x));
                }
        }
    }
}

TEST_CASE("eval_periodic basics") {
    Surd golden = eval_periodic(Word(), Word({1}));
    CHECK(golden == Surd(make_rat(-1, 2), make_rat(1, 2), 5));

    Surd B2 = eval_periodic(Word(), Word({1, 2}), 0, 2);
    CHECK(B2 == Surd(Rat(-1), make_rat(1, 2), 12));  // (sqrt12-2)/2
    CHECK(B2.approx() == doctest::Approx(0.7320508).epsilon(1e-6));

    Surd A2 = eval_periodic(Word(), Word({2, 1}), 0, 2);
    CHECK(A2 == Surd(make_rat(-1, 2), make_rat(1, 4), 12));  // (sqrt12-2)/4
    CHECK(A2.approx() == doctest::Approx(0.3660254).epsilon(1e-6));

    CHECK(A2 == B2 * make_rat(1, 2));  // A_N = B_N / N

    CHECK_THROWS(eval_periodic(Word(), Word()));
    CHECK_THROWS(eval_periodic(Word(), Word({3}), 0, 2));  // digit above bound
}

TEST_CASE("periodic value is fixed by its Moebius map") {
    std::mt19937_64 rng(1);
    for (int it = 0; it < 200; ++it) {
        int N = 1 + static_cast<int>(rng() % 4);
        Word per = rand_word(rng, 6, N);
        Surd T = eval_periodic(Word(), per);
        Surd back = Convergents(per, 0).apply(T);
        CHECK(T == back);
        CHECK(T.sign() == 1);
        CHECK(T < Surd(Rat(1)));
    }
}

TEST_CASE("compare: examples and dual representation") {
    auto e = [](const char* s) { return CFExpansion::parse(s); };
    CHECK(compare(e("0;1"), e("0;2")).order == 1);
    CHECK(compare(e("0;1,2"), e("0;1,3")).order == -1);
    CHECK(compare(e("0;:(1)*"), e("0;:(1)*")).order == 0);

    // [..., a_n] = [..., a_n - 1, 1]
    CHECK(compare(e("0;2,3"), e("0;2,2,1")).order == 0);
    CHECK(compare(e("0;1"), e("1;")).order == 0);
    CHECK(compare(e("0;:(1)*"), e("0;1:(1)*")).order == 0);
    CHECK(compare(e("0;:(2,1)*"), e("0;2:(1,2)*")).order == 0);

    auto r = compare(e("0;1,2,1,1,2"), e("0;1,2,1,2,2"));
    CHECK(r.agree_depth == 3);
    CHECK(r.closeness_bound == make_rat(1, 4));
}

TEST_CASE("compare agrees with exact evaluation") {
    std::vector<Word> words;
    std::vector<std::vector<int>> stack{{}};
    while (!stack.empty()) {
        auto w = stack.back();
        stack.pop_back();
        if (!w.empty()) words.push_back(Word(w, 3));
        if (w.size() < 6)
            for (int a = 1; a <= 3; ++a) {
                auto x = w;
                x.push_back(a);
                stack.push_back(std::move(x));
            }
    }
    std::mt19937_64 rng(2);
    // Finite pairs against exact rationals.
    for (int it = 0; it < 4000; ++it) {
        const Word& a = words[rng() % words.size()];
        const Word& b = words[rng() % words.size()];
        CFExpansion ea{0, a, Word()}, eb{0, b, Word()};
        int got = compare(ea, eb).order;
        Rat va = eval_finite(a), vb = eval_finite(b);
        int want = va == vb ? 0 : (va > vb ? 1 : -1);
        CHECK(got == want);
    }
    // Eventually periodic pairs against exact surd comparison.
    for (int it = 0; it < 2000; ++it) {
        Word pa = rand_word(rng, 3, 3), qa = rand_word(rng, 3, 3);
        Word pb = rand_word(rng, 3, 3), qb = rand_word(rng, 3, 3);
        CFExpansion ea{0, pa, qa}, eb{0, pb, qb};
        int got = compare(ea, eb).order;
        int want = (SurdSum(eval(ea)) - SurdSum(eval(eb))).sign();
        CHECK(got == want);
    }
}

TEST_CASE("closeness bound holds") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 500; ++it) {
        Word shared = rand_word(rng, 8, 3);
        Word ta = rand_word(rng, 4, 3), tb = rand_word(rng, 4, 3);
        CFExpansion ea{0, concat(shared, ta), Word()}, eb{0, concat(shared, tb), Word()};
        auto r = compare(ea, eb);
        if (r.order == 0) continue;
        Rat diff = abs(eval_finite(ea.pre) - eval_finite(eb.pre));
        CHECK(diff < r.closeness_bound);
    }
}

TEST_CASE("separation lower bound") {
    // Empty prefix, N=2: gap = [0;1,ovl(1,2)] - [0;2,ovl(2,1)].
    SeparationBound s0 = separation_constant(2);
    CHECK(!s0.degenerate);
    Surd expect = eval_periodic(Word({1}), Word({1, 2})) - eval_periodic(Word({2}), Word({2, 1}));
    CHECK(s0.exact_gap == expect);
    CHECK(s0.bound > 0);
    CHECK(Surd(s0.bound) <= s0.exact_gap);

    // Prefix (1), N=2: minimize the gap over the two sub-cylinders of I(1).
    SeparationBound s1 = separation_lower_bound(Word({1}), 2);
    Surd B2 = B_extreme(2), A2 = A_extreme(2);
    Surd hi11 = Surd(Rat(1)) / (Surd(Rat(1)) + Surd(Rat(1)) / (Surd(Rat(1)) + B2));
    Surd lo12 = Surd(Rat(1)) / (Surd(Rat(1)) + Surd(Rat(1)) / (Surd(Rat(2)) + A2));
    CHECK(s1.exact_gap == lo12 - hi11);
    CHECK(s1.exact_gap.approx() == doctest::Approx(0.0689).epsilon(1e-2));

    SeparationBound d = separation_lower_bound(Word({1, 1}, 1), 1);
    CHECK(d.degenerate);
    CHECK_THROWS(separation_lower_bound(Word(), 0));
}

TEST_CASE("separation bound certifies actual pairs") {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 300; ++it) {
        int N = 2 + static_cast<int>(rng() % 3);
        Word prefix = rand_word(rng, 5, N, 0);
        SeparationBound sb = separation_lower_bound(prefix, N);
        int d1 = 1 + static_cast<int>(rng() % N);
        int d2 = 1 + static_cast<int>(rng() % N);
        if (d1 == d2) d2 = d2 == N ? d2 - 1 : d2 + 1;
        Word ta = rand_word(rng, 4, N), tb = rand_word(rng, 4, N);
        Surd va = eval_periodic(concat(prefix.appended(d1), ta), rand_word(rng, 3, N));
        Surd vb = eval_periodic(concat(prefix.appended(d2), tb), rand_word(rng, 3, N));
        SurdSum diff = SurdSum(va) - SurdSum(vb);
        if (diff.sign() < 0) diff = -diff;
        CHECK((diff - SurdSum(sb.bound)).sign() >= 0);
    }
}

TEST_CASE("distortion constant") {
    // Depth 1, N=2: exhaustive over the four pairs.
    Rat c1 = distortion_constant(2, 1);
    Rat best(1);
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            Rat r = cylinder_length(Word({a, b})) /
                    (cylinder_length(Word({a})) * cylinder_length(Word({b})));
            if (r < 1) r = 1 / r;
            best = std::max(best, r);
        }
    CHECK(c1 == best);
    CHECK(c1 >= make_rat(3, 2));  // from |I(1,1)|/|I(1)|^2 = 2/3

    // Monotone in depth.
    Rat prev = c1;
    for (int dep = 2; dep <= 6; ++dep) {
        Rat c = distortion_constant(2, dep);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("distortion inequality and geometric bounds, random depth<=8 N<=3") {
    std::mt19937_64 rng(5);
    for (int N = 2; N <= 3; ++N) {
        Rat C = distortion_constant(N, 8);
        auto [l1, l2] = contraction_bounds(N);
        for (int it = 0; it < 400; ++it) {
            Word a = rand_word(rng, 8, N), b = rand_word(rng, 8, N);
            Rat la = cylinder_length(a), lb = cylinder_length(b);
            Rat lab = cylinder_length(concat(a, b));
            CHECK(lab * C >= la * lb);
            CHECK(lab <= C * la * lb);
            Rat p1(1), p2(1);
            for (std::size_t i = 0; i < a.size(); ++i) p1 *= l1, p2 *= l2;
            CHECK(la * C >= p1);
            CHECK(la <= C * p2);
        }
    }
}

TEST_CASE("closed-form one, two and three step ratios match direct computation") {
    std::mt19937_64 rng(6);
    for (int it = 0; it < 500; ++it) {
        int N = 2 + static_cast<int>(rng() % 3);
        Word w = rand_word(rng, 7, N);
        int a = 1 + static_cast<int>(rng() % N), b = 1 + static_cast<int>(rng() % N),
            c = 1 + static_cast<int>(rng() % N);
        Convergents cv(w, 0);
        long n = cv.depth();
        Rat r = make_rat(cv.q(n - 1), cv.q(n));
        Rat direct1 = cylinder_length(w.appended(a)) / cylinder_length(w);
        CHECK(one_step_ratio(a, r) == direct1);
        Rat direct2 = cylinder_length(w.appended(a).appended(b)) / cylinder_length(w);
        CHECK(two_step_ratio(a, b, r) == direct2);
        Rat direct3 = cylinder_length(w.appended(a).appended(b).appended(c)) / cylinder_length(w);
        CHECK(three_step_ratio(a, b, c, r) == direct3);
    }
}

TEST_CASE("named constants") {
    auto table = named_constants();
    auto find = [&](const std::string& name) {
        for (auto& c : table)
            if (c.name == name) return c;
        throw std::runtime_error("missing constant " + name);
    };

    CHECK(find("freiman_cF").value.decimal(11) == "4.52782956616");
    CHECK(find("junction_gate_2_221").value.decimal(4) == "3.0406");
    CHECK(find("eta_floor_2_13_14").value.decimal(4) == "3.4109");

    // max f|Lambda(N) = sqrt(N^2+4N) = 2 B_N + N and min = 2 A_N + 1, exactly.
    for (int N : {2, 3, 4}) {
        SurdSum lhs = find("max_f_lambda_" + std::to_string(N)).value;
        CHECK(lhs == SurdSum(B_extreme(N)) * Rat(2) + SurdSum(Rat(N)));
        SurdSum lo = find("min_f_lambda_" + std::to_string(N)).value;
        CHECK(lo == SurdSum(A_extreme(N)) * Rat(2) + SurdSum(Rat(1)));
    }
    CHECK(find("max_f_lambda_2").value.decimal(7) == "3.4641016");

    // >= 15 correct digits available on demand.
    CHECK(find("junction_gate_2_221").value.decimal(15).size() >= 17);
}

TEST_CASE("tail enclosures") {
    RatInterval t = tail_enclosure({}, 2);
    CHECK(t.lo < make_rat(37, 100));
    CHECK(t.hi > make_rat(73, 100));
    CHECK(t.hi < make_rat(74, 100));

    RatInterval t2 = tail_enclosure({2, 2}, 2);
    CHECK(t2.contains(SurdSum(eval_periodic(Word({2, 2}), Word({1, 2}))).enclosure().lo));
    CHECK(t2.contains(SurdSum(eval_periodic(Word({2, 2}), Word({2, 1}))).enclosure().hi));

    RatInterval t3 = tail_enclosure_restricted({}, 2, {2});
    CHECK(t3.hi < make_rat(1, 2));
    CHECK(t3.lo > make_rat(1, 3));
}

TEST_CASE("derivative closed form vs finite differences") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Rat x(1 + static_cast<long>(rng() % 20)), y(1 + static_cast<long>(rng() % 6));
        Rat z(1 + static_cast<long>(rng() % 20)), w(1 + static_cast<long>(rng() % 6));
        Rat r = make_rat(static_cast<long>(rng() % 100), 100);
        auto f = [&](const Rat& t) -> Rat { return (1 + t) / ((x + y * t) * (z + w * t)); };
        Rat h(1, 1000000);
        Rat fd = (f(r + h) - f(r - h)) / (2 * h);
        Rat exact = ratio_derivative(x, y, z, w, r);
        double rel = std::abs(fd.get_d() - exact.get_d()) / std::max(1e-12, std::abs(exact.get_d()));
        CHECK(rel < 1e-4);
        // The r-free numerator dominates the true numerator for r >= 0.
        Rat den = (y * w * r * r + (x * w + y * z) * r + x * z);
        CHECK(exact < ratio_derivative_bound_numerator(x, y, z, w) / (den * den) + Rat(1, 1000000000));
    }
}
