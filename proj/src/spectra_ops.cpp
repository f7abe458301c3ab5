#include "spectra/spectra_ops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace spectra::spec {

namespace {

using sft::TransitionGraph;
using sym::BiSeq;

double rat_ln(const Rat& x) {
    // log of a positive rational whose magnitude may be far outside double range.
    signed long ne, de;
    double nd = mpz_get_d_2exp(&ne, x.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&de, x.get_den().get_mpz_t());
    return std::log(std::abs(nd)) - std::log(std::abs(dd)) +
           (static_cast<double>(ne) - static_cast<double>(de)) * std::log(2.0);
}

}  // namespace

int oscillation_window(const Rat& eps) {
    if (eps <= 0) throw std::invalid_argument("oscillation_window: eps > 0");
    int ell = 1;
    while (Rat(Rat(2) / (Int(1) << (ell - 1))) >= eps / 4) {
        ++ell;
        if (ell > 60) throw std::invalid_argument("oscillation_window: eps too small");
    }
    return ell;
}

std::vector<Word> PruneResult::kept() const {
    std::vector<Word> out = certified;
    out.insert(out.end(), possible.begin(), possible.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Certified lower bound of lambda at window index j over every N-bounded
// bi-infinite extension of the word.
Rat window_lambda_lo(const std::vector<int>& w, std::size_t j, int N, unsigned prec) {
    std::vector<int> right(w.begin() + static_cast<long>(j) + 1, w.end());
    std::vector<int> left(w.rbegin() + static_cast<long>(w.size() - j), w.rend());
    return Rat(w[j]) + cf::tail_enclosure(right, N, prec).lo + cf::tail_enclosure(left, N, prec).lo;
}

// Periodic witness whose 0..2l window is w: tries overline(w) and
// overline(w 1^pad).
std::optional<BiSeq> find_witness(const Word& w, int N, const Rat& thr) {
    for (int pad = 0; pad <= 4; ++pad) {
        std::vector<int> period = w.digits();
        for (int i = 0; i < pad; ++i) period.push_back(1);
        BiSeq cand = BiSeq::periodic(Word(period, N), N);
        SurdSum m = sym::markov_value(cand).value;
        if ((SurdSum(thr) - m).sign() >= 0) return cand;
    }
    return std::nullopt;
}

// Proves R(word) cap Lambda_thr empty by branching on the extension digits:
// a branch dies once any position of the extended word has its lambda lower
// bound (over all remaining completions) above the threshold. Returns the
// least certificate bound over the leaves, or nothing if some branch
// survives the budget. Sound either way: an inconclusive word stays kept.
std::optional<Rat> extensions_all_exceed(std::vector<int>& w, int N, const Rat& thr,
                                         unsigned prec, int budget, int left_added,
                                         int right_added) {
    for (std::size_t j = 0; j < w.size(); ++j) {
        Rat lb = window_lambda_lo(w, j, N, prec);
        if (lb > thr) return lb;
    }
    if (budget == 0) return std::nullopt;
    std::optional<Rat> weakest;
    if (right_added <= left_added) {
        for (int d = 1; d <= N; ++d) {
            w.push_back(d);
            auto sub = extensions_all_exceed(w, N, thr, prec, budget - 1, left_added,
                                             right_added + 1);
            w.pop_back();
            if (!sub) return std::nullopt;
            if (!weakest || *sub < *weakest) weakest = sub;
        }
    } else {
        for (int d = 1; d <= N; ++d) {
            w.insert(w.begin(), d);
            auto sub = extensions_all_exceed(w, N, thr, prec, budget - 1, left_added + 1,
                                             right_added);
            w.erase(w.begin());
            if (!sub) return std::nullopt;
            if (!weakest || *sub < *weakest) weakest = sub;
        }
    }
    return weakest;
}

}  // namespace

PruneResult prune_words(int N, const Rat& t, const Rat& eps, int ell) {
    if (N < 1) throw std::invalid_argument("prune_words: N >= 1");
    if (eps <= 0) throw std::invalid_argument("prune_words: eps > 0");
    if (ell < 1) throw std::invalid_argument("prune_words: ell >= 1");
    if ((SurdSum(t) - SurdSum(cf::max_f(N))).sign() > 0)
        throw std::invalid_argument("prune_words: t exceeds max f|Lambda(N) = sqrt(N^2+4N)");

    PruneResult out;
    out.N = N;
    out.t = t;
    out.eps = eps;
    out.ell = ell;
    out.threshold = t + eps / 4;
    out.pruned_count = 0;

    const std::size_t len = 2 * static_cast<std::size_t>(ell) + 1;
    double total = std::pow(static_cast<double>(N), static_cast<double>(len));
    const bool materialize = total <= 65536.0;
    out.pruned_list_elided = !materialize;
    unsigned prec = precision_bits();

    // DFS with an early certificate cut: once a position with known right
    // neighbourhood has its lambda lower bound above the threshold, the whole
    // subtree is pruned.
    std::vector<int> word;
    word.reserve(len);
    auto subtree_count = [&](std::size_t depth) {
        return static_cast<std::size_t>(
            std::pow(static_cast<double>(N), static_cast<double>(len - depth)));
    };
    std::function<void()> dfs = [&]() {
        std::size_t k = word.size();
        if (k >= 2 && !materialize) {
            std::size_t j = k - 2;  // right neighbor of j just became known
            Rat lb = window_lambda_lo(word, j, N, prec);
            if (lb > out.threshold) {
                out.pruned_count += subtree_count(k);
                out.certificates.push_back({Word(word, N), static_cast<long>(j) - ell, lb});
                return;
            }
        }
        if (k == len) {
            Word w(word, N);
            std::optional<PruneCertificate> cert;
            for (std::size_t j = 0; j < len && !cert; ++j) {
                Rat lb = window_lambda_lo(word, j, N, prec);
                if (lb > out.threshold)
                    cert = PruneCertificate{w, static_cast<long>(j) - ell, lb, false};
            }
            if (!cert) {
                if (auto wit = find_witness(w, N, out.threshold)) {
                    out.certified.push_back(w);
                    out.witnesses.push_back(std::move(*wit));
                    return;
                }
                // Neither a one-position certificate nor a witness: branch on
                // the extensions before conceding "possibly nonempty".
                std::vector<int> ext = word;
                if (auto lb = extensions_all_exceed(ext, N, out.threshold, prec,
                                                    2 * ell > 12 ? 12 : 2 * ell, 0, 0))
                    cert = PruneCertificate{w, 0, *lb, true};
            }
            if (cert) {
                ++out.pruned_count;
                if (materialize) {
                    out.pruned.push_back(w);
                    out.certificates.push_back(*cert);
                }
                return;
            }
            out.possible.push_back(w);
            return;
        }
        for (int a = 1; a <= N; ++a) {
            word.push_back(a);
            dfs();
            word.pop_back();
        }
    };
    dfs();

    out.everything_pruned = out.certified.empty() && out.possible.empty();
    if (out.everything_pruned) {
        std::ostringstream os;
        os << "every window word is pruned: t + eps/4 = " << out.threshold.get_d()
           << " lies below the oscillation floor above min f|Lambda(" << N
           << ") = sqrt(N^2+4N)/N = " << SurdSum(cf::min_f(N)).decimal(6);
        out.diagnostic = os.str();
    }
    return out;
}

PtResult build_Pt(const PruneResult& pr) {
    PtResult out;
    out.empty_core = false;
    std::vector<Word> kept = pr.kept();
    if (kept.empty()) {
        out.empty_core = true;
        out.diagnostic = "nothing kept: " + pr.diagnostic;
        return out;
    }
    out.kept_graph = TransitionGraph(kept, pr.N);
    out.kept_graph.core_prune();
    if (out.kept_graph.empty()) {
        out.empty_core = true;
        out.diagnostic = "kept words admit no bi-infinite path (empty core)";
        return out;
    }
    out.decomposition = sft::scc_decompose(out.kept_graph);
    if (!pr.certified.empty()) {
        out.certified_graph = TransitionGraph(pr.certified, pr.N);
        out.certified_graph.core_prune();
    }
    return out;
}

DEstimate D_estimate(int N, const Rat& t, const Rat& eps, int ell, int depth,
                     dim::HdOptions opts) {
    PruneResult pr = prune_words(N, t, eps, ell);
    DEstimate out;
    out.empty = false;
    out.D.depth = depth;
    out.D.method = "cover-bisection";
    out.D.distortion = N >= 2 ? cf::distortion_constant(N, 5) : Rat(1);
    PtResult pt = build_Pt(pr);
    if (pt.empty_core) {
        out.empty = true;
        out.diagnostic = pt.diagnostic;
        out.D.lo = 0;
        out.D.hi = 0;
        out.d = RatInterval(Rat(0));
        return out;
    }
    out.D.hi = dim::hd_bounds(pt.kept_graph, depth, opts).hi;
    out.D.lo = 0;
    if (!pt.certified_graph.empty())
        out.D.lo = dim::hd_bounds(pt.certified_graph, depth, opts).lo;
    out.D.lo = std::min(out.D.lo, out.D.hi);
    out.d = RatInterval(std::min(Rat(1), Rat(2 * out.D.lo)), std::min(Rat(1), Rat(2 * out.D.hi)));
    return out;
}

SpectrumScan scan(int N, const std::vector<Rat>& grid, const Rat& eps, int ell, int depth,
                  dim::HdOptions opts) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1])) throw std::invalid_argument("scan: grid must be ascending");
    SurdSum c_f;
    for (const auto& c : cf::named_constants())
        if (c.name == "freiman_cF") c_f = c.value;
    SpectrumScan out;
    Rat running_lo(0);
    for (const Rat& t : grid) {
        ScanPoint p;
        p.t = t;
        p.estimate = D_estimate(N, t, eps, ell, depth, opts);
        // The sublevel language only grows with t, so certified lower bounds
        // persist rightwards.
        running_lo = std::max(running_lo, p.estimate.D.lo);
        p.estimate.D.lo = running_lo;
        p.estimate.d = RatInterval(std::min(Rat(1), Rat(2 * p.estimate.D.lo)), p.estimate.d.hi);
        p.interior_verified = (SurdSum(t) - c_f).sign() >= 0;
        out.points.push_back(std::move(p));
    }
    for (std::size_t i = 0; i + 1 < out.points.size(); ++i)
        if (out.points[i].estimate.D.hi < out.points[i + 1].estimate.D.lo)
            out.certified_increase.push_back(i);
    return out;
}

std::vector<SurdSum> discrete_below_3(int max_period) {
    if (max_period < 1) throw std::invalid_argument("discrete_below_3: max_period >= 1");
    std::vector<SurdSum> values;
    std::vector<int> word;
    std::function<void()> rec = [&]() {
        if (!word.empty()) {
            SurdSum m = sym::markov_value(BiSeq::periodic(Word(word, 2), 2)).value;
            if ((m - SurdSum(Rat(3))).sign() < 0) {
                bool dup = false;
                for (const auto& v : values)
                    if (v == m) dup = true;
                if (!dup) values.push_back(std::move(m));
            }
        }
        if (static_cast<int>(word.size()) < max_period)
            for (int a = 1; a <= 2; ++a) {
                word.push_back(a);
                rec();
                word.pop_back();
            }
    };
    rec();
    std::sort(values.begin(), values.end(),
              [](const SurdSum& a, const SurdSum& b) { return (a - b).sign() < 0; });
    return values;
}

// ---- theta splice -----------------------------------------------------------------

ChainComponent make_chain_component(const TransitionGraph& g, const Rat& precision) {
    TransitionGraph core = g;
    core.core_prune();
    sym::MaxLambdaResult r = sym::max_lambda0_on_subshift(core, precision);
    return {core, r.witness, r.witness_center, r.witness_value, r.enclosure.hi};
}

namespace {

Int factorial(long n) {
    Int f = 1;
    for (long k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

SpliceResult splice_theta(const sym::Ray& base, const std::vector<ChainComponent>& chain,
                          long prefix_length, SpliceOptions opts) {
    if (base.period.empty()) throw std::invalid_argument("splice_theta: base needs a period");
    if (prefix_length < 1) throw std::invalid_argument("splice_theta: prefix_length >= 1");
    if (!opts.r_override.empty() && opts.r_override.size() < chain.size())
        throw std::invalid_argument("splice_theta: r_override shorter than the chain");

    SpliceResult out;
    // Radii: override, or r(n) = n + r0 with 2^-r0 below the least chain gap.
    int r0 = opts.r0;
    if (opts.r_override.empty() && r0 < 0) {
        Rat gap(1);
        for (std::size_t n = 0; n + 1 < chain.size(); ++n) {
            Rat g = (chain[n + 1].max_value - chain[n].max_value).enclosure().lo;
            if (g > 0 && g < gap) gap = g;
        }
        r0 = 1;
        while (make_rat(1, Int(1) << r0) >= gap && r0 < 40) ++r0;
    }

    long running_s = 0;
    for (std::size_t n = 0; n < chain.size(); ++n) {
        const ChainComponent& comp = chain[n];
        int r = !opts.r_override.empty() ? opts.r_override.at(n) : static_cast<int>(n) + 1 + r0;
        int L = comp.graph.word_length();
        // Connector pads inside the component when it has room; the ambient
        // full shift joins blocks to base digits either way.
        int c = 0;
        sft::Decomposition dc = sft::scc_decompose(comp.graph);
        if (dc.components.size() == 1 && dc.periods.at(0) == 1 && comp.graph.size() > 1)
            c = std::max(0, sft::primitivity_index(comp.graph, dc, 0) - L);

        std::vector<int> window;
        for (long j = -r; j <= r; ++j)
            window.push_back(comp.witness.digit(comp.witness_center + j));
        if (!comp.graph.word_admissible(Word(window, comp.graph.alphabet_bound())))
            throw std::invalid_argument(
                "splice_theta: block core is not admissible in its chain component");
        std::vector<int> c1, c2;
        if (c > 0) {
            std::size_t lz = static_cast<std::size_t>(L);
            Word head(std::vector<int>(window.begin(), window.begin() + static_cast<long>(std::min(window.size(), lz))),
                      comp.graph.alphabet_bound());
            Word tail(std::vector<int>(window.end() - static_cast<long>(std::min(window.size(), lz)), window.end()),
                      comp.graph.alphabet_bound());
            auto hv = comp.graph.find(head), tv = comp.graph.find(tail);
            if (!hv || !tv)
                throw std::invalid_argument("splice_theta: witness window leaves the component");
            c1 = sft::connector_exact(comp.graph, dc, 0, *tv, *hv, c).between.digits();
            c2 = sft::connector_exact(comp.graph, dc, 0, *tv, *hv, c).between.digits();
        }
        std::vector<int> block = c1;
        block.insert(block.end(), window.begin(), window.end());
        block.insert(block.end(), c2.begin(), c2.end());

        out.schedule.r.push_back(r);
        out.schedule.c.push_back(c);
        running_s += 2 * r + 2 * c + 1;
        out.schedule.s.push_back(running_s);
        out.schedule.insertion_positions.push_back(factorial(running_s));
        out.schedule.blocks.push_back(std::move(block));
    }

    auto base_digit = [&](long i) -> int {
        std::size_t k = static_cast<std::size_t>(i);
        if (k < base.pre.size()) return base.pre[k];
        return base.period[(k - base.pre.size()) % base.period.size()];
    };

    out.digits.reserve(static_cast<std::size_t>(prefix_length));
    out.insertions_emitted = 0;
    long base_idx = 0;
    std::size_t next_ins = 0;
    while (static_cast<long>(out.digits.size()) < prefix_length) {
        out.digits.push_back(base_digit(base_idx));
        if (next_ins < out.schedule.blocks.size() &&
            Int(base_idx) == out.schedule.insertion_positions[next_ins]) {
            bool complete = true;
            for (int d : out.schedule.blocks[next_ins]) {
                if (static_cast<long>(out.digits.size()) >= prefix_length) {
                    complete = false;
                    break;
                }
                out.digits.push_back(d);
            }
            if (complete) ++out.insertions_emitted;
            ++next_ins;
        }
        ++base_idx;
    }
    return out;
}

HolderProbe holder_exponent_probe(const std::vector<ChainComponent>& chain,
                                  const std::vector<long>& depths, int pairs_per_depth,
                                  unsigned seed) {
    if (depths.empty() || pairs_per_depth < 1)
        throw std::invalid_argument("holder_exponent_probe: empty sample");
    long dmin = *std::min_element(depths.begin(), depths.end());
    long dmax = *std::max_element(depths.begin(), depths.end());
    if (dmin < 2 || dmax < 100 * dmin)
        throw std::invalid_argument(
            "holder_exponent_probe: agreement depths must span >= 2 decades");
    std::size_t total = depths.size() * static_cast<std::size_t>(pairs_per_depth);
    if (total < 30) throw std::invalid_argument("holder_exponent_probe: need >= 30 pairs");

    std::mt19937_64 rng(seed);
    std::vector<double> X, Y;
    for (long s : depths) {
        for (int p = 0; p < pairs_per_depth; ++p) {
            std::vector<int> prefix;
            for (long k = 0; k + 1 < s; ++k) prefix.push_back(1 + static_cast<int>(rng() % 2));
            auto make_ray = [&](int d) {
                std::vector<int> pre = prefix;
                pre.push_back(d);
                return sym::Ray{Word(pre, 2), Word({d}, 2)};
            };
            sym::Ray a1 = make_ray(1), a2 = make_ray(2);

            // Exact values of the emitted streams continued with the base
            // period. The same truncated estimator is used on both sides, so
            // the identity chain gives slope 1 exactly.
            long horizon = s + 400;
            auto value_through = [&](const sym::Ray& a,
                                     const std::vector<ChainComponent>& via) {
                SpliceResult t = splice_theta(a, via, horizon);
                std::vector<int> pre(t.digits.begin() + 1, t.digits.end());
                return cf::eval_periodic(Word(pre, 0), a.period, t.digits.front());
            };
            SurdSum base_diff =
                SurdSum(value_through(a1, {})) - SurdSum(value_through(a2, {}));
            if (base_diff.sign() < 0) base_diff = -base_diff;
            SurdSum theta_diff =
                SurdSum(value_through(a1, chain)) - SurdSum(value_through(a2, chain));
            if (theta_diff.sign() < 0) theta_diff = -theta_diff;
            if (base_diff.is_zero() || theta_diff.is_zero()) continue;
            Y.push_back(rat_ln(base_diff.enclosure().hi));
            X.push_back(rat_ln(theta_diff.enclosure().hi));
        }
    }
    if (X.size() < 30 ||
        *std::max_element(X.begin(), X.end()) == *std::min_element(X.begin(), X.end()))
        throw std::invalid_argument("holder_exponent_probe: degenerate sample");

    double n = static_cast<double>(X.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        sx += X[i];
        sy += Y[i];
        sxx += X[i] * X[i];
        sxy += X[i] * Y[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;
    double rss = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double e = Y[i] - (slope * X[i] + intercept);
        rss += e * e;
    }
    return {slope, std::sqrt(rss / n), X.size()};
}

}  // namespace spectra::spec
