#pragma once

#include <functional>
#include <string>

#include "spectra/cf.hpp"
#include "spectra/subshift.hpp"

namespace spectra::dim {

// Outward-rounded x^s over exact rational intervals (0 < x.lo, 0 < s <= 1).
RatInterval pow_interval(const RatInterval& x, const Rat& s, unsigned prec = precision_bits());

struct CoverSum {
    Rat s;
    int depth;
    RatInterval value;  // enclosure of sum |I(w)|^s over admissible depth-words
    std::size_t cover_size;
};

// H_s of the depth-`depth` cylinder cover of the graph's one-sided language.
// Exact cylinder lengths, outward-rounded powers. Throws on an empty core.
CoverSum cover_sum(const sft::TransitionGraph& g, int depth, const Rat& s);

struct DimBound {
    Rat lo, hi;
    int depth;
    std::string method;
    Rat distortion;                  // module distortion constant recorded with the bound
    bool transpose_mismatch = false; // set by component_dimension when K^s and K^u disagree
};

struct HdOptions {
    int steps = 48;          // k in the k-step refinement ratio test
    Rat tol = Rat(1, 10000); // bisection tolerance on s
};

// Certified enclosure of the Hausdorff dimension of the graph's unstable
// Cantor set (right-infinite admissible tails). Per strongly connected
// component: the k-step refinement ratio test
//     sum over k-step descendants (|I_child|/|I_parent|)^s <= 1  (resp. >= 1)
// is verified for every parent of depth >= `depth` at once, by interval
// dynamic programming over depth-`depth` suffix states whose ratio argument
// r = q_{n-1}/q_n ranges over the exact reversed-word cylinder. Upper bound:
// least s passing the <= test; lower: greatest s passing the >= test. Trivial
// single-cycle components give [0, 0].
DimBound hd_bounds(const sft::TransitionGraph& g, int depth, HdOptions opts = {});

// Cover-sum route with explicit distortion correction, valid on
// concatenation-closed languages (full shifts): HD <= s once
// C^s H_s(depth) <= 1 and HD >= s once H_s(depth) >= C^s. Used as an
// independent cross-check of hd_bounds.
DimBound hd_bounds_multiplicative(const sft::TransitionGraph& g, int depth,
                                  const Rat& tol = Rat(1, 10000));

// ---- cover refinement -------------------------------------------------------

using BranchingOracle = std::function<std::vector<Word>(const Word&)>;

struct RefineResult {
    std::vector<Word> cover;
    RatInterval h_before, h_after;  // H_s around the step
};

// Replaces every cover interval by its oracle children; children must extend
// their parent. H_s is reported before and after.
RefineResult refine_cover(const std::vector<Word>& cover, const BranchingOracle& oracle,
                          const Rat& s = Rat(49, 100));

// The two §-style canned branching rules: the six-interval replacement
// I(w) -> I(w,i,1,j), I(w,i+1,j) for j in m+1..m+3, and the two-interval
// replacement I(w) -> I(w,1,1), I(w,2,2).
BranchingOracle six_child_rule(int m, int i);
BranchingOracle two_child_rule();

// ---- inequality verifiers --------------------------------------------------

struct Eq32Case {
    int i;
    Rat first_sum_sup;   // certified sup over r in [0,1]
    Rat second_sum_sup;
    bool first_ok;       // < 0.412
    bool second_ok;      // < 0.579
    bool total_ok;       // sum < 1
};

struct Eq32Record {
    int m;
    Rat s;
    std::vector<Eq32Case> cases;
    bool all_ok;
    Rat largest_passing_s;  // over the grid {0.40, 0.41, ..., 0.50}
};

// Certifies, for all i in [1, m+2] and all r in [0,1], the two branch sums
// of the six-interval refinement against 0.412 and 0.579 (monotone fast path
// via the derivative bound, interval subdivision otherwise).
Eq32Record eq32_verify(int m, const Rat& s = Rat(49, 100));

struct N2BranchRecord {
    Rat s;
    Rat sum_sup;  // certified sup of (|I(w11)|/|I(w)|)^s + (|I(w22)|/|I(w)|)^s
    bool ok;      // < 0.9
};

N2BranchRecord n2_branch_verify(const Rat& s = Rat(49, 100));

// ---- whole-set dimension ----------------------------------------------------

struct ComponentBounds {
    DimBound unstable;  // K^u of the component graph
    DimBound stable;    // K^u of the transposed graph = K^s
};

std::vector<ComponentBounds> component_bounds(const sft::TransitionGraph& g,
                                              const sft::Decomposition& d, int depth,
                                              HdOptions opts = {});

// Eq.-(3.1)/(A.2) combination: max over components of 2 HD(K^u) and over
// transient sets of HD(K^s(source)) + HD(K^u(sink)); interval-valued in
// [0, 2]. Disagreement between a component's stable and unstable enclosures
// is flagged and widened to the hull, never averaged.
DimBound component_dimension(const sft::Decomposition& d,
                             const std::vector<ComponentBounds>& bounds);

struct DropCheck {
    bool sublanguage;     // sub's language contained in full's
    bool strict;          // and the containment is strict
    bool certified_drop;  // hi(sub) < lo(full) at this depth
    DimBound sub_bound, full_bound;
};

// Certifies HD(sub) < HD(full) for a strict sublanguage, or reports
// "inconclusive at this depth". Throws when sub is not a strict sublanguage.
DropCheck strict_drop_check(const sft::TransitionGraph& sub, const sft::TransitionGraph& full,
                            int depth, HdOptions opts = {});

}  // namespace spectra::dim
