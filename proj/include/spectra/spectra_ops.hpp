#pragma once

#include "spectra/dimension.hpp"
#include "spectra/maxlambda.hpp"

namespace spectra::spec {

// Least window radius l with worst-case cylinder oscillation 2/2^(l-1) below
// eps/4, replacing the paper's "sufficiently large l(eps)".
int oscillation_window(const Rat& eps);

enum class WordStatus { certified, possible, pruned };

struct PruneCertificate {
    Word word;
    long center;         // window position whose lambda lower bound exceeds the threshold
    Rat lower_bound;     // certified lower bound of sup lambda over the cylinder
    bool via_extension;  // cylinder emptied by the two-sided extension search
};

struct PruneResult {
    int N;
    Rat t, eps;
    int ell;
    Rat threshold;  // t + eps/4
    std::vector<Word> certified, possible;
    std::vector<sym::BiSeq> witnesses;           // parallel to certified
    std::vector<Word> pruned;                    // may be elided on large runs
    std::vector<PruneCertificate> certificates;  // parallel to pruned when materialized
    std::size_t pruned_count;
    bool pruned_list_elided;
    bool everything_pruned;
    std::string diagnostic;

    std::vector<Word> kept() const;
};

// Three-way classification of all words of length 2 ell + 1 over [1, N] by
// branch-and-bound on exact window lambda bounds: pruned words carry a
// certificate inf lambda > t + eps/4 over their cylinder, certified words a
// periodic witness with Markov value <= t + eps/4.
PruneResult prune_words(int N, const Rat& t, const Rat& eps, int ell);

struct PtResult {
    sft::TransitionGraph kept_graph;       // certified + possible, core-pruned
    sft::TransitionGraph certified_graph;  // certified only, core-pruned
    sft::Decomposition decomposition;      // of kept_graph
    bool empty_core;
    std::string diagnostic;
};

PtResult build_Pt(const PruneResult& pr);

struct DEstimate {
    dim::DimBound D;  // upper from the kept graph, lower from the certified graph
    RatInterval d;    // min{1, 2 D}
    bool empty;
    std::string diagnostic;
};

DEstimate D_estimate(int N, const Rat& t, const Rat& eps, int ell, int depth,
                     dim::HdOptions opts = {});

struct ScanPoint {
    Rat t;
    DEstimate estimate;
    bool interior_verified;  // t >= c_F lies in the Hall ray, hence in int(L) = int(M)
};

struct SpectrumScan {
    std::vector<ScanPoint> points;
    std::vector<std::size_t> certified_increase;  // i with hi(D_i) < lo(D_{i+1})
};

// D enclosures over an ascending t grid; lower bounds are monotonized (the
// sublevel sets only grow with t).
SpectrumScan scan(int N, const std::vector<Rat>& grid, const Rat& eps, int ell, int depth,
                  dim::HdOptions opts = {});

// Exact Markov values of periodic {1,2}-sequences with period <= max_period
// that lie below 3, deduplicated and sorted.
std::vector<SurdSum> discrete_below_3(int max_period);

// ---- the theta splice -----------------------------------------------------------

struct ChainComponent {
    sft::TransitionGraph graph;
    sym::BiSeq witness;
    long witness_center;
    SurdSum max_value;  // exact witness value
    Rat max_upper;      // certified upper bound of lambda_0 on the component
};

ChainComponent make_chain_component(const sft::TransitionGraph& g,
                                    const Rat& precision = Rat(1, 1000000));

struct SpliceSchedule {
    std::vector<int> r, c;                 // window radii and connector lengths
    std::vector<long> s;                   // s(n) = sum of 2r(k)+2c(k)+1
    std::vector<Int> insertion_positions;  // s(n)!
    std::vector<std::vector<int>> blocks;  // h_n = (c1, witness window, c2)
};

struct SpliceResult {
    std::vector<int> digits;
    SpliceSchedule schedule;
    std::size_t insertions_emitted;
};

struct SpliceOptions {
    std::vector<int> r_override;  // radii per insertion; empty: r(n) = n + r0
    int r0 = -1;                  // -1: least r0 with 2^-r0 below the chain gap
};

// Emits the first prefix_length digits of theta(base): base digits cut at the
// factorial positions s(n)!, interleaved with blocks h_n built from each
// chain component's max witness. Every block core must be admissible in its
// component.
SpliceResult splice_theta(const sym::Ray& base, const std::vector<ChainComponent>& chain,
                          long prefix_length, SpliceOptions opts = {});

struct HolderProbe {
    double exponent;  // fitted slope of log|a1-a2| against log|theta(a1)-theta(a2)|
    double residual;  // rms residual of the least-squares fit
    std::size_t pairs;
};

// Empirical exponent of the inverse splice map: sample base pairs agreeing
// to the given depths, compare exact value gaps before and after the splice.
// Requires >= 30 pairs with depths spread over >= 2 decades.
HolderProbe holder_exponent_probe(const std::vector<ChainComponent>& chain,
                                  const std::vector<long>& depths, int pairs_per_depth,
                                  unsigned seed);

}  // namespace spectra::spec
