#pragma once

#include "spectra/biseq.hpp"
#include "spectra/subshift.hpp"

namespace spectra::sym {

struct MaxLambdaResult {
    RatInterval enclosure;   // contains sup lambda_0; width <= target unless capped
    SurdSum witness_value;   // exact lambda at the witness center, the lower end
    BiSeq witness;
    long witness_center;     // index where the witness attains witness_value
    bool witness_periodic;
    std::size_t nodes_expanded;
    bool width_reached;      // false only if the node cap hit first
};

// Certified sup of lambda_0 over the bi-infinite paths of g, by best-first
// branch and bound over central cylinders. Upper bounds come from the center
// digit plus graph-restricted tail enclosures clipped at the C_N extremes;
// lower bounds from exact lambda values of periodic (or, in reducible
// graphs, eventually periodic) completions of the incumbent center word.
// Throws std::domain_error when the graph has no bi-infinite path.
MaxLambdaResult max_lambda0_on_subshift(const sft::TransitionGraph& g, const Rat& target_precision,
                                        std::size_t node_cap = 2000000);

}  // namespace spectra::sym
