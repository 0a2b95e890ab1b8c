#pragma once

#include <cstdint>

#include "qc/gamma.hpp"
#include "qc/graph.hpp"
#include "qc/rng.hpp"
#include "qc/vertex_set.hpp"

namespace qc {

// Outcome of a quasi-clique computation. `witness` always carries exactly
// `size` vertices and `witness_edges` is its exact induced edge count, so
// 2*den*witness_edges >= num*size*(size-1) holds in integers whichever
// routine produced it. `exact` means no larger gamma-dense set exists.
struct qc_result {
    int size = 0;
    vertex_set witness;
    std::int64_t witness_edges = 0;
    bool exact = false;
    std::uint64_t nodes_explored = 0;
    double wall_ms = 0.0;
};

// Exhaustive 2^n subset scan, n <= 22 enforced. Ties broken toward the
// lexicographically smallest witness bitmask.
qc_result brute_force(const graph& g, const gamma_ratio& gamma);

// Exact branch and bound (gamma > 0 required): seeds an incumbent with the
// heuristic, then answers the decision problem "is there a gamma-dense set
// of size r" for r = incumbent+1, incumbent+2, ... until a level fails.
// Stopping there is sound because deleting a minimum-degree vertex of a
// gamma-dense set leaves a gamma-dense set; the integer inequality behind
// that claim is re-checked per level and if it ever failed the solver would
// keep scanning r up to n instead. `budget` caps search-tree nodes; on
// exhaustion the best incumbent is returned with exact = false.
qc_result exact_bb(const graph& g, const gamma_ratio& gamma, std::uint64_t budget);

// Greedy growth from a random high-degree seed plus 1-swap and 1-drop/2-add
// local search, best of `restarts` runs. Lower bound only: exact = false
// unless the witness is the whole vertex set.
qc_result heuristic(const graph& g, const gamma_ratio& gamma, int restarts, rng::stream& rs);

// Dispatch: gamma = 0 -> whole graph; n <= 18 -> brute_force; otherwise
// exact_bb (which warm-starts from the heuristic internally).
qc_result qc_number(const graph& g, const gamma_ratio& gamma, std::uint64_t budget);

// True when the minimum-degree-deletion inequality
//   required(l+1) - floor(2*required(l+1)/(l+1)) >= required(l)
// holds for every level l in [r, n). While it does, "no gamma-dense set of
// size r" implies none of any larger size, so the ascending-r search may
// stop at its first failing level.
bool heredity_early_stop_valid(int r, int n, const gamma_ratio& gamma);

inline constexpr std::uint64_t default_node_budget = 50'000'000;

}  // namespace qc
