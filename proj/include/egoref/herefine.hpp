#pragma once

#include <optional>
#include <vector>

#include "egoref/refine.hpp"

namespace egoref {

// Parameters for hierarchical ego refinement. `radius` empty means no
// subgraph restriction (plain hierarchical refinement); `iters` empty means
// "derive from the comparison": the max node count over all graphs involved,
// applied uniformly at every nesting level.
struct HeParams {
    int depth = 0;
    std::optional<int> radius;
    std::optional<int> iters;
};

// Per-node signatures. Depth 0 is plain WL after T rounds. At depth d > 0,
// each node u is marked inside its (subgraph-restricted) copy of the graph,
// refined at depth d-1, and the resulting signature of u seeds a new initial
// color (label set, signature) which is then refined for T rounds.
std::vector<KeyId> he_signatures(const Graph& g, const HeParams& params);

bool node_equiv_he(const PointedGraph& a, const PointedGraph& b, HeParams params);
bool graph_equiv_he(const Graph& a, const Graph& b, HeParams params);

// Smallest depth <= max_depth at which the graphs get different signature
// multisets; empty if none. Guarded: the nested runs cost O(n^d).
std::optional<int> min_distinguishing_depth(const Graph& a, const Graph& b, int max_depth,
                                            std::optional<int> radius, int guard = 3);

}  // namespace egoref
