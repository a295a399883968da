#pragma once

#include <string>
#include <vector>

#include "egoref/homcount.hpp"

namespace egoref {

// Dependency assignment: dep[v] is a node id or -1 for "none". deps(u) is the
// chain dep(u), dep(dep(u)), ... and the node rank is its length.
struct DepAssignment {
    std::vector<int> dep;
};

struct DepCheck {
    bool valid = false;
    int max_rank = 0;
    std::string reason;
};

// Checks well-foundedness plus the three constraints: the root maps to none;
// every edge is dep-equal or chain-related; every dep-fiber (including the
// none fiber) induces an acyclic subgraph.
DepCheck verify_dep(const RootedPattern& f, const DepAssignment& dep);

struct EgoRankResult {
    int rank = 0;
    DepAssignment witness;
};

// Exact minimum of the maximum node rank over all valid assignments,
// by iterative deepening over the rank bound. Guarded (exponential search).
EgoRankResult ego_rank(const RootedPattern& f, int guard = 9);

}  // namespace egoref
