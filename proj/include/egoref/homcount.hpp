#pragma once

#include <map>
#include <vector>

#include "egoref/graph.hpp"

namespace egoref {

// Connected rooted pattern. Counts are label-respecting homomorphisms
// (pattern labels must be contained in image labels) sending root to point.
struct RootedPattern {
    Graph graph;
    int root = 0;
};
void validate_pattern(const RootedPattern& f);

using HomCount = long long;  // overflow-checked: errors rather than wraps

bool is_acyclic(const RootedPattern& f);
// Every cycle of the pattern passes through the root, i.e. pattern minus root
// is a forest.
bool is_cacyclic(const RootedPattern& f);

// Backtracking count in BFS order from the root. Guarded pattern size.
HomCount hom_brute(const RootedPattern& f, const PointedGraph& g, int guard = 12);

// Count of homomorphisms extending a partial map.
HomCount hom_partial_brute(const Graph& f, const Graph& g, const std::map<int, int>& h,
                           int guard = 12);

// Product-of-subtrees recursion for acyclic patterns.
HomCount hom_tree(const RootedPattern& f, const PointedGraph& g);

// Root image fixed, remainder counted by the tree recursion with root
// neighbors constrained to the point's neighborhood.
HomCount hom_cacyclic(const RootedPattern& f, const PointedGraph& g);

// Dispatches per pattern to the cheapest applicable counter.
std::vector<HomCount> hom_vector(const std::vector<RootedPattern>& patterns,
                                 const PointedGraph& g);

// Pattern files: labeled text followed by a "root: id" trailer line.
RootedPattern parse_pattern(const std::string& text);
std::string serialize_pattern(const RootedPattern& f);

}  // namespace egoref
