#pragma once

#include <cstdint>
#include <vector>

#include "egoref/graph.hpp"
#include "egoref/keys.hpp"

namespace egoref {

// A color is a canonical key (see keys.hpp); equality of colors is equality
// of construction histories, so colors are comparable across graphs, runs and
// threads.
struct Coloring {
    std::vector<KeyId> color;  // per node

    int size() const { return static_cast<int>(color.size()); }
    bool is_discrete() const;
};

// Multiset of colors, sorted by the canonical color order.
using Histogram = std::vector<std::pair<KeyId, std::uint32_t>>;

// Color determined solely by the node's label set.
Coloring initial_coloring(const Graph& g);

// One refinement round: new color = (old color, sorted neighbor colors).
Coloring refine_step(const Graph& g, const Coloring& col);

// Exactly t rounds, no early stopping.
Coloring wl(const Graph& g, const Coloring& col, int t);

Histogram histogram(const Coloring& col);
KeyId histogram_key(const Histogram& hist);

// Points share a color after max(|a|, |b|) rounds from the initial colorings.
bool node_equiv_wl(const PointedGraph& a, const PointedGraph& b);

// Histograms agree after max(|a|, |b|) rounds.
bool graph_equiv_wl(const Graph& a, const Graph& b);

}  // namespace egoref
