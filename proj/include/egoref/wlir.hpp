#pragma once

#include <vector>

#include "egoref/refine.hpp"

namespace egoref {

// Refinement tree: each node carries the coloring reached after refinement,
// stored with its histogram; children (one per member of the selected cell)
// are kept sorted by canonical key so trees compare as multisets.
struct RefinementTree {
    Coloring label;
    Histogram hist;
    KeyId key = 0;  // canonical tree key
    std::vector<RefinementTree> children;
};

// Least color (canonical order) whose class has size >= 2. Errors on a
// discrete coloring.
KeyId select_target_cell(const Coloring& col);

// Extends v's color with an individualization tag and every other color with
// the complementary tag.
Coloring individualize(const Graph& g, const Coloring& col, int v);

// Alternating refinement (always |G| rounds) and individualization, with at
// most d individualization steps along any branch.
RefinementTree wlir(const Graph& g, const Coloring& col, int d);

KeyId canonical_key(const RefinementTree& t);

bool wlir_graph_equiv(const Graph& a, const Graph& b, int d);

// Full-depth comparison: equivalent iff isomorphic (d = min of the sizes).
bool iso_test(const Graph& a, const Graph& b, int guard = 64);

}  // namespace egoref
