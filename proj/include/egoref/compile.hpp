#pragma once

#include <vector>

#include "egoref/formula.hpp"
#include "egoref/net.hpp"

namespace egoref {

// Compiles a graded-modal sentence (no binders, no within/at) into a
// sum-aggregation network whose scalar output is the truth value at each
// node, exactly 0 or 1. The multi-sentence form shares one subformula
// closure and emits one output coordinate per sentence.
GnnSpec compile_gml(const FormulaPtr& f, const PropositionUniverse& universe);
GnnSpec compile_gml_multi(const std::vector<FormulaPtr>& fs, const PropositionUniverse& universe);

// Compiles a binder sentence (down/within fragment, or plain binders treated
// as unbounded radius) into a hierarchical spec. Non-canonical input is
// canonicalized first.
HeGnnSpec compile_hgml(const FormulaPtr& f, const PropositionUniverse& universe);

// The depth-1 demonstration network: inner 3-layer (2,2) spec with
// combine(x ++ s) = x + s, trivial outer. Separates the prism / K3,3 pair
// through the mark channel (walk counts differ on triangles).
HeGnnSpec example32_spec();

}  // namespace egoref
