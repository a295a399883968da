#pragma once

#include <optional>

#include "egoref/formula.hpp"

namespace egoref {

// Fragment classification for sentences mixing binders and within-operators.
// In the paired fragment every Down's body is a Within and every Within sits
// directly under a Down, with one shared radius. In the plain fragment no
// Within occurs (binders act with unbounded radius).
struct DownWithinShape {
    bool paired = false;
    std::optional<int> radius;  // set iff paired
    int down_depth = 0;
};
DownWithinShape check_down_within(const FormulaPtr& f);

// Renames binder variables so each subformula "down x_i (within r ...)" has
// index i = d + 1 - (number of enclosing within-operators, own included),
// with d the binder nesting depth of the sentence. Plain binders count an
// implicit within. Canonical variables are named x1, x2, ...
FormulaPtr canonicalize(const FormulaPtr& f);

// Structural check of the canonical index condition.
bool is_canonical(const FormulaPtr& f);

// Replaces each "down x (within r body)" by a plain binder whose diamonds are
// relativized to the radius-r ball around x. Output is within-free and has
// the same binder nesting depth.
FormulaPtr eliminate_within(const FormulaPtr& f);

// Replaces each (at x body) by a disjunction over walks of length 0..2n back
// to x, with n the modal depth of the input sentence. Undirected semantics.
FormulaPtr eliminate_at(const FormulaPtr& f);

// Pairs every plain binder with a radius-r within-operator. Errors when the
// sentence already contains within-operators.
FormulaPtr with_radius(const FormulaPtr& f, int r);

}  // namespace egoref
