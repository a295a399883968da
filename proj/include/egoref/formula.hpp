#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "egoref/error.hpp"

namespace egoref {

enum class Op {
    Top,
    Prop,
    Var,
    Not,
    And,
    Or,      // sugar for not(and(not, not))
    DiaGe,   // counting diamond: at least k neighbors satisfy the body
    Box,     // sugar for not(dia 1 (not ...))
    Down,    // binder: names the current node
    Within,  // evaluate body in the radius-r ego subgraph
    At,      // sugar: jump to the node a variable denotes
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Op op;
    std::string name;     // Prop, Var, Down, At
    long long count = 0;  // DiaGe
    int radius = 0;       // Within
    FormulaPtr left, right;
};

FormulaPtr f_top();
FormulaPtr f_prop(const std::string& name);
FormulaPtr f_var(const std::string& name);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_dia(long long k, FormulaPtr a);  // k = 0 normalizes to Top
FormulaPtr f_box(FormulaPtr a);
FormulaPtr f_down(const std::string& x, FormulaPtr a);
FormulaPtr f_within(int r, FormulaPtr a);
FormulaPtr f_at(const std::string& x, FormulaPtr a);

// S-expression syntax: true | (prop P) | (var X) | (not F) | (and F G) |
// (or F G) | (dia K F) | (box F) | (down X F) | (within R F) | (at X F).
// `;` starts a line comment. By default the result must be a sentence.
FormulaPtr parse_formula(const std::string& text, bool allow_free = false);
std::string print_formula(const FormulaPtr& f);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaStats {
    int down_depth = 0;
    std::set<int> radii;
    std::set<std::string> free_vars;
    int op_depth = 0;
};
FormulaStats stats(const FormulaPtr& f);

// Nesting depth of counting diamonds and boxes only.
int modal_depth(const FormulaPtr& f);

// True when the formula uses none of Var/Down/Within/At.
bool is_gml(const FormulaPtr& f);

// Named formulas from the reproduction suites: "triangle", "psi-rs",
// "phi-cycle(r)", "psi-triangle-cycle".
FormulaPtr builtin_formula(const std::string& name);
std::vector<std::string> builtin_formula_names();

}  // namespace egoref
