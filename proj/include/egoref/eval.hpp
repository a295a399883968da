#pragma once

#include <map>
#include <optional>
#include <string>

#include "egoref/formula.hpp"
#include "egoref/graph.hpp"

namespace egoref {

// Variable environment. A binding holds a node id of the current graph
// context; a binding whose node was dropped by a subgraph restriction goes
// stale and never matches.
using Env = std::map<std::string, std::optional<int>>;

bool eval(const Graph& g, int v, const Env& env, const FormulaPtr& f);

// Sentence evaluation at a node.
inline bool eval(const Graph& g, int v, const FormulaPtr& f) { return eval(g, v, Env{}, f); }

// Number of nodes satisfying the sentence.
int count_satisfying(const Graph& g, const FormulaPtr& f);

// Graph-level comparison by the classifier's value multiset: the graphs
// differ when node counts or satisfying-node counts differ.
bool formula_separates(const Graph& a, const Graph& b, const FormulaPtr& f);

}  // namespace egoref
