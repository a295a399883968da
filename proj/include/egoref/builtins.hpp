#pragma once

#include <string>
#include <utility>
#include <vector>

#include "egoref/graph.hpp"

namespace egoref {

// Catalog of named graphs used throughout the test and reproduction suites.
// Parameterized names use the form "cycle(5)", "grid2xn(4)", "cycle-pair(1)".

Graph make_cycle(int n);
Graph make_path(int n);
Graph make_complete(int n);
Graph make_prism();
Graph make_k33();
Graph make_grid2xn(int n);  // rooted at node 0 (a corner) by convention
Graph make_shrikhande();
Graph make_rook4x4();

// 4-cycle core; two of its nodes fully joined to two triangles each, the
// other two fully joined to distinct 6-cycles. In the first graph the
// triangle-carrying nodes are opposite on the square, in the second they are
// adjacent.
std::pair<Graph, Graph> make_rs_pair();

std::pair<Graph, Graph> make_fig1_pair();                  // (prism, K3,3)
std::pair<Graph, Graph> make_cycle_pair(int r);            // (C_{4r+6}, C_{2r+3} + C_{2r+3})

bool is_builtin_pair(const std::string& name);
Graph builtin_graph(const std::string& name);
std::pair<Graph, Graph> builtin_pair(const std::string& name);
std::vector<std::string> builtin_graph_names();

// Corpus of single graphs the invariance and ordering suites iterate over.
std::vector<std::pair<std::string, Graph>> builtin_corpus();

}  // namespace egoref
