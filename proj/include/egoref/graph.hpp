#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egoref/error.hpp"

namespace egoref {

// Ordered set of proposition names. The order is fixed once constructed and
// defines the multi-hot dimension.
class PropositionUniverse {
  public:
    PropositionUniverse() = default;
    explicit PropositionUniverse(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_[i]; }
    std::optional<int> index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return index_of(name).has_value(); }

    // Appends a new proposition; the name must not already be present.
    int add(const std::string& name);

    bool operator==(const PropositionUniverse& o) const { return names_ == o.names_; }

  private:
    std::vector<std::string> names_;
};

// Labeled undirected simple graph. Node ids are dense 0-based integers.
// Immutable after construction by convention; all operations below are pure.
class Graph {
  public:
    Graph() = default;
    Graph(int node_count, PropositionUniverse universe);

    int node_count() const { return n_; }
    const PropositionUniverse& universe() const { return universe_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(int u, int v) const;

    // Sorted proposition indices of a node.
    const std::vector<int>& labels(int v) const { return labels_[v]; }
    // The same labels, as sorted names (universe-order independent).
    std::vector<std::string> label_names(int v) const;
    bool has_label(int v, int prop) const;

    void add_edge(int u, int v);
    void add_label(int v, int prop);
    void add_label(int v, const std::string& name);

    bool structurally_equal(const Graph& o) const;

  private:
    void check_node(int v) const;

    int n_ = 0;
    PropositionUniverse universe_;
    std::vector<std::pair<int, int>> edges_;  // normalized u < v
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> labels_;
};

struct PointedGraph {
    Graph graph;
    int point = 0;
};

// Labeled text format:
//   line 1: "n m"
//   n node lines: "id [p1 p2 ...]"
//   m edge lines: "u v" with u < v
// The universe is inferred in order of first appearance unless one is given.
Graph parse_labeled_text(const std::string& text);
Graph parse_labeled_text(const std::string& text, const PropositionUniverse& universe);
std::string serialize_labeled_text(const Graph& g);

// Induced subgraph on the BFS ball of radius r around v, with the node-id
// remapping in both directions.
struct EgoSubgraph {
    Graph graph;
    std::vector<int> to_sub;   // original id -> subgraph id, -1 if outside
    std::vector<int> to_orig;  // subgraph id -> original id
};
EgoSubgraph ego_subgraph(const Graph& g, int v, int r);

// Appends a fresh proposition true at exactly v.
Graph mark(const Graph& g, int v);

// Node ids of b are shifted by |a|. Universes must match.
Graph disjoint_union(const Graph& a, const Graph& b);

// Exhaustive isomorphism search with degree/label pruning. Guarded.
bool brute_force_isomorphic(const Graph& a, const Graph& b, int guard = 10);
bool brute_force_isomorphic(const PointedGraph& a, const PointedGraph& b, int guard = 10);

// Applies a node permutation: node v of g becomes node perm[v].
Graph permute(const Graph& g, const std::vector<int>& perm);

std::vector<int> bfs_distances(const Graph& g, int src);
int connected_components(const Graph& g);

}  // namespace egoref
