#include "egoref/egorank.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace egoref {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // Returns false if x and y were already connected (a cycle).
    bool join(int x, int y) {
        int a = find(x), b = find(y);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// Chain from v through assigned pointers. status: 0 = complete (reached -1),
// 1 = incomplete (hit an unassigned node), 2 = cycle. `len` counts nodes on
// the chain excluding v itself (the node rank when complete).
struct ChainInfo {
    int status;
    int len;
};

constexpr int kUnassigned = -2;

ChainInfo chain_info(const std::vector<int>& dep, int v) {
    int len = 0;
    int cur = dep[v];
    int steps = 0;
    int n = static_cast<int>(dep.size());
    while (true) {
        if (cur == kUnassigned) return {1, len};
        if (cur == -1) return {0, len};
        ++len;
        if (++steps > n) return {2, len};
        cur = dep[cur];
    }
}

bool in_deps(const std::vector<int>& dep, int v, int target) {
    int cur = dep[v];
    while (cur >= 0) {
        if (cur == target) return true;
        cur = dep[cur];
    }
    return false;
}

// Every connected component of a node's fiber must contain a neighbor of the
// node. The rank lower bounds and the hom-count recursion both need this;
// without it, chains routed through non-adjacent nodes fake lower ranks.
bool fibers_attached(const Graph& g, const std::vector<int>& dep) {
    int n = g.node_count();
    UnionFind uf(n);
    for (auto [u, v] : g.edges())
        if (dep[u] == dep[v]) uf.join(u, v);
    // Component representative -> attached flag, per fiber owner.
    std::vector<char> attached(n, 0);
    for (int v = 0; v < n; ++v)
        if (dep[v] >= 0 && g.adjacent(dep[v], v)) attached[uf.find(v)] = 1;
    for (int v = 0; v < n; ++v)
        if (dep[v] >= 0 && !attached[uf.find(v)]) return false;
    return true;
}

}  // namespace

DepCheck verify_dep(const RootedPattern& f, const DepAssignment& assignment) {
    validate_pattern(f);
    const auto& dep = assignment.dep;
    int n = f.graph.node_count();
    if (static_cast<int>(dep.size()) != n) return {false, 0, "dep size mismatch"};
    for (int v = 0; v < n; ++v) {
        if (dep[v] < -1 || dep[v] >= n) return {false, 0, "dep value out of range"};
        if (dep[v] == v) return {false, 0, "dep self-reference"};
    }
    if (dep[f.root] != -1) return {false, 0, "dep(root) must be none"};
    for (int v = 0; v < n; ++v)
        if (chain_info(dep, v).status == 2) return {false, 0, "dep has a cycle"};

    for (auto [u, v] : f.graph.edges()) {
        bool ok = dep[u] == dep[v] || in_deps(dep, v, u) || in_deps(dep, u, v);
        if (!ok)
            return {false, 0,
                    "edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") violates the dependency constraint"};
    }

    // Every fiber, including the none fiber, must induce an acyclic subgraph.
    UnionFind uf(n);
    for (auto [u, v] : f.graph.edges())
        if (dep[u] == dep[v] && !uf.join(u, v))
            return {false, 0, "a dep fiber contains a cycle"};

    if (!fibers_attached(f.graph, dep))
        return {false, 0, "a dep fiber component does not touch its owner"};

    int max_rank = 0;
    for (int v = 0; v < n; ++v) max_rank = std::max(max_rank, chain_info(dep, v).len);
    return {true, max_rank, ""};
}

namespace {

struct RankSearch {
    const Graph& g;
    int root;
    int bound;
    std::vector<int> order;  // BFS assignment order, root excluded
    std::vector<int> dep;
    bool found = false;

    RankSearch(const RootedPattern& f, int bound) : g(f.graph), root(f.root), bound(bound) {
        dep.assign(g.node_count(), kUnassigned);
        dep[root] = -1;
        auto dist = bfs_distances(g, root);
        std::vector<int> nodes;
        for (int v = 0; v < g.node_count(); ++v)
            if (v != root) nodes.push_back(v);
        std::stable_sort(nodes.begin(), nodes.end(),
                         [&dist](int a, int b) { return dist[a] < dist[b]; });
        order = nodes;
    }

    bool prune() const {
        int n = g.node_count();
        for (int v = 0; v < n; ++v) {
            if (dep[v] == kUnassigned) continue;
            ChainInfo info = chain_info(dep, v);
            if (info.status == 2) return true;
            if (info.len > bound) return true;
        }
        // Edges whose endpoint chains are both complete are decidable now.
        for (auto [u, v] : g.edges()) {
            if (dep[u] == kUnassigned || dep[v] == kUnassigned) continue;
            if (dep[u] == dep[v]) continue;
            if (chain_info(dep, u).status != 0 || chain_info(dep, v).status != 0) continue;
            if (!in_deps(dep, v, u) && !in_deps(dep, u, v)) return true;
        }
        // Fibers of assigned nodes only ever grow; cycles are final.
        UnionFind uf(n);
        for (auto [u, v] : g.edges())
            if (dep[u] != kUnassigned && dep[u] == dep[v] && !uf.join(u, v)) return true;
        return false;
    }

    bool assign(std::size_t idx) {
        if (idx == order.size()) return fibers_attached(g, dep);
        int v = order[idx];
        for (int choice = -1; choice < g.node_count(); ++choice) {
            if (choice == v) continue;
            dep[v] = choice;
            if (!prune() && assign(idx + 1)) return true;
        }
        dep[v] = kUnassigned;
        return false;
    }
};

}  // namespace

EgoRankResult ego_rank(const RootedPattern& f, int guard) {
    validate_pattern(f);
    if (f.graph.node_count() > guard) throw GuardError("ego_rank: pattern size guard exceeded");
    for (int bound = 0; bound < std::max(1, f.graph.node_count()); ++bound) {
        RankSearch search(f, bound);
        if (search.assign(0)) {
            DepAssignment witness{search.dep};
            DepCheck check = verify_dep(f, witness);
            if (!check.valid || check.max_rank > bound)
                throw Error("ego_rank: internal witness verification failed");
            return {check.max_rank, witness};
        }
    }
    throw Error("ego_rank: no valid assignment found");
}

}  // namespace egoref
