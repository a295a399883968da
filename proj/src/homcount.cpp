#include "egoref/homcount.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace egoref {

namespace {

HomCount checked_add(HomCount a, HomCount b) {
    HomCount out;
    if (__builtin_add_overflow(a, b, &out)) throw Error("homomorphism count overflow");
    return out;
}

HomCount checked_mul(HomCount a, HomCount b) {
    HomCount out;
    if (__builtin_mul_overflow(a, b, &out)) throw Error("homomorphism count overflow");
    return out;
}

// Pattern labels must be contained in the image's labels, compared by name.
bool labels_ok(const Graph& f, int w, const Graph& g, int v) {
    for (int p : f.labels(w)) {
        auto idx = g.universe().index_of(f.universe().name(p));
        if (!idx || !g.has_label(v, *idx)) return false;
    }
    return true;
}

}  // namespace

void validate_pattern(const RootedPattern& f) {
    if (f.root < 0 || f.root >= f.graph.node_count()) throw Error("pattern root out of range");
    auto dist = bfs_distances(f.graph, f.root);
    for (int v = 0; v < f.graph.node_count(); ++v)
        if (dist[v] < 0) throw Error("pattern must be connected from its root");
}

bool is_acyclic(const RootedPattern& f) {
    validate_pattern(f);
    // Connected: tree iff m = n - 1.
    return f.graph.edge_count() == f.graph.node_count() - 1;
}

bool is_cacyclic(const RootedPattern& f) {
    validate_pattern(f);
    // Pattern minus root must be a forest: per component, edges = nodes - 1.
    int n = f.graph.node_count();
    std::vector<int> comp(n, -1);
    int comps = 0;
    for (int s = 0; s < n; ++s) {
        if (s == f.root || comp[s] >= 0) continue;
        std::deque<int> queue{s};
        comp[s] = comps;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : f.graph.neighbors(u))
                if (w != f.root && comp[w] < 0) {
                    comp[w] = comps;
                    queue.push_back(w);
                }
        }
        ++comps;
    }
    std::vector<int> nodes(comps, 0), edges(comps, 0);
    for (int v = 0; v < n; ++v)
        if (v != f.root) ++nodes[comp[v]];
    for (auto [u, v] : f.graph.edges())
        if (u != f.root && v != f.root) ++edges[comp[u]];
    for (int c = 0; c < comps; ++c)
        if (edges[c] != nodes[c] - 1) return false;
    return true;
}

namespace {

struct BruteSearch {
    const Graph& f;
    const Graph& g;
    std::vector<int> order;  // assignment order (partial maps stay connected)
    std::vector<int> image;  // pattern node -> graph node, -1 unassigned
    HomCount count = 0;

    BruteSearch(const Graph& f, const Graph& g) : f(f), g(g), image(f.node_count(), -1) {}

    void set_order_from(const std::vector<int>& preassigned) {
        std::vector<char> queued(f.node_count(), 0);
        std::deque<int> queue;
        for (int w : preassigned)
            if (!queued[w]) {
                queue.push_back(w);
                queued[w] = 1;
            }
        auto drain = [&] {
            while (!queue.empty()) {
                int w = queue.front();
                queue.pop_front();
                order.push_back(w);
                for (int u : f.neighbors(w))
                    if (!queued[u]) {
                        queued[u] = 1;
                        queue.push_back(u);
                    }
            }
        };
        drain();
        // Components without an anchor are explored from their smallest node.
        for (int w = 0; w < f.node_count(); ++w)
            if (!queued[w]) {
                queued[w] = 1;
                queue.push_back(w);
                drain();
            }
    }

    bool consistent(int w, int v) const {
        if (!labels_ok(f, w, g, v)) return false;
        for (int u : f.neighbors(w))
            if (image[u] >= 0 && !g.adjacent(image[u], v)) return false;
        return true;
    }

    void run(std::size_t idx) {
        if (idx == order.size()) {
            count = checked_add(count, 1);
            return;
        }
        int w = order[idx];
        if (image[w] >= 0) {
            run(idx + 1);
            return;
        }
        for (int v = 0; v < g.node_count(); ++v) {
            if (!consistent(w, v)) continue;
            image[w] = v;
            run(idx + 1);
            image[w] = -1;
        }
    }
};

}  // namespace

HomCount hom_brute(const RootedPattern& f, const PointedGraph& g, int guard) {
    validate_pattern(f);
    if (f.graph.node_count() > guard) throw GuardError("hom_brute: pattern size guard exceeded");
    if (g.point < 0 || g.point >= g.graph.node_count()) throw Error("point out of range");
    BruteSearch search(f.graph, g.graph);
    if (!search.consistent(f.root, g.point)) return 0;
    search.image[f.root] = g.point;
    search.set_order_from({f.root});
    search.run(0);
    return search.count;
}

HomCount hom_partial_brute(const Graph& f, const Graph& g, const std::map<int, int>& h, int guard) {
    if (f.node_count() > guard) throw GuardError("hom_partial_brute: pattern size guard exceeded");
    if (f.node_count() == 0) return 1;
    BruteSearch search(f, g);
    std::vector<int> preassigned;
    for (auto [w, v] : h) {
        if (w < 0 || w >= f.node_count()) throw Error("partial map: pattern node out of range");
        if (v < 0 || v >= g.node_count()) throw Error("partial map: graph node out of range");
        if (!search.consistent(w, v)) return 0;
        search.image[w] = v;
        preassigned.push_back(w);
    }
    search.set_order_from(preassigned);
    search.run(0);
    return search.count;
}

namespace {

// Tree recursion with an optional per-node domain restriction. `allowed`
// returns whether pattern node w may map to graph node v.
struct TreeCounter {
    const Graph& f;
    const Graph& g;
    std::vector<std::vector<HomCount>> memo;  // (pattern node) x (graph node), -1 = unset
    std::vector<int> parent;

    TreeCounter(const Graph& f, const Graph& g, int root) : f(f), g(g) {
        memo.assign(f.node_count(), std::vector<HomCount>(g.node_count(), -1));
        parent.assign(f.node_count(), -1);
        std::deque<int> queue{root};
        std::vector<char> seen(f.node_count(), 0);
        seen[root] = 1;
        while (!queue.empty()) {
            int w = queue.front();
            queue.pop_front();
            for (int u : f.neighbors(w))
                if (!seen[u]) {
                    seen[u] = 1;
                    parent[u] = w;
                    queue.push_back(u);
                }
        }
    }

    // Count of homomorphisms of the subtree rooted at w with w -> v.
    HomCount count(int w, int v) {
        HomCount& slot = memo[w][v];
        if (slot >= 0) return slot;
        HomCount out = labels_ok(f, w, g, v) ? 1 : 0;
        for (int c : f.neighbors(w)) {
            if (out == 0) break;
            if (parent[c] != w) continue;
            HomCount sum = 0;
            for (int u : g.neighbors(v)) sum = checked_add(sum, count(c, u));
            out = checked_mul(out, sum);
        }
        slot = out;
        return out;
    }
};

}  // namespace

HomCount hom_tree(const RootedPattern& f, const PointedGraph& g) {
    if (!is_acyclic(f)) throw Error("hom_tree: pattern is not acyclic");
    if (g.point < 0 || g.point >= g.graph.node_count()) throw Error("point out of range");
    TreeCounter counter(f.graph, g.graph, f.root);
    return counter.count(f.root, g.point);
}

HomCount hom_cacyclic(const RootedPattern& f, const PointedGraph& g) {
    if (!is_cacyclic(f)) throw Error("hom_cacyclic: pattern is not c-acyclic");
    if (g.point < 0 || g.point >= g.graph.node_count()) throw Error("point out of range");
    const Graph& fg = f.graph;
    const Graph& gg = g.graph;
    if (!labels_ok(fg, f.root, gg, g.point)) return 0;

    // Remove the root: the remainder is a forest. Each component tree is
    // counted independently; nodes adjacent to the root in the pattern are
    // restricted to neighbors of the point.
    int n = fg.node_count();
    std::vector<char> root_adj(n, 0);
    for (int u : fg.neighbors(f.root)) root_adj[u] = 1;

    Graph forest(n, fg.universe());
    for (int v = 0; v < n; ++v)
        for (int p : fg.labels(v)) forest.add_label(v, p);
    for (auto [u, v] : fg.edges())
        if (u != f.root && v != f.root) forest.add_edge(u, v);

    std::vector<char> point_adj(gg.node_count(), 0);
    for (int u : gg.neighbors(g.point)) point_adj[u] = 1;

    struct ForestCounter {
        const Graph& f;
        const Graph& g;
        const std::vector<char>& root_adj;
        const std::vector<char>& point_adj;
        std::vector<std::vector<HomCount>> memo;
        std::vector<int> parent;

        ForestCounter(const Graph& f, const Graph& g, const std::vector<char>& root_adj,
                      const std::vector<char>& point_adj)
            : f(f), g(g), root_adj(root_adj), point_adj(point_adj) {
            memo.assign(f.node_count(), std::vector<HomCount>(g.node_count(), -1));
            parent.assign(f.node_count(), -2);  // -2 = unvisited, -1 = component root
        }

        HomCount count(int w, int v) {
            HomCount& slot = memo[w][v];
            if (slot >= 0) return slot;
            HomCount out = labels_ok(f, w, g, v) ? 1 : 0;
            if (root_adj[w] && !point_adj[v]) out = 0;
            for (int c : f.neighbors(w)) {
                if (out == 0) break;
                if (parent[c] != w) continue;
                HomCount sum = 0;
                for (int u : g.neighbors(v)) sum = checked_add(sum, count(c, u));
                out = checked_mul(out, sum);
            }
            slot = out;
            return out;
        }
    };

    ForestCounter counter(forest, gg, root_adj, point_adj);
    HomCount total = 1;
    std::vector<char> seen(n, 0);
    seen[f.root] = 1;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        // Orient this component from s.
        std::deque<int> queue{s};
        seen[s] = 1;
        counter.parent[s] = -1;
        while (!queue.empty()) {
            int w = queue.front();
            queue.pop_front();
            for (int u : forest.neighbors(w))
                if (!seen[u]) {
                    seen[u] = 1;
                    counter.parent[u] = w;
                    queue.push_back(u);
                }
        }
        HomCount component = 0;
        for (int v = 0; v < gg.node_count(); ++v)
            component = checked_add(component, counter.count(s, v));
        total = checked_mul(total, component);
    }
    return total;
}

std::vector<HomCount> hom_vector(const std::vector<RootedPattern>& patterns,
                                 const PointedGraph& g) {
    std::vector<HomCount> out;
    out.reserve(patterns.size());
    for (const auto& f : patterns) {
        if (is_acyclic(f))
            out.push_back(hom_tree(f, g));
        else if (is_cacyclic(f))
            out.push_back(hom_cacyclic(f, g));
        else
            out.push_back(hom_brute(f, g));
    }
    return out;
}

RootedPattern parse_pattern(const std::string& text) {
    auto pos = text.rfind("root:");
    if (pos == std::string::npos) throw ParseError("pattern file missing 'root: id' trailer", 0);
    RootedPattern f;
    f.graph = parse_labeled_text(text.substr(0, pos));
    std::istringstream trailer(text.substr(pos + 5));
    if (!(trailer >> f.root)) throw ParseError("invalid root id in pattern trailer", 0);
    validate_pattern(f);
    return f;
}

std::string serialize_pattern(const RootedPattern& f) {
    return serialize_labeled_text(f.graph) + "root: " + std::to_string(f.root) + "\n";
}

}  // namespace egoref
