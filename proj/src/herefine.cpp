#include "egoref/herefine.hpp"

#include <algorithm>

namespace egoref {

namespace {

int resolved_iters(const HeParams& params, int fallback) {
    int t = params.iters.value_or(fallback);
    return std::max(1, t);
}

std::vector<KeyId> signatures_impl(const Graph& g, int depth, const std::optional<int>& radius,
                                   int iters) {
    if (depth == 0) {
        return wl(g, initial_coloring(g), iters).color;
    }
    auto& table = KeyTable::instance();
    Coloring seed;
    seed.color.reserve(g.node_count());
    for (int u = 0; u < g.node_count(); ++u) {
        KeyId nested;
        if (radius) {
            EgoSubgraph ego = ego_subgraph(g, u, *radius);
            Graph marked = mark(ego.graph, ego.to_sub[u]);
            nested = signatures_impl(marked, depth - 1, radius, iters)[ego.to_sub[u]];
        } else {
            Graph marked = mark(g, u);
            nested = signatures_impl(marked, depth - 1, radius, iters)[u];
        }
        seed.color.push_back(table.intern({KeyTag::ColorHe, g.label_names(u), {}, {nested}}));
    }
    return wl(g, seed, iters).color;
}

}  // namespace

std::vector<KeyId> he_signatures(const Graph& g, const HeParams& params) {
    if (params.depth < 0) throw Error("depth must be >= 0");
    if (params.radius && *params.radius < 1) throw Error("radius must be >= 1");
    return signatures_impl(g, params.depth, params.radius, resolved_iters(params, g.node_count()));
}

bool node_equiv_he(const PointedGraph& a, const PointedGraph& b, HeParams params) {
    if (a.point < 0 || a.point >= a.graph.node_count() || b.point < 0 ||
        b.point >= b.graph.node_count())
        throw Error("point out of range");
    if (!params.iters) params.iters = std::max(a.graph.node_count(), b.graph.node_count());
    return he_signatures(a.graph, params)[a.point] == he_signatures(b.graph, params)[b.point];
}

bool graph_equiv_he(const Graph& a, const Graph& b, HeParams params) {
    if (!params.iters) params.iters = std::max(a.node_count(), b.node_count());
    std::vector<KeyId> sa = he_signatures(a, params);
    std::vector<KeyId> sb = he_signatures(b, params);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
}

std::optional<int> min_distinguishing_depth(const Graph& a, const Graph& b, int max_depth,
                                            std::optional<int> radius, int guard) {
    if (max_depth > guard) throw GuardError("min_distinguishing_depth: depth guard exceeded");
    for (int d = 0; d <= max_depth; ++d)
        if (!graph_equiv_he(a, b, HeParams{d, radius, std::nullopt})) return d;
    return std::nullopt;
}

}  // namespace egoref
