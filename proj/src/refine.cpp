#include "egoref/refine.hpp"

#include <algorithm>
#include <unordered_map>

namespace egoref {

bool Coloring::is_discrete() const {
    std::vector<KeyId> seen = color;
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

Coloring initial_coloring(const Graph& g) {
    auto& table = KeyTable::instance();
    Coloring col;
    col.color.reserve(g.node_count());
    for (int v = 0; v < g.node_count(); ++v)
        col.color.push_back(table.intern({KeyTag::ColorInit, g.label_names(v), {}, {}}));
    return col;
}

namespace {

// Rank of every color id present, in canonical order; lets neighbor multisets
// sort with integer comparisons.
std::unordered_map<KeyId, int> canonical_ranks(const std::vector<KeyId>& ids) {
    std::vector<KeyId> distinct = ids;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    sort_keys(distinct);
    std::unordered_map<KeyId, int> rank;
    for (std::size_t i = 0; i < distinct.size(); ++i) rank[distinct[i]] = static_cast<int>(i);
    return rank;
}

}  // namespace

Coloring refine_step(const Graph& g, const Coloring& col) {
    if (col.size() != g.node_count()) throw Error("coloring not defined on this graph");
    auto& table = KeyTable::instance();
    auto rank = canonical_ranks(col.color);
    Coloring out;
    out.color.reserve(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) {
        std::vector<KeyId> kids;
        kids.reserve(1 + g.degree(v));
        kids.push_back(col.color[v]);
        std::vector<KeyId> nbr;
        nbr.reserve(g.degree(v));
        for (int u : g.neighbors(v)) nbr.push_back(col.color[u]);
        std::sort(nbr.begin(), nbr.end(),
                  [&rank](KeyId a, KeyId b) { return rank.at(a) < rank.at(b); });
        kids.insert(kids.end(), nbr.begin(), nbr.end());
        out.color.push_back(table.intern({KeyTag::ColorRefine, {}, {}, std::move(kids)}));
    }
    return out;
}

Coloring wl(const Graph& g, const Coloring& col, int t) {
    if (t < 0) throw Error("iteration count must be >= 0");
    Coloring cur = col;
    for (int i = 0; i < t; ++i) cur = refine_step(g, cur);
    return cur;
}

Histogram histogram(const Coloring& col) {
    std::vector<KeyId> ids = col.color;
    sort_keys(ids);
    Histogram hist;
    for (KeyId id : ids) {
        if (!hist.empty() && hist.back().first == id)
            ++hist.back().second;
        else
            hist.emplace_back(id, 1);
    }
    return hist;
}

KeyId histogram_key(const Histogram& hist) {
    KeyNode node{KeyTag::Hist, {}, {}, {}};
    for (auto [id, count] : hist) {
        node.kids.push_back(id);
        node.ints.push_back(count);
    }
    return KeyTable::instance().intern(std::move(node));
}

bool node_equiv_wl(const PointedGraph& a, const PointedGraph& b) {
    if (a.point < 0 || a.point >= a.graph.node_count() || b.point < 0 ||
        b.point >= b.graph.node_count())
        throw Error("point out of range");
    int t = std::max(a.graph.node_count(), b.graph.node_count());
    Coloring ca = wl(a.graph, initial_coloring(a.graph), t);
    Coloring cb = wl(b.graph, initial_coloring(b.graph), t);
    return ca.color[a.point] == cb.color[b.point];
}

bool graph_equiv_wl(const Graph& a, const Graph& b) {
    int t = std::max(a.node_count(), b.node_count());
    return histogram(wl(a, initial_coloring(a), t)) == histogram(wl(b, initial_coloring(b), t));
}

}  // namespace egoref
