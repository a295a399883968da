#include "egoref/wlir.hpp"

#include <algorithm>

namespace egoref {

KeyId select_target_cell(const Coloring& col) {
    Histogram hist = histogram(col);
    for (auto [id, count] : hist)
        if (count >= 2) return id;
    throw Error("select_target_cell: coloring is discrete");
}

Coloring individualize(const Graph& g, const Coloring& col, int v) {
    if (v < 0 || v >= g.node_count()) throw Error("node id out of range: " + std::to_string(v));
    if (col.size() != g.node_count()) throw Error("coloring not defined on this graph");
    auto& table = KeyTable::instance();
    Coloring out;
    out.color.reserve(col.size());
    for (int u = 0; u < col.size(); ++u)
        out.color.push_back(table.intern(
            {KeyTag::ColorIndiv, {}, {static_cast<std::uint64_t>(u == v ? 1 : 0)}, {col.color[u]}}));
    return out;
}

namespace {

KeyId tree_key(const Histogram& hist, std::vector<KeyId> child_keys) {
    sort_keys(child_keys);
    KeyNode node{KeyTag::Tree, {}, {}, {}};
    node.kids.push_back(histogram_key(hist));
    node.kids.insert(node.kids.end(), child_keys.begin(), child_keys.end());
    return KeyTable::instance().intern(std::move(node));
}

}  // namespace

RefinementTree wlir(const Graph& g, const Coloring& col, int d) {
    if (d < 0) throw Error("individualization budget must be >= 0");
    RefinementTree tree;
    tree.label = wl(g, col, g.node_count());
    tree.hist = histogram(tree.label);
    if (!tree.label.is_discrete() && d > 0) {
        KeyId cell = select_target_cell(tree.label);
        for (int v = 0; v < g.node_count(); ++v)
            if (tree.label.color[v] == cell)
                tree.children.push_back(wlir(g, individualize(g, tree.label, v), d - 1));
        auto& table = KeyTable::instance();
        std::sort(tree.children.begin(), tree.children.end(),
                  [&table](const RefinementTree& x, const RefinementTree& y) {
                      return table.less(x.key, y.key);
                  });
    }
    std::vector<KeyId> child_keys;
    for (const auto& c : tree.children) child_keys.push_back(c.key);
    tree.key = tree_key(tree.hist, std::move(child_keys));
    return tree;
}

KeyId canonical_key(const RefinementTree& t) { return t.key; }

bool wlir_graph_equiv(const Graph& a, const Graph& b, int d) {
    return wlir(a, initial_coloring(a), d).key == wlir(b, initial_coloring(b), d).key;
}

bool iso_test(const Graph& a, const Graph& b, int guard) {
    if (std::max(a.node_count(), b.node_count()) > guard)
        throw GuardError("iso_test: size guard exceeded");
    return wlir_graph_equiv(a, b, std::min(a.node_count(), b.node_count()));
}

}  // namespace egoref
