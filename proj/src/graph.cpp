#include "egoref/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace egoref {

PropositionUniverse::PropositionUniverse(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw Error("duplicate proposition name: " + names_[i]);
}

std::optional<int> PropositionUniverse::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

int PropositionUniverse::add(const std::string& name) {
    if (contains(name)) throw Error("proposition already in universe: " + name);
    names_.push_back(name);
    return static_cast<int>(names_.size()) - 1;
}

Graph::Graph(int node_count, PropositionUniverse universe)
    : n_(node_count), universe_(std::move(universe)), adj_(node_count), labels_(node_count) {
    if (node_count < 0) throw Error("negative node count");
}

void Graph::check_node(int v) const {
    if (v < 0 || v >= n_) throw Error("node id out of range: " + std::to_string(v));
}

bool Graph::adjacent(int u, int v) const {
    check_node(u);
    check_node(v);
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::string> Graph::label_names(int v) const {
    check_node(v);
    std::vector<std::string> out;
    out.reserve(labels_[v].size());
    for (int p : labels_[v]) out.push_back(universe_.name(p));
    std::sort(out.begin(), out.end());
    return out;
}

bool Graph::has_label(int v, int prop) const {
    check_node(v);
    const auto& l = labels_[v];
    return std::binary_search(l.begin(), l.end(), prop);
}

void Graph::add_edge(int u, int v) {
    check_node(u);
    check_node(v);
    if (u == v) throw Error("self-loop on node " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (adjacent(u, v)) throw Error("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    edges_.emplace_back(u, v);
    adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

void Graph::add_label(int v, int prop) {
    check_node(v);
    if (prop < 0 || prop >= universe_.size()) throw Error("proposition index out of range");
    auto& l = labels_[v];
    if (std::binary_search(l.begin(), l.end(), prop)) return;
    l.insert(std::upper_bound(l.begin(), l.end(), prop), prop);
}

void Graph::add_label(int v, const std::string& name) {
    auto idx = universe_.index_of(name);
    if (!idx) throw Error("unknown proposition: " + name);
    add_label(v, *idx);
}

bool Graph::structurally_equal(const Graph& o) const {
    if (n_ != o.n_ || !(universe_ == o.universe_)) return false;
    auto e1 = edges_, e2 = o.edges_;
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    return e1 == e2 && labels_ == o.labels_;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_int(const std::string& tok, std::size_t lineno, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", lineno, "line");
    }
}

Graph parse_labeled_impl(const std::string& text, const PropositionUniverse* fixed_universe) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    std::size_t li = 0;
    auto next_line = [&]() -> std::vector<std::string> {
        while (li < lines.size()) {
            auto toks = split_ws(lines[li]);
            ++li;
            if (!toks.empty()) return toks;
        }
        throw ParseError("unexpected end of input", lines.size(), "line");
    };

    auto header = next_line();
    std::size_t header_line = li;
    if (header.size() != 2) throw ParseError("expected header 'n m'", header_line, "line");
    int n = parse_int(header[0], header_line, "node count");
    int m = parse_int(header[1], header_line, "edge count");
    if (n < 0 || m < 0) throw ParseError("negative counts in header", header_line, "line");

    PropositionUniverse universe = fixed_universe ? *fixed_universe : PropositionUniverse{};
    std::vector<std::vector<std::string>> node_props(n);
    for (int i = 0; i < n; ++i) {
        auto toks = next_line();
        std::size_t lineno = li;
        int id = parse_int(toks[0], lineno, "node id");
        if (id != i) throw ParseError("node lines must be in id order; expected " + std::to_string(i), lineno, "line");
        for (std::size_t t = 1; t < toks.size(); ++t) {
            // Proposition lists may be space- or comma-separated.
            std::string piece;
            std::istringstream parts(toks[t]);
            while (std::getline(parts, piece, ',')) {
                if (piece.empty()) continue;
                if (fixed_universe && !universe.contains(piece))
                    throw ParseError("unknown proposition: " + piece, lineno, "line");
                if (!fixed_universe && !universe.contains(piece)) universe.add(piece);
                node_props[i].push_back(piece);
            }
        }
    }

    Graph g(n, universe);
    for (int i = 0; i < n; ++i)
        for (const auto& p : node_props[i]) g.add_label(i, p);

    for (int e = 0; e < m; ++e) {
        auto toks = next_line();
        std::size_t lineno = li;
        if (toks.size() != 2) throw ParseError("expected edge line 'u v'", lineno, "line");
        int u = parse_int(toks[0], lineno, "node id");
        int v = parse_int(toks[1], lineno, "node id");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("node id out of range in edge", lineno, "line");
        if (u == v) throw ParseError("self-loop", lineno, "line");
        if (u >= v) throw ParseError("edge lines require u < v", lineno, "line");
        if (g.adjacent(u, v)) throw ParseError("duplicate edge", lineno, "line");
        g.add_edge(u, v);
    }
    while (li < lines.size()) {
        if (!split_ws(lines[li]).empty())
            throw ParseError("trailing content after edge section", li + 1, "line");
        ++li;
    }
    return g;
}

}  // namespace

Graph parse_labeled_text(const std::string& text) { return parse_labeled_impl(text, nullptr); }

Graph parse_labeled_text(const std::string& text, const PropositionUniverse& universe) {
    return parse_labeled_impl(text, &universe);
}

std::string serialize_labeled_text(const Graph& g) {
    std::ostringstream out;
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (int v = 0; v < g.node_count(); ++v) {
        out << v;
        for (int p : g.labels(v)) out << ' ' << g.universe().name(p);
        out << '\n';
    }
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
    return out.str();
}

std::vector<int> bfs_distances(const Graph& g, int src) {
    std::vector<int> dist(g.node_count(), -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

int connected_components(const Graph& g) {
    std::vector<char> seen(g.node_count(), 0);
    int count = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        if (seen[v]) continue;
        ++count;
        std::deque<int> queue{v};
        seen[v] = 1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(u))
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
    }
    return count;
}

EgoSubgraph ego_subgraph(const Graph& g, int v, int r) {
    if (v < 0 || v >= g.node_count()) throw Error("node id out of range: " + std::to_string(v));
    if (r < 1) throw Error("radius must be >= 1");
    auto dist = bfs_distances(g, v);
    EgoSubgraph out;
    out.to_sub.assign(g.node_count(), -1);
    for (int u = 0; u < g.node_count(); ++u)
        if (dist[u] >= 0 && dist[u] <= r) {
            out.to_sub[u] = static_cast<int>(out.to_orig.size());
            out.to_orig.push_back(u);
        }
    Graph sub(static_cast<int>(out.to_orig.size()), g.universe());
    for (std::size_t i = 0; i < out.to_orig.size(); ++i)
        for (int p : g.labels(out.to_orig[i])) sub.add_label(static_cast<int>(i), p);
    for (auto [a, b] : g.edges())
        if (out.to_sub[a] >= 0 && out.to_sub[b] >= 0) sub.add_edge(out.to_sub[a], out.to_sub[b]);
    out.graph = std::move(sub);
    return out;
}

Graph mark(const Graph& g, int v) {
    if (v < 0 || v >= g.node_count()) throw Error("node id out of range: " + std::to_string(v));
    PropositionUniverse universe = g.universe();
    int k = 1;
    std::string name;
    do {
        name = "!mark" + std::to_string(k++);
    } while (universe.contains(name));
    universe.add(name);
    Graph out(g.node_count(), universe);
    for (int u = 0; u < g.node_count(); ++u)
        for (int p : g.labels(u)) out.add_label(u, p);
    out.add_label(v, name);
    for (auto [a, b] : g.edges()) out.add_edge(a, b);
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    if (!(a.universe() == b.universe())) throw Error("disjoint_union: proposition universes differ");
    Graph out(a.node_count() + b.node_count(), a.universe());
    for (int v = 0; v < a.node_count(); ++v)
        for (int p : a.labels(v)) out.add_label(v, p);
    for (int v = 0; v < b.node_count(); ++v)
        for (int p : b.labels(v)) out.add_label(a.node_count() + v, p);
    for (auto [u, v] : a.edges()) out.add_edge(u, v);
    for (auto [u, v] : b.edges()) out.add_edge(a.node_count() + u, a.node_count() + v);
    return out;
}

namespace {

struct IsoSearch {
    const Graph& a;
    const Graph& b;
    std::vector<int> map;   // a -> b, -1 unassigned
    std::vector<char> used; // b side
    // Label sets compared by name so universes with different orders agree.
    std::vector<std::vector<std::string>> label_a, label_b;

    IsoSearch(const Graph& a, const Graph& b)
        : a(a), b(b), map(a.node_count(), -1), used(b.node_count(), 0) {
        for (int v = 0; v < a.node_count(); ++v) label_a.push_back(a.label_names(v));
        for (int v = 0; v < b.node_count(); ++v) label_b.push_back(b.label_names(v));
    }

    bool feasible(int va, int vb) const {
        if (a.degree(va) != b.degree(vb)) return false;
        if (label_a[va] != label_b[vb]) return false;
        for (int w : a.neighbors(va))
            if (map[w] >= 0 && !b.adjacent(map[w], vb)) return false;
        // Non-neighbors already mapped must stay non-adjacent.
        for (int w = 0; w < a.node_count(); ++w)
            if (map[w] >= 0 && !a.adjacent(w, va) && w != va && b.adjacent(map[w], vb)) return false;
        return true;
    }

    bool extend(int next) {
        if (next == a.node_count()) return true;
        if (map[next] >= 0) return extend(next + 1);
        for (int vb = 0; vb < b.node_count(); ++vb) {
            if (used[vb] || !feasible(next, vb)) continue;
            map[next] = vb;
            used[vb] = 1;
            if (extend(next + 1)) return true;
            map[next] = -1;
            used[vb] = 0;
        }
        return false;
    }
};

bool iso_precheck(const Graph& a, const Graph& b, int guard) {
    if (std::max(a.node_count(), b.node_count()) > guard)
        throw GuardError("brute_force_isomorphic: size guard exceeded");
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.node_count(); ++v) da.push_back(a.degree(v));
    for (int v = 0; v < b.node_count(); ++v) db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    return da == db;
}

}  // namespace

bool brute_force_isomorphic(const Graph& a, const Graph& b, int guard) {
    if (!iso_precheck(a, b, guard)) return false;
    IsoSearch search(a, b);
    return search.extend(0);
}

bool brute_force_isomorphic(const PointedGraph& a, const PointedGraph& b, int guard) {
    if (!iso_precheck(a.graph, b.graph, guard)) return false;
    IsoSearch search(a.graph, b.graph);
    if (!search.feasible(a.point, b.point)) return false;
    search.map[a.point] = b.point;
    search.used[b.point] = 1;
    return search.extend(0);
}

Graph permute(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.node_count()) throw Error("permutation size mismatch");
    Graph out(g.node_count(), g.universe());
    for (int v = 0; v < g.node_count(); ++v)
        for (int p : g.labels(v)) out.add_label(perm[v], p);
    for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
    return out;
}

}  // namespace egoref
