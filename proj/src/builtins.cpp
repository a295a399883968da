#include "egoref/builtins.hpp"

#include <optional>

namespace egoref {

namespace {

Graph empty_labeled(int n) { return Graph(n, PropositionUniverse{}); }

// Parses "name(arg)" forms; returns nullopt when `s` has no parameter list.
std::optional<int> param_of(const std::string& s, const std::string& prefix) {
    if (s.size() <= prefix.size() + 2) return std::nullopt;
    if (s.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    if (s[prefix.size()] != '(' || s.back() != ')') return std::nullopt;
    std::string arg = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
    try {
        std::size_t pos = 0;
        int v = std::stoi(arg, &pos);
        if (pos != arg.size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

Graph make_cycle(int n) {
    if (n < 3) throw Error("cycle(n) requires n >= 3");
    Graph g = empty_labeled(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph make_path(int n) {
    if (n < 1) throw Error("path(n) requires n >= 1");
    Graph g = empty_labeled(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph make_complete(int n) {
    if (n < 0) throw Error("complete(n) requires n >= 0");
    Graph g = empty_labeled(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph make_prism() {
    Graph g = empty_labeled(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(3, 5);
    g.add_edge(0, 3);
    g.add_edge(1, 4);
    g.add_edge(2, 5);
    return g;
}

Graph make_k33() {
    Graph g = empty_labeled(6);
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) g.add_edge(i, j);
    return g;
}

Graph make_grid2xn(int n) {
    if (n < 1) throw Error("grid2xn(n) requires n >= 1");
    Graph g = empty_labeled(2 * n);
    // Top row 0..n-1, bottom row n..2n-1; root is node 0.
    for (int i = 0; i + 1 < n; ++i) {
        g.add_edge(i, i + 1);
        g.add_edge(n + i, n + i + 1);
    }
    for (int i = 0; i < n; ++i) g.add_edge(i, n + i);
    return g;
}

Graph make_shrikhande() {
    Graph g = empty_labeled(16);
    auto id = [](int a, int b) { return 4 * ((a % 4 + 4) % 4) + ((b % 4 + 4) % 4); };
    const int diffs[3][2] = {{1, 0}, {0, 1}, {1, 1}};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (auto& d : diffs) {
                int u = id(a, b), v = id(a + d[0], b + d[1]);
                if (!g.adjacent(u, v)) g.add_edge(std::min(u, v), std::max(u, v));
            }
    return g;
}

Graph make_rook4x4() {
    Graph g = empty_labeled(16);
    auto id = [](int a, int b) { return 4 * a + b; };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                if (c > b) g.add_edge(id(a, b), id(a, c));  // same row
                if (c > a) g.add_edge(id(a, b), id(c, b));  // same column
            }
    return g;
}

namespace {

// Square nodes 0..3 with edges 0-1, 1-2, 2-3, 3-0. `tri` names the two nodes
// joined to all six nodes of two triangles each; the remaining two square
// nodes are each joined to all six nodes of a 6-cycle.
Graph make_rs_graph(int tri_a, int tri_b) {
    Graph g = empty_labeled(28);
    for (int i = 0; i < 4; ++i) g.add_edge(std::min(i, (i + 1) % 4), std::max(i, (i + 1) % 4));
    int next = 4;
    auto attach_triangles = [&](int holder) {
        for (int t = 0; t < 2; ++t) {
            int base = next;
            next += 3;
            g.add_edge(base, base + 1);
            g.add_edge(base + 1, base + 2);
            g.add_edge(base, base + 2);
            for (int k = 0; k < 3; ++k) g.add_edge(holder, base + k);
        }
    };
    auto attach_sixcycle = [&](int holder) {
        int base = next;
        next += 6;
        for (int k = 0; k < 6; ++k) g.add_edge(std::min(base + k, base + (k + 1) % 6), std::max(base + k, base + (k + 1) % 6));
        for (int k = 0; k < 6; ++k) g.add_edge(holder, base + k);
    };
    attach_triangles(tri_a);
    attach_triangles(tri_b);
    for (int i = 0; i < 4; ++i)
        if (i != tri_a && i != tri_b) attach_sixcycle(i);
    return g;
}

}  // namespace

std::pair<Graph, Graph> make_rs_pair() {
    return {make_rs_graph(0, 2), make_rs_graph(0, 1)};
}

std::pair<Graph, Graph> make_fig1_pair() { return {make_prism(), make_k33()}; }

std::pair<Graph, Graph> make_cycle_pair(int r) {
    if (r < 0) throw Error("cycle-pair(r) requires r >= 0");
    return {make_cycle(4 * r + 6), disjoint_union(make_cycle(2 * r + 3), make_cycle(2 * r + 3))};
}

bool is_builtin_pair(const std::string& name) {
    return name == "fig1-pair" || name == "rs-pair" || param_of(name, "cycle-pair").has_value();
}

Graph builtin_graph(const std::string& name) {
    if (name == "shrikhande") return make_shrikhande();
    if (name == "rook4x4") return make_rook4x4();
    if (name == "prism") return make_prism();
    if (name == "k33") return make_k33();
    if (auto n = param_of(name, "cycle")) return make_cycle(*n);
    if (auto n = param_of(name, "path")) return make_path(*n);
    if (auto n = param_of(name, "complete")) return make_complete(*n);
    if (auto n = param_of(name, "grid2xn")) return make_grid2xn(*n);
    throw Error("unknown builtin graph: " + name);
}

std::pair<Graph, Graph> builtin_pair(const std::string& name) {
    if (name == "fig1-pair") return make_fig1_pair();
    if (name == "rs-pair") return make_rs_pair();
    if (auto r = param_of(name, "cycle-pair")) return make_cycle_pair(*r);
    throw Error("unknown builtin pair: " + name);
}

std::vector<std::string> builtin_graph_names() {
    return {"fig1-pair", "cycle-pair(r)", "rs-pair",    "grid2xn(n)", "cycle(n)",
            "shrikhande", "rook4x4",      "complete(n)", "path(n)",    "prism",
            "k33"};
}

std::vector<std::pair<std::string, Graph>> builtin_corpus() {
    std::vector<std::pair<std::string, Graph>> out;
    auto fig1 = make_fig1_pair();
    out.emplace_back("prism", fig1.first);
    out.emplace_back("k33", fig1.second);
    auto cp1 = make_cycle_pair(1);
    out.emplace_back("cycle-pair(1).a", cp1.first);
    out.emplace_back("cycle-pair(1).b", cp1.second);
    auto rs = make_rs_pair();
    out.emplace_back("rs-pair.a", rs.first);
    out.emplace_back("rs-pair.b", rs.second);
    out.emplace_back("grid2xn(4)", make_grid2xn(4));
    out.emplace_back("cycle(6)", make_cycle(6));
    out.emplace_back("shrikhande", make_shrikhande());
    out.emplace_back("rook4x4", make_rook4x4());
    out.emplace_back("complete(4)", make_complete(4));
    out.emplace_back("path(3)", make_path(3));
    return out;
}

}  // namespace egoref
