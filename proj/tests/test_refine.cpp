#include <doctest.h>

#include <map>
#include <random>

#include "egoref/builtins.hpp"
#include "egoref/refine.hpp"
#include "testutil.hpp"

using namespace egoref;

namespace {

int class_count(const Coloring& col) { return static_cast<int>(histogram(col).size()); }

// Partition refinement: same new color implies same old color.
bool refines(const Coloring& fine, const Coloring& coarse) {
    std::map<KeyId, KeyId> back;
    for (int v = 0; v < fine.size(); ++v) {
        auto it = back.find(fine.color[v]);
        if (it == back.end())
            back[fine.color[v]] = coarse.color[v];
        else if (it->second != coarse.color[v])
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("initial coloring is label-determined") {
    Graph g(2, PropositionUniverse({"p"}));
    g.add_label(0, 0);
    CHECK(class_count(initial_coloring(g)) == 2);

    Graph uniform = make_cycle(6);
    CHECK(class_count(initial_coloring(uniform)) == 1);

    // Isomorphic graphs get identical color multisets.
    std::mt19937 rng(2);
    Graph h = test::random_graph(7, 0.4, rng, {"p", "q"});
    auto perm = test::random_permutation(7, rng);
    CHECK(histogram(initial_coloring(h)) == histogram(initial_coloring(permute(h, perm))));
}

TEST_CASE("single refinement steps") {
    Graph c6 = make_cycle(6);
    CHECK(class_count(refine_step(c6, initial_coloring(c6))) == 1);

    Graph p3 = make_path(3);
    auto col = refine_step(p3, initial_coloring(p3));
    CHECK(class_count(col) == 2);
    CHECK(col.color[0] == col.color[2]);
    CHECK(col.color[0] != col.color[1]);

    // Star: center separates from leaves.
    Graph star(4, PropositionUniverse{});
    for (int leaf = 1; leaf < 4; ++leaf) star.add_edge(0, leaf);
    auto scol = refine_step(star, initial_coloring(star));
    CHECK(class_count(scol) == 2);
}

TEST_CASE("wl iteration") {
    Graph p4 = make_path(4);
    CHECK(wl(p4, initial_coloring(p4), 0).color == initial_coloring(p4).color);
    auto col = wl(p4, initial_coloring(p4), 4);
    CHECK(class_count(col) == 2);
    CHECK(col.color[0] == col.color[3]);
    CHECK(col.color[1] == col.color[2]);

    for (int t = 1; t < 5; ++t)
        CHECK(class_count(wl(make_cycle(8), initial_coloring(make_cycle(8)), t)) == 1);
}

TEST_CASE("refinement property: each step refines the previous partition") {
    std::mt19937 rng(4);
    for (int i = 0; i < 40; ++i) {
        Graph g = test::random_graph(3 + i % 8, 0.35, rng, i % 2 ? std::vector<std::string>{"p"}
                                                                : std::vector<std::string>{});
        Coloring col = initial_coloring(g);
        for (int t = 0; t < 4; ++t) {
            Coloring next = refine_step(g, col);
            CHECK(refines(next, col));
            col = next;
        }
    }
}

TEST_CASE("histogram totals and permutation invariance") {
    Graph c6 = make_cycle(6);
    auto hist = histogram(wl(c6, initial_coloring(c6), 6));
    CHECK(hist.size() == 1);
    CHECK(hist[0].second == 6);

    std::mt19937 rng(8);
    for (int i = 0; i < 30; ++i) {
        Graph g = test::random_graph(8, 0.3, rng, {"p"});
        auto perm = test::random_permutation(8, rng);
        CHECK(histogram(wl(g, initial_coloring(g), 8)) ==
              histogram(wl(permute(g, perm), initial_coloring(permute(g, perm)), 8)));
    }
}

TEST_CASE("equal color implies equal degree and label set") {
    std::mt19937 rng(9);
    for (int i = 0; i < 30; ++i) {
        Graph g = test::random_graph(9, 0.3, rng, {"p", "q"});
        auto col = wl(g, initial_coloring(g), 9);
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v)
                if (col.color[u] == col.color[v]) {
                    CHECK(g.degree(u) == g.degree(v));
                    CHECK(g.label_names(u) == g.label_names(v));
                }
    }
}

TEST_CASE("node equivalence") {
    CHECK(node_equiv_wl({make_cycle(6), 0},
                        {disjoint_union(make_cycle(3), make_cycle(3)), 0}));
    Graph p3 = make_path(3);
    CHECK(!node_equiv_wl({p3, 0}, {p3, 1}));
    auto [prism, k33] = make_fig1_pair();
    CHECK(node_equiv_wl({prism, 0}, {k33, 0}));
}

TEST_CASE("graph equivalence") {
    CHECK(graph_equiv_wl(make_cycle(6), disjoint_union(make_cycle(3), make_cycle(3))));
    CHECK(!graph_equiv_wl(make_path(3), make_complete(3)));
    CHECK(graph_equiv_wl(make_shrikhande(), make_rook4x4()));
}

TEST_CASE("canonical keys are deterministic and cross-graph comparable") {
    Graph a = make_cycle(5);
    Graph b = make_cycle(5);
    auto ca = wl(a, initial_coloring(a), 5);
    auto cb = wl(b, initial_coloring(b), 5);
    CHECK(ca.color == cb.color);

    auto& table = KeyTable::instance();
    CHECK(table.digest_hex(ca.color[0]) == table.digest_hex(cb.color[0]));
    CHECK(table.digest_hex(ca.color[0]).size() == 64);

    // Full key rendering for small cases.
    Graph p2 = make_path(2);
    auto col = wl(p2, initial_coloring(p2), 1);
    std::string key = table.render(col.color[0]);
    CHECK(key == "R(L(),L())");
}
