#include <doctest.h>

#include <random>

#include "egoref/builtins.hpp"
#include "egoref/herefine.hpp"
#include "egoref/wlir.hpp"
#include "testutil.hpp"

using namespace egoref;

TEST_CASE("target cell selection") {
    Graph c4 = make_cycle(4);
    auto col = wl(c4, initial_coloring(c4), 4);
    CHECK(select_target_cell(col) == col.color[0]);

    // Singleton classes are skipped.
    Graph p3 = make_path(3);
    auto pcol = wl(p3, initial_coloring(p3), 3);
    CHECK(select_target_cell(pcol) == pcol.color[0]);  // the end pair

    Graph p2(2, PropositionUniverse({"p"}));
    p2.add_label(0, 0);
    CHECK_THROWS_AS(select_target_cell(initial_coloring(p2)), Error);
}

TEST_CASE("individualization") {
    Graph c4 = make_cycle(4);
    auto col = initial_coloring(c4);
    auto ind = individualize(c4, col, 2);
    auto hist = histogram(ind);
    CHECK(hist.size() == 2);

    // On a discrete coloring it stays discrete.
    Graph p2(2, PropositionUniverse({"p"}));
    p2.add_label(0, 0);
    auto dcol = initial_coloring(p2);
    CHECK(individualize(p2, dcol, 0).is_discrete());

    // Commutes with isomorphism.
    std::mt19937 rng(31);
    for (int i = 0; i < 20; ++i) {
        Graph g = test::random_graph(7, 0.4, rng);
        auto perm = test::random_permutation(7, rng);
        Graph pg = permute(g, perm);
        int v = static_cast<int>(rng() % 7);
        auto a = histogram(wl(g, individualize(g, initial_coloring(g), v), 7));
        auto b = histogram(wl(pg, individualize(pg, initial_coloring(pg), perm[v]), 7));
        CHECK(a == b);
    }
}

TEST_CASE("wlir tree shapes") {
    // Regular graph, no budget: a single leaf with one class.
    auto leaf = wlir(make_complete(3), initial_coloring(make_complete(3)), 0);
    CHECK(leaf.children.empty());
    CHECK(leaf.hist.size() == 1);

    // C4 with one individualization: root plus 4 children, each child
    // coloring has classes of sizes {1, 2, 1}.
    auto c4tree = wlir(make_cycle(4), initial_coloring(make_cycle(4)), 1);
    CHECK(c4tree.children.size() == 4);
    for (const auto& child : c4tree.children) {
        REQUIRE(child.hist.size() == 3);
        std::vector<int> sizes;
        for (auto [id, count] : child.hist) sizes.push_back(static_cast<int>(count));
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<int>{1, 1, 2});
        CHECK(child.children.empty());  // discrete after refinement
    }

    // P3: one branching of width 2 over the end pair, then discrete leaves.
    auto p3tree = wlir(make_path(3), initial_coloring(make_path(3)), 5);
    CHECK(p3tree.children.size() == 2);
    for (const auto& child : p3tree.children) {
        CHECK(child.label.is_discrete());
        CHECK(child.children.empty());
    }
}

TEST_CASE("full-budget leaves are discrete") {
    std::mt19937 rng(33);
    for (int i = 0; i < 25; ++i) {
        Graph g = test::random_graph(2 + i % 6, 0.4, rng);
        auto tree = wlir(g, initial_coloring(g), g.node_count());
        std::function<void(const RefinementTree&)> walk = [&](const RefinementTree& t) {
            if (t.children.empty())
                CHECK(t.label.is_discrete());
            else
                for (const auto& c : t.children) walk(c);
        };
        walk(tree);
    }
}

TEST_CASE("canonical tree keys") {
    // Permuting a graph yields the same tree key.
    std::mt19937 rng(37);
    for (int i = 0; i < 20; ++i) {
        Graph g = test::random_graph(6, 0.4, rng, i % 2 ? std::vector<std::string>{"p"}
                                                        : std::vector<std::string>{});
        Graph pg = permute(g, test::random_permutation(6, rng));
        for (int d = 0; d <= 2; ++d)
            CHECK(wlir(g, initial_coloring(g), d).key == wlir(pg, initial_coloring(pg), d).key);
    }
}

TEST_CASE("wlir equivalence facts") {
    CHECK(!wlir_graph_equiv(make_cycle(6), disjoint_union(make_cycle(3), make_cycle(3)), 1));
    auto [rs1, rs2] = make_rs_pair();
    CHECK(wlir_graph_equiv(rs1, rs2, 0));
    CHECK(wlir_graph_equiv(rs1, rs2, 1));
}

TEST_CASE("depth 0 equals plain refinement equivalence on corpus and random pairs") {
    auto corpus = builtin_corpus();
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j) {
            CAPTURE(corpus[i].first);
            CAPTURE(corpus[j].first);
            CHECK(wlir_graph_equiv(corpus[i].second, corpus[j].second, 0) ==
                  graph_equiv_wl(corpus[i].second, corpus[j].second));
        }
    std::mt19937 rng(41);
    for (int i = 0; i < 100; ++i) {
        Graph a = test::random_graph(3 + i % 5, 0.4, rng);
        Graph b = i % 3 ? test::random_graph(3 + i % 5, 0.4, rng)
                        : permute(a, test::random_permutation(a.node_count(), rng));
        CHECK(wlir_graph_equiv(a, b, 0) == graph_equiv_wl(a, b));
    }
}

TEST_CASE("iso test agrees with the brute-force oracle") {
    auto [prism, k33] = make_fig1_pair();
    CHECK(!iso_test(prism, k33));
    CHECK_THROWS_AS(iso_test(make_cycle(65), make_cycle(65)), GuardError);

    std::mt19937 rng(43);
    for (int i = 0; i < 150; ++i) {
        int n = 2 + i % 6;
        Graph a = test::random_graph(n, 0.4, rng, i % 2 ? std::vector<std::string>{"p", "q"}
                                                        : std::vector<std::string>{});
        Graph b = i % 2 ? test::random_graph(n, 0.4, rng, std::vector<std::string>{"p", "q"})
                        : permute(a, test::random_permutation(n, rng));
        CHECK(iso_test(a, b) == brute_force_isomorphic(a, b));
    }
}

TEST_CASE("wlir distinguishing implies he distinguishing on corpus") {
    auto corpus = builtin_corpus();
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j)
            for (int d = 0; d <= 1; ++d) {
                CAPTURE(corpus[i].first);
                CAPTURE(corpus[j].first);
                if (!wlir_graph_equiv(corpus[i].second, corpus[j].second, d))
                    CHECK(!graph_equiv_he(corpus[i].second, corpus[j].second,
                                          HeParams{d, std::nullopt, std::nullopt}));
            }
}

TEST_CASE("monotone in the individualization budget on corpus") {
    auto corpus = builtin_corpus();
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j) {
            bool d0 = !wlir_graph_equiv(corpus[i].second, corpus[j].second, 0);
            bool d1 = !wlir_graph_equiv(corpus[i].second, corpus[j].second, 1);
            bool d2 = !wlir_graph_equiv(corpus[i].second, corpus[j].second, 2);
            if (d0) CHECK(d1);
            if (d1) CHECK(d2);
        }
}
