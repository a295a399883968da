#include <doctest.h>

#include <random>

#include "egoref/builtins.hpp"
#include "egoref/graph.hpp"
#include "egoref/graph6.hpp"
#include "testutil.hpp"

using namespace egoref;

TEST_CASE("graph6 decodes hand-checked records") {
    Graph k3 = parse_graph6("Bw");
    CHECK(k3.node_count() == 3);
    CHECK(k3.edge_count() == 3);

    Graph empty3 = parse_graph6("B?");
    CHECK(empty3.node_count() == 3);
    CHECK(empty3.edge_count() == 0);

    Graph p3 = parse_graph6("Bg");
    CHECK(p3.node_count() == 3);
    CHECK(p3.edge_count() == 2);
    CHECK(p3.adjacent(0, 1));
    CHECK(p3.adjacent(1, 2));
    CHECK(!p3.adjacent(0, 2));
}

TEST_CASE("graph6 rejects malformed input") {
    CHECK_THROWS_AS(parse_graph6(""), ParseError);
    CHECK_THROWS_AS(parse_graph6("\x1f"), ParseError);
    CHECK_THROWS_AS(parse_graph6("Bwx"), ParseError);   // trailing garbage
    CHECK_THROWS_AS(parse_graph6("B"), ParseError);     // missing edge bits
    CHECK_THROWS_AS(parse_graph6("~??"), ParseError);   // long form unsupported
    CHECK_THROWS_AS(parse_graph6("B\x10"), ParseError); // non-printable byte
}

TEST_CASE("graph6 round-trips builtins and random graphs") {
    std::mt19937 rng(7);
    for (const auto& [name, g] : builtin_corpus()) {
        CAPTURE(name);
        Graph back = parse_graph6(encode_graph6(g));
        CHECK(back.node_count() == g.node_count());
        auto e1 = g.edges();
        auto e2 = back.edges();
        std::sort(e1.begin(), e1.end());
        std::sort(e2.begin(), e2.end());
        CHECK(e1 == e2);
    }
    for (int i = 0; i < 50; ++i) {
        Graph g = test::random_graph(1 + i % 12, 0.4, rng);
        Graph back = parse_graph6(encode_graph6(g));
        CHECK(back.structurally_equal(g));
    }
}

TEST_CASE("labeled text format") {
    Graph g = parse_labeled_text("2 1\n0 p\n1\n0 1\n");
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.label_names(0) == std::vector<std::string>{"p"});
    CHECK(g.label_names(1).empty());

    Graph edgeless = parse_labeled_text("2 0\n0\n1\n");
    CHECK(edgeless.edge_count() == 0);

    CHECK(serialize_labeled_text(parse_labeled_text("1 0\n0\n")) == "1 0\n0\n");

    CHECK_THROWS_AS(parse_labeled_text("2 1\n0\n1\n0 0\n"), ParseError);  // self-loop
    CHECK_THROWS_AS(parse_labeled_text("2 2\n0\n1\n0 1\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_labeled_text("2 1\n0\n1\n0 5\n"), ParseError);
    PropositionUniverse pq({"p", "q"});
    CHECK_THROWS_AS(parse_labeled_text("1 0\n0 r\n", pq), ParseError);
}

TEST_CASE("labeled text round trip is the identity") {
    std::mt19937 rng(11);
    for (const auto& [name, g] : builtin_corpus()) {
        CAPTURE(name);
        CHECK(test::same_labeled_graph(parse_labeled_text(serialize_labeled_text(g)), g));
    }
    for (int i = 0; i < 200; ++i) {
        Graph g = test::random_graph(1 + i % 10, 0.3, rng, {"p", "q"});
        CHECK(test::same_labeled_graph(parse_labeled_text(serialize_labeled_text(g)), g));
    }
}

TEST_CASE("ego subgraph is the induced BFS ball") {
    Graph c10 = make_cycle(10);
    auto ego1 = ego_subgraph(c10, 3, 1);
    CHECK(ego1.graph.node_count() == 3);
    CHECK(ego1.graph.edge_count() == 2);  // path centered at v

    Graph k3 = make_complete(3);
    auto egok = ego_subgraph(k3, 0, 1);
    CHECK(egok.graph.node_count() == 3);
    CHECK(egok.graph.edge_count() == 3);

    // Radius 2 in C5 covers the whole cycle, so the induced ball is C5
    // itself, not a path; the radius hierarchy depends on this.
    Graph two_c5 = disjoint_union(make_cycle(5), make_cycle(5));
    auto ego2 = ego_subgraph(two_c5, 2, 2);
    CHECK(ego2.graph.node_count() == 5);
    CHECK(ego2.graph.edge_count() == 5);
    CHECK(brute_force_isomorphic(ego2.graph, make_cycle(5)));

    // Ball membership against an independent BFS.
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        Graph g = test::random_graph(9, 0.25, rng);
        int v = static_cast<int>(rng() % 9);
        int r = 1 + static_cast<int>(rng() % 3);
        auto ego = ego_subgraph(g, v, r);
        auto dist = bfs_distances(g, v);
        for (int u = 0; u < 9; ++u)
            CHECK((ego.to_sub[u] >= 0) == (dist[u] >= 0 && dist[u] <= r));
    }
}

TEST_CASE("mark adds one fresh proposition at one node") {
    Graph g(2, PropositionUniverse{});
    Graph m = mark(g, 0);
    CHECK(m.universe().size() == 1);
    CHECK(m.label_names(0).size() == 1);
    CHECK(m.label_names(1).empty());

    Graph mm = mark(m, 1);
    CHECK(mm.universe().size() == 2);
    CHECK(mm.label_names(0) != mm.label_names(1));

    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        Graph h = test::random_graph(7, 0.3, rng, {"p"});
        auto perm = test::random_permutation(7, rng);
        int v = static_cast<int>(rng() % 7);
        PointedGraph a{mark(permute(h, perm), perm[v]), perm[v]};
        PointedGraph b{mark(h, v), v};
        CHECK(brute_force_isomorphic(a, b));
    }
}

TEST_CASE("disjoint union") {
    Graph c5 = make_cycle(5);
    Graph u = disjoint_union(c5, c5);
    CHECK(u.node_count() == 10);
    CHECK(u.edge_count() == 10);
    CHECK(connected_components(u) == 2);

    Graph empty(0, PropositionUniverse{});
    CHECK(disjoint_union(c5, empty).structurally_equal(c5));

    Graph labeled(1, PropositionUniverse({"p"}));
    CHECK_THROWS_AS(disjoint_union(c5, labeled), Error);
}

TEST_CASE("brute force isomorphism oracle") {
    CHECK(brute_force_isomorphic(make_complete(3), make_complete(3)));
    CHECK(!brute_force_isomorphic(make_cycle(6), disjoint_union(make_cycle(3), make_cycle(3))));
    CHECK(!brute_force_isomorphic(make_prism(), make_k33()));
    CHECK_THROWS_AS(brute_force_isomorphic(make_cycle(11), make_cycle(11)), GuardError);

    std::mt19937 rng(13);
    for (const auto& [name, g] : builtin_corpus()) {
        if (g.node_count() > 10) continue;
        CAPTURE(name);
        for (int i = 0; i < 100; ++i) {
            auto perm = test::random_permutation(g.node_count(), rng);
            CHECK(brute_force_isomorphic(g, permute(g, perm)));
        }
    }
}

TEST_CASE("builtin graphs have the advertised shapes") {
    auto [prism, k33] = make_fig1_pair();
    CHECK(prism.node_count() == 6);
    CHECK(k33.node_count() == 6);
    for (int v = 0; v < 6; ++v) {
        CHECK(prism.degree(v) == 3);
        CHECK(k33.degree(v) == 3);
        CHECK(prism.label_names(v).empty());
        CHECK(k33.label_names(v).empty());
    }
    CHECK(!brute_force_isomorphic(prism, k33));

    auto [c10, c55] = make_cycle_pair(1);
    CHECK(c10.node_count() == 10);
    CHECK(c55.node_count() == 10);
    CHECK(connected_components(c10) == 1);
    CHECK(connected_components(c55) == 2);

    Graph grid = make_grid2xn(5);
    CHECK(grid.node_count() == 10);
    CHECK(grid.edge_count() == 13);
    CHECK(grid.degree(0) == 2);  // root is a corner

    Graph shrikhande = make_shrikhande();
    Graph rook = make_rook4x4();
    for (const Graph* g : {&shrikhande, &rook}) {
        CHECK(g->node_count() == 16);
        CHECK(g->edge_count() == 48);
        for (int v = 0; v < 16; ++v) CHECK(g->degree(v) == 6);
        // Strongly regular (16,6,2,2): adjacent pairs share 2 neighbors,
        // non-adjacent pairs share 2 neighbors.
        for (int u = 0; u < 16; ++u)
            for (int v = u + 1; v < 16; ++v) {
                int common = 0;
                for (int w = 0; w < 16; ++w)
                    if (g->adjacent(u, w) && g->adjacent(v, w)) ++common;
                CHECK(common == 2);
            }
    }

    auto [rs1, rs2] = make_rs_pair();
    for (const Graph* g : {&rs1, &rs2}) {
        CHECK(g->node_count() == 28);
        CHECK(g->edge_count() == 52);
        int deg8 = 0;
        for (int v = 0; v < 28; ++v)
            if (g->degree(v) == 8) ++deg8;
            else CHECK(g->degree(v) == 3);
        CHECK(deg8 == 4);
    }
    // Graph 1 carries the triangles on opposite square nodes, graph 2 on
    // adjacent ones.
    CHECK(!rs1.adjacent(0, 2));
    CHECK(rs2.adjacent(0, 1));

    CHECK_THROWS_AS(builtin_graph("no-such-graph"), Error);
    CHECK_THROWS_AS(builtin_graph("cycle(2)"), Error);
}
