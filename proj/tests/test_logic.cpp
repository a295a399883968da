#include <doctest.h>

#include <random>

#include "egoref/builtins.hpp"
#include "egoref/eval.hpp"
#include "egoref/rewrite.hpp"
#include "testutil.hpp"
#include "testutil_formula.hpp"

using namespace egoref;

TEST_CASE("parser round trips and rejects bad input") {
    const char* triangle = "(down x (dia 1 (dia 1 (dia 1 (var x)))))";
    FormulaPtr f = parse_formula(triangle);
    CHECK(print_formula(f) == triangle);
    CHECK(structurally_equal(f, builtin_formula("triangle")));

    FormulaPtr two = parse_formula("(dia 2 true)");
    CHECK(two->op == Op::DiaGe);
    CHECK(two->count == 2);
    CHECK(two->left->op == Op::Top);

    // Whitespace and comments normalize away.
    CHECK(print_formula(parse_formula("( and\n true ; comment\n true )")) == "(and true true)");

    CHECK_THROWS_AS(parse_formula("(var y)"), ParseError);          // free variable
    CHECK_THROWS_AS(parse_formula("(dia 0 true)"), ParseError);     // k < 1
    CHECK_THROWS_AS(parse_formula("(dia 1 true"), ParseError);      // missing paren
    CHECK_THROWS_AS(parse_formula("(frob true)"), ParseError);      // unknown op
    CHECK_THROWS_AS(parse_formula("true true"), ParseError);        // trailing content
    CHECK_THROWS_AS(parse_formula("(within 0 true)"), ParseError);  // radius < 1
    CHECK(parse_formula("(var y)", true)->op == Op::Var);           // allowed when free ok

    // Positions point at the offending token.
    try {
        parse_formula("(and true (frob true))");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 10);
    }
}

TEST_CASE("triangle formula on the fig1 pair") {
    auto [prism, k33] = make_fig1_pair();
    FormulaPtr t = builtin_formula("triangle");
    for (int v = 0; v < 6; ++v) {
        CHECK(eval(prism, v, t));
        CHECK(!eval(k33, v, t));
    }
}

TEST_CASE("cycle formula separates the cycle pair at the right radius") {
    for (int r = 1; r <= 2; ++r) {
        CAPTURE(r);
        auto [big, two_small] = make_cycle_pair(r);
        FormulaPtr phi = builtin_formula("phi-cycle(" + std::to_string(r) + ")");
        for (int v = 0; v < big.node_count(); ++v) CHECK(eval(big, v, phi));
        for (int v = 0; v < two_small.node_count(); ++v) CHECK(!eval(two_small, v, phi));
        // One radius down, the ball shapes agree and the formula holds on both.
        FormulaPtr lower = builtin_formula("phi-cycle(" + std::to_string(r - 1) + ")");
        for (int v = 0; v < big.node_count(); ++v) CHECK(eval(big, v, lower));
        for (int v = 0; v < two_small.node_count(); ++v) CHECK(eval(two_small, v, lower));
    }
}

TEST_CASE("rs formula holds at exactly the opposite triangle holders") {
    auto [g1, g2] = make_rs_pair();
    FormulaPtr psi = builtin_formula("psi-rs");
    std::vector<int> sat1, sat2;
    for (int v = 0; v < 28; ++v) {
        if (eval(g1, v, psi)) sat1.push_back(v);
        if (eval(g2, v, psi)) sat2.push_back(v);
    }
    CHECK(sat1 == std::vector<int>{0, 2});
    CHECK(sat2.empty());
}

TEST_CASE("triangle-cycle formula has binder depth 2 and separates fig1") {
    FormulaPtr psi = builtin_formula("psi-triangle-cycle");
    CHECK(stats(psi).down_depth == 2);
    auto [prism, k33] = make_fig1_pair();
    CHECK(count_satisfying(prism, psi) == 6);
    CHECK(count_satisfying(k33, psi) == 0);
}

TEST_CASE("formula stats") {
    CHECK(stats(builtin_formula("triangle")).down_depth == 1);
    CHECK(stats(f_top()).down_depth == 0);
    CHECK(stats(f_top()).op_depth == 0);
    auto s = stats(builtin_formula("psi-rs"));
    CHECK(s.down_depth == 1);
    CHECK(s.radii == std::set<int>{2});
    CHECK(s.free_vars.empty());
    CHECK(stats(parse_formula("(var y)", true)).free_vars == std::set<std::string>{"y"});
    CHECK(modal_depth(parse_formula("(dia 2 (box (prop p)))")) == 2);
}

TEST_CASE("environment semantics under subgraph restriction") {
    Graph p4 = make_path(4);
    // Bind the current node, then look for it within radius 1 at distance 2.
    FormulaPtr f = parse_formula("(down x (dia 1 (dia 1 (within 1 (dia 1 (var x))))))");
    // From node 0: walk 0-1-0 then within radius 1 of 0, neighbor 1 is not x...
    // walk 0-1-2: within ball {1,2,3}, node 0 dropped, (dia 1 (var x)) false.
    CHECK(!eval(p4, 0, f));
    // Walking back: 0-1-0, ball {0,1}, neighbor 1 != x=0; node 0's neighbor 1. false.
    FormulaPtr g = parse_formula("(down x (dia 1 (within 1 (dia 1 (var x)))))");
    CHECK(eval(p4, 0, g));  // 0-1, ball around 1 contains 0, 1 adjacent to 0=x

    // Walking two steps can return to the bound node, so this holds at 0.
    FormulaPtr back = parse_formula("(down x (dia 1 (dia 1 (within 1 (var x)))))");
    CHECK(eval(p4, 0, back));
    // Forced away from x, the dropped binding never matches inside the ball.
    FormulaPtr stale =
        parse_formula("(down x (dia 1 (dia 1 (and (not (var x)) (within 1 (var x))))))");
    CHECK(!eval(p4, 0, stale));

    // At jumps to the bound node; stale bindings make it false.
    FormulaPtr at = parse_formula("(down x (dia 1 (at x (prop p))))");
    Graph labeled(2, PropositionUniverse({"p"}));
    labeled.add_edge(0, 1);
    labeled.add_label(0, 0);
    CHECK(eval(labeled, 0, at));
    CHECK(!eval(labeled, 1, at));
}

TEST_CASE("sugar soundness on random instances") {
    std::mt19937 rng(51);
    test::FormulaGenOptions opts;
    for (int i = 0; i < 60; ++i) {
        Graph g = test::random_graph(6, 0.4, rng, {"p", "q"});
        FormulaPtr body = test::random_formula(rng, 2, opts);
        FormulaPtr boxed = f_box(body);
        FormulaPtr box_def = f_not(f_dia(1, f_not(body)));
        FormulaPtr either = f_or(body, f_not(body));
        for (int v = 0; v < 6; ++v) {
            CHECK(eval(g, v, boxed) == eval(g, v, box_def));
            CHECK(eval(g, v, either));
            FormulaPtr a = test::random_formula(rng, 2, opts);
            FormulaPtr b = test::random_formula(rng, 2, opts);
            CHECK(eval(g, v, f_or(a, b)) == eval(g, v, f_not(f_and(f_not(a), f_not(b)))));
        }
    }
}

TEST_CASE("eval is isomorphism invariant") {
    std::mt19937 rng(53);
    std::vector<FormulaPtr> formulas = {builtin_formula("triangle"), builtin_formula("psi-rs"),
                                        builtin_formula("phi-cycle(1)"),
                                        builtin_formula("psi-triangle-cycle")};
    for (const auto& [name, g] : builtin_corpus()) {
        if (g.node_count() > 12) continue;
        CAPTURE(name);
        auto perm = test::random_permutation(g.node_count(), rng);
        Graph pg = permute(g, perm);
        for (const auto& f : formulas)
            for (int v = 0; v < g.node_count(); ++v)
                CHECK(eval(g, v, f) == eval(pg, perm[v], f));
    }
}

TEST_CASE("canonical form") {
    // Nested binders get indices assigned outer to inner.
    FormulaPtr nested = parse_formula("(down a (within 2 (dia 1 (down b (within 2 (var b))))))");
    FormulaPtr canon = canonicalize(nested);
    CHECK(print_formula(canon) ==
          "(down x2 (within 2 (dia 1 (down x1 (within 2 (var x1))))))");
    CHECK(is_canonical(canon));
    CHECK(!is_canonical(nested));

    // Already-canonical input is unchanged.
    CHECK(print_formula(canonicalize(canon)) == print_formula(canon));

    // Plain binders count an implicit within.
    FormulaPtr plain = canonicalize(builtin_formula("psi-triangle-cycle"));
    CHECK(is_canonical(plain));
    CHECK(stats(plain).down_depth == 2);

    // Sibling binders at one level share an index.
    FormulaPtr siblings =
        parse_formula("(and (down a (within 1 (var a))) (down b (within 1 (var b))))");
    CHECK(print_formula(canonicalize(siblings)) ==
          "(and (down x1 (within 1 (var x1))) (down x1 (within 1 (var x1))))");

    CHECK_THROWS_AS(canonicalize(parse_formula("(within 2 true)")), Error);
    CHECK_THROWS_AS(
        canonicalize(parse_formula("(down a (within 1 (down b (within 2 (var b)))))")), Error);

    // Equivalence on random graphs.
    std::mt19937 rng(55);
    test::FormulaGenOptions opts;
    opts.allow_down = true;
    opts.within_radius = 2;
    for (int i = 0; i < 20; ++i) {
        FormulaPtr f = test::random_formula(rng, 4, opts);
        FormulaPtr c = canonicalize(f);
        CHECK(is_canonical(c));
        for (int j = 0; j < 5; ++j) {
            Graph g = test::random_graph(7, 0.35, rng, {"p", "q"});
            for (int v = 0; v < 7; ++v) CHECK(eval(g, v, f) == eval(g, v, c));
        }
    }
}

TEST_CASE("within elimination") {
    FormulaPtr wfree = builtin_formula("triangle");
    CHECK(structurally_equal(eliminate_within(wfree), wfree));

    FormulaPtr simple = parse_formula("(down x (within 1 (dia 1 true)))");
    CHECK(print_formula(eliminate_within(simple)) ==
          "(down v1 (dia 1 (and (or (var v1) (dia 1 (var v1))) true)))");

    std::mt19937 rng(57);
    test::FormulaGenOptions opts;
    opts.allow_down = true;
    for (int radius = 1; radius <= 2; ++radius) {
        opts.within_radius = radius;
        for (int i = 0; i < 25; ++i) {
            FormulaPtr f = test::random_formula(rng, 4, opts);
            FormulaPtr e = eliminate_within(f);
            CHECK(stats(e).radii.empty());
            CHECK(stats(e).down_depth == stats(f).down_depth);
            for (int j = 0; j < 4; ++j) {
                Graph g = test::random_graph(7, 0.3, rng, {"p", "q"});
                for (int v = 0; v < 7; ++v) CHECK(eval(g, v, f) == eval(g, v, e));
            }
        }
    }

    // Nested binders with different radii eliminate independently.
    FormulaPtr mixed = parse_formula(
        "(down a (within 1 (and (dia 1 true) (down b (within 2 (dia 1 (var b)))))))");
    FormulaPtr mixed_e = eliminate_within(mixed);
    CHECK(stats(mixed_e).radii.empty());
    for (int i = 0; i < 30; ++i) {
        Graph g = test::random_graph(8, 0.3, rng);
        for (int v = 0; v < 8; ++v) CHECK(eval(g, v, mixed) == eval(g, v, mixed_e));
    }

    // Built-in within formulas against the corpus members they speak about.
    auto [big, two_small] = make_cycle_pair(1);
    FormulaPtr phi = builtin_formula("phi-cycle(1)");
    FormulaPtr phi_e = eliminate_within(phi);
    for (int v = 0; v < big.node_count(); ++v) CHECK(eval(big, v, phi) == eval(big, v, phi_e));
    for (int v = 0; v < two_small.node_count(); ++v)
        CHECK(eval(two_small, v, phi) == eval(two_small, v, phi_e));

    auto [g1, g2] = make_rs_pair();
    FormulaPtr psi = builtin_formula("psi-rs");
    FormulaPtr psi_e = eliminate_within(psi);
    for (int v = 0; v < 28; ++v) {
        CHECK(eval(g1, v, psi) == eval(g1, v, psi_e));
        CHECK(eval(g2, v, psi) == eval(g2, v, psi_e));
    }
}

TEST_CASE("with_radius pairs plain binders") {
    FormulaPtr t = builtin_formula("triangle");
    FormulaPtr bounded = with_radius(t, 3);
    CHECK(print_formula(bounded) ==
          "(down x (within 3 (dia 1 (dia 1 (dia 1 (var x))))))");
    // A triangle sits inside the radius-1 ball, so evaluation agrees.
    auto [prism, k33] = make_fig1_pair();
    FormulaPtr r1 = with_radius(t, 1);
    for (int v = 0; v < 6; ++v) {
        CHECK(eval(prism, v, r1) == eval(prism, v, t));
        CHECK(eval(k33, v, r1) == eval(k33, v, t));
    }
    CHECK_THROWS_AS(with_radius(builtin_formula("psi-rs"), 2), Error);
}

TEST_CASE("at elimination") {
    FormulaPtr atfree = builtin_formula("triangle");
    CHECK(structurally_equal(eliminate_at(atfree), atfree));

    // Modal depth 1 sentence: disjunction over walk lengths 0, 1, 2.
    FormulaPtr f = parse_formula("(down x (box (at x (prop p))))");
    FormulaPtr e = eliminate_at(f);
    CHECK(print_formula(e).find("at") == std::string::npos);
    std::string printed = print_formula(e);
    CHECK(printed ==
          "(down x (box (or (or (and (var x) (prop p)) (dia 1 (and (var x) (prop p)))) "
          "(dia 1 (dia 1 (and (var x) (prop p)))))))");

    CHECK_THROWS_AS(eliminate_at(parse_formula("(down x (within 1 (at x true)))")), Error);

    std::mt19937 rng(59);
    test::FormulaGenOptions opts;
    opts.allow_down = true;
    opts.allow_at = true;
    for (int i = 0; i < 40; ++i) {
        FormulaPtr g = test::random_formula(rng, 4, opts);
        FormulaPtr ge = eliminate_at(g);
        CHECK(stats(ge).down_depth == stats(g).down_depth);
        for (int j = 0; j < 4; ++j) {
            Graph h = test::random_graph(7, 0.35, rng, {"p", "q"});
            for (int v = 0; v < 7; ++v) CHECK(eval(h, v, g) == eval(h, v, ge));
        }
    }
}
