#include <catch2/catch_amalgamated.hpp>

#include "arcade/graph.hpp"

#include <algorithm>

using namespace arcade;

namespace {

Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

} // namespace

TEST_CASE("graph construction guards") {
    Graph g(3);
    CHECK_THROWS_AS(g.add_edge(0, 0), StructuralError);
    CHECK_THROWS_AS(g.add_edge(0, 5), StructuralError);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("generators produce the expected shapes") {
    CHECK(gen_complete(5).edge_count() == 10);
    CHECK(gen_empty(4).edge_count() == 0);
    CHECK(gen_cycle(6).edge_count() == 6);
    CHECK_THROWS_AS(gen_cycle(2), PreconditionError);

    Graph dc = gen_disjoint_cliques(3, 4);
    CHECK(dc.size() == 12);
    CHECK(dc.edge_count() == 3 * 6);
    CHECK(dc.has_edge(0, 3));
    CHECK_FALSE(dc.has_edge(3, 4));
    CHECK_THROWS_AS(gen_disjoint_cliques(0, 4), PreconditionError);

    Graph band = gen_band(6, 3);
    CHECK(band.has_edge(0, 2));
    CHECK_FALSE(band.has_edge(0, 3));
    CHECK(band.edge_count() == 5 + 4);
    CHECK_THROWS_AS(gen_band(6, 0), PreconditionError);
}

TEST_CASE("chromatic numbers of reference graphs") {
    CHECK(chromatic_number(gen_empty(0)) == 0);
    CHECK(chromatic_number(gen_empty(4)) == 1);
    CHECK(chromatic_number(gen_complete(5)) == 5);
    CHECK(chromatic_number(gen_cycle(6)) == 2);
    CHECK(chromatic_number(gen_cycle(7)) == 3);
    CHECK(chromatic_number(gen_disjoint_cliques(3, 4)) == 4);
    CHECK(chromatic_number(gen_band(6, 3)) == 3);
    CHECK(chromatic_number(gen_band(5, 2)) == 2);
    CHECK(chromatic_number(petersen()) == 3);

    Graph k33(6);
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) k33.add_edge(a, b);
    CHECK(chromatic_number(k33) == 2);

    Caps tight = Caps::defaults();
    tight.chromatic_max_vertices = 4;
    CHECK_THROWS_AS(chromatic_number(gen_complete(5), tight), CapExceeded);
    CHECK(chromatic_number(gen_complete(4), tight) == 4);
}

TEST_CASE("girth of reference graphs") {
    CHECK(girth(gen_complete(4)) == 3);
    CHECK(girth(gen_cycle(5)) == 5);
    CHECK(girth(gen_cycle(9)) == 9);
    CHECK(girth(gen_band(5, 2)) == -1);
    CHECK(girth(gen_empty(3)) == -1);
    CHECK(girth(petersen()) == 5);

    Graph k23(5);
    for (int a = 0; a < 2; ++a)
        for (int b = 2; b < 5; ++b) k23.add_edge(a, b);
    CHECK(girth(k23) == 4);
}

TEST_CASE("graph text round trip") {
    Graph g = petersen();
    Graph back = parse_graph_text(graph_to_text(g));
    CHECK(back == g);

    CHECK(parse_graph_text("# comment\np 3 1\ne 0 2\n").has_edge(2, 0));
    CHECK_THROWS_AS(parse_graph_text("e 0 1\n"), StructuralError);
    CHECK_THROWS_AS(parse_graph_text("p 3 2\ne 0 1\n"), StructuralError);
    CHECK_THROWS_AS(parse_graph_text("p 3 1\ne 0 3\n"), StructuralError);
    CHECK_THROWS_AS(parse_graph_text("p 3 1\ne 1 1\n"), StructuralError);
    CHECK_THROWS_AS(parse_graph_text("p 3 1\nx 0 1\n"), StructuralError);
}

TEST_CASE("ordered structures") {
    OrderedStructure c3 = make_chain(3);
    CHECK(c3.size == 3);
    CHECK(c3.lt(0, 2));
    CHECK_FALSE(c3.lt(2, 0));
    CHECK_FALSE(c3.lt(1, 1));

    OrderedStructure a2 = make_antichain(2);
    CHECK(a2.less.empty());

    OrderedStructure k3 = make_kp(3);
    CHECK(k3.lt(0, 1));
    CHECK(k3.lt(1, 0));
    CHECK_FALSE(k3.lt(2, 2));

    OrderedStructure m = gen_mpI(2, make_chain(2));
    CHECK(m.size == 4);
    CHECK(m.lt(0, 1));
    CHECK_FALSE(m.lt(1, 0));
    CHECK(m.lt(2, 3));
    CHECK(m.lt(3, 2));
    CHECK(m.lt(0, 3));
    CHECK(m.lt(3, 0));
}

TEST_CASE("ordered structure parsing") {
    CHECK(parse_ordered("chain:3").less == make_chain(3).less);
    CHECK(parse_ordered("antichain:2").name == "antichain:2");
    CHECK(parse_ordered("kp:4").less == make_kp(4).less);

    OrderedStructure m = parse_ordered("mpI:2,chain:2");
    CHECK(m.name == "mpI:2,chain:2");
    CHECK(m.less == gen_mpI(2, make_chain(2)).less);

    OrderedStructure nested = parse_ordered("mpI:1,mpI:1,chain:1");
    CHECK(nested.size == 3);

    CHECK_THROWS_AS(parse_ordered("chain"), StructuralError);
    CHECK_THROWS_AS(parse_ordered("chain:x"), StructuralError);
    CHECK_THROWS_AS(parse_ordered("chain:-1"), StructuralError);
    CHECK_THROWS_AS(parse_ordered("mpI:2"), StructuralError);
    CHECK_THROWS_AS(parse_ordered("blob:3"), StructuralError);
}
