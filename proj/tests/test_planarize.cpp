#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncl/core.hpp"
#include "ncl/generate.hpp"
#include "ncl/planarize.hpp"

using namespace ncl;

TEST_CASE("insert_crossover structure") {
    ConstraintGraph host;
    for (const char* id : {"a", "b", "c", "d"}) host.vertices.push_back({id, Kind::FREE, 0});
    Edge e1;
    e1.id = "e1";
    e1.u = "a";
    e1.v = "b";
    e1.weight = 2;
    e1.head = 0;
    host.edges.push_back(e1);
    Edge e2;
    e2.id = "e2";
    e2.u = "c";
    e2.v = "d";
    e2.weight = 2;
    e2.head = 0;
    host.edges.push_back(e2);
    host.finalize();

    auto [g, inst] = insert_crossover(host, "e1", "e2");
    CHECK(g.vertices.size() == 4 + 10);
    CHECK(g.edges.size() == 19);  // old two removed, 19 gadget edges added
    CHECK(inst.edge_map.size() == 19);
    CHECK(is_legal(g, initial_orientation(g)));

    // shared endpoint rejected
    ConstraintGraph tri;
    for (const char* id : {"a", "b", "c"}) tri.vertices.push_back({id, Kind::FREE, 0});
    Edge t1;
    t1.id = "t1";
    t1.u = "a";
    t1.v = "b";
    t1.weight = 2;
    t1.head = 0;
    Edge t2;
    t2.id = "t2";
    t2.u = "b";
    t2.v = "c";
    t2.weight = 2;
    t2.head = 0;
    tri.edges.push_back(t1);
    tri.edges.push_back(t2);
    tri.finalize();
    CHECK_THROWS_AS(insert_crossover(tri, "t1", "t2"), GraphError);
    // consumed edges no longer exist in the output graph
    CHECK_THROWS_AS(insert_crossover(g, "e1", "e2"), GraphError);
}

TEST_CASE("crossover propagation sequences replay") {
    CrossoverReport rep = verify_crossover(CrossoverMode::bounded);
    CHECK(rep.vertical_seq_legal);
    CHECK(rep.horizontal_seq_legal);
    CHECK(rep.exhaustive);
    // the raw ten-vertex gadget does NOT mutually exclude the propagations
    // in bounded play
    CHECK_FALSE(rep.raw_exclusion_after_vertical);
    CHECK_FALSE(rep.raw_exclusion_after_horizontal);
    // the exclusion lives at the half-crossover: after its vertical pair,
    // its horizontal pair is dead, and vice versa
    CHECK(rep.half_exclusion_after_vertical);
    CHECK(rep.half_exclusion_after_horizontal);
    CHECK(rep.half_ab_blocks_d);
    CHECK(rep.half_ab_blocks_pair);
    // the c-role external only gains inflow when reversed, so it stays movable
    CHECK_FALSE(rep.half_ab_blocks_c);
    // the expanded crossover actually reaches the states those claims cover
    CHECK(rep.expanded_vertical_reachable);
    CHECK(rep.expanded_fh_reachable);
}

TEST_CASE("crossover iff-properties over all legal configurations") {
    CrossoverReport rep = verify_crossover(CrossoverMode::unbounded);
    CHECK(rep.vertical_iff);
    CHECK(rep.horizontal_iff);
}

TEST_CASE("expand_half_crossovers") {
    auto [g, inst] = crossover_harness();
    // no four-red vertex -> unchanged
    ConstraintGraph plain;
    plain.vertices.push_back({"a", Kind::FREE, 0});
    plain.vertices.push_back({"b", Kind::FREE, 0});
    Edge e;
    e.id = "e";
    e.u = "a";
    e.v = "b";
    e.weight = 1;
    e.head = 0;
    plain.edges.push_back(e);
    plain.finalize();
    ConstraintGraph same = expand_half_crossovers(plain);
    CHECK(same.edges.size() == 1);
    CHECK(same.vertices.size() == 2);

    // the crossover has four four-red corners: 10-4+4*8 vertices, 19+4*10 edges
    std::vector<HalfCrossoverInstance> insts;
    ConstraintGraph ex = expand_half_crossovers(g, &insts);
    CHECK(insts.size() == 4);
    CHECK(ex.vertices.size() == g.vertices.size() - 4 + 4 * 8);
    CHECK(ex.edges.size() == g.edges.size() + 4 * 10);
    CHECK(is_legal(ex, initial_orientation(ex)));
    // all remaining non-harness vertices carry basic kinds
    for (const Vertex& v : ex.vertices) {
        if (v.kind == Kind::FREE) CHECK(v.min_inflow == 0);  // harness terminals only
    }
    // idempotent: no four-red vertices remain
    ConstraintGraph ex2 = expand_half_crossovers(ex);
    CHECK(ex2.vertices.size() == ex.vertices.size());
    CHECK(ex2.edges.size() == ex.edges.size());
}

TEST_CASE("half-crossover replacement counts on a bare four-red vertex") {
    // star: center with four red edges to FREE(2) anchors that hold them
    ConstraintGraph g;
    g.vertices.push_back({"c", Kind::FREE, 2});
    for (int i = 0; i < 4; ++i) {
        std::string id = "t" + std::to_string(i);
        g.vertices.push_back({id, Kind::FREE, 0});
        Edge e;
        e.id = "e" + std::to_string(i);
        e.u = "c";
        e.v = id;
        e.weight = 1;
        e.head = i < 2 ? 0 : 1;  // two in, two out
        g.edges.push_back(e);
    }
    g.finalize();
    REQUIRE(is_legal(g, initial_orientation(g)));
    ConstraintGraph ex = expand_half_crossovers(g);
    CHECK(ex.vertices.size() == g.vertices.size() - 1 + 8);   // +8 vertices
    CHECK(ex.edges.size() == g.edges.size() + 10);            // +10 internal edges
}

TEST_CASE("crossover-expanded graphs solve like the originals") {
    // random acyclic instances; declare a crossing between two disjoint blue
    // edges when one exists, expand, and compare solve_ncl verdicts
    int tested = 0;
    for (uint64_t seed = 1; seed <= 60 && tested < 20; ++seed) {
        ConstraintGraph g = random_acyclic_ncl(seed, 5);
        // find two vertex-disjoint blue edges, neither the target
        int a = -1, b = -1;
        for (int i = 0; i < (int)g.edges.size() && b < 0; ++i) {
            if (g.edges[i].weight != 2 || g.edges[i].id == *g.target) continue;
            for (int j = i + 1; j < (int)g.edges.size(); ++j) {
                if (g.edges[j].weight != 2 || g.edges[j].id == *g.target) continue;
                const Edge &x = g.edges[i], &y = g.edges[j];
                if (x.u != y.u && x.u != y.v && x.v != y.u && x.v != y.v) {
                    a = i;
                    b = j;
                    break;
                }
            }
        }
        if (a < 0) continue;
        ++tested;
        SolveReport base = solve_ncl(g);
        auto [crossed, inst] = insert_crossover(g, g.edges[a].id, g.edges[b].id);
        SolveReport after = solve_ncl(crossed);
        INFO("seed ", seed);
        CHECK(base.verdict == after.verdict);
    }
    CHECK(tested >= 20);
}
