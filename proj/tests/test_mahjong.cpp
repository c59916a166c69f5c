#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncl/generate.hpp"
#include "ncl/mahjong.hpp"
#include "ncl/trace.hpp"

using namespace ncl;
using namespace ncl::mahjong;

namespace {

Arrangement arr_of(std::vector<Tile> ts) {
    Arrangement a;
    a.tiles = std::move(ts);
    return a;
}

}  // namespace

TEST_CASE("availability") {
    // lone tile: both neighbors absent
    Arrangement a = arr_of({{0, 0, 0, 1}, {5, 0, 0, 1}});
    CHECK(is_available(a, 0, 0, 0));

    // middle tile of a three-tile row is pinned
    Arrangement row = arr_of({{0, 0, 0, 1}, {0, 1, 0, 1}, {0, 2, 0, 2}, {3, 0, 0, 2}});
    CHECK(is_available(row, 0, 0, 0));
    CHECK_FALSE(is_available(row, 0, 1, 0));
    CHECK(is_available(row, 0, 2, 0));

    // a tile directly above hides the one below
    Arrangement tower = arr_of({{0, 0, 0, 1}, {0, 0, 1, 2}, {2, 0, 0, 1}, {2, 0, 1, 2}});
    CHECK_FALSE(is_available(tower, 0, 0, 0));
    CHECK(is_available(tower, 0, 0, 1));
}

TEST_CASE("legal moves") {
    Arrangement a = arr_of({{0, 0, 0, 7}, {4, 0, 0, 7}});
    std::vector<char> removed(2, 0);
    CHECK(legal_moves(a, removed).size() == 1);

    // four tiles of one set, all available: C(4,2) = 6 candidate pairs
    Arrangement four =
        arr_of({{0, 0, 0, 3}, {2, 0, 0, 3}, {4, 0, 0, 3}, {6, 0, 0, 3}});
    std::vector<char> r4(4, 0);
    CHECK(legal_moves(four, r4).size() == 6);

    // OR gadget row [lock1, key, lock2]: the key is pinned until an end goes
    Arrangement orr = arr_of({{0, 0, 0, 1}, {0, 1, 0, 6}, {0, 2, 0, 2},
                              {2, 0, 0, 1}, {4, 0, 0, 2}, {6, 0, 0, 6}});
    std::vector<char> ro(6, 0);
    for (const PairMove& m : legal_moves(orr, ro)) {
        CHECK(orr.tiles[m.a].set != 6);
        CHECK(orr.tiles[m.b].set != 6);
    }
    apply(orr, ro, {0, 3});  // remove lock1 with its partner
    bool key_move = false;
    for (const PairMove& m : legal_moves(orr, ro))
        if (orr.tiles[m.a].set == 6 || orr.tiles[m.b].set == 6) key_move = true;
    CHECK(key_move);
}

TEST_CASE("solver basics") {
    Arrangement empty;
    Report r = solve(empty);
    CHECK(r.winnable);
    CHECK(r.witness.empty());

    Arrangement bad = arr_of({{0, 0, 0, 1}, {2, 0, 0, 1}, {4, 0, 0, 2}, {6, 0, 0, 2},
                              {4, 1, 0, 1}, {4, 2, 0, 1}});
    // middle pair of set 1 buried behind mismatches in one row
    Report r2 = solve(bad);
    CHECK(r2.winnable);  // all tiles are at row ends eventually

    // alternating sets in one row: the two available ends never match
    Arrangement lost = arr_of({{0, 0, 0, 1}, {0, 1, 0, 2}, {0, 2, 0, 1}, {0, 3, 0, 2}});
    CHECK_FALSE(solve(lost).winnable);
}

TEST_CASE("gadget behavior: AND needs both inputs") {
    // AND cross section plus external partner tiles; input keys join only
    // when marked live
    auto build = [&](bool in1, bool in2) {
        std::vector<Tile> ts = {
            {0, 0, 0, 6}, {0, 0, 1, 3}, {0, 0, 2, 1},  // [key6, 3, lock1]
            {0, 1, 0, 3}, {0, 1, 1, 2},                // [3, lock2]
            {4, 0, 0, 6},                               // key partner (consumer side)
        };
        // a dead input simply has no partner tile anywhere (the search below
        // never calls validate, so odd set sizes are fine here)
        if (in1) ts.push_back({6, 0, 0, 1});
        if (in2) ts.push_back({8, 0, 0, 2});
        return arr_of(ts);
    };
    for (bool in1 : {false, true})
        for (bool in2 : {false, true}) {
            Arrangement a = build(in1, in2);
            std::vector<char> removed(a.tiles.size(), 0);
            // exhaustively search whether the key pair (set 6) can ever go
            std::function<bool(std::vector<char>&)> can_remove_key =
                [&](std::vector<char>& rem) -> bool {
                for (const PairMove& m : legal_moves(a, rem)) {
                    if (a.tiles[m.a].set == 6) return true;
                    std::vector<char> nxt = rem;
                    nxt[m.a] = nxt[m.b] = 1;
                    if (can_remove_key(nxt)) return true;
                }
                return false;
            };
            CHECK(can_remove_key(removed) == (in1 && in2));
        }
}

namespace {

ConstraintGraph single_or_pre_satisfied() {
    ConstraintGraph g;
    g.vertices.push_back({"o", Kind::OR, 2});
    g.vertices.push_back({"p1", Kind::FREE, 0});
    g.vertices.push_back({"p2", Kind::FREE, 2});  // frozen second input
    g.vertices.push_back({"sink", Kind::FREE, 0});
    Edge b1;
    b1.id = "b1";
    b1.u = "o";
    b1.v = "p1";
    b1.weight = 2;
    b1.head = 1;
    Edge b2 = b1;
    b2.id = "b2";
    b2.v = "p2";
    Edge out;
    out.id = "out";
    out.u = "sink";
    out.v = "o";
    out.weight = 2;
    out.head = 1;
    g.edges.push_back(b1);
    g.edges.push_back(b2);
    g.edges.push_back(out);
    g.target = "out";
    g.finalize();
    return g;
}

}  // namespace

TEST_CASE("reduction of a pre-satisfied OR is winnable") {
    ConstraintGraph g = single_or_pre_satisfied();
    REQUIRE(solve_ncl(g).verdict == "winnable");
    auto [arr, trace] = mahjong::reduce(g);
    arr.validate();
    Report r = solve(arr);
    CHECK(r.winnable);
    // every tile set has even cardinality (validate checks it, but assert
    // the reduction output explicitly)
    std::map<int, int> sizes;
    for (const Tile& t : arr.tiles) sizes[t.set]++;
    for (auto& [s, n] : sizes) CHECK(n % 2 == 0);
}

TEST_CASE("choice gadget: one key per play line") {
    // CHOICE feeding two sinks; target reachable through either key but an
    // AND needing both outputs is lost
    ConstraintGraph g;
    g.vertices.push_back({"c", Kind::CHOICE, 2});
    g.vertices.push_back({"src", Kind::FREE, 0});
    g.vertices.push_back({"s1", Kind::FREE, 0});
    g.vertices.push_back({"s2", Kind::FREE, 0});
    Edge in;
    in.id = "in";
    in.u = "c";
    in.v = "src";
    in.weight = 1;
    in.head = 1;
    Edge o1;
    o1.id = "o1";
    o1.u = "s1";
    o1.v = "c";
    o1.weight = 1;
    o1.head = 1;
    Edge o2 = o1;
    o2.id = "o2";
    o2.u = "s2";
    g.edges.push_back(in);
    g.edges.push_back(o1);
    g.edges.push_back(o2);
    g.target = "o1";
    g.finalize();
    auto [arr, trace] = mahjong::reduce(g);
    Report r = solve(arr);
    CHECK(r.winnable);

    ConstraintGraph g2;
    g2.vertices.push_back({"c", Kind::CHOICE, 2});
    g2.vertices.push_back({"a", Kind::AND, 2});
    g2.vertices.push_back({"src", Kind::FREE, 0});
    g2.vertices.push_back({"sink", Kind::FREE, 0});
    Edge cin;
    cin.id = "cin";
    cin.u = "c";
    cin.v = "src";
    cin.weight = 1;
    cin.head = 1;
    Edge r1;
    r1.id = "r1";
    r1.u = "a";
    r1.v = "c";
    r1.weight = 1;
    r1.head = 1;
    Edge r2 = r1;
    r2.id = "r2";
    Edge out;
    out.id = "out";
    out.u = "sink";
    out.v = "a";
    out.weight = 2;
    out.head = 1;
    g2.edges.push_back(cin);
    g2.edges.push_back(r1);
    g2.edges.push_back(r2);
    g2.edges.push_back(out);
    g2.target = "out";
    g2.finalize();
    REQUIRE(solve_ncl(g2).verdict == "not-winnable");
    auto [arr2, trace2] = mahjong::reduce(g2);
    CHECK_FALSE(solve(arr2).winnable);
}

TEST_CASE("moves preserve the configuration invariants") {
    Rng rng(42);
    for (uint64_t seed = 300; seed < 310; ++seed) {
        ConstraintGraph g = random_acyclic_ncl(seed, 4);
        auto [arr, trace] = mahjong::reduce(g);
        std::vector<char> removed(arr.tiles.size(), 0);
        for (int step = 0; step < 50; ++step) {
            auto moves = legal_moves(arr, removed);
            if (moves.empty()) break;
            apply(arr, removed, moves[rng.below(moves.size())]);
            // rebuild the remaining arrangement and re-validate both axioms
            Arrangement rest;
            for (size_t t = 0; t < arr.tiles.size(); ++t)
                if (!removed[t]) rest.tiles.push_back(arr.tiles[t]);
            CHECK_NOTHROW(rest.validate());
        }
    }
}

TEST_CASE("witness replay reaches the empty arrangement") {
    ConstraintGraph g = single_or_pre_satisfied();
    auto [arr, trace] = mahjong::reduce(g);
    Report r = solve(arr);
    REQUIRE(r.winnable);
    std::vector<char> removed(arr.tiles.size(), 0);
    for (const PairMove& m : r.witness) apply(arr, removed, m);
    for (char c : removed) CHECK(c == 1);

    auto lifted = lift_witness(trace, witness_to_json(r.witness));
    REQUIRE(!lifted.empty());
    CHECK_NOTHROW(replay_ncl_witness(g, lifted));
    bool target_fired = false;
    for (const std::string& e : lifted) target_fired |= e == "out";
    CHECK(target_fired);
}

TEST_CASE("oracle equivalence on random acyclic graphs") {
    for (uint64_t seed = 400; seed < 430; ++seed) {
        ConstraintGraph g = random_acyclic_ncl(seed, 5);
        SolveReport want = solve_ncl(g);
        auto [arr, trace] = mahjong::reduce(g);
        arr.validate();
        Report got = solve(arr);
        INFO("seed ", seed);
        CHECK(got.winnable == (want.verdict == "winnable"));
    }
}

TEST_CASE("arrangement json round trip") {
    ConstraintGraph g = single_or_pre_satisfied();
    auto [arr, trace] = mahjong::reduce(g);
    auto j = arrangement_to_json(arr);
    Arrangement back = arrangement_from_json(j);
    CHECK(arrangement_to_json(back) == j);
    CHECK(render(arr).size() > 0);
}
