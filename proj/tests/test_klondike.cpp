#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncl/generate.hpp"
#include "ncl/klondike.hpp"
#include "ncl/trace.hpp"

using namespace ncl;
using namespace ncl::klondike;

namespace {

Instance three_suit(int ranks, std::vector<BuildStack> stacks) {
    Instance inst;
    inst.num_ranks = ranks;
    inst.build = std::move(stacks);
    inst.suit_top = {0, 0, 0};
    return inst;
}

Card D(int r) { return {0, (int16_t)r}; }
Card H(int r) { return {1, (int16_t)r}; }
Card S(int r) { return {2, (int16_t)r}; }

}  // namespace

TEST_CASE("suit stack acceptance") {
    Instance inst = three_suit(3, {});
    CHECK(suit_stack_accepts(inst, 2, S(1)));       // empty accepts only an Ace
    CHECK_FALSE(suit_stack_accepts(inst, 2, S(2)));
    CHECK_FALSE(suit_stack_accepts(inst, 2, H(1)));  // wrong suit stack
    inst.suit_top[2] = 2;
    CHECK(suit_stack_accepts(inst, 2, S(3)));  // rank top+1, same suit
    CHECK_FALSE(suit_stack_accepts(inst, 2, H(3)));
}

TEST_CASE("block acceptance") {
    Instance inst = three_suit(8, {});
    CHECK(block_accepts(inst, S(6), D(5)));        // alternating colors, descending
    CHECK_FALSE(block_accepts(inst, S(6), S(5)));  // same color
    CHECK_FALSE(block_accepts(inst, S(6), D(4)));
    // an empty build stack accepts nothing, not even a King: no MoveBlock
    // may target a stack without a face-up block
    Instance k = three_suit(2, {{{S(2)}, 1}, {{}, 0}, {{S(1), H(1), D(1), H(2), D(2)}, 5}});
    for (const Move& m : legal_moves(k)) CHECK(m.type != Move::MoveBlock);
}

TEST_CASE("legal moves and apply") {
    // all-face-down stack offers TurnUp only
    Instance inst = three_suit(1, {{{S(1), H(1), D(1)}, 0}});
    auto moves = legal_moves(inst);
    REQUIRE(moves.size() == 1);
    CHECK(moves[0].type == Move::TurnUp);
    apply(inst, moves[0]);
    CHECK(inst.build[0].face_up == 1);

    // block [S6, D5] moves onto a face-up H7
    Instance g = three_suit(8, {{{S(6), D(5)}, 2}, {{H(7)}, 1}});
    // fill the rest of the deck into a dead face-down stack so validate passes
    std::vector<Card> rest;
    for (int s = 0; s < 3; ++s)
        for (int r = 1; r <= 8; ++r) {
            Card c{(int8_t)s, (int16_t)r};
            if (c == S(6) || c == D(5) || c == H(7)) continue;
            rest.push_back(c);
        }
    g.build.push_back({rest, 0});
    bool found = false;
    for (const Move& m : legal_moves(g))
        if (m.type == Move::MoveBlock && m.from == 0 && m.to == 1) found = true;
    REQUIRE(found);
    apply(g, {Move::MoveBlock, 0, 1});
    CHECK(g.build[1].cards.size() == 3);
    CHECK(g.build[1].face_up == 3);
    CHECK(g.build[0].cards.empty());

    // ToSuit moves only the single top card
    Instance t = three_suit(1, {{{H(1), S(1), D(1)}, 3}});
    apply(t, {Move::ToSuit, 0, 0});
    CHECK(t.suit_top[0] == 1);
    CHECK(t.build[0].face_up == 2);
}

TEST_CASE("solve a single face-down ace") {
    Instance inst;
    inst.colors = {0};
    inst.num_ranks = 1;
    inst.build = {{{D(1)}, 0}};
    inst.suit_top = {0};
    Report r = solve(inst);
    REQUIRE(r.winnable);
    REQUIRE(r.witness.size() == 2);
    CHECK(r.witness[0].type == Move::TurnUp);
    CHECK(r.witness[1].type == Move::ToSuit);
}

TEST_CASE("buried ace is lost with one suit") {
    // bottom->top [1,2]: the 2 sits on the ace, same color, nowhere to go
    Instance inst;
    inst.colors = {0};
    inst.num_ranks = 2;
    inst.build = {{{D(1), D(2)}, 0}};
    inst.suit_top = {0};
    Report r = solve(inst);
    CHECK_FALSE(r.winnable);
    CHECK(r.nodes_explored <= 10);
}

namespace {

ConstraintGraph one_and_pre_satisfied() {
    ConstraintGraph g;
    g.vertices.push_back({"a", Kind::AND, 2});
    g.vertices.push_back({"p1", Kind::FREE, 0});
    g.vertices.push_back({"p2", Kind::FREE, 0});
    g.vertices.push_back({"sink", Kind::FREE, 0});
    Edge r1;
    r1.id = "r1";
    r1.u = "a";
    r1.v = "p1";
    r1.weight = 1;
    r1.head = 1;
    Edge r2 = r1;
    r2.id = "r2";
    r2.v = "p2";
    Edge out;
    out.id = "out";
    out.u = "sink";
    out.v = "a";
    out.weight = 2;
    out.head = 1;
    g.edges.push_back(r1);
    g.edges.push_back(r2);
    g.edges.push_back(out);
    g.target = "out";
    g.finalize();
    return g;
}

}  // namespace

TEST_CASE("reduction of a pre-satisfied AND is winnable") {
    ConstraintGraph g = one_and_pre_satisfied();
    REQUIRE(solve_ncl(g).verdict == "winnable");
    auto [inst, trace] = klondike::reduce(g);
    inst.validate();
    Report r = solve(inst);
    CHECK(r.winnable);
}

TEST_CASE("reduction move-count accounting") {
    ConstraintGraph g = one_and_pre_satisfied();
    auto [inst, trace] = klondike::reduce(g);
    Report r = solve(inst);
    REQUIRE(r.winnable);
    int mn = 3 * inst.num_ranks;
    int turn = 0, tosuit = 0, moveblock = 0;
    for (const Move& m : r.witness) {
        if (m.type == Move::TurnUp) ++turn;
        else if (m.type == Move::ToSuit) ++tosuit;
        else ++moveblock;
    }
    CHECK(turn == mn);
    CHECK(tosuit == mn);
    CHECK(moveblock <= mn);
    // witness replays to the won state
    Instance cur = inst;
    for (const Move& m : r.witness) apply(cur, m);
    CHECK(cur.won());
}

TEST_CASE("per-gadget behavioral contracts") {
    // AND: key only with both inputs; frozen input -> not winnable
    auto build = [&](bool in1_live, bool in2_live) {
        ConstraintGraph g;
        g.vertices.push_back({"a", Kind::AND, 2});
        g.vertices.push_back({"p1", Kind::FREE, in1_live ? 0 : 1});
        g.vertices.push_back({"p2", Kind::FREE, in2_live ? 0 : 1});
        g.vertices.push_back({"sink", Kind::FREE, 0});
        Edge r1;
        r1.id = "r1";
        r1.u = "a";
        r1.v = "p1";
        r1.weight = 1;
        r1.head = 1;
        Edge r2 = r1;
        r2.id = "r2";
        r2.v = "p2";
        Edge out;
        out.id = "out";
        out.u = "sink";
        out.v = "a";
        out.weight = 2;
        out.head = 1;
        g.edges.push_back(r1);
        g.edges.push_back(r2);
        g.edges.push_back(out);
        g.target = "out";
        g.finalize();
        return g;
    };
    for (bool a : {false, true})
        for (bool b : {false, true}) {
            ConstraintGraph g = build(a, b);
            auto [inst, trace] = klondike::reduce(g);
            bool want = solve_ncl(g).verdict == "winnable";
            CHECK(want == (a && b));
            CHECK(solve(inst).winnable == want);
        }

    // OR: either input suffices
    auto build_or = [&](bool in1_live, bool in2_live) {
        ConstraintGraph g;
        g.vertices.push_back({"o", Kind::OR, 2});
        g.vertices.push_back({"p1", Kind::FREE, in1_live ? 0 : 2});
        g.vertices.push_back({"p2", Kind::FREE, in2_live ? 0 : 2});
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
    };
    for (bool a : {false, true})
        for (bool b : {false, true}) {
            ConstraintGraph g = build_or(a, b);
            auto [inst, trace] = klondike::reduce(g);
            bool want = solve_ncl(g).verdict == "winnable";
            CHECK(want == (a || b));
            CHECK(solve(inst).winnable == want);
        }

    // FANOUT feeding an AND: both keys come out of one input
    {
        ConstraintGraph g;
        g.vertices.push_back({"f", Kind::FANOUT, 2});
        g.vertices.push_back({"a", Kind::AND, 2});
        g.vertices.push_back({"src", Kind::FREE, 0});
        g.vertices.push_back({"sink", Kind::FREE, 0});
        Edge in;
        in.id = "in";
        in.u = "f";
        in.v = "src";
        in.weight = 2;
        in.head = 1;
        Edge r1;
        r1.id = "r1";
        r1.u = "a";
        r1.v = "f";
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
        g.edges.push_back(in);
        g.edges.push_back(r1);
        g.edges.push_back(r2);
        g.edges.push_back(out);
        g.target = "out";
        g.finalize();
        REQUIRE(solve_ncl(g).verdict == "winnable");
        auto [inst, trace] = klondike::reduce(g);
        CHECK(solve(inst).winnable);
    }

    // CHOICE: exactly one key; an AND needing both of its outputs is lost
    {
        ConstraintGraph g;
        g.vertices.push_back({"c", Kind::CHOICE, 2});
        g.vertices.push_back({"a", Kind::AND, 2});
        g.vertices.push_back({"src", Kind::FREE, 0});
        g.vertices.push_back({"sink", Kind::FREE, 0});
        Edge in;
        in.id = "in";
        in.u = "c";
        in.v = "src";
        in.weight = 1;
        in.head = 1;
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
        g.edges.push_back(in);
        g.edges.push_back(r1);
        g.edges.push_back(r2);
        g.edges.push_back(out);
        g.target = "out";
        g.finalize();
        REQUIRE(solve_ncl(g).verdict == "not-winnable");
        auto [inst, trace] = klondike::reduce(g);
        CHECK_FALSE(solve(inst).winnable);
    }
    // CHOICE with independent sinks: each single output reachable
    {
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
        REQUIRE(solve_ncl(g).verdict == "winnable");
        auto [inst, trace] = klondike::reduce(g);
        CHECK(solve(inst).winnable);
    }
}

TEST_CASE("witness lifting recovers a legal edge sequence") {
    ConstraintGraph g = one_and_pre_satisfied();
    auto [inst, trace] = klondike::reduce(g);
    Report r = solve(inst);
    REQUIRE(r.winnable);
    auto lifted = lift_witness(trace, witness_to_json(inst, r.witness));
    // the lifted sequence is legal and ends with the target
    REQUIRE(!lifted.empty());
    CHECK(lifted.back() == "out");
    CHECK_NOTHROW(replay_ncl_witness(g, lifted));
}

TEST_CASE("oracle equivalence on random acyclic graphs") {
    for (uint64_t seed = 100; seed < 130; ++seed) {
        ConstraintGraph g = random_acyclic_ncl(seed, 5);
        SolveReport want = solve_ncl(g);
        auto [inst, trace] = klondike::reduce(g);
        inst.validate();
        Report got = solve(inst);
        INFO("seed ", seed);
        CHECK(got.winnable == (want.verdict == "winnable"));
    }
}

TEST_CASE("instance json round trip") {
    ConstraintGraph g = one_and_pre_satisfied();
    auto [inst, trace] = klondike::reduce(g);
    auto j = instance_to_json(inst);
    Instance back = instance_from_json(j);
    CHECK(instance_to_json(back) == j);
    CHECK(render(inst).size() > 0);
}
