#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ncl/generate.hpp"
#include "ncl/nonogram.hpp"

using namespace ncl;
using namespace ncl::nonogram;

namespace {

Puzzle puzzle(int rows, int cols, std::vector<std::vector<int>> rdesc,
              std::vector<std::vector<int>> cdesc) {
    Puzzle p;
    p.rows = rows;
    p.cols = cols;
    for (auto& r : rdesc) p.row_descs.push_back({r});
    for (auto& c : cdesc) p.col_descs.push_back({c});
    return p;
}

// the 6x6 example puzzle and its unique 18-cell solution
Puzzle example6() {
    return puzzle(6, 6,
                  {{2, 1}, {1, 3}, {1, 2}, {3}, {4}, {1}},
                  {{1}, {5}, {2}, {5}, {2, 1}, {2}});
}

const char* kExample6Solution =
    "##...#\n"
    ".#.###\n"
    ".#.##.\n"
    ".###..\n"
    ".####.\n"
    "...#..\n";

}  // namespace

TEST_CASE("line adherence") {
    CHECK(line_adheres({1, 1, 0, 1}, {{2, 1}}));
    CHECK_FALSE(line_adheres({1, 1, 1}, {{2, 1}}));
    CHECK(line_adheres({0, 0, 0}, {{}}));
    CHECK_THROWS_AS(line_adheres({1, 2, 0}, {{1}}), GraphError);
}

TEST_CASE("six-by-six example has exactly the printed solution") {
    Puzzle p = example6();
    SolveResult r = solve(p, 3);
    REQUIRE(r.solutions.size() == 1);
    CHECK(grid_to_text(p, r.solutions[0]) == kExample6Solution);
    int blacks = 0;
    for (uint8_t c : r.solutions[0]) blacks += c;
    CHECK(blacks == 18);
}

TEST_CASE("tiny puzzles") {
    Puzzle one = puzzle(1, 1, {{1}}, {{1}});
    SolveResult r1 = solve(one, 5);
    REQUIRE(r1.solutions.size() == 1);
    CHECK(r1.solutions[0][0] == 1);

    // 2x2 with all (1): the two diagonals
    Puzzle two = puzzle(2, 2, {{1}, {1}}, {{1}, {1}});
    // oracle: enumerate all 16 grids
    int want = 0;
    for (int mask = 0; mask < 16; ++mask) {
        Grid g(4);
        for (int i = 0; i < 4; ++i) g[i] = (mask >> i) & 1;
        bool ok = true;
        for (int r = 0; r < 2 && ok; ++r)
            ok = line_adheres({g[r * 2], g[r * 2 + 1]}, two.row_descs[r]);
        for (int c = 0; c < 2 && ok; ++c)
            ok = line_adheres({g[c], g[2 + c]}, two.col_descs[c]);
        want += ok;
    }
    CHECK(want == 2);
    SolveResult r2 = solve(two, 5);
    CHECK(r2.solutions.size() == 2);
}

TEST_CASE("signal coupling toy puzzle has exactly two solutions") {
    // two 4x4 subnonograms, three separation columns, coupled middle rows
    Puzzle p = puzzle(4, 11,
                      {{3}, {4}, {4}, {3}},
                      {{}, {}, {}, {1}, {4}, {4}, {4}, {1}, {}, {}, {}});
    SolveResult r = solve(p, 5);
    REQUIRE(r.solutions.size() == 2);
    // exactly one of (row1,col3)/(row1,col7) black in each, complementary
    auto at = [&](const Grid& g, int rr, int cc) { return g[rr * 11 + cc]; };
    for (const Grid& g : r.solutions) {
        CHECK((at(g, 1, 3) ^ at(g, 1, 7)) == 1);
        CHECK((at(g, 2, 3) ^ at(g, 2, 7)) == 1);
        CHECK((at(g, 1, 3) ^ at(g, 2, 3)) == 1);
    }
}

TEST_CASE("text format round trip") {
    Puzzle p = example6();
    std::string txt = puzzle_to_text(p);
    Puzzle back = puzzle_from_text(txt);
    CHECK(puzzle_to_text(back) == txt);
    Puzzle empty_line = puzzle(2, 2, {{2}, {}}, {{1}, {1}});
    std::string txt2 = puzzle_to_text(empty_line);
    CHECK(txt2.find("0\n") != std::string::npos);
    CHECK(puzzle_to_text(puzzle_from_text(txt2)) == txt2);
}

namespace {

// enumerate a standalone gadget and project the solutions onto its ports
std::set<std::vector<int>> port_tuples(GadgetKind kind) {
    StandaloneGadget g = standalone_gadget(kind);
    SolveResult r = solve(g.puzzle, 100000);
    std::set<std::vector<int>> tuples;
    for (const Grid& grid : r.solutions) {
        std::vector<int> t;
        for (auto [rr, cc] : {g.a, g.b, g.c})
            if (rr >= 0) t.push_back(grid[rr * 11 + cc]);
        tuples.insert(t);
    }
    return tuples;
}

}  // namespace

TEST_CASE("AND gadget tuple set") {
    std::set<std::vector<int>> want = {
        {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 0}, {1, 1, 1}};
    CHECK(port_tuples(GadgetKind::And) == want);
}

TEST_CASE("OR gadget tuple set") {
    std::set<std::vector<int>> want = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1},
                                       {0, 1, 1}, {1, 1, 0}, {1, 1, 1}};
    CHECK(port_tuples(GadgetKind::Or) == want);
}

TEST_CASE("OR at (1,0,1) has at least two solutions") {
    StandaloneGadget g = standalone_gadget(GadgetKind::Or);
    SolveResult r = solve(g.puzzle, 100000);
    int count = 0;
    for (const Grid& grid : r.solutions) {
        if (grid[g.a.first * 11 + g.a.second] == 1 && grid[g.b.first * 11 + g.b.second] == 0 &&
            grid[g.c.first * 11 + g.c.second] == 1)
            ++count;
    }
    CHECK(count >= 2);
}

TEST_CASE("wire gadgets carry one signal") {
    CHECK(port_tuples(GadgetKind::WireStraight) ==
          std::set<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(port_tuples(GadgetKind::WireTurn) ==
          std::set<std::vector<int>>{{0, 1}, {1, 0}});
}

namespace {

ConstraintGraph two_vertex(Kind k1, Kind k2) {
    // closed two-vertex graph: AND-AND = blue + two reds; OR-OR = three blues
    ConstraintGraph g;
    g.vertices.push_back({"u", k1, 2});
    g.vertices.push_back({"v", k2, 2});
    auto add = [&](const std::string& id, int w) {
        Edge e;
        e.id = id;
        e.u = "u";
        e.v = "v";
        e.weight = w;
        e.head = -1;
        g.edges.push_back(e);
    };
    if (k1 == Kind::AND) {
        add("B", 2);
        add("R1", 1);
        add("R2", 1);
    } else {
        add("B1", 2);
        add("B2", 2);
        add("B3", 2);
    }
    g.finalize();
    return g;
}

}  // namespace

TEST_CASE("assembled two-vertex graphs match the satisfiability verdict") {
    for (Kind k : {Kind::AND, Kind::OR}) {
        ConstraintGraph g = two_vertex(k, k);
        SolveReport cgs = solve_cgs(g);
        auto [puz, trace] = nonogram::reduce(g);
        SolveResult r = solve(puz, 1, {50'000'000, 120.0});
        INFO("kind ", kind_name(k));
        CHECK((cgs.verdict == "sat") == !r.solutions.empty());
        if (!r.solutions.empty()) {
            auto orient = decode_orientation(trace, g, r.solutions[0], puz.cols);
            Orientation o(g.edges.size());
            for (int e = 0; e < (int)g.edges.size(); ++e)
                o[e] = (int8_t)(orient.at(g.edges[e].id) == g.edges[e].u ? 0 : 1);
            CHECK(is_legal(g, o));
        }
    }
}

TEST_CASE("separation lines are forced black") {
    ConstraintGraph g = two_vertex(Kind::AND, Kind::AND);
    auto [puz, trace] = nonogram::reduce(g);
    int D = trace.parameters.at("D").get<int>();
    int G = trace.parameters.at("G").get<int>();
    int S = trace.parameters.at("slots").get<int>();
    SolveResult r = solve(puz, 1, {50'000'000, 120.0});
    REQUIRE(!r.solutions.empty());
    const Grid& grid = r.solutions[0];
    for (int band = 0; band <= S; ++band)
        for (int i = 0; i < D; ++i) {
            int line = band * (G + D) + i;
            for (int c = 0; c < puz.cols; ++c) {
                REQUIRE(grid[line * puz.cols + c] == 1);          // separation row
                REQUIRE(grid[(size_t)c * puz.cols + line] == 1);  // separation column
            }
        }
}

TEST_CASE("oracle equivalence on random planar AND/OR graphs") {
    int tested = 0;
    for (uint64_t seed = 500; seed < 560 && tested < 12; ++seed) {
        ConstraintGraph g = random_cgs_candidate(seed, 4);
        std::pair<Puzzle, ReductionTrace> red;
        try {
            red = nonogram::reduce(g);
        } catch (const GraphError&) {
            continue;  // nonplanar or unroutable sample
        }
        ++tested;
        SolveReport cgs = solve_cgs(g);
        SolveResult r = solve(red.first, 1, {50'000'000, 300.0});
        INFO("seed ", seed);
        CHECK((cgs.verdict == "sat") == !r.solutions.empty());
    }
    CHECK(tested >= 12);
}
