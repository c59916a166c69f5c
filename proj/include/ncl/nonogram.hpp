#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncl/core.hpp"
#include "ncl/trace.hpp"

// Nonogram model, line-propagation solver, and the Constraint-Graph-
// Satisfiability reduction: orthogonal embedding on a subnonogram grid,
// separation-line groups, and signal coupling across adjusted delimiters.

namespace ncl::nonogram {

struct LineDesc {
    std::vector<int> runs;  // empty = all-white line
};

struct Puzzle {
    int rows = 0, cols = 0;
    std::vector<LineDesc> row_descs, col_descs;

    void validate() const;  // lengths, run sums fit, black-count consistency
};

using Grid = std::vector<uint8_t>;  // row-major, 1 = black

bool line_adheres(const std::vector<uint8_t>& cells, const LineDesc& desc);

struct SolveResult {
    std::vector<Grid> solutions;  // up to max_solutions, deterministic order
    uint64_t nodes_explored = 0;
};

SolveResult solve(const Puzzle& p, int max_solutions = 2, const SolveLimits& lim = {});

// common plain-text format: "m n", m row lines, n column lines, runs
// space-separated, "0" for an empty description
Puzzle puzzle_from_text(const std::string& text);
std::string puzzle_to_text(const Puzzle& p);
std::string grid_to_text(const Puzzle& p, const Grid& g);  // '#'/'.'

struct LayoutParams {
    int D = 5;  // separation-line group width
    int G = 7;  // subnonogram side
};

// Fig-style standalone gadget puzzles (11x11: margin + separation ring +
// 7x7 interior) with the three port cells; used by the gadget-level tests.
enum class GadgetKind { And, Or, WireTurn, WireStraight };
struct StandaloneGadget {
    Puzzle puzzle;
    // port cells (row, col) in the 11x11 frame; -1,-1 when absent
    std::pair<int, int> a{-1, -1}, b{-1, -1}, c{-1, -1};
};
StandaloneGadget standalone_gadget(GadgetKind kind);

// undirected AND/OR constraint graph (degree 3, planar) -> puzzle
std::pair<Puzzle, ReductionTrace> reduce(const ConstraintGraph& g, const LayoutParams& params = {});

// reads the edge orientations off a solved reduction grid
std::map<std::string, std::string> decode_orientation(const ReductionTrace& trace,
                                                      const ConstraintGraph& g, const Grid& grid,
                                                      int grid_cols);

}  // namespace ncl::nonogram
