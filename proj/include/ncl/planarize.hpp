#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncl/core.hpp"

// Crossover-gadget machinery: instantiate the ten-vertex crossover, replace
// declared edge crossings, expand four-red vertices into half-crossovers and
// verify the gadgets' propagation behavior exhaustively.

namespace ncl {

// Label -> concrete edge id over {A..E, F..S}; A/B vertical externals,
// C/D horizontal externals, E internal blue, F..S red.
struct CrossoverInstance {
    std::map<std::string, std::string> edge_map;
    std::array<std::string, 4> boundary;  // vertex ids carrying A, B, C, D
    std::vector<std::string> internal_vertices;
};

struct HalfCrossoverInstance {
    std::string replaced_vertex;
    std::map<std::string, std::string> edge_map;  // a..o -> edge ids
};

// Splits e1 across the vertical externals (A,B) and e2 across the horizontal
// externals (C,D). Both edges must be weight 2 and share no endpoint.
std::pair<ConstraintGraph, CrossoverInstance> insert_crossover(const ConstraintGraph& g,
                                                               const std::string& e1,
                                                               const std::string& e2);

// Replaces every vertex with exactly four incident weight-1 edges by a
// half-crossover; the four red edges are promoted to weight 2 and reattached
// to the gadget corners. Remaining vertices are re-tagged to basic kinds;
// a vertex left with a non-basic weight multiset means red-blue conversion
// would be needed and is rejected.
ConstraintGraph expand_half_crossovers(const ConstraintGraph& g,
                                       std::vector<HalfCrossoverInstance>* instances = nullptr);

// Standalone crossover in a FREE-terminal harness (Fig 2(a) initial state:
// A and C point outward, B and D inward).
std::pair<ConstraintGraph, CrossoverInstance> crossover_harness();

// Standalone half-crossover in a FREE-terminal harness (a, c outward;
// b, d inward).
std::pair<ConstraintGraph, HalfCrossoverInstance> half_crossover_harness();

enum class CrossoverMode { bounded, unbounded };

struct CrossoverReport {
    // unbounded mode: over all legal configurations of the raw gadget
    bool vertical_iff = false;    // never both verticals out; both single-out states occur
    bool horizontal_iff = false;
    // bounded mode, raw gadget
    bool vertical_seq_legal = false;    // (A,F,H,G,M,O,N,B)
    bool horizontal_seq_legal = false;  // (C,K,I,L,J,E,P,R,Q,S,D)
    bool raw_exclusion_after_vertical = false;    // horizontal unreachable after vertical
    bool raw_exclusion_after_horizontal = false;  // (both false: the raw gadget permits both)
    // bounded mode, half-crossover (where the exclusion genuinely lives)
    bool half_exclusion_after_vertical = false;    // after a,b: c,d unreachable
    bool half_exclusion_after_horizontal = false;  // after c,d: a,b unreachable
    bool half_ab_blocks_d = false;     // after a,b: d individually dead
    bool half_ab_blocks_pair = false;  // after a,b: c and d never both reversed
    bool half_ab_blocks_c = false;     // c individually (false: reversing c only adds inflow)
    // expanded crossover: the F,H / K,I instantiation of the half-crossover
    // claims; blockage transfers from the standalone half by relaxation
    // (FREE terminals only remove constraints)
    bool expanded_vertical_reachable = false;  // a full vertical propagation exists
    bool expanded_fh_reachable = false;        // F and H can both be reversed
    bool exhaustive = false;                   // state cap not hit
    uint64_t states_explored = 0;
};

CrossoverReport verify_crossover(CrossoverMode mode, uint64_t state_cap = 30'000'000);

}  // namespace ncl
