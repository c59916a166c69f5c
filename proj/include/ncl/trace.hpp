#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncl/core.hpp"

// Provenance for the reductions: which game elements realize each source
// edge/vertex, plus enough detail to lift a game witness back to a graph
// move sequence.

namespace ncl {

struct TraceVertex {
    std::string gadget_kind;
    int index = -1;  // topological numbering
    nlohmann::ordered_json params;
};

struct ReductionTrace {
    std::string game;  // klondike | mahjong | nonogram | doushouqi
    // edge id -> role -> element descriptors (role in {lock, key,
    // boundary-cell, garrison, channel, entry})
    std::map<std::string, std::map<std::string, std::vector<std::string>>> edges;
    std::map<std::string, TraceVertex> vertices;
    nlohmann::ordered_json parameters;

    nlohmann::ordered_json to_json() const;
    static ReductionTrace from_json(const nlohmann::ordered_json& j);
};

// Replays a game witness and emits the induced edge-reversal sequence.
// Witness formats are the per-game JSON move arrays; elements that are not
// traced reversals (turn-ups, suit moves, plain travel) are skipped.
std::vector<std::string> lift_witness(const ReductionTrace& trace,
                                      const nlohmann::ordered_json& game_witness);

}  // namespace ncl
