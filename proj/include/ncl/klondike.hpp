#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncl/core.hpp"
#include "ncl/trace.hpp"

// Generalized Klondike (suit/build stacks, no talon) plus the
// Acyclic-Bounded-NCL reduction built from lock/key card gadgets.

namespace ncl::klondike {

// suit names: 0 = D, 1 = H, 2 = S; ranks 1..n
struct Card {
    int8_t suit = 0;
    int16_t rank = 0;
    bool operator==(const Card&) const = default;
};

std::string card_name(Card c);
Card card_from_name(const std::string& s);

struct BuildStack {
    std::vector<Card> cards;  // bottom -> top
    int face_up = 0;          // length of the topmost face-up block
};

struct Instance {
    std::vector<uint8_t> colors = {0, 0, 1};  // per suit: 0 = red, 1 = black
    int num_ranks = 0;
    std::vector<BuildStack> build;
    std::vector<int16_t> suit_top;  // highest rank placed per suit (0 = empty)

    int num_suits() const { return (int)colors.size(); }
    bool red(Card c) const { return colors[c.suit] == 0; }
    void validate() const;  // deck completeness, contiguous face-up blocks
    bool won() const;
};

struct Move {
    enum Type { TurnUp, MoveBlock, ToSuit } type = TurnUp;
    int from = -1;
    int to = -1;  // stack index (MoveBlock) or suit index (ToSuit)
    bool operator==(const Move&) const = default;
};

bool suit_stack_accepts(const Instance& inst, int suit, Card c);
bool block_accepts(const Instance& inst, Card top, Card incoming);

std::vector<Move> legal_moves(const Instance& inst);
void apply(Instance& inst, const Move& m);  // throws GraphError when illegal

struct Report {
    bool winnable = false;
    std::vector<Move> witness;
    uint64_t nodes_explored = 0;
};

Report solve(const Instance& inst, const SolveLimits& lim = {});

// Acyclic Bounded NCL -> Klondike. Requires the canonical initial
// orientation (every edge pointing at its producer) and a target edge whose
// tail endpoint is FREE.
std::pair<Instance, ReductionTrace> reduce(const ConstraintGraph& g);

nlohmann::ordered_json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json witness_to_json(const Instance& start, const std::vector<Move>& moves);
std::string render(const Instance& inst);  // ascii debugging aid

}  // namespace ncl::klondike
