#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncl/core.hpp"
#include "ncl/trace.hpp"

// Generalized Mahjong Solitaire (perfect information, pair removal) and the
// Acyclic-Bounded-NCL reduction built from one-cross-section tile gadgets.

namespace ncl::mahjong {

struct Tile {
    int16_t i = 0, j = 0, k = 0;  // cross section, row position, height
    int set = 0;                  // tile-set number; equal numbers match
};

struct Arrangement {
    std::vector<Tile> tiles;

    // checks row contiguity, support, even set sizes and placement bijection
    void validate() const;
};

struct PairMove {
    int a = -1, b = -1;  // tile indices
    bool operator==(const PairMove&) const = default;
};

// availability of tile t given the removal mask (true = removed)
bool is_available(const Arrangement& arr, const std::vector<char>& removed, int t);
// spec-level helper: availability of the tile at a position in the full arrangement
bool is_available(const Arrangement& arr, int16_t i, int16_t j, int16_t k);

std::vector<PairMove> legal_moves(const Arrangement& arr, const std::vector<char>& removed);
void apply(const Arrangement& arr, std::vector<char>& removed, const PairMove& m);

struct Report {
    bool winnable = false;
    std::vector<PairMove> witness;
    uint64_t nodes_explored = 0;
};

Report solve(const Arrangement& arr, const SolveLimits& lim = {});

// Acyclic Bounded NCL -> Mahjong with the cross-section gadgets and a
// victory row protected by the target pair.
std::pair<Arrangement, ReductionTrace> reduce(const ConstraintGraph& g);

nlohmann::ordered_json arrangement_to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json witness_to_json(const std::vector<PairMove>& moves);
std::string render(const Arrangement& arr);  // ascii cross sections

}  // namespace ncl::mahjong
