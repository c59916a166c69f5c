#pragma once

#include <cstdint>

#include "ncl/core.hpp"

// Seeded random instance generators for the oracle-equivalence campaigns.
// All randomness comes from a splitmix64 stream so identical seeds give
// byte-identical graphs on every platform.

namespace ncl {

struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n) without modulo bias
    uint64_t below(uint64_t n) {
        uint64_t bound = (~uint64_t(0) / n) * n;
        uint64_t x;
        do { x = next(); } while (x >= bound);
        return x % n;
    }
    bool chance(int percent) { return below(100) < (uint64_t)percent; }
};

// Acyclic Bounded NCL instance in canonical orientation: core kinds from
// {AND, OR, FANOUT, CHOICE}, FREE terminals for dangling slots, target on a
// FREE-tailed output edge. Inputs are a mix of wired, always-available and
// permanently frozen sources so both verdicts occur.
ConstraintGraph random_acyclic_ncl(uint64_t seed, int max_vertices);

// Closed undirected graph over AND/OR (every vertex degree exactly 3).
// Planarity is not guaranteed; callers embed-and-resample.
ConstraintGraph random_cgs_candidate(uint64_t seed, int max_vertices);

// Tiny planar 2CL instance (one VARIABLE, white target, black fillers) for
// the Dou Shou Qi end-to-end campaign.
ConstraintGraph random_2cl_small(uint64_t seed);

}  // namespace ncl
