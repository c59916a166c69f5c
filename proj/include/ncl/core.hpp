#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Constraint-graph model and the three abstract games played on it:
// Bounded NCL (one player), Bounded 2CL (two players) and Constraint
// Graph Satisfiability (no players, just a legal orientation).

namespace ncl {

enum class Kind { AND, OR, FANOUT, CHOICE, VARIABLE, FREE };
enum class Owner { neutral, white, black };

const char* kind_name(Kind k);
const char* owner_name(Owner o);
Kind kind_from_name(const std::string& s);
Owner owner_from_name(const std::string& s);

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vertex {
    std::string id;
    Kind kind = Kind::FREE;
    int min_inflow = 0;
};

// head: index of the endpoint the edge currently points to (0 = u, 1 = v),
// or -1 while undirected (CGS inputs only).
struct Edge {
    std::string id;
    std::string u, v;
    int weight = 2;
    int head = -1;
    Owner owner = Owner::neutral;
};

class ConstraintGraph {
public:
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::optional<std::string> target;

    // Builds index maps and checks every structural invariant. Must be
    // called after mutation and before handing the graph to a solver.
    void finalize();

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    int target_index() const;  // -1 when absent

    // endpoint vertex indices of edge e
    int tail_of(int e) const { return ends_[e].first; }
    int head_vertex(int e) const;              // -1 when undirected
    int other_end(int e, int v) const;
    const std::vector<int>& incident(int v) const { return incident_[v]; }

    bool all_directed() const;
    bool finalized() const { return finalized_; }

private:
    std::map<std::string, int> vidx_, eidx_;
    std::vector<std::pair<int, int>> ends_;      // (u,v) as vertex indices
    std::vector<std::vector<int>> incident_;
    bool finalized_ = false;

    void check_kind_weights() const;
};

// Orientation = per-edge head endpoint index (0/1), dense by edge index.
using Orientation = std::vector<int8_t>;

Orientation initial_orientation(const ConstraintGraph& g);

struct BoundedState {
    const ConstraintGraph* graph = nullptr;
    std::vector<uint64_t> reversed;  // bitset over edge indices
    Owner to_move = Owner::white;

    static BoundedState initial(const ConstraintGraph& g, Owner to_move = Owner::white);
    bool is_reversed(int e) const { return (reversed[e >> 6] >> (e & 63)) & 1u; }
    void flip(int e) { reversed[e >> 6] ^= uint64_t(1) << (e & 63); }
    Orientation orientation() const;
};

int inflow(const ConstraintGraph& g, const Orientation& o, int v);
int inflow(const BoundedState& s, const std::string& vertex_id);
bool is_legal(const ConstraintGraph& g, const Orientation& o);

// Edge indices whose reversal keeps the configuration legal and which have
// not been reversed yet. `owner_filter` restricts to one player's edges.
std::vector<int> legal_moves_ncl(const BoundedState& s);
std::vector<int> legal_moves_2cl(const BoundedState& s, Owner player);

struct SolveReport {
    std::string verdict;                      // winnable / not-winnable / white / black / sat / unsat
    std::vector<std::string> witness;         // ordered edge ids (move games)
    std::map<std::string, std::string> orientation;  // edge id -> head vertex id (cgs)
    uint64_t nodes_explored = 0;
};

struct SolveLimits {
    uint64_t max_states = 10'000'000;
    double timeout_seconds = 60.0;
};

struct LimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SolveReport solve_ncl(const ConstraintGraph& g, const SolveLimits& lim = {});
SolveReport solve_2cl(const ConstraintGraph& g, const SolveLimits& lim = {});
SolveReport solve_cgs(const ConstraintGraph& g, const SolveLimits& lim = {});

// Edges ordered so that every edge precedes the edges leaving its head;
// equivalently a topological sort keyed by the tail vertex. Throws
// GraphError listing a cycle when the directed graph is cyclic.
std::vector<std::string> topological_edge_order(const ConstraintGraph& g);

// Vertex numbering used by the reductions: producers (vertices edges point
// at in the initial orientation) receive lower numbers than consumers.
std::vector<int> reduction_numbering(const ConstraintGraph& g);

// replays a move witness move-by-move, throwing GraphError on an illegal step
void replay_ncl_witness(const ConstraintGraph& g, const std::vector<std::string>& witness);

// Appends `count` black filler edges between fresh FREE vertex pairs
// (2CL needs spare black moves; the graph is re-finalized).
void add_black_fillers(ConstraintGraph& g, int count);

// --- JSON interchange -------------------------------------------------
// { "vertices":[{"id","kind","min_inflow"?}],
//   "edges":[{"id","u","v","weight","points_to"?|"undirected","owner"?}],
//   "target"? }   Unknown fields are rejected.
ConstraintGraph graph_from_json(const std::string& text);
std::string graph_to_json(const ConstraintGraph& g, bool pretty = false);

}  // namespace ncl
