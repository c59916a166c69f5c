#include "ncl/core.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace ncl {

using json = nlohmann::ordered_json;

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::AND: return "AND";
        case Kind::OR: return "OR";
        case Kind::FANOUT: return "FANOUT";
        case Kind::CHOICE: return "CHOICE";
        case Kind::VARIABLE: return "VARIABLE";
        case Kind::FREE: return "FREE";
    }
    return "?";
}

const char* owner_name(Owner o) {
    switch (o) {
        case Owner::neutral: return "neutral";
        case Owner::white: return "white";
        case Owner::black: return "black";
    }
    return "?";
}

Kind kind_from_name(const std::string& s) {
    for (Kind k : {Kind::AND, Kind::OR, Kind::FANOUT, Kind::CHOICE, Kind::VARIABLE, Kind::FREE})
        if (s == kind_name(k)) return k;
    throw GraphError("unknown vertex kind: " + s);
}

Owner owner_from_name(const std::string& s) {
    for (Owner o : {Owner::neutral, Owner::white, Owner::black})
        if (s == owner_name(o)) return o;
    throw GraphError("unknown owner: " + s);
}

void ConstraintGraph::check_kind_weights() const {
    for (int v = 0; v < (int)vertices.size(); ++v) {
        const Vertex& vx = vertices[v];
        if (vx.kind == Kind::FREE) {
            if (vx.min_inflow < 0) throw GraphError("negative min_inflow at " + vx.id);
            continue;
        }
        if (vx.min_inflow != 2)
            throw GraphError("non-FREE vertex " + vx.id + " must have min_inflow 2");
        std::multiset<int> ws;
        for (int e : incident_[v]) ws.insert(edges[e].weight);
        std::multiset<int> want;
        switch (vx.kind) {
            case Kind::AND:
            case Kind::FANOUT: want = {2, 1, 1}; break;
            case Kind::OR: want = {2, 2, 2}; break;
            case Kind::CHOICE: want = {1, 1, 1}; break;
            case Kind::VARIABLE: want = {2, 2}; break;
            default: break;
        }
        if (ws != want)
            throw GraphError("vertex " + vx.id + " (" + kind_name(vx.kind) +
                             ") has incompatible incident edge weights");
    }
}

void ConstraintGraph::finalize() {
    vidx_.clear();
    eidx_.clear();
    ends_.clear();
    incident_.assign(vertices.size(), {});
    for (int i = 0; i < (int)vertices.size(); ++i)
        if (!vidx_.emplace(vertices[i].id, i).second)
            throw GraphError("duplicate vertex id: " + vertices[i].id);
    for (int i = 0; i < (int)edges.size(); ++i) {
        const Edge& e = edges[i];
        if (!eidx_.emplace(e.id, i).second) throw GraphError("duplicate edge id: " + e.id);
        auto iu = vidx_.find(e.u), iv = vidx_.find(e.v);
        if (iu == vidx_.end() || iv == vidx_.end())
            throw GraphError("edge " + e.id + " references unknown vertex");
        if (iu->second == iv->second) throw GraphError("self-loop rejected: " + e.id);
        if (e.weight != 1 && e.weight != 2)
            throw GraphError("edge " + e.id + " has weight outside {1,2}");
        if (e.head != -1 && e.head != 0 && e.head != 1)
            throw GraphError("edge " + e.id + " has invalid head");
        ends_.emplace_back(iu->second, iv->second);
        incident_[iu->second].push_back(i);
        incident_[iv->second].push_back(i);
    }
    if (target) {
        if (!eidx_.count(*target)) throw GraphError("target names unknown edge: " + *target);
    }
    finalized_ = true;
    check_kind_weights();
}

int ConstraintGraph::vertex_index(const std::string& id) const {
    auto it = vidx_.find(id);
    if (it == vidx_.end()) throw GraphError("unknown vertex id: " + id);
    return it->second;
}

int ConstraintGraph::edge_index(const std::string& id) const {
    auto it = eidx_.find(id);
    if (it == eidx_.end()) throw GraphError("unknown edge id: " + id);
    return it->second;
}

int ConstraintGraph::target_index() const { return target ? edge_index(*target) : -1; }

int ConstraintGraph::head_vertex(int e) const {
    int h = edges[e].head;
    if (h < 0) return -1;
    return h == 0 ? ends_[e].first : ends_[e].second;
}

int ConstraintGraph::other_end(int e, int v) const {
    return ends_[e].first == v ? ends_[e].second : ends_[e].first;
}

bool ConstraintGraph::all_directed() const {
    for (const Edge& e : edges)
        if (e.head < 0) return false;
    return true;
}

Orientation initial_orientation(const ConstraintGraph& g) {
    Orientation o(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) o[i] = (int8_t)g.edges[i].head;
    return o;
}

BoundedState BoundedState::initial(const ConstraintGraph& g, Owner to_move) {
    BoundedState s;
    s.graph = &g;
    s.reversed.assign((g.edges.size() + 63) / 64, 0);
    s.to_move = to_move;
    return s;
}

Orientation BoundedState::orientation() const {
    Orientation o = initial_orientation(*graph);
    for (size_t e = 0; e < o.size(); ++e)
        if (is_reversed((int)e)) o[e] = (int8_t)(1 - o[e]);
    return o;
}

static int head_vertex_of(const ConstraintGraph& g, int e, int head01) {
    return head01 == 0 ? g.tail_of(e) : g.other_end(e, g.tail_of(e));
}

int inflow(const ConstraintGraph& g, const Orientation& o, int v) {
    int f = 0;
    for (int e : g.incident(v)) {
        if (o[e] < 0) continue;
        if (head_vertex_of(g, e, o[e]) == v) f += g.edges[e].weight;
    }
    return f;
}

int inflow(const BoundedState& s, const std::string& vertex_id) {
    int v = s.graph->vertex_index(vertex_id);
    Orientation o = s.orientation();
    return inflow(*s.graph, o, v);
}

bool is_legal(const ConstraintGraph& g, const Orientation& o) {
    for (size_t e = 0; e < o.size(); ++e)
        if (o[e] < 0) throw GraphError("is_legal: edge " + g.edges[e].id + " is undirected");
    for (int v = 0; v < (int)g.vertices.size(); ++v)
        if (inflow(g, o, v) < g.vertices[v].min_inflow) return false;
    return true;
}

// inflow vector for the full orientation
static std::vector<int> inflows(const ConstraintGraph& g, const Orientation& o) {
    std::vector<int> f(g.vertices.size(), 0);
    for (size_t e = 0; e < o.size(); ++e)
        if (o[e] >= 0) f[head_vertex_of(g, (int)e, o[e])] += g.edges[e].weight;
    return f;
}

// Reversing e is legal iff the vertex losing the edge keeps its minimum.
static bool flip_ok(const ConstraintGraph& g, const std::vector<int>& f, const Orientation& o, int e) {
    int h = head_vertex_of(g, e, o[e]);
    return f[h] - g.edges[e].weight >= g.vertices[h].min_inflow;
}

std::vector<int> legal_moves_ncl(const BoundedState& s) {
    const ConstraintGraph& g = *s.graph;
    Orientation o = s.orientation();
    std::vector<int> f = inflows(g, o);
    std::vector<int> out;
    for (int e = 0; e < (int)g.edges.size(); ++e)
        if (!s.is_reversed(e) && flip_ok(g, f, o, e)) out.push_back(e);
    return out;
}

std::vector<int> legal_moves_2cl(const BoundedState& s, Owner player) {
    const ConstraintGraph& g = *s.graph;
    Orientation o = s.orientation();
    std::vector<int> f = inflows(g, o);
    std::vector<int> out;
    for (int e = 0; e < (int)g.edges.size(); ++e)
        if (g.edges[e].owner == player && !s.is_reversed(e) && flip_ok(g, f, o, e))
            out.push_back(e);
    return out;
}

namespace {

struct VecKeyHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
        uint64_t h = 0x9e3779b97f4a7c15ull;
        for (uint64_t x : v) {
            x ^= x >> 33; x *= 0xff51afd7ed558ccdull; x ^= x >> 33;
            h = (h ^ x) * 0xc2b2ae3d27d4eb4full;
        }
        return (size_t)(h ^ (h >> 29));
    }
};

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double limit;
    explicit Clock(double seconds) : limit(seconds) {}
    void check() const {
        double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (el > limit) throw LimitExceeded("time limit exceeded");
    }
};

// move order: ascending edge index == ascending edge id when ids are sorted;
// the spec pins lowest-edge-id-first, so order indices by id.
std::vector<int> id_order(const ConstraintGraph& g) {
    std::vector<int> ord(g.edges.size());
    for (size_t i = 0; i < ord.size(); ++i) ord[i] = (int)i;
    std::sort(ord.begin(), ord.end(),
              [&](int a, int b) { return g.edges[a].id < g.edges[b].id; });
    return ord;
}

}  // namespace

SolveReport solve_ncl(const ConstraintGraph& g, const SolveLimits& lim) {
    if (!g.target) throw GraphError("solve_ncl: no target edge");
    Orientation init = initial_orientation(g);
    for (size_t e = 0; e < init.size(); ++e)
        if (init[e] < 0) throw GraphError("solve_ncl: edge " + g.edges[e].id + " is undirected");
    if (!is_legal(g, init)) throw GraphError("solve_ncl: initial configuration is illegal");

    int target = g.target_index();
    std::vector<int> order = id_order(g);
    Clock clock(lim.timeout_seconds);

    using Key = std::vector<uint64_t>;
    BoundedState s0 = BoundedState::initial(g);
    std::unordered_map<Key, std::pair<Key, int>, VecKeyHash> parent;  // state -> (pred, move)
    std::deque<Key> frontier{s0.reversed};
    parent.emplace(s0.reversed, std::make_pair(Key{}, -1));
    uint64_t nodes = 0;

    auto make_report = [&](const Key& final_key) {
        SolveReport r;
        r.verdict = "winnable";
        r.nodes_explored = nodes;
        std::vector<std::string> seq;
        Key k = final_key;
        while (true) {
            auto& pr = parent.at(k);
            if (pr.second < 0) break;
            seq.push_back(g.edges[pr.second].id);
            k = pr.first;
        }
        std::reverse(seq.begin(), seq.end());
        r.witness = seq;
        return r;
    };

    while (!frontier.empty()) {
        Key key = frontier.front();
        frontier.pop_front();
        ++nodes;
        if (nodes > lim.max_states) throw LimitExceeded("state limit exceeded");
        if ((nodes & 0x3ff) == 0) clock.check();

        BoundedState s = s0;
        s.reversed = key;
        Orientation o = s.orientation();
        std::vector<int> f = inflows(g, o);
        for (int e : order) {
            if (s.is_reversed(e) || !flip_ok(g, f, o, e)) continue;
            Key nk = key;
            nk[e >> 6] ^= uint64_t(1) << (e & 63);
            if (parent.count(nk)) continue;
            parent.emplace(nk, std::make_pair(key, e));
            if (e == target) return make_report(nk);
            frontier.push_back(nk);
        }
    }
    SolveReport r;
    r.verdict = "not-winnable";
    r.nodes_explored = nodes;
    return r;
}

namespace {

struct TwoClSolver {
    const ConstraintGraph& g;
    const SolveLimits& lim;
    int target;
    std::vector<int> order;
    Clock clock;
    uint64_t nodes = 0;
    // key = reversed bitset + turn bit appended
    std::unordered_map<std::vector<uint64_t>, bool, VecKeyHash> memo;  // true = white wins

    TwoClSolver(const ConstraintGraph& g_, const SolveLimits& l)
        : g(g_), lim(l), target(g_.target_index()), order(id_order(g_)), clock(l.timeout_seconds) {}

    std::vector<uint64_t> key_of(const BoundedState& s) const {
        std::vector<uint64_t> k = s.reversed;
        k.push_back(s.to_move == Owner::white ? 1 : 0);
        return k;
    }

    bool white_wins(BoundedState& s, Orientation& o, std::vector<int>& f) {
        auto key = key_of(s);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        ++nodes;
        if (nodes > lim.max_states) throw LimitExceeded("state limit exceeded");
        if ((nodes & 0x3ff) == 0) clock.check();

        Owner me = s.to_move;
        bool any = false, result = (me != Owner::white);  // stuck player loses
        for (int e : order) {
            if (g.edges[e].owner != me || s.is_reversed(e) || !flip_ok(g, f, o, e)) continue;
            any = true;
            if (me == Owner::white && e == target) { result = true; break; }
            apply(s, o, f, e);
            bool w = white_wins(s, o, f);
            undo(s, o, f, e);
            if (me == Owner::white ? w : !w) { result = (me == Owner::white); break; }
            result = (me != Owner::white);
        }
        if (!any) result = (me != Owner::white);
        memo[key] = result;
        return result;
    }

    void apply(BoundedState& s, Orientation& o, std::vector<int>& f, int e) {
        int h_old = head_vertex_of(g, e, o[e]);
        o[e] = (int8_t)(1 - o[e]);
        int h_new = head_vertex_of(g, e, o[e]);
        f[h_old] -= g.edges[e].weight;
        f[h_new] += g.edges[e].weight;
        s.flip(e);
        s.to_move = s.to_move == Owner::white ? Owner::black : Owner::white;
    }
    void undo(BoundedState& s, Orientation& o, std::vector<int>& f, int e) {
        s.to_move = s.to_move == Owner::white ? Owner::black : Owner::white;
        s.flip(e);
        int h_old = head_vertex_of(g, e, o[e]);
        o[e] = (int8_t)(1 - o[e]);
        int h_new = head_vertex_of(g, e, o[e]);
        f[h_old] -= g.edges[e].weight;
        f[h_new] += g.edges[e].weight;
    }

    // principal variation: first value-achieving move in id order at each ply
    std::vector<std::string> line(BoundedState& s, Orientation& o, std::vector<int>& f, bool white_win) {
        std::vector<std::string> seq;
        while (true) {
            Owner me = s.to_move;
            int chosen = -1;
            for (int e : order) {
                if (g.edges[e].owner != me || s.is_reversed(e) || !flip_ok(g, f, o, e)) continue;
                if (me == Owner::white && e == target && white_win) { chosen = e; break; }
                apply(s, o, f, e);
                bool w = white_wins(s, o, f);
                undo(s, o, f, e);
                if (w == white_win) { chosen = e; break; }
            }
            if (chosen < 0) break;  // to-move player is stuck (or no achieving move)
            seq.push_back(g.edges[chosen].id);
            if (me == Owner::white && chosen == target) break;
            apply(s, o, f, chosen);
        }
        return seq;
    }
};

}  // namespace

SolveReport solve_2cl(const ConstraintGraph& g, const SolveLimits& lim) {
    if (!g.target) throw GraphError("solve_2cl: no target edge");
    if (g.edges[g.target_index()].owner != Owner::white)
        throw GraphError("solve_2cl: target edge must be owned by white");
    for (const Edge& e : g.edges)
        if (e.owner == Owner::neutral)
            throw GraphError("solve_2cl: edge " + e.id + " has no owner");
    Orientation init = initial_orientation(g);
    for (size_t e = 0; e < init.size(); ++e)
        if (init[e] < 0) throw GraphError("solve_2cl: edge " + g.edges[e].id + " is undirected");
    if (!is_legal(g, init)) throw GraphError("solve_2cl: initial configuration is illegal");

    TwoClSolver solver(g, lim);
    BoundedState s = BoundedState::initial(g, Owner::white);
    Orientation o = initial_orientation(g);
    std::vector<int> f = inflows(g, o);
    bool w = solver.white_wins(s, o, f);

    SolveReport r;
    r.verdict = w ? "white" : "black";
    BoundedState s2 = BoundedState::initial(g, Owner::white);
    Orientation o2 = initial_orientation(g);
    std::vector<int> f2 = inflows(g, o2);
    r.witness = solver.line(s2, o2, f2, w);
    r.nodes_explored = solver.nodes;
    return r;
}

namespace {

struct CgsSolver {
    const ConstraintGraph& g;
    const SolveLimits& lim;
    Clock clock;
    uint64_t nodes = 0;
    Orientation o;        // -1 undecided
    std::vector<int> fixed_in;   // inflow from decided edges
    std::vector<int> pending;    // weight of undecided incident edges

    CgsSolver(const ConstraintGraph& g_, const SolveLimits& l) : g(g_), lim(l), clock(l.timeout_seconds) {
        o = initial_orientation(g);
        fixed_in.assign(g.vertices.size(), 0);
        pending.assign(g.vertices.size(), 0);
        for (int e = 0; e < (int)g.edges.size(); ++e) {
            if (o[e] >= 0)
                fixed_in[head_vertex_of(g, e, o[e])] += g.edges[e].weight;
            else {
                pending[g.tail_of(e)] += g.edges[e].weight;
                pending[g.other_end(e, g.tail_of(e))] += g.edges[e].weight;
            }
        }
    }

    struct Decision { int e; };
    std::vector<int> trail;  // decided edge indices in order, for undo

    bool decide(int e, int head01) {
        int hv = head_vertex_of(g, e, head01);
        int tv = g.other_end(e, hv);
        o[e] = (int8_t)head01;
        fixed_in[hv] += g.edges[e].weight;
        pending[hv] -= g.edges[e].weight;
        pending[tv] -= g.edges[e].weight;
        trail.push_back(e);
        return fixed_in[tv] + pending[tv] >= g.vertices[tv].min_inflow;
    }

    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            int e = trail.back();
            trail.pop_back();
            int hv = head_vertex_of(g, e, o[e]);
            int tv = g.other_end(e, hv);
            fixed_in[hv] -= g.edges[e].weight;
            pending[hv] += g.edges[e].weight;
            pending[tv] += g.edges[e].weight;
            o[e] = -1;
        }
    }

    // unit-style propagation: a vertex that cannot reach its minimum without
    // some undecided edge forces that edge toward itself
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < (int)g.vertices.size(); ++v) {
                for (int e : g.incident(v)) {
                    int need = g.vertices[v].min_inflow - fixed_in[v];
                    if (need <= 0) break;
                    if (pending[v] < need) return false;
                    if (o[e] >= 0) continue;
                    if (pending[v] - g.edges[e].weight < need) {
                        int head01 = g.tail_of(e) == v ? 0 : 1;
                        if (!decide(e, head01)) return false;
                        changed = true;
                    }
                }
                if (fixed_in[v] + pending[v] < g.vertices[v].min_inflow) return false;
            }
        }
        return true;
    }

    bool search() {
        ++nodes;
        if (nodes > lim.max_states) throw LimitExceeded("state limit exceeded");
        if ((nodes & 0x3ff) == 0) clock.check();
        size_t mark = trail.size();
        if (!propagate()) {
            undo_to(mark);
            return false;
        }
        int e = -1;
        for (int i = 0; i < (int)g.edges.size(); ++i)
            if (o[i] < 0) { e = i; break; }
        if (e < 0) return true;  // fully decided and consistent
        for (int head01 : {0, 1}) {
            size_t m2 = trail.size();
            if (decide(e, head01) && search()) return true;
            undo_to(m2);
        }
        undo_to(mark);
        return false;
    }
};

}  // namespace

SolveReport solve_cgs(const ConstraintGraph& g, const SolveLimits& lim) {
    CgsSolver solver(g, lim);
    SolveReport r;
    if (solver.search()) {
        r.verdict = "sat";
        for (int e = 0; e < (int)g.edges.size(); ++e) {
            int hv = head_vertex_of(g, e, solver.o[e]);
            r.orientation[g.edges[e].id] = g.vertices[hv].id;
        }
    } else {
        r.verdict = "unsat";
    }
    r.nodes_explored = solver.nodes;
    return r;
}

std::vector<std::string> topological_edge_order(const ConstraintGraph& g) {
    if (!g.all_directed()) throw GraphError("topological_edge_order: undirected edge present");
    int n = (int)g.vertices.size();
    // vertex digraph: tail -> head per edge
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        int hv = g.head_vertex(e);
        int tv = g.other_end(e, hv);
        succ[tv].push_back(hv);
        indeg[hv]++;
    }
    std::vector<int> pos(n, -1), q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push_back(v);
    int next = 0;
    for (size_t i = 0; i < q.size(); ++i) {
        int v = q[i];
        pos[v] = next++;
        for (int w : succ[v])
            if (--indeg[w] == 0) q.push_back(w);
    }
    if (next != n) {
        // extract one cycle via DFS among the unplaced vertices
        std::vector<int> state(n, 0), stack;
        std::string cyc;
        std::function<bool(int)> dfs = [&](int v) -> bool {
            state[v] = 1;
            stack.push_back(v);
            for (int w : succ[v]) {
                if (pos[w] >= 0) continue;
                if (state[w] == 1) {
                    auto it = std::find(stack.begin(), stack.end(), w);
                    for (; it != stack.end(); ++it)
                        cyc += (cyc.empty() ? "" : " -> ") + g.vertices[*it].id;
                    return true;
                }
                if (state[w] == 0 && dfs(w)) return true;
            }
            state[v] = 2;
            stack.pop_back();
            return false;
        };
        for (int v = 0; v < n && cyc.empty(); ++v)
            if (pos[v] < 0 && state[v] == 0) dfs(v);
        throw GraphError("cycle detected: " + cyc);
    }
    std::vector<int> eord((size_t)g.edges.size());
    for (size_t i = 0; i < eord.size(); ++i) eord[i] = (int)i;
    std::sort(eord.begin(), eord.end(), [&](int a, int b) {
        int ta = g.other_end(a, g.head_vertex(a)), tb = g.other_end(b, g.head_vertex(b));
        if (pos[ta] != pos[tb]) return pos[ta] < pos[tb];
        return g.edges[a].id < g.edges[b].id;
    });
    std::vector<std::string> out;
    for (int e : eord) out.push_back(g.edges[e].id);
    return out;
}

std::vector<int> reduction_numbering(const ConstraintGraph& g) {
    // Edges in the canonical initial orientation point at producers, so a
    // topological order of the current digraph lists consumers first;
    // reversing it numbers producers lowest.
    int n = (int)g.vertices.size();
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        int hv = g.head_vertex(e);
        if (hv < 0) throw GraphError("reduction_numbering: undirected edge");
        int tv = g.other_end(e, hv);
        succ[tv].push_back(hv);
        indeg[hv]++;
    }
    std::vector<int> q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push_back(v);
    std::vector<int> order;
    for (size_t i = 0; i < q.size(); ++i) {
        int v = q[i];
        order.push_back(v);
        for (int w : succ[v])
            if (--indeg[w] == 0) q.push_back(w);
    }
    if ((int)order.size() != n) throw GraphError("reduction_numbering: graph is cyclic");
    std::vector<int> num(n);
    for (int i = 0; i < n; ++i) num[order[i]] = n - 1 - i;
    return num;
}

void replay_ncl_witness(const ConstraintGraph& g, const std::vector<std::string>& witness) {
    BoundedState s = BoundedState::initial(g);
    for (const std::string& id : witness) {
        int e = g.edge_index(id);
        if (s.is_reversed(e)) throw GraphError("witness reverses " + id + " twice");
        Orientation o = s.orientation();
        std::vector<int> f = inflows(g, o);
        if (!flip_ok(g, f, o, e)) throw GraphError("witness move " + id + " is illegal");
        s.flip(e);
    }
}

void add_black_fillers(ConstraintGraph& g, int count) {
    for (int i = 0; i < count; ++i) {
        std::string base = "black_filler_" + std::to_string(i);
        Vertex a{base + "_a", Kind::FREE, 0};
        Vertex b{base + "_b", Kind::FREE, 0};
        g.vertices.push_back(a);
        g.vertices.push_back(b);
        Edge e;
        e.id = base;
        e.u = a.id;
        e.v = b.id;
        e.weight = 1;
        e.head = 0;
        e.owner = Owner::black;
        g.edges.push_back(e);
    }
    g.finalize();
}

// --- JSON ---------------------------------------------------------------

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw GraphError("unknown field \"" + it.key() + "\" in " + where);
    }
}

}  // namespace

ConstraintGraph graph_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& ex) {
        throw GraphError(std::string("bad JSON: ") + ex.what());
    }
    if (!j.is_object()) throw GraphError("graph document must be an object");
    reject_unknown(j, {"vertices", "edges", "target"}, "graph");
    ConstraintGraph g;
    for (const json& jv : j.at("vertices")) {
        reject_unknown(jv, {"id", "kind", "min_inflow"}, "vertex");
        Vertex v;
        v.id = jv.at("id").get<std::string>();
        v.kind = kind_from_name(jv.at("kind").get<std::string>());
        v.min_inflow = jv.count("min_inflow") ? jv.at("min_inflow").get<int>()
                                              : (v.kind == Kind::FREE ? 0 : 2);
        g.vertices.push_back(v);
    }
    for (const json& je : j.at("edges")) {
        reject_unknown(je, {"id", "u", "v", "weight", "points_to", "undirected", "owner"}, "edge");
        Edge e;
        e.id = je.at("id").get<std::string>();
        e.u = je.at("u").get<std::string>();
        e.v = je.at("v").get<std::string>();
        e.weight = je.at("weight").get<int>();
        bool undirected = je.count("undirected") && je.at("undirected").get<bool>();
        if (je.count("points_to")) {
            if (undirected) throw GraphError("edge " + e.id + ": points_to and undirected conflict");
            std::string h = je.at("points_to").get<std::string>();
            if (h == e.u) e.head = 0;
            else if (h == e.v) e.head = 1;
            else throw GraphError("edge " + e.id + ": points_to names a non-endpoint");
        } else if (!undirected) {
            throw GraphError("edge " + e.id + ": needs points_to or undirected");
        }
        if (je.count("owner")) e.owner = owner_from_name(je.at("owner").get<std::string>());
        g.edges.push_back(e);
    }
    if (j.count("target")) g.target = j.at("target").get<std::string>();
    g.finalize();
    return g;
}

std::string graph_to_json(const ConstraintGraph& g, bool pretty) {
    json j;
    j["vertices"] = json::array();
    for (const Vertex& v : g.vertices) {
        json jv;
        jv["id"] = v.id;
        jv["kind"] = kind_name(v.kind);
        jv["min_inflow"] = v.min_inflow;
        j["vertices"].push_back(jv);
    }
    j["edges"] = json::array();
    for (const Edge& e : g.edges) {
        json je;
        je["id"] = e.id;
        je["u"] = e.u;
        je["v"] = e.v;
        je["weight"] = e.weight;
        if (e.head < 0) je["undirected"] = true;
        else je["points_to"] = e.head == 0 ? e.u : e.v;
        if (e.owner != Owner::neutral) je["owner"] = owner_name(e.owner);
        j["edges"].push_back(je);
    }
    if (g.target) j["target"] = *g.target;
    return pretty ? j.dump(2) : j.dump();
}

}  // namespace ncl
