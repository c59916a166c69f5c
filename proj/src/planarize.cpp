#include "ncl/planarize.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ncl {

namespace {

// Fig 2(a) internal structure. Vertices v1..v10; per-label (u, v, weight,
// initial head) with the unique tight completion for the depicted state
// (A, C outward; B, D inward).
struct TemplateEdge {
    const char* label;
    const char* u;
    const char* v;
    int weight;
    const char* head;
};

constexpr TemplateEdge kCrossoverInternal[] = {
    {"E", "v4", "v7", 2, "v4"},
    {"K", "v1", "v2", 1, "v1"}, {"L", "v1", "v3", 1, "v1"}, {"H", "v2", "v3", 1, "v2"},
    {"I", "v2", "v4", 1, "v2"}, {"J", "v3", "v4", 1, "v3"},
    {"F", "v2", "v5", 1, "v5"}, {"G", "v3", "v6", 1, "v3"},
    {"M", "v5", "v8", 1, "v5"}, {"N", "v6", "v9", 1, "v9"},
    {"P", "v7", "v8", 1, "v7"}, {"Q", "v7", "v9", 1, "v7"},
    {"O", "v8", "v9", 1, "v8"}, {"R", "v8", "v10", 1, "v8"}, {"S", "v9", "v10", 1, "v9"},
};

// kinds for the internal vertices in the depicted orientation; the four-red
// corners are not basic vertices until half-crossover expansion
struct TemplateVertex {
    const char* id;
    Kind kind;
};
constexpr TemplateVertex kCrossoverVertices[] = {
    {"v1", Kind::FANOUT}, {"v2", Kind::FREE}, {"v3", Kind::FREE}, {"v4", Kind::AND},
    {"v5", Kind::FANOUT}, {"v6", Kind::AND}, {"v7", Kind::FANOUT},
    {"v8", Kind::FREE}, {"v9", Kind::FREE}, {"v10", Kind::AND},
};

// Fig 2(b) internals; initial heads for the (a out, b in, c out, d in)
// boundary. The two under-determined edges are fixed as g->w2, o->w9
// (the completion with the paper's bounded propagation behavior).
constexpr TemplateEdge kHalfInternal[] = {
    {"e", "w2", "w5", 2, "w2"}, {"j", "w5", "w8", 2, "w5"},
    {"f", "w3", "w6", 2, "w3"}, {"k", "w6", "w9", 2, "w9"},
    {"h", "w1", "w2", 1, "w1"}, {"i", "w1", "w3", 1, "w1"}, {"g", "w2", "w3", 1, "w2"},
    {"n", "w10", "w8", 1, "w8"}, {"o", "w10", "w9", 1, "w9"}, {"m", "w8", "w9", 1, "w8"},
};
constexpr TemplateVertex kHalfVertices[] = {
    {"w1", Kind::AND}, {"w2", Kind::AND}, {"w3", Kind::AND},
    {"w5", Kind::OR}, {"w6", Kind::OR},
    {"w8", Kind::AND}, {"w9", Kind::AND}, {"w10", Kind::AND},
};

// external attachment corners: role -> gadget vertex
const std::map<std::string, std::string> kHalfPorts = {
    {"a", "w5"}, {"b", "w6"}, {"c", "w1"}, {"d", "w10"}};

std::string uniq_prefix(const ConstraintGraph& g, const std::string& base) {
    auto taken = [&](const std::string& p) {
        for (const Vertex& v : g.vertices)
            if (v.id.rfind(p, 0) == 0) return true;
        for (const Edge& e : g.edges)
            if (e.id.rfind(p, 0) == 0) return true;
        return false;
    };
    for (int k = 0;; ++k) {
        std::string p = base + std::to_string(k) + "_";
        if (!taken(p)) return p;
    }
}

}  // namespace

std::pair<ConstraintGraph, CrossoverInstance> insert_crossover(const ConstraintGraph& g,
                                                               const std::string& e1_id,
                                                               const std::string& e2_id) {
    if (e1_id == e2_id) throw GraphError("insert_crossover: e1 and e2 are the same edge");
    int i1 = g.edge_index(e1_id), i2 = g.edge_index(e2_id);
    const Edge e1 = g.edges[i1], e2 = g.edges[i2];
    if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v)
        throw GraphError("insert_crossover: edges share an endpoint");
    if (e1.weight != 2 || e2.weight != 2)
        throw GraphError("insert_crossover: only weight-2 edges can cross (red crossings "
                         "need red-blue conversion)");
    if (e1.head < 0 || e2.head < 0)
        throw GraphError("insert_crossover: edges must be directed");

    ConstraintGraph out;
    out.target = g.target;
    if (g.target && (*g.target == e1_id || *g.target == e2_id))
        throw GraphError("insert_crossover: refusing to split the target edge");
    for (const Vertex& v : g.vertices) out.vertices.push_back(v);
    for (int i = 0; i < (int)g.edges.size(); ++i)
        if (i != i1 && i != i2) out.edges.push_back(g.edges[i]);

    std::string px = uniq_prefix(g, "x");
    CrossoverInstance inst;
    for (const TemplateVertex& tv : kCrossoverVertices) {
        out.vertices.push_back({px + tv.id, tv.kind, 2});
        inst.internal_vertices.push_back(px + tv.id);
    }

    // externals: e1 -> A (u side, at v5) + B (v side, at v6);
    //            e2 -> C (u side, at v1) + D (v side, at v10)
    auto add_ext = [&](const char* label, const std::string& host, const char* corner,
                       bool points_to_host) {
        Edge e;
        e.id = px + label;
        e.u = host;
        e.v = px + corner;
        e.weight = 2;
        e.head = points_to_host ? 0 : 1;
        e.owner = Owner::neutral;
        out.edges.push_back(e);
        inst.edge_map[label] = e.id;
        return e.id;
    };
    // orientation transfer: the side the original edge pointed at keeps its
    // inflow; the far side's stub points into the gadget
    add_ext("A", e1.u, "v5", e1.head == 0);
    add_ext("B", e1.v, "v6", e1.head == 1);
    add_ext("C", e2.u, "v1", e2.head == 0);
    add_ext("D", e2.v, "v10", e2.head == 1);
    inst.boundary = {px + "v5", px + "v6", px + "v1", px + "v10"};

    for (const TemplateEdge& te : kCrossoverInternal) {
        Edge e;
        e.id = px + te.label;
        e.u = px + te.u;
        e.v = px + te.v;
        e.weight = te.weight;
        e.head = std::string(te.head) == te.u ? 0 : 1;
        out.edges.push_back(e);
        inst.edge_map[te.label] = e.id;
    }
    out.finalize();

    // the depicted completion is only valid for the depicted external
    // orientation; otherwise search the 2^15 internal orientations for the
    // first legal one (deterministic, fewest flips from the depicted state)
    Orientation o = initial_orientation(out);
    if (!is_legal(out, o)) {
        std::vector<int> internal;
        for (const TemplateEdge& te : kCrossoverInternal)
            internal.push_back(out.edge_index(px + te.label));
        bool found = false;
        for (uint32_t mask = 0; mask < (1u << internal.size()) && !found; ++mask) {
            Orientation cand = o;
            for (size_t b = 0; b < internal.size(); ++b)
                if ((mask >> b) & 1) cand[internal[b]] = (int8_t)(1 - cand[internal[b]]);
            if (is_legal(out, cand)) {
                for (size_t b = 0; b < internal.size(); ++b)
                    out.edges[internal[b]].head = cand[internal[b]];
                found = true;
            }
        }
        if (!found)
            throw GraphError("insert_crossover: no legal internal orientation for the "
                             "ambient edge directions");
        out.finalize();
    }
    return {out, inst};
}

ConstraintGraph expand_half_crossovers(const ConstraintGraph& g,
                                       std::vector<HalfCrossoverInstance>* instances) {
    ConstraintGraph out = g;
    out.finalize();
    // Collect the four-red vertices up front: expanding one corner promotes
    // shared red edges to blue, which must not hide its neighbors.
    std::vector<std::string> victims;
    for (int v = 0; v < (int)out.vertices.size(); ++v) {
        const auto& inc = out.incident(v);
        if (inc.size() != 4) continue;
        bool all_red = true;
        for (int e : inc) all_red &= out.edges[e].weight == 1;
        if (all_red) victims.push_back(out.vertices[v].id);
    }
    for (const std::string& vid : victims) {
        int victim = out.vertex_index(vid);
        std::vector<int> inc = out.incident(victim);
        // role assignment: outward edges sorted by id -> a, c; inward -> b, d
        std::vector<int> outs, ins;
        for (int e : inc)
            (out.head_vertex(e) == victim ? ins : outs).push_back(e);
        auto by_id = [&](int x, int y) { return out.edges[x].id < out.edges[y].id; };
        std::sort(outs.begin(), outs.end(), by_id);
        std::sort(ins.begin(), ins.end(), by_id);
        std::map<std::string, int> role;
        {
            std::vector<int> seq;
            seq.insert(seq.end(), outs.begin(), outs.end());
            seq.insert(seq.end(), ins.begin(), ins.end());
            const char* order_out[] = {"a", "c"};
            const char* order_in[] = {"b", "d"};
            for (size_t i = 0; i < outs.size(); ++i) role[order_out[i]] = outs[i];
            for (size_t i = 0; i < ins.size(); ++i) role[order_in[i]] = ins[i];
            if (outs.size() + ins.size() != 4)
                throw GraphError("expand_half_crossovers: internal role assignment failed");
            if (outs.size() > 2 || ins.size() > 2)
                throw GraphError("expand_half_crossovers: vertex " + vid +
                                 " is not in a two-in/two-out state");
        }

        std::string px = uniq_prefix(out, "h");
        ConstraintGraph next;
        next.target = out.target;
        for (const Vertex& v : out.vertices)
            if (v.id != vid) next.vertices.push_back(v);
        for (const TemplateVertex& tv : kHalfVertices)
            next.vertices.push_back({px + tv.id, tv.kind, 2});

        HalfCrossoverInstance inst;
        inst.replaced_vertex = vid;
        for (const Edge& e : out.edges) {
            Edge ne = e;
            bool touched = false;
            for (auto& [label, ei] : role) {
                if (out.edges[ei].id != e.id) continue;
                std::string corner = px + kHalfPorts.at(label);
                if (ne.u == vid) ne.u = corner;
                if (ne.v == vid) ne.v = corner;
                ne.weight = 2;  // promote: gadget externals are blue
                inst.edge_map[label] = ne.id;
                touched = true;
            }
            (void)touched;
            next.edges.push_back(ne);
        }
        for (const TemplateEdge& te : kHalfInternal) {
            Edge e;
            e.id = px + te.label;
            e.u = px + te.u;
            e.v = px + te.v;
            e.weight = te.weight;
            e.head = std::string(te.head) == te.u ? 0 : 1;
            next.edges.push_back(e);
            inst.edge_map[te.label] = e.id;
        }
        // loosen kinds before finalize; they are re-derived below
        for (Vertex& v : next.vertices)
            if (v.kind != Kind::FREE) v.kind = Kind::FREE, v.min_inflow = 2;
        next.finalize();

        // internal orientation: the depicted completion, or the nearest legal
        // one for other boundary patterns
        Orientation o = initial_orientation(next);
        if (!is_legal(next, o)) {
            std::vector<int> internal;
            for (const TemplateEdge& te : kHalfInternal)
                internal.push_back(next.edge_index(px + te.label));
            bool found = false;
            for (uint32_t mask = 0; mask < (1u << internal.size()) && !found; ++mask) {
                Orientation cand = o;
                for (size_t b = 0; b < internal.size(); ++b)
                    if ((mask >> b) & 1) cand[internal[b]] = (int8_t)(1 - cand[internal[b]]);
                if (is_legal(next, cand)) {
                    for (size_t b = 0; b < internal.size(); ++b)
                        next.edges[internal[b]].head = cand[internal[b]];
                    found = true;
                }
            }
            if (!found)
                throw GraphError("expand_half_crossovers: no legal internal orientation at " + vid);
            next.finalize();
        }
        if (instances) instances->push_back(inst);
        out = std::move(next);
    }

    // Restore or re-derive kinds. Untouched vertices keep their input kind;
    // vertices whose incident weights changed (edge promotions) are re-tagged
    // to the basic kind matching their new multiset. A non-FREE vertex whose
    // multiset matches no basic kind would need a red-blue conversion.
    std::map<std::string, Vertex> original;
    for (const Vertex& v : g.vertices) original[v.id] = v;
    for (int v = 0; v < (int)out.vertices.size(); ++v) {
        Vertex& vx = out.vertices[v];
        std::multiset<int> ws;
        for (int e : out.incident(v)) ws.insert(out.edges[e].weight);
        auto orig = original.find(vx.id);
        if (orig != original.end() && orig->second.kind == Kind::FREE) {
            vx = orig->second;  // terminals and frozen sources stay FREE
            continue;
        }
        std::multiset<int> want_and{2, 1, 1}, want_or{2, 2, 2}, want_choice{1, 1, 1},
            want_var{2, 2};
        Kind derived;
        if (ws == want_or) derived = Kind::OR;
        else if (ws == want_choice) derived = Kind::CHOICE;
        else if (ws == want_var) derived = Kind::VARIABLE;
        else if (ws == want_and) {
            // AND and FANOUT share the multiset; keep the original tag when
            // unchanged, otherwise read the blue edge's direction
            if (orig != original.end() &&
                (orig->second.kind == Kind::AND || orig->second.kind == Kind::FANOUT)) {
                derived = orig->second.kind;
            } else {
                derived = Kind::FANOUT;
                for (int e : out.incident(v))
                    if (out.edges[e].weight == 2 && out.head_vertex(e) == v)
                        derived = Kind::AND;
            }
        } else {
            throw GraphError("expand_half_crossovers: vertex " + vx.id +
                             " needs a red-blue edge conversion (unsupported)");
        }
        vx.kind = derived;
        vx.min_inflow = 2;
    }
    out.finalize();
    return out;
}

std::pair<ConstraintGraph, HalfCrossoverInstance> half_crossover_harness() {
    ConstraintGraph g;
    for (const char* id : {"ta", "tb", "tc", "td"}) g.vertices.push_back({id, Kind::FREE, 0});
    for (const TemplateVertex& tv : kHalfVertices) g.vertices.push_back({tv.id, tv.kind, 2});
    HalfCrossoverInstance inst;
    inst.replaced_vertex = "";
    auto ext = [&](const char* label, const char* corner, const char* terminal, bool inward) {
        Edge e;
        e.id = label;
        e.u = corner;
        e.v = terminal;
        e.weight = 2;
        e.head = inward ? 0 : 1;
        g.edges.push_back(e);
        inst.edge_map[label] = label;
    };
    ext("a", "w5", "ta", false);   // a points outward
    ext("b", "w6", "tb", true);    // b inward
    ext("c", "w1", "tc", false);   // c outward
    ext("d", "w10", "td", true);   // d inward
    for (const TemplateEdge& te : kHalfInternal) {
        Edge e;
        e.id = te.label;
        e.u = te.u;
        e.v = te.v;
        e.weight = te.weight;
        e.head = std::string(te.head) == te.u ? 0 : 1;
        g.edges.push_back(e);
        inst.edge_map[te.label] = te.label;
    }
    g.finalize();
    return {g, inst};
}

std::pair<ConstraintGraph, CrossoverInstance> crossover_harness() {
    // host: two blue edges between FREE terminals, crossed
    ConstraintGraph host;
    for (const char* id : {"ext_a", "ext_b", "ext_c", "ext_d"})
        host.vertices.push_back({id, Kind::FREE, 0});
    Edge e1;
    e1.id = "vert";
    e1.u = "ext_a";
    e1.v = "ext_b";
    e1.weight = 2;
    e1.head = 0;  // points at ext_a: A will point outward, B inward
    host.edges.push_back(e1);
    Edge e2;
    e2.id = "horiz";
    e2.u = "ext_c";
    e2.v = "ext_d";
    e2.weight = 2;
    e2.head = 0;  // C outward, D inward
    host.edges.push_back(e2);
    host.finalize();
    return insert_crossover(host, "vert", "horiz");
}

namespace {

// compact bounded-reachability search over <=64 edges
struct SmallSearch {
    const ConstraintGraph& g;
    Orientation init;
    std::vector<int> mins;
    uint64_t cap;
    bool capped = false;
    uint64_t explored = 0;

    explicit SmallSearch(const ConstraintGraph& gr, uint64_t cap_) : g(gr), cap(cap_) {
        init = initial_orientation(g);
        for (const Vertex& v : g.vertices) mins.push_back(v.min_inflow);
        if (g.edges.size() > 64) throw GraphError("SmallSearch: more than 64 edges");
    }

    Orientation orient(uint64_t rev) const {
        Orientation o = init;
        for (size_t e = 0; e < o.size(); ++e)
            if ((rev >> e) & 1) o[e] = (int8_t)(1 - o[e]);
        return o;
    }

    std::vector<uint64_t> successors(uint64_t rev) const {
        Orientation o = orient(rev);
        std::vector<int> f(g.vertices.size(), 0);
        for (size_t e = 0; e < o.size(); ++e) {
            int hv = o[e] == 0 ? g.tail_of((int)e) : g.other_end((int)e, g.tail_of((int)e));
            f[hv] += g.edges[e].weight;
        }
        std::vector<uint64_t> out;
        for (size_t e = 0; e < o.size(); ++e) {
            if ((rev >> e) & 1) continue;
            int hv = o[e] == 0 ? g.tail_of((int)e) : g.other_end((int)e, g.tail_of((int)e));
            if (f[hv] - g.edges[e].weight >= mins[hv]) out.push_back(rev | (uint64_t(1) << e));
        }
        return out;
    }

    // BFS closure from the seed set; early exit when pred holds
    template <class Pred>
    std::unordered_set<uint64_t> closure(std::vector<uint64_t> seeds, Pred stop, bool* hit) {
        std::unordered_set<uint64_t> seen(seeds.begin(), seeds.end());
        std::deque<uint64_t> q(seeds.begin(), seeds.end());
        if (hit) *hit = false;
        while (!q.empty()) {
            uint64_t s = q.front();
            q.pop_front();
            ++explored;
            if (hit && stop(s)) {
                *hit = true;
                return seen;
            }
            if (seen.size() > cap) {
                capped = true;
                return seen;
            }
            for (uint64_t n : successors(s))
                if (seen.insert(n).second) q.push_back(n);
        }
        return seen;
    }
};

}  // namespace

CrossoverReport verify_crossover(CrossoverMode mode, uint64_t state_cap) {
    CrossoverReport rep;
    auto [graph, inst] = crossover_harness();
    auto eidx = [&](const char* label) { return graph.edge_index(inst.edge_map.at(label)); };

    if (mode == CrossoverMode::unbounded) {
        // enumerate all legal configurations of the 19 gadget edges
        int ne = (int)graph.edges.size();
        int iA = eidx("A"), iB = eidx("B"), iC = eidx("C"), iD = eidx("D");
        auto out_at_terminal = [&](const Orientation& o, int e) {
            int hv = o[e] == 0 ? graph.tail_of(e) : graph.other_end(e, graph.tail_of(e));
            return graph.vertices[hv].kind == Kind::FREE && graph.vertices[hv].min_inflow == 0;
        };
        bool both_v_out = false, both_h_out = false;
        bool a_out_seen = false, b_out_seen = false, c_out_seen = false, d_out_seen = false;
        for (uint32_t mask = 0; mask < (1u << ne); ++mask) {
            Orientation o(ne);
            for (int e = 0; e < ne; ++e) o[e] = (int8_t)((mask >> e) & 1);
            if (!is_legal(graph, o)) continue;
            ++rep.states_explored;
            bool ao = out_at_terminal(o, iA), bo = out_at_terminal(o, iB);
            bool co = out_at_terminal(o, iC), do_ = out_at_terminal(o, iD);
            both_v_out |= (ao && bo);
            both_h_out |= (co && do_);
            a_out_seen |= (ao && !bo);
            b_out_seen |= (bo && !ao);
            c_out_seen |= (co && !do_);
            d_out_seen |= (do_ && !co);
        }
        rep.vertical_iff = !both_v_out && a_out_seen && b_out_seen;
        rep.horizontal_iff = !both_h_out && c_out_seen && d_out_seen;
        rep.exhaustive = true;
        return rep;
    }

    // ---- bounded mode -----------------------------------------------------
    SmallSearch raw(graph, state_cap);
    auto replay = [&](const std::vector<const char*>& labels) {
        uint64_t rev = 0;
        for (const char* l : labels) {
            int e = eidx(l);
            auto succ = raw.successors(rev);
            uint64_t want = rev | (uint64_t(1) << e);
            if (std::find(succ.begin(), succ.end(), want) == succ.end()) return false;
            rev = want;
        }
        return true;
    };
    rep.vertical_seq_legal = replay({"A", "F", "H", "G", "M", "O", "N", "B"});
    rep.horizontal_seq_legal = replay({"C", "K", "I", "L", "J", "E", "P", "R", "Q", "S", "D"});

    auto exclusion = [&](SmallSearch& search, int i1, int i2, int j1, int j2) {
        // after both of {i1,i2} reversed with {j1,j2} untouched, can a
        // continuation reverse both of {j1,j2}?
        bool done_pair_hit = false;
        auto all = search.closure({0}, [&](uint64_t) { return false; }, nullptr);
        std::vector<uint64_t> seeds;
        for (uint64_t s : all) {
            bool iset = ((s >> i1) & 1) && ((s >> i2) & 1);
            bool jset = ((s >> j1) & 1) || ((s >> j2) & 1);
            if (iset && !jset) seeds.push_back(s);
        }
        if (seeds.empty()) return std::make_pair(true, false);
        search.closure(
            seeds,
            [&](uint64_t s) { return ((s >> j1) & 1) && ((s >> j2) & 1); },
            &done_pair_hit);
        return std::make_pair(!done_pair_hit, true);
    };

    {
        int iA = eidx("A"), iB = eidx("B"), iC = eidx("C"), iD = eidx("D");
        rep.raw_exclusion_after_vertical = exclusion(raw, iA, iB, iC, iD).first;
        rep.raw_exclusion_after_horizontal = exclusion(raw, iC, iD, iA, iB).first;
    }

    // half-crossover: the bounded exclusion lives here; blockage transfers to
    // any embedding because FREE harness terminals only remove constraints
    auto [half, hinst] = half_crossover_harness();
    SmallSearch hs(half, state_cap);
    {
        auto hx = [&](const char* label) { return half.edge_index(hinst.edge_map.at(label)); };
        int ia = hx("a"), ib = hx("b"), ic = hx("c"), id = hx("d");
        rep.half_exclusion_after_vertical = exclusion(hs, ia, ib, ic, id).first;
        rep.half_exclusion_after_horizontal = exclusion(hs, ic, id, ia, ib).first;

        auto all = hs.closure({0}, [&](uint64_t) { return false; }, nullptr);
        std::vector<uint64_t> seeds;
        for (uint64_t s : all) {
            bool ab = ((s >> ia) & 1) && ((s >> ib) & 1);
            bool cd = ((s >> ic) & 1) || ((s >> id) & 1);
            if (ab && !cd) seeds.push_back(s);
        }
        bool hit_d = false, hit_c = false, hit_pair = false;
        if (!seeds.empty()) {
            hs.closure(seeds, [&](uint64_t s) { return ((s >> id) & 1) != 0; }, &hit_d);
            hs.closure(seeds, [&](uint64_t s) { return ((s >> ic) & 1) != 0; }, &hit_c);
            hs.closure(
                seeds, [&](uint64_t s) { return ((s >> ic) & 1) && ((s >> id) & 1); },
                &hit_pair);
        }
        rep.half_ab_blocks_d = !hit_d;
        rep.half_ab_blocks_c = !hit_c;
        rep.half_ab_blocks_pair = !hit_pair;
    }

    // expanded crossover: reachability of the states the claims start from
    std::vector<HalfCrossoverInstance> halves;
    ConstraintGraph expanded = expand_half_crossovers(graph, &halves);
    SmallSearch exp(expanded, state_cap);
    {
        auto ex_idx = [&](const char* label) {
            return expanded.edge_index(inst.edge_map.at(label));
        };
        int iA = ex_idx("A"), iB = ex_idx("B"), iF = ex_idx("F"), iH = ex_idx("H");
        bool hit = false;
        exp.closure({0}, [&](uint64_t s) { return ((s >> iA) & 1) && ((s >> iB) & 1); }, &hit);
        rep.expanded_vertical_reachable = hit;
        hit = false;
        exp.closure({0}, [&](uint64_t s) { return ((s >> iF) & 1) && ((s >> iH) & 1); }, &hit);
        rep.expanded_fh_reachable = hit;
    }
    rep.states_explored = raw.explored + hs.explored + exp.explored;
    rep.exhaustive = !raw.capped && !hs.capped && !exp.capped;
    return rep;
}

}  // namespace ncl
