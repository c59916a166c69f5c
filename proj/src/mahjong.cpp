#include "ncl/mahjong.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <unordered_set>

namespace ncl::mahjong {

using json = nlohmann::ordered_json;

namespace {

struct PosLess {
    bool operator()(const Tile& a, const Tile& b) const {
        return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    }
};

}  // namespace

void Arrangement::validate() const {
    std::set<std::tuple<int, int, int>> pos;
    std::map<int, int> set_sizes;
    for (const Tile& t : tiles) {
        if (t.i < 0 || t.j < 0 || t.k < 0) throw GraphError("mahjong: negative position");
        if (!pos.insert({t.i, t.j, t.k}).second)
            throw GraphError("mahjong: two tiles share a position");
        set_sizes[t.set]++;
    }
    for (auto& [s, n] : set_sizes)
        if (n % 2 != 0)
            throw GraphError("mahjong: tile set " + std::to_string(s) + " has odd size");
    for (const Tile& t : tiles) {
        if (t.k > 0 && !pos.count({t.i, t.j, t.k - 1}))
            throw GraphError("mahjong: tile without support");
    }
    // row contiguity: tiles with common (i,k) must occupy a j-interval
    std::map<std::pair<int, int>, std::vector<int>> rows;
    for (const Tile& t : tiles) rows[{t.i, t.k}].push_back(t.j);
    for (auto& [ik, js] : rows) {
        auto [lo, hi] = std::minmax_element(js.begin(), js.end());
        if (*hi - *lo + 1 != (int)js.size())
            throw GraphError("mahjong: gap in a row");
    }
}

namespace {

struct Geometry {
    std::vector<int> above, left, right;  // tile indices or -1
    explicit Geometry(const Arrangement& arr) {
        std::map<std::tuple<int, int, int>, int> at;
        for (int t = 0; t < (int)arr.tiles.size(); ++t) {
            const Tile& x = arr.tiles[t];
            at[{x.i, x.j, x.k}] = t;
        }
        auto find = [&](int i, int j, int k) {
            auto it = at.find({i, j, k});
            return it == at.end() ? -1 : it->second;
        };
        above.resize(arr.tiles.size());
        left.resize(arr.tiles.size());
        right.resize(arr.tiles.size());
        for (int t = 0; t < (int)arr.tiles.size(); ++t) {
            const Tile& x = arr.tiles[t];
            above[t] = find(x.i, x.j, x.k + 1);
            left[t] = find(x.i, x.j - 1, x.k);
            right[t] = find(x.i, x.j + 1, x.k);
        }
    }
    bool avail(const std::vector<char>& removed, int t) const {
        if (above[t] >= 0 && !removed[above[t]]) return false;  // hidden
        bool l = left[t] < 0 || removed[left[t]];
        bool r = right[t] < 0 || removed[right[t]];
        return l || r;
    }
};

}  // namespace

bool is_available(const Arrangement& arr, const std::vector<char>& removed, int t) {
    Geometry geo(arr);
    return geo.avail(removed, t);
}

bool is_available(const Arrangement& arr, int16_t i, int16_t j, int16_t k) {
    for (int t = 0; t < (int)arr.tiles.size(); ++t) {
        const Tile& x = arr.tiles[t];
        if (x.i == i && x.j == j && x.k == k)
            return is_available(arr, std::vector<char>(arr.tiles.size(), 0), t);
    }
    throw GraphError("mahjong: no tile at the given position");
}

std::vector<PairMove> legal_moves(const Arrangement& arr, const std::vector<char>& removed) {
    Geometry geo(arr);
    std::vector<int> av;
    for (int t = 0; t < (int)arr.tiles.size(); ++t)
        if (!removed[t] && geo.avail(removed, t)) av.push_back(t);
    std::vector<PairMove> out;
    for (size_t x = 0; x < av.size(); ++x)
        for (size_t y = x + 1; y < av.size(); ++y)
            if (arr.tiles[av[x]].set == arr.tiles[av[y]].set)
                out.push_back({av[x], av[y]});
    return out;
}

void apply(const Arrangement& arr, std::vector<char>& removed, const PairMove& m) {
    if (m.a == m.b || removed[m.a] || removed[m.b])
        throw GraphError("mahjong: bad pair");
    if (arr.tiles[m.a].set != arr.tiles[m.b].set)
        throw GraphError("mahjong: tiles do not match");
    Geometry geo(arr);
    if (!geo.avail(removed, m.a) || !geo.avail(removed, m.b))
        throw GraphError("mahjong: tile not available");
    removed[m.a] = removed[m.b] = 1;
}

namespace {

struct Solver {
    const Arrangement& arr;
    Geometry geo;
    const SolveLimits& lim;
    int nbits;
    std::unordered_set<std::string> dead;
    std::vector<PairMove> path;
    uint64_t nodes = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Solver(const Arrangement& a, const SolveLimits& l)
        : arr(a), geo(a), lim(l), nbits((int)a.tiles.size()) {}

    std::string key(const std::vector<char>& removed) const {
        std::string k((nbits + 7) / 8, '\0');
        for (int t = 0; t < nbits; ++t)
            if (removed[t]) k[t >> 3] |= (char)(1 << (t & 7));
        return k;
    }

    bool dfs(std::vector<char>& removed, int left) {
        if (left == 0) return true;
        ++nodes;
        if (nodes > lim.max_states) throw LimitExceeded("mahjong: state limit exceeded");
        if ((nodes & 0x3ff) == 0) {
            double el =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (el > lim.timeout_seconds) throw LimitExceeded("mahjong: time limit exceeded");
        }
        std::string k = key(removed);
        if (dead.count(k)) return false;
        std::vector<int> av;
        for (int t = 0; t < nbits; ++t)
            if (!removed[t] && geo.avail(removed, t)) av.push_back(t);
        for (size_t x = 0; x < av.size(); ++x)
            for (size_t y = x + 1; y < av.size(); ++y) {
                int a = av[x], b = av[y];
                if (arr.tiles[a].set != arr.tiles[b].set) continue;
                removed[a] = removed[b] = 1;
                path.push_back({a, b});
                if (dfs(removed, left - 2)) return true;
                path.pop_back();
                removed[a] = removed[b] = 0;
            }
        dead.insert(std::move(k));
        return false;
    }
};

}  // namespace

Report solve(const Arrangement& arr, const SolveLimits& lim) {
    arr.validate();
    Solver s(arr, lim);
    std::vector<char> removed(arr.tiles.size(), 0);
    Report r;
    r.winnable = s.dfs(removed, (int)arr.tiles.size());
    r.witness = s.path;
    r.nodes_explored = s.nodes;
    return r;
}

// --- reduction ----------------------------------------------------------

namespace {

struct GadgetPlan {
    int vertex = -1;
    int set_base = 0;   // local sets: base+0 input a / base+1 input b /
                        // base+2 pair of threes / base+3 fours / base+4 fives
    int section = 0;    // cross-section index
    std::vector<int> inputs, outputs;
};

}  // namespace

std::pair<Arrangement, ReductionTrace> reduce(const ConstraintGraph& g) {
    if (!g.target) throw GraphError("mahjong reduce: no target edge");
    std::vector<int> numbering = reduction_numbering(g);

    std::vector<int> game_vertices;
    for (int v = 0; v < (int)g.vertices.size(); ++v) {
        Kind k = g.vertices[v].kind;
        if (k == Kind::FREE) continue;
        if (k == Kind::VARIABLE)
            throw GraphError("mahjong reduce: unsupported vertex kind VARIABLE");
        game_vertices.push_back(v);
    }
    std::sort(game_vertices.begin(), game_vertices.end(),
              [&](int a, int b) { return numbering[a] < numbering[b]; });
    for (int v = 0; v < (int)g.vertices.size(); ++v)
        if (g.vertices[v].kind == Kind::FREE && g.incident(v).size() != 1)
            throw GraphError("mahjong reduce: FREE vertex " + g.vertices[v].id +
                             " must have exactly one incident edge");

    std::map<int, GadgetPlan> plans;
    for (size_t i = 0; i < game_vertices.size(); ++i) {
        int v = game_vertices[i];
        GadgetPlan p;
        p.vertex = v;
        p.set_base = 10 + 5 * (int)i;
        p.section = 2 * (int)i;
        for (int e : g.incident(v))
            (g.head_vertex(e) == v ? p.outputs : p.inputs).push_back(e);
        auto by_id = [&](int a, int b) { return g.edges[a].id < g.edges[b].id; };
        std::sort(p.inputs.begin(), p.inputs.end(), by_id);
        std::sort(p.outputs.begin(), p.outputs.end(), by_id);
        Kind k = g.vertices[v].kind;
        size_t want_in = (k == Kind::FANOUT || k == Kind::CHOICE) ? 1 : 2;
        size_t want_out = (k == Kind::FANOUT || k == Kind::CHOICE) ? 2 : 1;
        if (p.inputs.size() != want_in || p.outputs.size() != want_out)
            throw GraphError("mahjong reduce: vertex " + g.vertices[v].id +
                             " is not in the canonical initial orientation");
        plans[v] = p;
    }

    int target = g.target_index();
    {
        int th = g.head_vertex(target);
        int tt = g.other_end(target, th);
        if (g.vertices[tt].kind != Kind::FREE)
            throw GraphError("mahjong reduce: target edge tail must be a FREE terminal");
        if (g.vertices[th].kind == Kind::FREE && !game_vertices.empty())
            throw GraphError("mahjong reduce: target edge must leave a gadget");
    }

    // edge sets: the consumer's input-slot set, or a fresh set per
    // FREE-tailed edge (dangling outputs and the target)
    std::map<int, int> edge_set;
    for (auto& [v, p] : plans)
        for (size_t slot = 0; slot < p.inputs.size(); ++slot)
            edge_set[p.inputs[slot]] = p.set_base + (int)slot;
    int next_set = 10 + 5 * (int)game_vertices.size();
    std::vector<int> dangling;
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        if (edge_set.count(e)) continue;
        int hv = g.head_vertex(e);
        int tv = g.other_end(e, hv);
        if (g.vertices[tv].kind == Kind::FREE && g.vertices[hv].kind != Kind::FREE) {
            edge_set[e] = next_set++;
            if (e != target) dangling.push_back(e);
        } else {
            throw GraphError("mahjong reduce: edge " + g.edges[e].id + " has no role");
        }
    }

    Arrangement arr;
    ReductionTrace trace;
    trace.game = "mahjong";
    auto put = [&](int i, int j, int k, int set) {
        arr.tiles.push_back({(int16_t)i, (int16_t)j, (int16_t)k, set});
        return (int)arr.tiles.size() - 1;
    };

    std::map<int, int> key_tile, lock_tile;  // edge -> tile index
    for (int v : game_vertices) {
        const GadgetPlan& p = plans.at(v);
        Kind k = g.vertices[v].kind;
        int b = p.set_base, sec = p.section;
        switch (k) {
            case Kind::AND:
                // [key_out, 3, lock_a] and [3, lock_b]
                key_tile[p.outputs[0]] = put(sec, 0, 0, edge_set.at(p.outputs[0]));
                put(sec, 0, 1, b + 2);
                lock_tile[p.inputs[0]] = put(sec, 0, 2, b + 0);
                put(sec, 1, 0, b + 2);
                lock_tile[p.inputs[1]] = put(sec, 1, 1, b + 1);
                break;
            case Kind::OR:
                // row [lock_a, key_out, lock_b]
                lock_tile[p.inputs[0]] = put(sec, 0, 0, b + 0);
                key_tile[p.outputs[0]] = put(sec, 1, 0, edge_set.at(p.outputs[0]));
                lock_tile[p.inputs[1]] = put(sec, 2, 0, b + 1);
                break;
            case Kind::FANOUT:
                // [[3, lock], [key1], [key2], [3]]
                put(sec, 0, 0, b + 2);
                lock_tile[p.inputs[0]] = put(sec, 0, 1, b + 0);
                key_tile[p.outputs[0]] = put(sec, 1, 0, edge_set.at(p.outputs[0]));
                key_tile[p.outputs[1]] = put(sec, 2, 0, edge_set.at(p.outputs[1]));
                put(sec, 3, 0, b + 2);
                break;
            case Kind::CHOICE:
                // [[3]], [[key1,4,3,lock]], [[3,5,5]], [[key2,4]], [[3]]
                put(sec, 0, 0, b + 2);
                key_tile[p.outputs[0]] = put(sec, 1, 0, edge_set.at(p.outputs[0]));
                put(sec, 1, 1, b + 3);
                put(sec, 1, 2, b + 2);
                lock_tile[p.inputs[0]] = put(sec, 1, 3, b + 0);
                put(sec, 2, 0, b + 2);
                put(sec, 2, 1, b + 4);
                put(sec, 2, 2, b + 4);
                key_tile[p.outputs[1]] = put(sec, 3, 0, edge_set.at(p.outputs[1]));
                put(sec, 3, 1, b + 3);
                put(sec, 4, 0, b + 2);
                break;
            default: break;
        }
        TraceVertex tv;
        tv.gadget_kind = kind_name(k);
        tv.index = numbering[v];
        tv.params["section"] = sec;
        tv.params["set_base"] = b;
        trace.vertices[g.vertices[v].id] = tv;
    }

    // FREE-side tiles. Live sources expose their key tile on an isolated
    // cross section; a frozen source's key goes into the victory row interior
    // so the pair clears in the end game but can never fire beforehand.
    // Dangling outputs park their lock tile on an isolated section.
    int iso = 2 * (int)game_vertices.size() + 2;
    int victory_section = iso++;
    std::map<int, std::vector<int>> frozen_inputs;  // consumer vertex -> edges
    bool frozen_target = false;
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        int hv = g.head_vertex(e);
        int tv = g.other_end(e, hv);
        bool head_free = g.vertices[hv].kind == Kind::FREE;
        bool tail_free = g.vertices[tv].kind == Kind::FREE;
        if (head_free && head_free == tail_free) {  // gadget-less target edge
            if (g.vertices[hv].min_inflow == 0)
                key_tile[e] = put(iso++, 0, 0, edge_set.at(e));
            else
                frozen_target = true;
        } else if (head_free) {
            if (g.vertices[hv].min_inflow == 0)
                key_tile[e] = put(iso++, 0, 0, edge_set.at(e));
            else
                frozen_inputs[tv].push_back(e);
        } else if (tail_free && e != target) {
            lock_tile[e] = put(iso++, 0, 0, edge_set.at(e));
        }
    }

    // victory row: [P with T' on top][interior, topological order][P];
    // T' matches the target key tile, so the row opens exactly when the
    // target edge fires. Frozen-source keys live in the interior: their
    // pairs clear during the end game and can never fire before it.
    int prot = next_set++;
    put(victory_section, 0, 0, prot);
    lock_tile[target] = put(victory_section, 0, 1, edge_set.at(target));
    int col = 1;
    if (frozen_target)  // deadlocked on purpose: the target can never fire
        key_tile[target] = put(victory_section, col++, 0, edge_set.at(target));
    for (int v : game_vertices) {
        auto fi = frozen_inputs.find(v);
        if (fi != frozen_inputs.end())
            for (int e : fi->second)
                key_tile[e] = put(victory_section, col++, 0, edge_set.at(e));
        if (g.vertices[v].kind == Kind::CHOICE) {
            int b = plans.at(v).set_base;
            put(victory_section, col++, 0, b + 4);
            put(victory_section, col++, 0, b + 4);
        }
    }
    put(victory_section, col, 0, prot);

    arr.validate();

    for (int e = 0; e < (int)g.edges.size(); ++e) {
        auto& rec = trace.edges[g.edges[e].id];
        rec["set"] = {std::to_string(edge_set.at(e))};
        if (key_tile.count(e)) rec["key"] = {std::to_string(key_tile.at(e))};
        if (lock_tile.count(e)) rec["lock"] = {std::to_string(lock_tile.at(e))};
    }
    trace.parameters["target_edge"] = *g.target;
    trace.parameters["victory_section"] = victory_section;
    trace.parameters["protector_set"] = prot;
    return {arr, trace};
}

// --- serialization -------------------------------------------------------

json arrangement_to_json(const Arrangement& arr) {
    json j = json::array();
    for (const Tile& t : arr.tiles) {
        json jt;
        jt["i"] = t.i;
        jt["j"] = t.j;
        jt["k"] = t.k;
        jt["set"] = t.set;
        j.push_back(jt);
    }
    return j;
}

Arrangement arrangement_from_json(const json& j) {
    Arrangement arr;
    for (const json& jt : j)
        arr.tiles.push_back({jt.at("i").get<int16_t>(), jt.at("j").get<int16_t>(),
                             jt.at("k").get<int16_t>(), jt.at("set").get<int>()});
    arr.validate();
    return arr;
}

json witness_to_json(const std::vector<PairMove>& moves) {
    json j = json::array();
    for (const PairMove& m : moves) {
        json jm;
        jm["a"] = m.a;
        jm["b"] = m.b;
        j.push_back(jm);
    }
    return j;
}

std::string render(const Arrangement& arr) {
    std::string out;
    std::map<int, std::vector<const Tile*>> by_section;
    for (const Tile& t : arr.tiles) by_section[t.i].push_back(&t);
    for (auto& [sec, tiles] : by_section) {
        out += "section " + std::to_string(sec) + ":\n";
        int maxk = 0, maxj = 0;
        for (const Tile* t : tiles) {
            maxk = std::max(maxk, (int)t->k);
            maxj = std::max(maxj, (int)t->j);
        }
        for (int k = maxk; k >= 0; --k) {
            std::string line;
            for (int j = 0; j <= maxj; ++j) {
                std::string cell = "    ";
                for (const Tile* t : tiles)
                    if (t->k == k && t->j == j) {
                        cell = std::to_string(t->set);
                        while (cell.size() < 4) cell = " " + cell;
                    }
                line += cell;
            }
            out += line + "\n";
        }
    }
    return out;
}

}  // namespace ncl::mahjong
