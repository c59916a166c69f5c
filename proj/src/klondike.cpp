#include "ncl/klondike.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <unordered_set>

namespace ncl::klondike {

using json = nlohmann::ordered_json;

namespace {
constexpr char kSuitChar[3] = {'D', 'H', 'S'};
}

std::string card_name(Card c) { return std::string(1, kSuitChar[c.suit]) + std::to_string(c.rank); }

Card card_from_name(const std::string& s) {
    if (s.size() < 2) throw GraphError("bad card name: " + s);
    Card c;
    switch (s[0]) {
        case 'D': c.suit = 0; break;
        case 'H': c.suit = 1; break;
        case 'S': c.suit = 2; break;
        default: throw GraphError("bad card suit in: " + s);
    }
    c.rank = (int16_t)std::stoi(s.substr(1));
    return c;
}

void Instance::validate() const {
    int num_suits = (int)colors.size();
    if (num_suits < 1 || num_suits > 3) throw GraphError("suit count outside [1,3]");
    std::vector<int> seen((size_t)num_suits * (num_ranks + 1), 0);
    size_t total = 0;
    for (const BuildStack& b : build) {
        if (b.face_up < 0 || b.face_up > (int)b.cards.size())
            throw GraphError("face_up outside the stack");
        for (Card c : b.cards) {
            if (c.suit < 0 || c.suit >= num_suits || c.rank < 1 || c.rank > num_ranks)
                throw GraphError("card outside the deck: " + card_name(c));
            seen[(size_t)c.suit * (num_ranks + 1) + c.rank]++;
            ++total;
        }
    }
    for (int s = 0; s < num_suits; ++s) {
        if (suit_top[s] < 0 || suit_top[s] > num_ranks) throw GraphError("bad suit stack");
        for (int r = 1; r <= suit_top[s]; ++r) seen[(size_t)s * (num_ranks + 1) + r]++;
        total += suit_top[s];
    }
    if (total != (size_t)num_suits * num_ranks)
        throw GraphError("deck is not complete");
    for (int s = 0; s < num_suits; ++s)
        for (int r = 1; r <= num_ranks; ++r)
            if (seen[(size_t)s * (num_ranks + 1) + r] != 1)
                throw GraphError("card appears " +
                                 std::to_string(seen[(size_t)s * (num_ranks + 1) + r]) +
                                 " times: " + card_name({(int8_t)s, (int16_t)r}));
}

bool Instance::won() const {
    for (const BuildStack& b : build)
        if (!b.cards.empty()) return false;
    return true;
}

bool suit_stack_accepts(const Instance& inst, int suit, Card c) {
    return c.suit == suit && c.rank == inst.suit_top[suit] + 1;
}

bool block_accepts(const Instance& inst, Card top, Card incoming) {
    return inst.red(top) != inst.red(incoming) && incoming.rank == top.rank - 1;
}

std::vector<Move> legal_moves(const Instance& inst) {
    std::vector<Move> out;
    int ns = (int)inst.build.size();
    for (int i = 0; i < ns; ++i) {
        const BuildStack& b = inst.build[i];
        if (b.face_up > 0) {
            Card top = b.cards.back();
            for (int s = 0; s < inst.num_suits(); ++s)
                if (suit_stack_accepts(inst, s, top)) out.push_back({Move::ToSuit, i, s});
        }
    }
    for (int i = 0; i < ns; ++i)
        if (!inst.build[i].cards.empty() && inst.build[i].face_up == 0)
            out.push_back({Move::TurnUp, i, -1});
    for (int i = 0; i < ns; ++i) {
        const BuildStack& from = inst.build[i];
        if (from.face_up == 0) continue;
        Card bottom = from.cards[from.cards.size() - from.face_up];
        for (int j = 0; j < ns; ++j) {
            if (j == i) continue;
            const BuildStack& to = inst.build[j];
            if (to.face_up == 0) continue;  // empty card blocks accept nothing
            if (block_accepts(inst, to.cards.back(), bottom))
                out.push_back({Move::MoveBlock, i, j});
        }
    }
    return out;
}

void apply(Instance& inst, const Move& m) {
    switch (m.type) {
        case Move::TurnUp: {
            BuildStack& b = inst.build.at(m.from);
            if (b.cards.empty() || b.face_up != 0)
                throw GraphError("illegal turn_up: stack must be nonempty and all face-down");
            b.face_up = 1;
            return;
        }
        case Move::MoveBlock: {
            BuildStack& from = inst.build.at(m.from);
            BuildStack& to = inst.build.at(m.to);
            if (from.face_up == 0) throw GraphError("illegal move_block: nothing face-up");
            Card bottom = from.cards[from.cards.size() - from.face_up];
            if (to.face_up == 0 || !block_accepts(inst, to.cards.back(), bottom))
                throw GraphError("illegal move_block: destination does not accept " +
                                 card_name(bottom));
            to.cards.insert(to.cards.end(), from.cards.end() - from.face_up, from.cards.end());
            to.face_up += from.face_up;
            from.cards.erase(from.cards.end() - from.face_up, from.cards.end());
            from.face_up = 0;
            return;
        }
        case Move::ToSuit: {
            BuildStack& from = inst.build.at(m.from);
            if (from.face_up == 0) throw GraphError("illegal to_suit: nothing face-up");
            Card top = from.cards.back();
            if (!suit_stack_accepts(inst, m.to, top))
                throw GraphError("illegal to_suit: " + card_name(top));
            inst.suit_top[m.to] = top.rank;
            from.cards.pop_back();
            from.face_up -= 1;
            return;
        }
    }
    throw GraphError("bad move");
}

namespace {

struct Key128 {
    uint64_t a = 0, b = 0;
    bool operator==(const Key128&) const = default;
};
struct Key128Hash {
    size_t operator()(const Key128& k) const { return k.a ^ (k.b * 0x9e3779b97f4a7c15ull); }
};

Key128 state_key(const Instance& inst) {
    auto mix = [](uint64_t h, uint64_t x, uint64_t salt) {
        x += salt;
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdull;
        x ^= x >> 29;
        return (h ^ x) * 0xc2b2ae3d27d4eb4full;
    };
    Key128 k{0x1234567890abcdefull, 0xfedcba0987654321ull};
    for (const BuildStack& b : inst.build) {
        k.a = mix(k.a, b.cards.size() * 131 + b.face_up, 0x100);
        k.b = mix(k.b, b.cards.size() * 31 + b.face_up, 0x7700);
        for (Card c : b.cards) {
            uint64_t v = (uint64_t)c.suit * 4096 + c.rank;
            k.a = mix(k.a, v, 0x9a7);
            k.b = mix(k.b, v, 0x51d);
        }
    }
    for (int s : inst.suit_top) {
        k.a = mix(k.a, (uint64_t)s, 0xabc);
        k.b = mix(k.b, (uint64_t)s, 0xdef);
    }
    return k;
}

// a top card may always be sent to its suit stack once nothing can ever need
// to land on it: both opposite-color cards of the previous rank are already
// banked (classic safe autoplay, valid without a talon)
bool safe_to_suit(const Instance& inst, Card c) {
    if (c.rank <= 2) return true;  // nothing of rank 1 ever lands on a build stack
    for (int s = 0; s < inst.num_suits(); ++s)
        if (inst.red({(int8_t)s, 1}) != inst.red(c) && inst.suit_top[s] < c.rank - 1)
            return false;
    return true;
}

struct Solver {
    const SolveLimits& lim;
    std::unordered_set<Key128, Key128Hash> dead;
    std::vector<Move> path;
    uint64_t nodes = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Solver(const SolveLimits& l) : lim(l) {}

    bool dfs(Instance& inst) {
        if (inst.won()) return true;
        ++nodes;
        if (nodes > lim.max_states) throw LimitExceeded("klondike: state limit exceeded");
        if ((nodes & 0x3ff) == 0) {
            double el =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (el > lim.timeout_seconds) throw LimitExceeded("klondike: time limit exceeded");
        }
        Key128 key = state_key(inst);
        if (dead.count(key)) return false;

        std::vector<Move> moves = legal_moves(inst);
        // forced simplifications that preserve winnability: safe suit moves
        // first, then turn-ups
        for (const Move& m : moves) {
            bool forced = false;
            if (m.type == Move::ToSuit)
                forced = safe_to_suit(inst, inst.build[m.from].cards.back());
            else if (m.type == Move::TurnUp)
                forced = true;
            if (forced) {
                Instance next = inst;
                apply(next, m);
                path.push_back(m);
                if (dfs(next)) return true;
                path.pop_back();
                dead.insert(key);
                return false;
            }
        }
        for (const Move& m : moves) {
            Instance next = inst;
            apply(next, m);
            path.push_back(m);
            if (dfs(next)) return true;
            path.pop_back();
        }
        dead.insert(key);
        return false;
    }
};

}  // namespace

Report solve(const Instance& inst, const SolveLimits& lim) {
    Instance work = inst;
    work.validate();
    Solver s(lim);
    Report r;
    r.winnable = s.dfs(work);
    r.witness = s.path;
    r.nodes_explored = s.nodes;
    return r;
}

// --- reduction ----------------------------------------------------------

namespace {

struct GadgetPlan {
    int vertex = -1;                 // graph vertex index
    int base = 0;                    // first rank of the width-4 range
    std::vector<int> inputs, outputs;  // incident edge indices, sorted by id
};

Card lock_card_for(Kind kind, int base, int slot) {
    switch (kind) {
        case Kind::AND: return slot == 0 ? Card{1, (int16_t)base} : Card{2, (int16_t)base};
        case Kind::OR:
            return slot == 0 ? Card{2, (int16_t)(base + 1)} : Card{1, (int16_t)(base + 1)};
        case Kind::FANOUT: return {2, (int16_t)(base + 2)};
        case Kind::CHOICE: return {1, (int16_t)base};
        default: throw GraphError("no lock card for kind");
    }
}

Card key_for_lock(Card lock) {
    // red lock -> spade key, black lock -> heart key, one rank up
    return {lock.suit != 2 ? (int8_t)2 : (int8_t)1, (int16_t)(lock.rank + 1)};
}

}  // namespace

std::pair<Instance, ReductionTrace> reduce(const ConstraintGraph& g) {
    if (!g.target) throw GraphError("klondike reduce: no target edge");
    std::vector<int> numbering = reduction_numbering(g);  // cyclic inputs throw here

    // classify vertices, check canonical orientation
    std::vector<int> game_vertices;
    for (int v = 0; v < (int)g.vertices.size(); ++v) {
        Kind k = g.vertices[v].kind;
        if (k == Kind::FREE) continue;
        if (k == Kind::VARIABLE)
            throw GraphError("klondike reduce: unsupported vertex kind VARIABLE");
        game_vertices.push_back(v);
    }
    std::sort(game_vertices.begin(), game_vertices.end(),
              [&](int a, int b) { return numbering[a] < numbering[b]; });

    std::map<int, GadgetPlan> plans;
    for (size_t i = 0; i < game_vertices.size(); ++i) {
        int v = game_vertices[i];
        GadgetPlan p;
        p.vertex = v;
        // width-4 ranges on stride-5 bases: the rank gap between consecutive
        // gadgets keeps exposed key cards from landing on a neighbor range
        p.base = 5 + 5 * (int)i;
        for (int e : g.incident(v))
            (g.head_vertex(e) == v ? p.outputs : p.inputs).push_back(e);
        auto by_id = [&](int a, int b) { return g.edges[a].id < g.edges[b].id; };
        std::sort(p.inputs.begin(), p.inputs.end(), by_id);
        std::sort(p.outputs.begin(), p.outputs.end(), by_id);
        Kind k = g.vertices[v].kind;
        size_t want_in = (k == Kind::FANOUT || k == Kind::CHOICE) ? 1 : 2;
        size_t want_out = (k == Kind::FANOUT || k == Kind::CHOICE) ? 2 : 1;
        if (p.inputs.size() != want_in || p.outputs.size() != want_out)
            throw GraphError("klondike reduce: vertex " + g.vertices[v].id +
                             " is not in the canonical initial orientation");
        plans[v] = p;
    }

    int target = g.target_index();
    {
        int th = g.head_vertex(target);
        int tt = g.other_end(target, th);
        if (g.vertices[tt].kind != Kind::FREE)
            throw GraphError("klondike reduce: target edge tail must be a FREE terminal");
        if (g.vertices[th].kind == Kind::FREE && !game_vertices.empty())
            throw GraphError("klondike reduce: target edge must leave a gadget");
    }

    // dangling outputs (edges whose tail endpoint is FREE), target last
    std::vector<int> dangling;
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        if (e == target) continue;
        int hv = g.head_vertex(e);
        int tv = g.other_end(e, hv);
        if (g.vertices[tv].kind == Kind::FREE && g.vertices[hv].kind != Kind::FREE)
            dangling.push_back(e);
    }
    int tail_base = 5 + 5 * (int)game_vertices.size();
    std::map<int, Card> edge_lock;  // per edge: the lock card
    for (size_t i = 0; i < dangling.size(); ++i)
        edge_lock[dangling[i]] = {1, (int16_t)(tail_base + 2 * (int)i)};
    Card target_lock = {1, (int16_t)(tail_base + 2 * (int)dangling.size())};
    edge_lock[target] = target_lock;
    int num_ranks = target_lock.rank + 2;  // key fits, kings stay in the big stack

    // locks hosted inside consumer gadgets
    for (auto& [v, p] : plans) {
        Kind k = g.vertices[v].kind;
        for (size_t slot = 0; slot < p.inputs.size(); ++slot)
            edge_lock[p.inputs[slot]] = lock_card_for(k, p.base, (int)slot);
    }
    // every edge between two game vertices is some consumer's input, the
    // same edge seen from the producer side is an output; nothing else exists
    for (int e = 0; e < (int)g.edges.size(); ++e)
        if (!edge_lock.count(e)) {
            int hv = g.head_vertex(e);
            int tv = g.other_end(e, hv);
            if (g.vertices[hv].kind == Kind::FREE && g.vertices[tv].kind == Kind::FREE)
                throw GraphError("klondike reduce: edge " + g.edges[e].id +
                                 " connects two FREE vertices");
            throw GraphError("klondike reduce: edge " + g.edges[e].id + " has no role");
        }

    Instance inst;
    inst.colors = {0, 0, 1};
    inst.num_ranks = num_ranks;
    inst.suit_top = {0, 0, 0};
    ReductionTrace trace;
    trace.game = "klondike";

    std::set<std::pair<int, int>> used;  // (suit, rank) already placed
    auto place = [&](std::vector<Card> cards) {
        for (Card c : cards)
            if (!used.insert({c.suit, c.rank}).second)
                throw GraphError("klondike reduce: card used twice: " + card_name(c));
        BuildStack b;
        b.cards = std::move(cards);
        inst.build.push_back(b);
        return (int)inst.build.size() - 1;
    };

    auto key_of_edge = [&](int e) { return key_for_lock(edge_lock.at(e)); };

    for (int v : game_vertices) {
        const GadgetPlan& p = plans.at(v);
        Kind k = g.vertices[v].kind;
        int b = p.base;
        std::vector<int> stacks;
        switch (k) {
            case Kind::AND:
                stacks.push_back(place({key_of_edge(p.outputs[0]),
                                        {2, (int16_t)b},      // second input's lock
                                        {1, (int16_t)b}}));   // first input's lock
                break;
            case Kind::OR:
                stacks.push_back(place({key_of_edge(p.outputs[0]),
                                        {0, (int16_t)b},
                                        {2, (int16_t)(b + 1)}}));
                stacks.push_back(place({{0, (int16_t)(b + 2)},
                                        {2, (int16_t)b},
                                        {1, (int16_t)(b + 1)}}));
                break;
            case Kind::FANOUT:
                stacks.push_back(place({key_of_edge(p.outputs[0]), {2, (int16_t)(b + 1)}}));
                stacks.push_back(place({key_of_edge(p.outputs[1]), {2, (int16_t)b}}));
                stacks.push_back(place({{1, (int16_t)(b + 2)},
                                        {1, (int16_t)(b + 1)},
                                        {2, (int16_t)(b + 2)}}));
                break;
            case Kind::CHOICE:
                stacks.push_back(place({{2, (int16_t)(b + 2)}, {1, (int16_t)b}}));
                stacks.push_back(place({key_of_edge(p.outputs[0]), {0, (int16_t)(b + 1)}}));
                stacks.push_back(place({key_of_edge(p.outputs[1]), {1, (int16_t)(b + 1)}}));
                break;
            default: break;
        }
        TraceVertex tv;
        tv.gadget_kind = kind_name(k);
        tv.index = numbering[v];
        tv.params["rank_base"] = b;
        tv.params["stacks"] = stacks;
        trace.vertices[g.vertices[v].id] = tv;
    }

    // FREE terminals carry exactly one edge; a live source (min 0) exposes
    // its key on a singleton stack, a frozen one leaves the key buried in
    // the big stack so the input can never fire before the end play
    for (int v = 0; v < (int)g.vertices.size(); ++v) {
        if (g.vertices[v].kind != Kind::FREE) continue;
        if (g.incident(v).size() != 1)
            throw GraphError("klondike reduce: FREE vertex " + g.vertices[v].id +
                             " must have exactly one incident edge");
    }
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        int hv = g.head_vertex(e);
        if (g.vertices[hv].kind != Kind::FREE) continue;
        int tv = g.other_end(e, hv);
        if (g.vertices[tv].kind == Kind::FREE && e != target) continue;
        // live sources expose the key; frozen ones leave it in the big stack
        // (for a gadget-less target edge this decides the game by itself)
        if (g.vertices[hv].min_inflow == 0) place({key_of_edge(e)});
    }
    // dangling non-target outputs: lock on its own stack
    for (int e : dangling) place({edge_lock.at(e)});

    // the big stack: every unused card, kings at the bottom, aces on top,
    // diamond-heart-spade within a rank, protected by the target lock
    if (!used.insert({target_lock.suit, target_lock.rank}).second)
        throw GraphError("klondike reduce: target lock collides");
    std::vector<Card> big;
    for (int r = num_ranks; r >= 1; --r)
        for (int s = 2; s >= 0; --s)
            if (!used.count({s, r})) big.push_back({(int8_t)s, (int16_t)r});
    big.push_back(target_lock);
    used.erase({target_lock.suit, target_lock.rank});
    int big_index = place(big);

    inst.validate();

    for (int e = 0; e < (int)g.edges.size(); ++e) {
        trace.edges[g.edges[e].id]["lock"] = {card_name(edge_lock.at(e))};
        trace.edges[g.edges[e].id]["key"] = {card_name(key_of_edge(e))};
    }
    trace.parameters["target_edge"] = *g.target;
    trace.parameters["num_suits"] = 3;
    trace.parameters["num_ranks"] = num_ranks;
    trace.parameters["big_stack"] = big_index;
    trace.parameters["tail_base"] = tail_base;
    trace.parameters["target_lock"] = card_name(target_lock);
    return {inst, trace};
}

// --- serialization -------------------------------------------------------

json instance_to_json(const Instance& inst) {
    json j;
    j["suits"] = json::array();
    j["colors"] = json::array();
    for (int s = 0; s < inst.num_suits(); ++s) {
        j["suits"].push_back(std::string(1, kSuitChar[s]));
        j["colors"].push_back(inst.colors[s] == 0 ? "red" : "black");
    }
    j["ranks"] = inst.num_ranks;
    j["build_stacks"] = json::array();
    for (const BuildStack& b : inst.build) {
        json jb;
        jb["cards"] = json::array();
        for (Card c : b.cards) jb["cards"].push_back(card_name(c));
        jb["face_up"] = b.face_up;
        j["build_stacks"].push_back(jb);
    }
    j["suit_stacks"] = json::array();
    for (int s = 0; s < inst.num_suits(); ++s) {
        json js = json::array();
        for (int r = 1; r <= inst.suit_top[s]; ++r)
            js.push_back(card_name({(int8_t)s, (int16_t)r}));
        j["suit_stacks"].push_back(js);
    }
    return j;
}

Instance instance_from_json(const json& j) {
    Instance inst;
    inst.colors.clear();
    for (const json& jc : j.at("colors"))
        inst.colors.push_back(jc.get<std::string>() == "red" ? 0 : 1);
    inst.num_ranks = j.at("ranks").get<int>();
    for (const json& jb : j.at("build_stacks")) {
        BuildStack b;
        for (const json& jc : jb.at("cards")) b.cards.push_back(card_from_name(jc));
        b.face_up = jb.at("face_up").get<int>();
        inst.build.push_back(b);
    }
    inst.suit_top.assign(inst.num_suits(), 0);
    for (int s = 0; s < inst.num_suits() && s < (int)j.at("suit_stacks").size(); ++s)
        inst.suit_top[s] = (int16_t)j.at("suit_stacks")[s].size();
    inst.validate();
    return inst;
}

json witness_to_json(const Instance& start, const std::vector<Move>& moves) {
    json out = json::array();
    Instance cur = start;
    for (const Move& m : moves) {
        json jm;
        switch (m.type) {
            case Move::TurnUp:
                jm["type"] = "turn_up";
                jm["stack"] = m.from;
                break;
            case Move::MoveBlock: {
                const BuildStack& from = cur.build[m.from];
                jm["type"] = "move_block";
                jm["from"] = m.from;
                jm["to"] = m.to;
                jm["count"] = from.face_up;
                jm["bottom"] = card_name(from.cards[from.cards.size() - from.face_up]);
                jm["onto"] = card_name(cur.build[m.to].cards.back());
                break;
            }
            case Move::ToSuit:
                jm["type"] = "to_suit";
                jm["stack"] = m.from;
                jm["suit"] = std::string(1, kSuitChar[m.to]);
                jm["card"] = card_name(cur.build[m.from].cards.back());
                break;
        }
        apply(cur, m);
        out.push_back(jm);
    }
    return out;
}

std::string render(const Instance& inst) {
    std::string out;
    out += "suits:";
    for (int s = 0; s < inst.num_suits(); ++s) {
        out += ' ';
        out += kSuitChar[s];
        out += '=' + std::to_string(inst.suit_top[s]);
    }
    out += '\n';
    for (size_t i = 0; i < inst.build.size(); ++i) {
        const BuildStack& b = inst.build[i];
        out += "s" + std::to_string(i) + ":";
        int down = (int)b.cards.size() - b.face_up;
        for (int k = 0; k < (int)b.cards.size(); ++k) {
            out += ' ';
            if (k < down) out += '(' + card_name(b.cards[k]) + ')';
            else out += card_name(b.cards[k]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace ncl::klondike
