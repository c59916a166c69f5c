#include "ncl/nonogram.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace ncl::nonogram {

void Puzzle::validate() const {
    if ((int)row_descs.size() != rows || (int)col_descs.size() != cols)
        throw GraphError("nonogram: description counts do not match the grid");
    auto check = [&](const LineDesc& d, int len) {
        int sum = 0;
        for (int r : d.runs) {
            if (r <= 0) throw GraphError("nonogram: nonpositive run");
            sum += r;
        }
        if (sum + std::max(0, (int)d.runs.size() - 1) > len)
            throw GraphError("nonogram: description does not fit its line");
        return sum;
    };
    long rsum = 0, csum = 0;
    for (const LineDesc& d : row_descs) rsum += check(d, cols);
    for (const LineDesc& d : col_descs) csum += check(d, rows);
    if (rsum != csum)
        throw GraphError("nonogram: row/column black counts disagree (rows " +
                         std::to_string(rsum) + " vs cols " + std::to_string(csum) + ")");
}

bool line_adheres(const std::vector<uint8_t>& cells, const LineDesc& desc) {
    std::vector<int> runs;
    int cur = 0;
    for (uint8_t c : cells) {
        if (c == 1) ++cur;
        else {
            if (c != 0) throw GraphError("nonogram: unassigned cell");
            if (cur) runs.push_back(cur);
            cur = 0;
        }
    }
    if (cur) runs.push_back(cur);
    return runs == desc.runs;
}

// --- line propagation over the run NFA ------------------------------------

namespace {

// states: W0 B11..B1d1 W1 B21.. ... Wk; white self-loops on Wj, runs advance
// on black, Wk accepts
struct LineNfa {
    int nstates;
    std::vector<int> black_to;  // per state: next state on black or -1
    std::vector<int> white_to;  // per state: next state on white or -1 (Wj self)

    explicit LineNfa(const LineDesc& d) {
        nstates = 1;
        for (int r : d.runs) nstates += r + 1;
        black_to.assign(nstates, -1);
        white_to.assign(nstates, -1);
        int s = 0;
        white_to[0] = 0;
        for (size_t j = 0; j < d.runs.size(); ++j) {
            // s = W_j; black enters the run
            black_to[s] = s + 1;
            for (int i = 1; i < d.runs[j]; ++i) black_to[s + i] = s + i + 1;
            int w = s + d.runs[j] + 1 - 1 + 1;  // state after the run
            white_to[s + d.runs[j]] = w;
            s = w;
            white_to[s] = s;
        }
    }
    int accept() const { return nstates - 1; }
};

struct Bits {
    std::vector<uint64_t> w;
    explicit Bits(int n) : w((n + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool any() const {
        for (uint64_t x : w)
            if (x) return true;
        return false;
    }
};

// cells: 0 white, 1 black, 2 unknown. Returns per-cell possibility mask
// (bit0 = can be white, bit1 = can be black), empty vector on contradiction.
std::vector<uint8_t> line_feasible(const LineNfa& nfa, const std::vector<uint8_t>& cells) {
    int L = (int)cells.size(), N = nfa.nstates;
    std::vector<Bits> fwd(L + 1, Bits(N)), bwd(L + 1, Bits(N));
    fwd[0].set(0);
    for (int i = 0; i < L; ++i) {
        for (int s = 0; s < N; ++s) {
            if (!fwd[i].get(s)) continue;
            if (cells[i] != 1 && nfa.white_to[s] >= 0) fwd[i + 1].set(nfa.white_to[s]);
            if (cells[i] != 0 && nfa.black_to[s] >= 0) fwd[i + 1].set(nfa.black_to[s]);
        }
    }
    bwd[L].set(nfa.accept());
    if (N >= 2 && nfa.black_to[N - 2] == -1) {
        // the last run may end exactly at the line end
    }
    // accepting states: Wk, and the final black state flows into Wk on white
    // only; accept directly when the run closes at the end
    {
        // state N-1 is Wk; the state before it (if any run exists) is the
        // last black of the last run, which is also accepting at line end
        if (N > 1) bwd[L].set(N - 2);
    }
    for (int i = L - 1; i >= 0; --i) {
        for (int s = 0; s < N; ++s) {
            bool ok = false;
            if (cells[i] != 1 && nfa.white_to[s] >= 0 && bwd[i + 1].get(nfa.white_to[s])) ok = true;
            if (!ok && cells[i] != 0 && nfa.black_to[s] >= 0 && bwd[i + 1].get(nfa.black_to[s]))
                ok = true;
            if (ok) bwd[i].set(s);
        }
    }
    if (!fwd[L].get(nfa.accept()) && !(N > 1 && fwd[L].get(N - 2))) return {};
    std::vector<uint8_t> poss(L, 0);
    for (int i = 0; i < L; ++i) {
        for (int s = 0; s < N; ++s) {
            if (!fwd[i].get(s)) continue;
            if (cells[i] != 1 && nfa.white_to[s] >= 0 && bwd[i + 1].get(nfa.white_to[s]))
                poss[i] |= 1;
            if (cells[i] != 0 && nfa.black_to[s] >= 0 && bwd[i + 1].get(nfa.black_to[s]))
                poss[i] |= 2;
        }
        if (poss[i] == 0) return {};
    }
    return poss;
}

struct NonogramSolver {
    const Puzzle& p;
    int max_solutions;
    const SolveLimits& lim;
    std::vector<LineNfa> row_nfa, col_nfa;
    std::vector<Grid> solutions;
    uint64_t nodes = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    NonogramSolver(const Puzzle& puz, int maxs, const SolveLimits& l)
        : p(puz), max_solutions(maxs), lim(l) {
        for (const LineDesc& d : p.row_descs) row_nfa.emplace_back(d);
        for (const LineDesc& d : p.col_descs) col_nfa.emplace_back(d);
    }

    // propagate to fixpoint; false on contradiction
    bool propagate(std::vector<uint8_t>& cells) {
        std::deque<int> dirty;
        std::vector<char> in_q(p.rows + p.cols, 1);
        for (int i = 0; i < p.rows + p.cols; ++i) dirty.push_back(i);
        while (!dirty.empty()) {
            int line = dirty.front();
            dirty.pop_front();
            in_q[line] = 0;
            bool is_row = line < p.rows;
            int len = is_row ? p.cols : p.rows;
            std::vector<uint8_t> lc(len);
            for (int i = 0; i < len; ++i)
                lc[i] = is_row ? cells[line * p.cols + i] : cells[i * p.cols + (line - p.rows)];
            auto poss = line_feasible(is_row ? row_nfa[line] : col_nfa[line - p.rows], lc);
            if (poss.empty()) return false;
            for (int i = 0; i < len; ++i) {
                if (lc[i] != 2) continue;
                uint8_t forced = poss[i] == 1 ? 0 : poss[i] == 2 ? 1 : 2;
                if (forced == 2) continue;
                int r = is_row ? line : i;
                int c = is_row ? i : line - p.rows;
                cells[r * p.cols + c] = forced;
                int other = is_row ? p.rows + c : r;
                if (!in_q[other]) {
                    in_q[other] = 1;
                    dirty.push_back(other);
                }
            }
        }
        return true;
    }

    void search(std::vector<uint8_t> cells) {
        if ((int)solutions.size() >= max_solutions) return;
        ++nodes;
        if (nodes > lim.max_states) throw LimitExceeded("nonogram: state limit exceeded");
        if ((nodes & 0xff) == 0) {
            double el =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (el > lim.timeout_seconds) throw LimitExceeded("nonogram: time limit exceeded");
        }
        if (!propagate(cells)) return;
        int branch = -1;
        for (int i = 0; i < p.rows * p.cols; ++i)
            if (cells[i] == 2) {
                branch = i;
                break;
            }
        if (branch < 0) {
            solutions.emplace_back(cells.begin(), cells.end());
            return;
        }
        for (uint8_t v : {uint8_t(0), uint8_t(1)}) {  // white before black
            std::vector<uint8_t> next = cells;
            next[branch] = v;
            search(std::move(next));
            if ((int)solutions.size() >= max_solutions) return;
        }
    }
};

}  // namespace

SolveResult solve(const Puzzle& p, int max_solutions, const SolveLimits& lim) {
    p.validate();
    NonogramSolver s(p, max_solutions, lim);
    s.search(std::vector<uint8_t>((size_t)p.rows * p.cols, 2));
    SolveResult r;
    r.solutions = std::move(s.solutions);
    r.nodes_explored = s.nodes;
    return r;
}

// --- text format -----------------------------------------------------------

Puzzle puzzle_from_text(const std::string& text) {
    std::istringstream in(text);
    Puzzle p;
    std::string line;
    auto next_line = [&]() {
        while (std::getline(in, line)) {
            if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        }
        return false;
    };
    if (!next_line()) throw GraphError("nonogram: empty input");
    {
        std::istringstream hs(line);
        if (!(hs >> p.rows >> p.cols)) throw GraphError("nonogram: bad header line");
    }
    auto parse_desc = [&]() {
        if (!next_line()) throw GraphError("nonogram: missing description line");
        LineDesc d;
        std::istringstream ls(line);
        int x;
        while (ls >> x)
            if (x > 0) d.runs.push_back(x);
        return d;
    };
    for (int i = 0; i < p.rows; ++i) p.row_descs.push_back(parse_desc());
    for (int i = 0; i < p.cols; ++i) p.col_descs.push_back(parse_desc());
    p.validate();
    return p;
}

std::string puzzle_to_text(const Puzzle& p) {
    std::ostringstream out;
    out << p.rows << ' ' << p.cols << '\n';
    auto emit = [&](const LineDesc& d) {
        if (d.runs.empty()) {
            out << "0\n";
            return;
        }
        for (size_t i = 0; i < d.runs.size(); ++i) out << (i ? " " : "") << d.runs[i];
        out << '\n';
    };
    for (const LineDesc& d : p.row_descs) emit(d);
    for (const LineDesc& d : p.col_descs) emit(d);
    return out.str();
}

std::string grid_to_text(const Puzzle& p, const Grid& g) {
    std::string out;
    for (int r = 0; r < p.rows; ++r) {
        for (int c = 0; c < p.cols; ++c) out += g[r * p.cols + c] ? '#' : '.';
        out += '\n';
    }
    return out;
}

// --- standalone gadget transcriptions ---------------------------------------

namespace {

LineDesc runs(std::initializer_list<int> rs) {
    LineDesc d;
    d.runs = rs;
    return d;
}

}  // namespace

StandaloneGadget standalone_gadget(GadgetKind kind) {
    StandaloneGadget g;
    Puzzle& p = g.puzzle;
    p.rows = p.cols = 11;
    switch (kind) {
        case GadgetKind::And:
            p.row_descs = {runs({1, 1}), runs({11}), runs({1, 1}), runs({1, 3, 1}),
                           runs({3, 1, 3}), runs({3, 2, 3}), runs({1, 2, 1}),
                           runs({1, 1, 1, 1}), runs({1, 2, 1}), runs({11}), runs({1, 1, 1})};
            p.col_descs = {runs({1, 1, 1}), runs({11}), runs({1, 2, 1}), runs({1, 1, 1}),
                           runs({1, 1, 3}), runs({1, 3, 3}), runs({1, 1, 2, 1}),
                           runs({1, 1, 2, 1}), runs({1, 2, 1}), runs({11}), runs({1, 1, 1})};
            g.a = {5, 0};
            g.b = {10, 5};
            g.c = {5, 10};
            break;
        case GadgetKind::Or:
            p.row_descs = {runs({1, 1}), runs({11}), runs({1, 1}), runs({1, 2, 1}),
                           runs({3, 1, 3}), runs({3, 1, 3}), runs({1, 1, 1}),
                           runs({1, 1, 1, 1}), runs({1, 2, 1}), runs({11}), runs({1, 1, 1})};
            p.col_descs = {runs({1, 1, 1}), runs({11}), runs({1, 2, 1}), runs({1, 1, 1, 1}),
                           runs({1, 1, 3}), runs({1, 3, 3}), runs({1, 1}), runs({1, 1, 1, 1}),
                           runs({1, 2, 1}), runs({11}), runs({1, 1, 1})};
            g.a = {5, 0};
            g.b = {10, 5};
            g.c = {5, 10};
            break;
        case GadgetKind::WireTurn:
            p.row_descs = {runs({1, 1}), runs({11}), runs({1, 1}), runs({1, 1}),
                           runs({3, 1, 1}), runs({3, 1, 1}), runs({1, 1, 1}), runs({1, 2, 1}),
                           runs({1, 2, 1}), runs({11}), runs({1, 1, 1})};
            p.col_descs = {runs({1, 1, 1}), runs({11}), runs({1, 2, 1}), runs({1, 1, 1}),
                           runs({1, 1, 4}), runs({1, 1, 4}), runs({1, 1}), runs({1, 1}),
                           runs({1, 1}), runs({11}), runs({1, 1})};
            g.a = {5, 0};
            g.b = {10, 5};
            break;
        case GadgetKind::WireStraight:
            p.row_descs = {runs({1, 1}), runs({11}), runs({1, 1}), runs({1, 1}),
                           runs({3, 2, 3}), runs({3, 2, 3}), runs({1, 1}), runs({1, 1}),
                           runs({1, 1}), runs({11}), runs({1, 1})};
            p.col_descs = {runs({1, 1, 1}), runs({11}), runs({1, 2, 1}), runs({1, 1, 1}),
                           runs({1, 1, 1}), runs({1, 2, 1}), runs({1, 1, 1}), runs({1, 1, 1}),
                           runs({1, 2, 1}), runs({11}), runs({1, 1, 1})};
            g.a = {5, 0};
            g.c = {5, 10};
            break;
    }
    p.validate();
    return g;
}

// --- assembly tiles ---------------------------------------------------------

namespace {

struct Side {
    bool port = false;
    char role = 0;        // 'a' / 'b' / 'c' for gadget ports
    int anchor_mid = 0;   // always-black cells on the middle line next to the side
    int anchor_comp = 0;  // ditto on the companion line
    int comp = 3;         // companion line index (3 or 5)
};

struct Tile {
    char kind = '.';  // A, O, T (turn), S (straight), '.' template
    std::array<std::vector<int>, 8> row_mid{}, col_mid{};  // 1..7 used
    Side left, right, top, bottom;
};

Tile base_tile(char kind) {
    Tile t;
    t.kind = kind;
    auto ported = [](char role, int a_mid = 1, int a_comp = 1) {
        Side s;
        s.port = true;
        s.role = role;
        s.anchor_mid = a_mid;
        s.anchor_comp = a_comp;
        return s;
    };
    auto anchored = []() {
        Side s;
        s.anchor_mid = 1;
        s.anchor_comp = 1;
        return s;
    };
    switch (kind) {
        case 'A':
            t.row_mid = {{{}, {}, {3}, {1}, {2}, {2}, {1, 1}, {2}}};
            t.col_mid = {{{}, {2}, {1}, {1}, {3}, {1, 2}, {1, 2}, {2}}};
            t.left = ported('a');
            t.right = ported('c');
            t.bottom = ported('b');
            break;
        case 'O':
            t.row_mid = {{{}, {}, {2}, {1}, {1}, {1}, {1, 1}, {2}}};
            t.col_mid = {{{}, {2}, {1, 1}, {1}, {3}, {}, {1, 1}, {2}}};
            t.left = ported('a');
            t.right = ported('c');
            t.bottom = ported('b');
            break;
        case 'T':
            t.row_mid = {{{}, {}, {}, {1}, {1}, {1}, {2}, {2}}};
            t.col_mid = {{{}, {2}, {1}, {1}, {1}, {}, {}, {}}};
            t.left = ported('a');
            t.bottom = ported('b', 2, 2);
            break;
        case 'S':
            t.row_mid = {{{}, {}, {}, {2}, {2}, {}, {}, {}}};
            t.col_mid = {{{}, {2}, {1}, {1}, {2}, {1}, {1}, {2}}};
            t.left = ported('a');
            t.right = ported('c');
            break;
        default:
            t.row_mid = {{{}, {}, {}, {}, {}, {}, {}, {2}}};
            t.col_mid = {{{}, {2}, {}, {}, {}, {}, {}, {2}}};
            t.left = anchored();
            t.right = anchored();
            t.bottom = anchored();
            break;
    }
    return t;
}

Tile transpose(const Tile& t) {
    Tile r = t;
    for (int i = 1; i <= 7; ++i) {
        r.row_mid[i] = t.col_mid[i];
        r.col_mid[i] = t.row_mid[i];
    }
    r.left = t.top;
    r.top = t.left;
    r.right = t.bottom;
    r.bottom = t.right;
    return r;
}

Tile flip_h(const Tile& t) {  // mirror columns
    Tile r = t;
    for (int i = 1; i <= 7; ++i) {
        r.row_mid[i] = t.row_mid[i];
        std::reverse(r.row_mid[i].begin(), r.row_mid[i].end());
    }
    for (int i = 1; i <= 7; ++i) r.col_mid[i] = t.col_mid[8 - i];
    r.left = t.right;
    r.right = t.left;
    r.top = t.top;
    r.top.comp = 8 - r.top.comp;
    r.bottom = t.bottom;
    r.bottom.comp = 8 - r.bottom.comp;
    return r;
}

Tile flip_v(const Tile& t) {  // mirror rows
    Tile r = t;
    for (int i = 1; i <= 7; ++i) {
        r.col_mid[i] = t.col_mid[i];
        std::reverse(r.col_mid[i].begin(), r.col_mid[i].end());
    }
    for (int i = 1; i <= 7; ++i) r.row_mid[i] = t.row_mid[8 - i];
    r.top = t.bottom;
    r.bottom = t.top;
    r.left = t.left;
    r.left.comp = 8 - r.left.comp;
    r.right = t.right;
    r.right.comp = 8 - r.right.comp;
    return r;
}

// all 8 dihedral orientations, deterministically ordered
std::vector<Tile> orientations(char kind) {
    std::vector<Tile> out;
    Tile t = base_tile(kind);
    for (int m = 0; m < 2; ++m) {
        Tile cur = m ? flip_h(t) : t;
        for (int rot = 0; rot < 4; ++rot) {
            out.push_back(cur);
            cur = flip_h(transpose(cur));  // rotate 90 degrees clockwise
        }
    }
    return out;
}

enum Dir { UP = 0, LEFT = 1, RIGHT = 2, DOWN = 3 };
constexpr int kDr[4] = {-1, 0, 0, 1};
constexpr int kDc[4] = {0, -1, 1, 0};

const Side& side_of(const Tile& t, int dir) {
    switch (dir) {
        case UP: return t.top;
        case LEFT: return t.left;
        case RIGHT: return t.right;
        default: return t.bottom;
    }
}

}  // namespace

// --- embedder ---------------------------------------------------------------

namespace {

struct Embedding {
    int S = 0;                                   // slot grid side
    std::vector<std::pair<int, int>> vertex_at;  // per graph vertex
    // per edge: path of wire slots from u to v (may be empty), plus the
    // side used at u and at v
    struct EdgeRoute {
        std::vector<std::pair<int, int>> wires;
        int u_dir = -1, v_dir = -1;  // direction leaving u / entering v's slot side
    };
    std::vector<EdgeRoute> routes;
};

struct Embedder {
    const ConstraintGraph& g;
    int S;
    std::vector<std::vector<int>> slot;  // -1 free, -2 wire, else vertex index
    std::vector<std::array<int, 4>> vertex_side_edge;  // per vertex: edge per dir or -1
    Embedding emb;
    long attempts = 0;

    explicit Embedder(const ConstraintGraph& gr, int side) : g(gr), S(side) {
        slot.assign(S, std::vector<int>(S, -1));
        vertex_side_edge.assign(g.vertices.size(), {-1, -1, -1, -1});
        emb.S = S;
        emb.vertex_at.assign(g.vertices.size(), {-1, -1});
        emb.routes.resize(g.edges.size());
    }

    bool place(size_t vi, const std::vector<int>& order) {
        if (++attempts > 100000) return false;
        if (vi == order.size()) return route_all();
        int v = order[vi];
        // rank slots so neighbors sit close but leave room for wires, and
        // keep degree-3 vertices away from corners (not enough free sides)
        std::vector<std::tuple<int, int, int>> cand;
        int deg = (int)g.incident(v).size();
        for (int r = 0; r < S; ++r)
            for (int c = 0; c < S; ++c) {
                if (slot[r][c] != -1) continue;
                int score = 0;
                for (int e : g.incident(v)) {
                    int w = g.other_end(e, v);
                    if (emb.vertex_at[w].first >= 0) {
                        int d = std::abs(emb.vertex_at[w].first - r) +
                                std::abs(emb.vertex_at[w].second - c);
                        score += std::abs(d - 2);
                    }
                }
                bool rb = r == 0 || r == S - 1, cb = c == 0 || c == S - 1;
                if (deg >= 3 && rb && cb) score += 100;
                else if (deg >= 3 && (rb || cb)) score += 2;
                cand.emplace_back(score, r, c);
            }
        std::sort(cand.begin(), cand.end());
        for (auto& [score, r, c] : cand) {
            slot[r][c] = v;
            emb.vertex_at[v] = {r, c};
            if (place(vi + 1, order)) return true;
            slot[r][c] = -1;
            emb.vertex_at[v] = {-1, -1};
        }
        return false;
    }

    // The AND tile fixes its blue port between... precisely: its two red
    // ports sit on cyclically adjacent sides, so the blue edge may never end
    // up opposite the vertex's unused side. Checked once a vertex is full.
    bool vertex_sides_ok(int v) {
        if (g.vertices[v].kind != Kind::AND) return true;
        int assigned = 0, blue_dir = -1, free_dir = -1;
        for (int d = 0; d < 4; ++d) {
            int e = vertex_side_edge[v][d];
            if (e >= 0) {
                ++assigned;
                if (g.edges[e].weight == 2) blue_dir = d;
            } else {
                free_dir = d;
            }
        }
        if (assigned < 3) return true;  // defer until complete
        return blue_dir >= 0 && free_dir >= 0 && blue_dir != 3 - free_dir;
    }

    bool route_all() { return route_from(0); }

    bool route_from(size_t ei) {
        if (++attempts > 300000) return false;
        std::vector<int> edges(g.edges.size());
        for (size_t i = 0; i < edges.size(); ++i) edges[i] = (int)i;
        std::sort(edges.begin(), edges.end(),
                  [&](int a, int b) { return g.edges[a].id < g.edges[b].id; });
        if (ei == edges.size()) return true;
        int e = edges[ei];
        int u = g.tail_of(e), v = g.other_end(e, u);
        for (int du = 0; du < 4; ++du) {
            if (vertex_side_edge[u][du] >= 0) continue;
            for (int dv = 0; dv < 4; ++dv) {
                if (vertex_side_edge[v][dv] >= 0) continue;
                vertex_side_edge[u][du] = e;
                vertex_side_edge[v][dv] = e;
                bool ok = vertex_sides_ok(u) && vertex_sides_ok(v);
                std::vector<std::pair<int, int>> path;
                if (ok) ok = route_edge(e, du, dv, path);
                if (ok) {
                    for (auto& [wr, wc] : path) slot[wr][wc] = -2 - e;
                    emb.routes[e] = {path, du, dv};
                    if (route_from(ei + 1)) return true;
                    for (auto& [wr, wc] : path) slot[wr][wc] = -1;
                }
                vertex_side_edge[u][du] = -1;
                vertex_side_edge[v][dv] = -1;
            }
        }
        return false;
    }

    // shortest wire path leaving u through side du and entering v through dv
    bool route_edge(int e, int du, int dv, std::vector<std::pair<int, int>>& path) {
        (void)e;
        int u = g.tail_of(e), v = g.other_end(e, u);
        auto [ur, uc] = emb.vertex_at[u];
        auto [vr, vc] = emb.vertex_at[v];
        int sr = ur + kDr[du], sc = uc + kDc[du];
        int gr = vr + kDr[dv], gc = vc + kDc[dv];
        if (sr == vr && sc == vc) return du == 3 - dv;  // direct adjacency
        if (sr < 0 || sr >= S || sc < 0 || sc >= S || slot[sr][sc] != -1) return false;
        if (gr < 0 || gr >= S || gc < 0 || gc >= S) return false;
        std::vector<std::array<int, 2>> prev(S * S, {-1, -1});
        std::vector<char> seen(S * S, 0);
        std::deque<std::pair<int, int>> q;
        seen[sr * S + sc] = 1;
        q.push_back({sr, sc});
        while (!q.empty()) {
            auto [r, c] = q.front();
            q.pop_front();
            if (r == gr && c == gc) {
                path.clear();
                int pr = r, pc = c;
                while (!(pr == sr && pc == sc)) {
                    path.emplace_back(pr, pc);
                    auto& pp = prev[pr * S + pc];
                    pr = pp[0];
                    pc = pp[1];
                }
                path.emplace_back(sr, sc);
                std::reverse(path.begin(), path.end());
                return true;
            }
            for (int d = 0; d < 4; ++d) {
                int rr = r + kDr[d], cc = c + kDc[d];
                if (rr < 0 || rr >= S || cc < 0 || cc >= S) continue;
                if (seen[rr * S + cc]) continue;
                bool goal = rr == gr && cc == gc;
                if (slot[rr][cc] != -1 && !goal) continue;
                if (goal && slot[gr][gc] != -1) continue;
                seen[rr * S + cc] = 1;
                prev[rr * S + cc] = {r, c};
                q.push_back({rr, cc});
            }
        }
        return false;
    }
};

}  // namespace

// --- reduction ---------------------------------------------------------------

namespace {

struct PlacedTile {
    Tile tile;
    int vertex = -1;  // graph vertex for gadget tiles
    int edge = -1;    // graph edge for wire tiles
};

// all orientations whose ported sides are exactly `dirs` and, for AND
// gadgets, whose red-role sides {a,b} land on the red edges
std::vector<Tile> orient_candidates(char kind, const std::array<int, 4>& side_edge,
                                    const ConstraintGraph& g) {
    std::vector<Tile> out;
    for (const Tile& t : orientations(kind)) {
        bool ok = true;
        for (int d = 0; d < 4 && ok; ++d) {
            const Side& s = side_of(t, d);
            bool want = side_edge[d] >= 0;
            if (s.port != want) ok = false;
            if (ok && want && kind == 'A') {
                int e = side_edge[d];
                bool red = g.edges[e].weight == 1;
                bool red_role = s.role == 'a' || s.role == 'b';
                if (red != red_role) ok = false;
            }
        }
        if (ok) out.push_back(t);
    }
    return out;
}

std::vector<Tile> wire_candidates(const std::array<bool, 4>& ported) {
    char kind =
        ((ported[UP] && ported[DOWN]) || (ported[LEFT] && ported[RIGHT])) ? 'S' : 'T';
    std::vector<Tile> out;
    for (const Tile& t : orientations(kind)) {
        bool ok = true;
        for (int d = 0; d < 4; ++d)
            if (side_of(t, d).port != ported[d]) ok = false;
        if (ok) out.push_back(t);
    }
    return out;
}

// choose one orientation per slot so companion lines agree at every ported
// crossing (backtracking over slots in row-major order)
bool assign_orientations(std::vector<std::vector<PlacedTile>>& tiles,
                         const std::vector<std::vector<std::vector<Tile>>>& cand, int S,
                         int idx) {
    if (idx == S * S) return true;
    int r = idx / S, c = idx % S;
    for (const Tile& t : cand[r][c]) {
        bool ok = true;
        if (c > 0) {
            const Side& le = t.left;
            const Side& pr = tiles[r][c - 1].tile.right;
            if (le.port && pr.port && le.comp != pr.comp) ok = false;
        }
        if (ok && r > 0) {
            const Side& to = t.top;
            const Side& pb = tiles[r - 1][c].tile.bottom;
            if (to.port && pb.port && to.comp != pb.comp) ok = false;
        }
        if (!ok) continue;
        tiles[r][c].tile = t;
        if (assign_orientations(tiles, cand, S, idx + 1)) return true;
    }
    return false;
}

}  // namespace

std::pair<Puzzle, ReductionTrace> reduce(const ConstraintGraph& g, const LayoutParams& params) {
    const int D = params.D, G = params.G;
    if (D < 1 || G != 7)
        throw GraphError("nonogram reduce: layout needs D >= 1 and G = 7 gadget cells");
    for (const Vertex& v : g.vertices) {
        if (v.kind != Kind::AND && v.kind != Kind::OR)
            throw GraphError("nonogram reduce: only AND and OR vertices are supported");
    }
    for (int v = 0; v < (int)g.vertices.size(); ++v)
        if (g.incident(v).size() > 3)
            throw GraphError("nonogram reduce: vertex degree exceeds 3");
    for (const Edge& e : g.edges)
        if (e.head != -1)
            throw GraphError("nonogram reduce: edges must be undirected");
    if (g.vertices.empty()) throw GraphError("nonogram reduce: empty graph");

    // embed: grow the slot grid until placement + routing succeeds
    int base = std::max(2, (int)g.vertices.size());
    std::optional<Embedding> emb;
    std::optional<std::vector<std::array<int, 4>>> sides;
    for (int S = base; S <= base + 4 && !emb; ++S) {
        Embedder em(g, S);
        std::vector<int> order(g.vertices.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
        if (em.place(0, order)) {
            emb = em.emb;
            sides = em.vertex_side_edge;
        }
    }
    if (!emb)
        throw GraphError("nonogram reduce: no planar orthogonal embedding found "
                         "(nonplanar input or grid bound exceeded)");

    int S = emb->S;
    std::vector<std::vector<PlacedTile>> tiles(S, std::vector<PlacedTile>(S));
    std::vector<std::vector<std::vector<Tile>>> cand(S, std::vector<std::vector<Tile>>(S));
    for (int r = 0; r < S; ++r)
        for (int c = 0; c < S; ++c) cand[r][c] = {base_tile('.')};

    for (int v = 0; v < (int)g.vertices.size(); ++v) {
        auto [r, c] = emb->vertex_at[v];
        char kind = g.vertices[v].kind == Kind::AND ? 'A' : 'O';
        cand[r][c] = orient_candidates(kind, (*sides)[v], g);
        if (cand[r][c].empty())
            throw GraphError("nonogram reduce: no gadget orientation fits vertex " +
                             g.vertices[v].id);
        tiles[r][c].vertex = v;
    }
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        const auto& route = emb->routes[e];
        int prev_dir = route.u_dir;  // direction we left the previous slot
        for (size_t i = 0; i < route.wires.size(); ++i) {
            auto [r, c] = route.wires[i];
            int out_dir = i + 1 < route.wires.size()
                              ? [&] {
                                    auto [nr, nc] = route.wires[i + 1];
                                    for (int d = 0; d < 4; ++d)
                                        if (r + kDr[d] == nr && c + kDc[d] == nc) return d;
                                    return -1;
                                }()
                              : 3 - route.v_dir;
            std::array<bool, 4> ported{};
            ported[3 - prev_dir] = true;  // side facing where we came from
            ported[out_dir] = true;
            cand[r][c] = wire_candidates(ported);
            if (cand[r][c].empty())
                throw GraphError("nonogram reduce: no wire orientation fits");
            tiles[r][c].edge = e;
            prev_dir = out_dir;
        }
    }
    if (!assign_orientations(tiles, cand, S, 0))
        throw GraphError("nonogram reduce: no companion-consistent orientation "
                         "assignment exists for this embedding");

    // synthesize descriptions
    int span = D + S * (G + D);
    Puzzle puzzle;
    puzzle.rows = puzzle.cols = span;

    auto anchor_at = [](const Side& s, int line) {
        if (line == 4) return s.anchor_mid;
        if (line == s.comp) return s.anchor_comp;
        return 0;
    };
    // ported crossings float on the middle line and on the shared companion
    // line; the two floats are complementary halves of one switching component
    auto float_line = [](const Side& s, int line) {
        return s.port && (line == 4 || line == s.comp);
    };
    auto synth_axis = [&](bool rows_axis) {
        std::vector<LineDesc> descs;
        for (int band = 0; band < S; ++band) {
            for (int i = 0; i < D; ++i) descs.push_back(runs({span}));  // separation lines
            for (int p = 1; p <= 7; ++p) {
                LineDesc d;
                int carry = D;
                for (int k = 0; k < S; ++k) {
                    const Tile& t = rows_axis ? tiles[band][k].tile : tiles[k][band].tile;
                    const Side& lead = rows_axis ? t.left : t.top;
                    const Side& prev_trail =
                        k > 0 ? (rows_axis ? tiles[band][k - 1].tile.right
                                           : tiles[k - 1][band].tile.bottom)
                              : Side{};
                    if (k > 0 && lead.port != prev_trail.port)
                        throw GraphError("nonogram reduce: port facing a non-port");
                    if (k > 0 && lead.port && lead.comp != prev_trail.comp)
                        throw GraphError("nonogram reduce: companion lines disagree at a port");
                    bool flt = k > 0 && lead.port && float_line(lead, p);
                    carry += anchor_at(lead, p) + (flt ? 1 : 0);
                    d.runs.push_back(carry);
                    const auto& mids = rows_axis ? t.row_mid[p] : t.col_mid[p];
                    for (int m : mids) d.runs.push_back(m);
                    const Side& trail = rows_axis ? t.right : t.bottom;
                    carry = anchor_at(trail, p) + D;
                    if (k == S - 1 && trail.port)
                        throw GraphError("nonogram reduce: port at the outer boundary");
                }
                d.runs.push_back(carry);
                descs.push_back(d);
            }
        }
        for (int i = 0; i < D; ++i) descs.push_back(runs({span}));
        return descs;
    };
    puzzle.row_descs = synth_axis(true);
    puzzle.col_descs = synth_axis(false);
    puzzle.validate();

    // trace: per edge the two endpoint float cells (the cell just inside each
    // endpoint gadget on the crossing's middle line)
    ReductionTrace trace;
    trace.game = "nonogram";
    auto slot_origin = [&](int r, int c) {
        return std::make_pair(D + r * (G + D), D + c * (G + D));
    };
    auto float_cell = [&](std::pair<int, int> rc, int dir) {
        const Tile& t = tiles[rc.first][rc.second].tile;
        const Side& s = side_of(t, dir);
        auto [r0, c0] = slot_origin(rc.first, rc.second);
        int a = s.anchor_mid;
        switch (dir) {
            case LEFT: return std::make_pair(r0 + 3, c0 + a);          // row 4, col a+1 (0-based)
            case RIGHT: return std::make_pair(r0 + 3, c0 + 6 - a);
            case UP: return std::make_pair(r0 + a, c0 + 3);
            default: return std::make_pair(r0 + 6 - a, c0 + 3);
        }
    };
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        int u = g.tail_of(e), v = g.other_end(e, u);
        const auto& route = emb->routes[e];
        auto uf = float_cell(emb->vertex_at[u], route.u_dir);
        auto vf = float_cell(emb->vertex_at[v], route.v_dir);
        auto cellstr = [](std::pair<int, int> rc) {
            return std::to_string(rc.first) + "," + std::to_string(rc.second);
        };
        auto& rec = trace.edges[g.edges[e].id];
        rec["boundary-cell"] = {cellstr(uf), cellstr(vf)};
        std::vector<std::string> wires;
        for (auto& [wr, wc] : route.wires)
            wires.push_back(std::to_string(wr) + "," + std::to_string(wc));
        if (!wires.empty()) rec["channel"] = wires;
    }
    for (int v = 0; v < (int)g.vertices.size(); ++v) {
        TraceVertex tv;
        tv.gadget_kind = kind_name(g.vertices[v].kind);
        tv.index = v;
        tv.params["slot"] = {emb->vertex_at[v].first, emb->vertex_at[v].second};
        trace.vertices[g.vertices[v].id] = tv;
    }
    trace.parameters["D"] = D;
    trace.parameters["G"] = G;
    trace.parameters["slots"] = S;
    trace.parameters["rows"] = span;
    trace.parameters["cols"] = span;
    return {puzzle, trace};
}

std::map<std::string, std::string> decode_orientation(const ReductionTrace& trace,
                                                      const ConstraintGraph& g, const Grid& grid,
                                                      int grid_cols) {
    std::map<std::string, std::string> out;
    for (const Edge& e : g.edges) {
        const auto& rec = trace.edges.at(e.id).at("boundary-cell");
        auto parse = [&](const std::string& s) {
            size_t comma = s.find(',');
            int r = std::stoi(s.substr(0, comma)), c = std::stoi(s.substr(comma + 1));
            return grid[(size_t)r * grid_cols + c];
        };
        uint8_t u_float = parse(rec.at(0));
        uint8_t v_float = parse(rec.at(1));
        if (u_float == v_float)
            throw GraphError("nonogram decode: float cells of " + e.id + " agree");
        // a white float on one side means the edge points at that side's vertex
        out[e.id] = u_float == 0 ? e.u : e.v;
    }
    return out;
}

}  // namespace ncl::nonogram
