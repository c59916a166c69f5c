#include "ncl/generate.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace ncl {

namespace {

struct Slot {           // an unconsumed output of an earlier vertex
    std::string vertex;  // producer vertex id
    int weight;          // 1 = red, 2 = blue
};

}  // namespace

ConstraintGraph random_acyclic_ncl(uint64_t seed, int max_vertices) {
    Rng rng(seed);
    ConstraintGraph g;
    int n = 1 + (int)rng.below((uint64_t)max_vertices);
    int free_id = 0, edge_id = 0;

    auto fresh_free = [&](int min_inflow) {
        std::string id = "t" + std::to_string(free_id++);
        g.vertices.push_back({id, Kind::FREE, min_inflow});
        return id;
    };
    auto add_edge = [&](const std::string& from_consumer, const std::string& to_producer,
                        int weight) {
        Edge e;
        e.id = "e" + std::to_string(edge_id++);
        e.u = from_consumer;
        e.v = to_producer;
        e.weight = weight;
        e.head = 1;  // canonical: points at the producer
        g.edges.push_back(e);
        return e.id;
    };

    std::vector<Slot> open;  // outputs still looking for a consumer

    for (int i = 0; i < n; ++i) {
        Kind kind;
        switch (rng.below(4)) {
            case 0: kind = Kind::AND; break;
            case 1: kind = Kind::OR; break;
            case 2: kind = Kind::FANOUT; break;
            default: kind = Kind::CHOICE; break;
        }
        std::string id = "v" + std::to_string(i);
        g.vertices.push_back({id, kind, 2});

        int in_weight = (kind == Kind::AND) ? 1 : (kind == Kind::OR) ? 2
                        : (kind == Kind::FANOUT) ? 2 : 1;
        int in_count = (kind == Kind::FANOUT || kind == Kind::CHOICE) ? 1 : 2;
        for (int k = 0; k < in_count; ++k) {
            // candidate upstream outputs with the right color
            std::vector<int> cands;
            for (int s = 0; s < (int)open.size(); ++s)
                if (open[s].weight == in_weight) cands.push_back(s);
            if (!cands.empty() && rng.chance(65)) {
                int pick = cands[(int)rng.below(cands.size())];
                add_edge(id, open[pick].vertex, in_weight);
                open.erase(open.begin() + pick);
            } else if (rng.chance(75)) {
                add_edge(id, fresh_free(0), in_weight);  // always fireable
            } else {
                // frozen source: losing its only edge would starve it
                add_edge(id, fresh_free(in_weight), in_weight);
            }
        }
        int out_weight = (kind == Kind::AND || kind == Kind::OR) ? 2 : 1;
        int out_count = (kind == Kind::FANOUT || kind == Kind::CHOICE) ? 2 : 1;
        for (int k = 0; k < out_count; ++k) open.push_back({id, out_weight});
    }

    // terminate dangling outputs: the edge points at its producer, the FREE
    // sink is the tail
    std::vector<std::string> dangling;
    for (const Slot& s : open)
        dangling.push_back(add_edge(fresh_free(0), s.vertex, s.weight));
    g.target = dangling[(size_t)rng.below(dangling.size())];
    g.finalize();
    return g;
}

ConstraintGraph random_cgs_candidate(uint64_t seed, int max_vertices) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        int n = 2 + (int)rng.below((uint64_t)std::max(1, max_vertices - 1));
        std::vector<Kind> kinds(n);
        // all-AND graphs are weight-tight and often unsatisfiable; mix them in
        // so the equivalence campaigns exercise both verdicts
        bool all_and = rng.chance(40);
        int blue_slots = 0;
        for (int i = 0; i < n; ++i) {
            kinds[i] = (all_and || rng.chance(55)) ? Kind::AND : Kind::OR;
            blue_slots += kinds[i] == Kind::AND ? 1 : 3;
        }
        if (blue_slots % 2 != 0) continue;

        std::vector<int> blue, red;  // vertex index per open slot
        for (int i = 0; i < n; ++i) {
            if (kinds[i] == Kind::AND) {
                blue.push_back(i);
                red.push_back(i);
                red.push_back(i);
            } else {
                blue.insert(blue.end(), {i, i, i});
            }
        }
        auto shuffle = [&](std::vector<int>& v) {
            for (size_t i = v.size(); i > 1; --i)
                std::swap(v[i - 1], v[rng.below(i)]);
        };
        shuffle(blue);
        shuffle(red);
        bool ok = true;
        for (size_t i = 0; i + 1 < blue.size() && ok; i += 2)
            if (blue[i] == blue[i + 1]) ok = false;
        for (size_t i = 0; i + 1 < red.size() && ok; i += 2)
            if (red[i] == red[i + 1]) ok = false;
        if (!ok) continue;

        ConstraintGraph g;
        for (int i = 0; i < n; ++i)
            g.vertices.push_back({"v" + std::to_string(i), kinds[i], 2});
        int eid = 0;
        auto pair_up = [&](const std::vector<int>& v, int w) {
            for (size_t i = 0; i + 1 < v.size(); i += 2) {
                Edge e;
                e.id = "e" + std::to_string(eid++);
                e.u = g.vertices[v[i]].id;
                e.v = g.vertices[v[i + 1]].id;
                e.weight = w;
                e.head = -1;
                g.edges.push_back(e);
            }
        };
        pair_up(blue, 2);
        pair_up(red, 1);
        g.finalize();
        return g;
    }
    throw GraphError("random_cgs_candidate: no closed AND/OR graph found");
}

ConstraintGraph random_2cl_small(uint64_t seed) {
    Rng rng(seed);
    ConstraintGraph g;
    g.vertices.push_back({"V", Kind::VARIABLE, 2});
    g.vertices.push_back({"fw", Kind::FREE, 0});
    g.vertices.push_back({"fb", Kind::FREE, 0});
    Edge w;
    w.id = "w";
    w.u = "fw";
    w.v = "V";
    w.weight = 2;
    w.head = 1;
    w.owner = Owner::white;
    g.edges.push_back(w);
    Edge b;
    b.id = "b";
    b.u = "fb";
    b.v = "V";
    b.weight = 2;
    b.head = 1;
    b.owner = Owner::black;
    g.edges.push_back(b);
    g.target = "w";
    g.finalize();
    add_black_fillers(g, 1 + (int)rng.below(3));
    return g;
}

}  // namespace ncl
