#include "ncl/trace.hpp"

namespace ncl {

using json = nlohmann::ordered_json;

json ReductionTrace::to_json() const {
    json j;
    j["game"] = game;
    j["edges"] = json::object();
    for (const auto& [edge, roles] : edges) {
        json je = json::object();
        for (const auto& [role, elems] : roles) je[role] = elems;
        j["edges"][edge] = je;
    }
    j["vertices"] = json::object();
    for (const auto& [vid, tv] : vertices) {
        json jv;
        jv["gadget_kind"] = tv.gadget_kind;
        jv["index"] = tv.index;
        jv["params"] = tv.params;
        j["vertices"][vid] = jv;
    }
    j["parameters"] = parameters;
    return j;
}

ReductionTrace ReductionTrace::from_json(const json& j) {
    ReductionTrace t;
    t.game = j.at("game").get<std::string>();
    for (auto it = j.at("edges").begin(); it != j.at("edges").end(); ++it)
        for (auto rit = it.value().begin(); rit != it.value().end(); ++rit)
            t.edges[it.key()][rit.key()] = rit.value().get<std::vector<std::string>>();
    for (auto it = j.at("vertices").begin(); it != j.at("vertices").end(); ++it) {
        TraceVertex tv;
        tv.gadget_kind = it.value().at("gadget_kind").get<std::string>();
        tv.index = it.value().at("index").get<int>();
        tv.params = it.value().at("params");
        t.vertices[it.key()] = tv;
    }
    t.parameters = j.at("parameters");
    return t;
}

std::vector<std::string> lift_witness(const ReductionTrace& trace, const json& witness) {
    std::vector<std::string> seq;
    std::string target_edge;
    if (trace.parameters.contains("target_edge"))
        target_edge = trace.parameters.at("target_edge").get<std::string>();
    // end-game cleanup also pairs traced elements; reversals after the target
    // fires are not graph moves
    auto push = [&](const std::string& edge) {
        if (!seq.empty() && seq.back() == target_edge) return;
        seq.push_back(edge);
    };
    if (trace.game == "klondike") {
        // lock-block landing on its key card = reversal
        std::map<std::pair<std::string, std::string>, std::string> lockkey;
        for (const auto& [edge, roles] : trace.edges) {
            auto li = roles.find("lock");
            auto ki = roles.find("key");
            if (li == roles.end() || ki == roles.end()) continue;
            lockkey[{li->second.at(0), ki->second.at(0)}] = edge;
        }
        for (const json& mv : witness) {
            if (mv.at("type") != "move_block") continue;
            auto it = lockkey.find({mv.at("bottom").get<std::string>(),
                                    mv.at("onto").get<std::string>()});
            if (it != lockkey.end()) push(it->second);
        }
    } else if (trace.game == "mahjong") {
        // removal of a traced lock/key pair = reversal
        std::map<std::pair<std::string, std::string>, std::string> pairs;
        for (const auto& [edge, roles] : trace.edges) {
            auto li = roles.find("lock");
            auto ki = roles.find("key");
            if (li == roles.end() || ki == roles.end()) continue;
            std::string a = li->second.at(0), b = ki->second.at(0);
            pairs[{std::min(a, b), std::max(a, b)}] = edge;
        }
        for (const json& mv : witness) {
            std::string a = std::to_string(mv.at("a").get<int>());
            std::string b = std::to_string(mv.at("b").get<int>());
            auto it = pairs.find({std::min(a, b), std::max(a, b)});
            if (it != pairs.end()) push(it->second);
        }
    } else if (trace.game == "doushouqi") {
        // a white piece entering a traced entry square = reversal
        std::map<std::string, std::string> entry;  // "r,c" -> edge
        for (const auto& [edge, roles] : trace.edges) {
            auto ei = roles.find("entry");
            if (ei == roles.end()) continue;
            for (const std::string& sq : ei->second) entry[sq] = edge;
        }
        for (const json& mv : witness) {
            if (mv.at("owner") != "white") continue;
            std::string sq = std::to_string(mv.at("to")[0].get<int>()) + "," +
                             std::to_string(mv.at("to")[1].get<int>());
            auto it = entry.find(sq);
            if (it != entry.end()) push(it->second);
        }
    } else {
        throw GraphError("lift_witness: no move lifting for game " + trace.game);
    }
    return seq;
}

}  // namespace ncl
