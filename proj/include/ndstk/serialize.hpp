#pragma once

#include "ndstk/constructions.hpp"
#include "ndstk/fuzzy.hpp"
#include "ndstk/nds.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ndstk {

// Stable key order in every emitted artifact.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rat& x) { return rat_str(x); }

inline Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    return rat_parse(j.get<std::string>());
}

inline Json to_json(const PLMap& f) {
    Json nodes = Json::array();
    for (const auto& n : f.nodes()) nodes.push_back({rat_str(n.x), rat_str(n.y)});
    return Json{{"space", space_name(f.space())}, {"nodes", nodes}};
}

inline PLMap plmap_from_json(const Json& j) {
    Space space = j.at("space") == "circle" ? Space::circle : Space::interval;
    std::vector<PLMap::Node> nodes;
    for (const auto& n : j.at("nodes"))
        nodes.push_back({rat_from_json(n.at(0)), rat_from_json(n.at(1))});
    return PLMap(space, std::move(nodes));
}

inline Json to_json(const NdsSpec& nds) {
    Json prefix = Json::array();
    for (const auto& f : nds.prefix) prefix.push_back(to_json(f));
    Json tail;
    if (const auto* c = std::get_if<NdsSpec::ConstantTail>(&nds.tail)) {
        tail = Json{{"kind", "constant"}, {"map", to_json(c->map)}};
    } else if (const auto* c = std::get_if<NdsSpec::CycleTail>(&nds.tail)) {
        Json maps = Json::array();
        for (const auto& f : c->maps) maps.push_back(to_json(f));
        tail = Json{{"kind", "cycle"}, {"maps", maps}};
    } else {
        const auto& lv = std::get<NdsSpec::LevelsTail>(nds.tail);
        Json blocks = Json::array();
        for (const auto& b : lv.blocks)
            blocks.push_back({{"map", to_json(b.map)}, {"length", b.length}});
        tail = Json{{"kind", "levels"}, {"blocks", blocks}, {"beyond", to_json(lv.beyond)}};
    }
    return Json{{"space", space_name(nds.space)}, {"prefix", prefix}, {"tail", tail}};
}

inline NdsSpec nds_from_json(const Json& j) {
    Space space = j.at("space") == "circle" ? Space::circle : Space::interval;
    std::vector<PLMap> prefix;
    for (const auto& f : j.at("prefix")) prefix.push_back(plmap_from_json(f));
    const Json& t = j.at("tail");
    NdsSpec out = [&]() -> NdsSpec {
        std::string kind = t.at("kind");
        if (kind == "constant")
            return NdsSpec{space, {}, NdsSpec::ConstantTail{plmap_from_json(t.at("map"))}};
        if (kind == "cycle") {
            std::vector<PLMap> maps;
            for (const auto& f : t.at("maps")) maps.push_back(plmap_from_json(f));
            return NdsSpec{space, {}, NdsSpec::CycleTail{std::move(maps)}};
        }
        if (kind == "levels") {
            std::vector<NdsSpec::LevelsTail::Block> blocks;
            for (const auto& b : t.at("blocks"))
                blocks.push_back({plmap_from_json(b.at("map")), b.at("length").get<long>()});
            return NdsSpec{space, {},
                           NdsSpec::LevelsTail{std::move(blocks), plmap_from_json(t.at("beyond"))}};
        }
        throw argument_error("unknown tail kind: " + kind);
    }();
    out.prefix = std::move(prefix);
    out.validate();
    return out;
}

inline Json to_json(const FiniteCompact& k) {
    Json pts = Json::array();
    for (const auto& p : k.points()) pts.push_back(rat_str(p));
    return pts;
}

inline FiniteCompact compact_from_json(const Json& j, Space space = Space::interval) {
    std::vector<Rat> pts;
    for (const auto& p : j) pts.push_back(rat_from_json(p));
    return FiniteCompact(space, std::move(pts));
}

inline Json to_json(const Arc& a) {
    return Json{{"a", rat_str(a.a)}, {"b", rat_str(a.b)}, {"full", a.full_circle}};
}

inline Arc arc_from_json(const Json& j) {
    return Arc{rat_from_json(j.at("a")), rat_from_json(j.at("b")), j.at("full").get<bool>()};
}

inline Json to_json(const PCFuzzy& u) {
    Json ts = Json::array();
    for (const auto& t : u.thresholds()) ts.push_back(rat_str(t));
    Json ls = Json::array();
    for (const auto& l : u.levels()) ls.push_back(to_json(l));
    return Json{{"thresholds", ts}, {"levels", ls}};
}

inline PCFuzzy fuzzy_from_json(const Json& j, Space space = Space::interval) {
    std::vector<Rat> ts;
    for (const auto& t : j.at("thresholds")) ts.push_back(rat_from_json(t));
    std::vector<FiniteCompact> ls;
    for (const auto& l : j.at("levels")) ls.push_back(compact_from_json(l, space));
    return PCFuzzy(std::move(ts), std::move(ls));
}

}  // namespace ndstk
