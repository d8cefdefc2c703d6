#pragma once

// Category interchange format:
//   {"name": str, "objects": [str],
//    "morphisms": [{"name": str, "dom": str, "cod": str}],
//    "composition": [{"first": str, "then": str, "equals": str}]}
// Unknown top-level keys are ignored so sidecar data can travel with a category.

#include <urigid/fincat.hpp>

#include <json.hpp>

#include <string>

namespace urigid {

using Json = nlohmann::ordered_json;

inline Presentation parse_presentation(const Json& j) {
    try {
        Presentation p;
        p.name = j.value("name", std::string{});
        for (const auto& o : j.at("objects")) p.objects.push_back(o.get<std::string>());
        for (const auto& m : j.value("morphisms", Json::array()))
            p.morphisms.push_back({m.at("name").get<std::string>(), m.at("dom").get<std::string>(),
                                   m.at("cod").get<std::string>()});
        for (const auto& c : j.value("composition", Json::array()))
            p.composition.push_back({c.at("first").get<std::string>(), c.at("then").get<std::string>(),
                                     c.at("equals").get<std::string>()});
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

inline Presentation parse_presentation(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return parse_presentation(j);
}

inline FinCategory read_category(const std::string& text) { return validate_category(parse_presentation(text)); }

inline Json to_json(const Presentation& p) {
    Json j;
    j["name"] = p.name;
    j["objects"] = p.objects;
    j["morphisms"] = Json::array();
    for (const auto& m : p.morphisms) j["morphisms"].push_back({{"name", m.name}, {"dom", m.dom}, {"cod", m.cod}});
    j["composition"] = Json::array();
    for (const auto& c : p.composition)
        j["composition"].push_back({{"first", c.first}, {"then", c.then}, {"equals", c.equals}});
    return j;
}

inline Json to_json(const FinCategory& c) { return to_json(c.presentation()); }

inline std::string serialize(const FinCategory& c) { return to_json(c).dump(2) + "\n"; }

} // namespace urigid
