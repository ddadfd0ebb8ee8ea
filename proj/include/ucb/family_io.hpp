#pragma once

// JSON persistence for families:
//   {"kind":"discs"|"curves","label":str,"eps":float,
//    "members":[{"id":int,"cx":f,"cy":f,"r":f} | {"id":int,"a":f,"b":f,"c":f}, ...]}

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucb/errors.hpp"
#include "ucb/family.hpp"

namespace ucb {

using ordered_json = nlohmann::ordered_json;

inline ordered_json family_to_json(const Family& f) {
    ordered_json j;
    j["kind"] = to_string(f.kind());
    j["label"] = f.label();
    j["eps"] = f.tol().eps;
    auto members = ordered_json::array();
    if (f.is_discs()) {
        for (const Circle& c : f.discs()) {
            members.push_back({{"id", c.id}, {"cx", c.cx}, {"cy", c.cy}, {"r", c.r}});
        }
    } else {
        for (const QuadCurve& q : f.curves()) {
            members.push_back({{"id", q.id}, {"a", q.a}, {"b", q.b}, {"c", q.c}});
        }
    }
    j["members"] = std::move(members);
    return j;
}

namespace detail {

inline double number_field(const ordered_json& m, const char* key) {
    if (!m.contains(key) || !m.at(key).is_number()) {
        throw FormatError(std::string("member field '") + key + "' missing or not a number");
    }
    return m.at(key).get<double>();
}

}  // namespace detail

// Parses and validates; throws FormatError for schema problems and
// ValidationError when the geometry is not in general position.
inline Family family_from_json(const ordered_json& j) {
    if (!j.is_object()) {
        throw FormatError("family document must be a JSON object");
    }
    for (const char* key : {"kind", "eps", "members"}) {
        if (!j.contains(key)) {
            throw FormatError(std::string("missing field '") + key + "'");
        }
    }
    if (!j.at("kind").is_string()) {
        throw FormatError("'kind' must be a string");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "discs" && kind != "curves") {
        throw FormatError("'kind' must be \"discs\" or \"curves\", got \"" + kind + "\"");
    }
    if (!j.at("eps").is_number() || !(j.at("eps").get<double>() > 0.0)) {
        throw FormatError("'eps' must be a positive number");
    }
    const Tolerance tol{j.at("eps").get<double>()};
    std::string label;
    if (j.contains("label")) {
        if (!j.at("label").is_string()) {
            throw FormatError("'label' must be a string");
        }
        label = j.at("label").get<std::string>();
    }
    const auto& members = j.at("members");
    if (!members.is_array() || members.empty()) {
        throw FormatError("'members' must be a non-empty array");
    }

    std::vector<bool> seen(members.size(), false);
    std::vector<MemberId> ids;
    for (const auto& m : members) {
        if (!m.is_object() || !m.contains("id") || !m.at("id").is_number_integer()) {
            throw FormatError("every member needs an integer 'id'");
        }
        const auto id = m.at("id").get<std::int64_t>();
        if (id < 0 || id >= static_cast<std::int64_t>(members.size())) {
            throw FormatError("member id " + std::to_string(id) + " outside 0..n-1");
        }
        if (seen[static_cast<std::size_t>(id)]) {
            throw FormatError("duplicate member id " + std::to_string(id));
        }
        seen[static_cast<std::size_t>(id)] = true;
        ids.push_back(static_cast<MemberId>(id));
    }

    if (kind == "discs") {
        std::vector<Circle> discs(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto& m = members[i];
            discs[static_cast<std::size_t>(ids[i])] = {ids[i], detail::number_field(m, "cx"),
                                                       detail::number_field(m, "cy"), detail::number_field(m, "r")};
        }
        return Family::from_discs(std::move(discs), tol, std::move(label));
    }
    std::vector<QuadCurve> curves(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& m = members[i];
        curves[static_cast<std::size_t>(ids[i])] = {ids[i], detail::number_field(m, "a"), detail::number_field(m, "b"),
                                                    detail::number_field(m, "c")};
    }
    return Family::from_curves(std::move(curves), tol, std::move(label));
}

inline Family parse_family(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("malformed family JSON: ") + e.what());
    }
    return family_from_json(j);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

inline void save_family(const Family& f, const std::string& path) {
    write_text_file(path, family_to_json(f).dump(2) + "\n");
}

inline Family load_family(const std::string& path) { return parse_family(read_text_file(path)); }

}  // namespace ucb
