#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ucb {

enum class Relation { LessEqual, Less };

inline const char* to_string(Relation r) { return r == Relation::Less ? "<" : "<="; }

// One inequality lhs (<|<=) rhs. Soft checks are reported (flagged) but do
// not fail the report.
struct Check {
    std::string name;
    double lhs = 0.0;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
    bool soft = false;

    bool holds() const noexcept { return relation == Relation::Less ? lhs < rhs : lhs <= rhs; }
    double slack() const noexcept { return rhs - lhs; }
};

struct BoundReport {
    std::vector<Check> checks;
    std::vector<std::string> notes;

    Check& add(std::string name, double lhs, Relation rel, double rhs, bool soft = false) {
        checks.push_back({std::move(name), lhs, rel, rhs, soft});
        return checks.back();
    }

    void append(const BoundReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    }

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.soft || c.holds(); });
    }

    std::vector<const Check*> failures() const {
        std::vector<const Check*> out;
        for (const Check& c : checks) {
            if (!c.soft && !c.holds()) {
                out.push_back(&c);
            }
        }
        return out;
    }

    std::vector<const Check*> flags() const {
        std::vector<const Check*> out;
        for (const Check& c : checks) {
            if (c.soft && !c.holds()) {
                out.push_back(&c);
            }
        }
        return out;
    }

    const Check* find(const std::string& name) const {
        for (const Check& c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
};

inline std::string describe(const Check& c) {
    return c.name + ": " + std::to_string(c.lhs) + " " + to_string(c.relation) + " " + std::to_string(c.rhs);
}

inline nlohmann::ordered_json to_json(const Check& c) {
    return {{"name", c.name},     {"lhs", c.lhs},     {"relation", to_string(c.relation)},
            {"rhs", c.rhs},       {"slack", c.slack()}, {"pass", c.holds()},
            {"soft", c.soft}};
}

inline nlohmann::ordered_json to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["pass"] = r.passed();
    auto checks = nlohmann::ordered_json::array();
    for (const Check& c : r.checks) {
        checks.push_back(to_json(c));
    }
    j["checks"] = std::move(checks);
    j["notes"] = r.notes;
    return j;
}

}  // namespace ucb
