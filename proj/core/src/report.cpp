#include "thom/report.hpp"

#include <sstream>

#include "json.hpp"

namespace thom::io {

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void Report::add(std::string name, bool pass, std::string value, std::string witness) {
    checks.push_back({std::move(name), pass, std::move(value), std::move(witness)});
}

std::string Report::render_text() const {
    std::ostringstream os;
    os << "# " << command << "\n";
    for (const auto& [k, v] : groups) os << k << " = " << v << "\n";
    for (const auto& c : checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.value.empty()) os << ": " << c.value;
        if (!c.witness.empty()) os << " (witness: " << c.witness << ")";
        os << "\n";
    }
    os << "seed = " << seed << ", timing_ms = " << (include_timing ? timing_ms : 0) << "\n";
    os << (all_pass() ? "OK" : "FAILED") << "\n";
    return os.str();
}

std::string Report::render_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["groups"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : groups) j["groups"][k] = v;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.value.empty()) jc["value"] = c.value;
        if (!c.witness.empty()) jc["witness"] = c.witness;
        j["checks"].push_back(std::move(jc));
    }
    j["seed"] = std::to_string(seed);
    j["timing_ms"] = include_timing ? timing_ms : 0;
    j["ok"] = all_pass();
    return j.dump(2) + "\n";
}

}  // namespace thom::io
