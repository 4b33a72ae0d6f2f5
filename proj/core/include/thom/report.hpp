#pragma once

#include <map>
#include <string>
#include <vector>

#include "thom/integer.hpp"

namespace thom::io {

/// One verdict line of a report.
struct Check {
    std::string name;
    bool pass = false;
    std::string value;    // computed group / classification, rendered
    std::string witness;  // optional witness description
};

/// Deterministic command report: identical (input, seed, flags) triples
/// produce byte-identical renderings (timing is emitted as 0 unless
/// explicitly requested, so it never breaks determinism).
struct Report {
    std::string command;
    std::vector<Check> checks;
    std::map<std::string, std::string> groups;  // e.g. "H1" -> "Z^2"
    std::uint64_t seed = 0;
    long timing_ms = 0;
    bool include_timing = false;

    bool all_pass() const;
    void add(std::string name, bool pass, std::string value = "", std::string witness = "");

    std::string render_text() const;
    std::string render_json() const;
};

}  // namespace thom::io
