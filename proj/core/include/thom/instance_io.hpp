#pragma once

#include "thom/axioms.hpp"
#include "thom/report.hpp"

namespace thom::io {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parsed instance file: one of the six document kinds. All integers
/// travel as decimal strings on the wire.
struct InstanceDocument {
    enum class Kind { Complex, Pair, Tower, Scattered, Set, Pattern };
    Kind kind = Kind::Complex;
    std::string name;

    cx::ComplexPtr complex;                            // Complex
    std::optional<cx::PairPresentation> pair;          // Pair
    std::shared_ptr<tow::Tower> tower;                 // Tower
    std::optional<ax::ScatteredInstance> scattered;    // Scattered
    index_t scattered_count = 10;
    std::optional<ideals::SemilinearSet> set;          // Set
    std::optional<kd::PatternElement> pattern;         // Pattern
};

/// Parse from JSON text; throws SchemaError on malformed documents and
/// ValidationError when the data fails its structural invariants
/// (dd != 0, bad bondings, ...), with cell-level diagnostics.
InstanceDocument parse_instance(const std::string& json_text);
InstanceDocument load_instance(const std::string& path);

/// Canonical serialization; parse∘serialize is the identity.
std::string serialize_instance(const InstanceDocument& doc);

// piecewise codecs shared with the corpus
ideals::StepFunction parse_step(const std::string& json_text);
std::string serialize_complex_json(const cx::CellComplex& k);

}  // namespace thom::io
