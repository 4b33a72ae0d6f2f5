#pragma once

#include "thom/instance_io.hpp"

namespace thom::io {

/// Bundled corpus: the named instances every suite runs against. Instances
/// are built in memory; THOM_CORPUS_DIR (or an explicit directory) overrides
/// an instance when a file <name>.json is present there.
class Corpus {
public:
    explicit Corpus(std::string override_dir = "");

    std::vector<std::string> names() const;
    InstanceDocument get(const std::string& name) const;
    bool has(const std::string& name) const;

    /// Write every instance as <dir>/<name>.json.
    void export_all(const std::string& dir) const;

    /// The axiom suite's pair corpus (>= 20 finite pairs).
    std::vector<cx::PairPresentation> axiom_pairs() const;

private:
    std::string dir_;
    std::map<std::string, std::string> builtin_;  // name -> serialized JSON
};

}  // namespace thom::io
