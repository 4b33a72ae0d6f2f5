#pragma once

#include "thom/pattern.hpp"

namespace thom::kd {

struct LevelSearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One sample: an element of prod_m G_{m, f(m)} with its level function f.
struct ExchangeSample {
    ideals::StepFunction level;
    PatternElement element;  // universe N; value at index m lives at level f(m)
};

struct ExchangeReport {
    index_t samples = 0;
    index_t pairs_compared = 0;
    bool injective_on_samples = false;
    bool inverse_reconstruction_ok = false;
    std::string detail;
    bool pass() const { return injective_on_samples && inverse_reconstruction_ok; }
};

/// Verifies, on the samples, that the map sending a sequence of level-f(m)
/// values to its per-index colimit classes is injective, and that the
/// inverse construction (merging representatives at a common level
/// h >= max(f, g)) recovers every sampled element. The family's tower must
/// have a rank-one periodic composite (identity, zero or multiplication);
/// other towers raise UnsupportedBonding.
ExchangeReport exchange_iso_check(const GroupFamily& fam,
                                  const std::vector<ExchangeSample>& samples);

/// Pushforward of a sample to the pointwise-larger level function: the
/// canonical second representative used by the reconstruction test.
ExchangeSample push_sample(const GroupFamily& fam, const ExchangeSample& s,
                           const ideals::StepFunction& to_level);

/// Per-index colimit-class equality of two samples at every index, decided
/// symbolically on the common refinement of their pieces.
bool phi_equal(const GroupFamily& fam, const ExchangeSample& a, const ExchangeSample& b);

}  // namespace thom::kd
