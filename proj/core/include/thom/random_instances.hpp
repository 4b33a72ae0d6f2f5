#pragma once

#include <random>

#include "thom/axioms.hpp"

namespace thom::rnd {

using Rng = std::mt19937_64;

/// Bounded draw with stable cross-platform behaviour (no distribution
/// objects; the harness requires byte-identical reports per seed).
inline index_t draw(Rng& rng, index_t bound) {
    return static_cast<index_t>(rng() % static_cast<std::uint64_t>(bound));
}

/// Random simplicial complex on at most `vertices` vertices with faces of
/// dimension at most `max_dim`, downward closed, with standard alternating
/// orientation signs. Cell count stays well under `vertices`^3.
cx::CellComplex random_simplicial_complex(Rng& rng, index_t vertices, int max_dim,
                                          index_t max_facets);

/// The same complex with shuffled ids and cell order.
cx::CellComplex relabel(const cx::CellComplex& k, Rng& rng);

/// Random step function, region, and semilinear set over N^2; the generators
/// behind the duality and chi suites.
ideals::StepFunction random_step(Rng& rng);
ideals::SemilinearSet random_region(Rng& rng);
ideals::SemilinearSet random_semilinear(Rng& rng, int depth = 2);

/// Random pattern element with a semilinear support and small values.
kd::PatternElement random_pattern(Rng& rng, const kd::GroupFamily& fam);

/// Wrap a complex as the constant tower (EventuallyConstant from level 0).
tow::Tower constant_tower(cx::ComplexPtr k, index_t stored_levels);

/// Random valid pair: complex plus a face-closed subset.
cx::PairPresentation random_pair(Rng& rng, index_t vertices, int max_dim, index_t max_facets);

}  // namespace thom::rnd
