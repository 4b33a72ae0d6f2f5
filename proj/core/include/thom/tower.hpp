#pragma once

#include "thom/chain_map.hpp"
#include "thom/tower_limits.hpp"

namespace thom::tow {

using alg::TailKind;
using alg::TailPolicy;
using cx::CellComplex;
using cx::ChainMap;
using cx::ComplexPtr;
using cx::Subcomplex;

using alg::DepthUnavailable;

/// Inverse tower of finite cell complexes with chain-level bondings and a
/// declared tail. EventuallyConstant tails repeat the last stored level with
/// identity bondings; EventuallyPeriodic tails repeat the stored block.
struct Tower {
    std::vector<ComplexPtr> levels;  // P_0 .. P_N
    std::vector<ChainMap> bondings;  // [i] : P_{i+1} -> P_i
    TailPolicy tail;

    index_t stored_levels() const { return static_cast<index_t>(levels.size()); }
    ComplexPtr level(index_t i) const;
    ChainMap bonding(index_t i) const;
    void validate() const;

    /// Tower of H_n(P_i) with the induced bondings, tail carried over.
    alg::GroupTower homology_tower(int n) const;
    /// Direct tower of H^n(P_i) along the dual bondings.
    alg::GroupTower cohomology_tower(int n) const;
};

using TowerPtr = std::shared_ptr<const Tower>;

/// Chain-level mapping telescope of a truncated tower. Generators are level
/// cells L<i>:<id> and prisms P<i>:<id> (the prism over a level-(i+1) cell,
/// glued between levels i and i+1); d(prism s) = p(s) - s - prism(ds).
/// The coned variant quotients away everything above the truncation: top
/// prisms keep p(s) - prism(ds) only — the finite model of the
/// possibly-infinite chain complex of the full telescope.
struct Telescope {
    index_t depth = 0;
    bool coned = false;
    ComplexPtr complex;
    struct Gen {
        index_t level;
        bool prism;
        index_t cell;  // index in the tower level complex
    };
    std::vector<Gen> gens;  // parallel to complex cells
    std::optional<ChainMap> collapse;  // -> level 0 (plain telescopes only)

    /// Generator index of the telescope cell for a level cell / prism.
    std::optional<index_t> find_level_cell(index_t level, index_t cell) const;

    /// The level-0 subcomplex, as cells of the telescope.
    std::set<index_t> level_zero_cells() const;
    /// Cells of the k-skeleton (by cell dimension in the telescope).
    std::set<index_t> skeleton_cells(int k) const;
};

Telescope build_telescope(const Tower& t, index_t depth);
Telescope coned_telescope(const Tower& t, index_t depth);

}  // namespace thom::tow
