#pragma once

#include "thom/tower.hpp"

namespace thom::tow {

struct UndecidableTail : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidCompactSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Level-wise subcomplexes Q_i of a tower with p_i(Q_{i+1}) ⊆ Q_i. Levels may
/// carry a `declared_infinite` marker standing in for non-compact levels
/// (towers themselves store only finite complexes). Beyond the stored window
/// a restriction is either empty or follows the tower's tail.
class Restriction {
public:
    enum class Tail { EmptyBeyond, FollowTower };

    Restriction() = default;
    Restriction(TowerPtr tower, std::vector<std::set<index_t>> levels, Tail tail,
                std::vector<bool> infinite_marks = {});

    static Restriction full(TowerPtr tower);
    static Restriction empty(TowerPtr tower);

    const TowerPtr& tower() const { return tower_; }
    Tail tail() const { return tail_; }
    index_t stored() const { return static_cast<index_t>(levels_.size()); }
    std::set<index_t> level_cells(index_t i) const;  // tail-synthesized
    bool level_infinite(index_t i) const;
    bool level_empty(index_t i) const { return !level_infinite(i) && level_cells(i).empty(); }

    void validate() const;

    Restriction intersect(const Restriction& o) const;
    Restriction unite(const Restriction& o) const;
    bool subset_of(const Restriction& o) const;

private:
    TowerPtr tower_;
    std::vector<std::set<index_t>> levels_;
    std::vector<bool> infinite_;
    Tail tail_ = Tail::EmptyBeyond;

    index_t synth_pos(index_t i) const;
};

enum class RestrictionClass { InKappaPrime, InNubarPrime, InPhi, Neither, Both };

struct ClassifyResult {
    bool in_kappa = false;   // every level finite
    bool in_nubar = false;   // lim of the level sets is empty
    bool in_phi = false;     // finite levels, eventually empty
    RestrictionClass summary = RestrictionClass::Neither;
    /// When not in nubar': a compatible cell thread (level, cell id) through
    /// one period block, continuing periodically.
    std::vector<std::pair<index_t, std::string>> thread_witness;
    /// When not in kappa': a level declared infinite.
    std::optional<index_t> infinite_level;
};

ClassifyResult classify_restriction(const Restriction& r);

struct TelescopeDualityReport {
    bool direction_a = false;      // T ∈ nubar' <=> every kappa' sample meets T in phi
    bool direction_b = false;      // T ∈ kappa' <=> every nubar' sample meets T in phi
    bool witness_verified = false; // constructive converse checked
    std::string detail;
    bool pass() const { return direction_a && direction_b && witness_verified; }
};

TelescopeDualityReport telescope_duality_check(const Restriction& t,
                                               const std::vector<Restriction>& kappa_sample,
                                               const std::vector<Restriction>& nubar_sample);

/// The kappa'' member attached to a compact set presented as a restriction:
/// per level, the closure of all cells meeting the image of K, verified to be
/// a restriction.
Restriction kappa_double_prime(const Tower& t, const Restriction& k);

struct FiltrationFamily {
    enum class Kind { KappaPrime, NubarPrime, Phi, KappaDoublePrime };
    Kind kind;
    std::vector<Restriction> sample;
    bool members_valid() const;
};

/// Thread witness construction used by classify_restriction: the smallest
/// subrestriction around a thread (closed cells along it), a kappa' \ phi
/// member inside the given restriction.
Restriction thread_closure(const Restriction& r,
                           const std::vector<std::pair<index_t, std::string>>& thread);

}  // namespace thom::tow
