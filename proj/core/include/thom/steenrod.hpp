#pragma once

#include "thom/pattern.hpp"
#include "thom/restriction.hpp"

namespace thom::sc {

using alg::GroupResult;
using cx::PairPresentation;
using cx::Subcomplex;
using ideals::SemilinearSet;
using tow::Telescope;
using tow::Tower;

enum class FiltrationMode { KappaChains, KappaCochains, NuChains, NuCochains };

struct UndeterminedTail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Degree-n chain group of the telescope in one of the four filtration modes,
/// with a decidable membership predicate for pattern-element supports over
/// the generator universe. Points are (slot, level): the level is the second
/// coordinate, the slot enumerates that level's degree-n generators (level
/// cells of dimension n, then prisms over dimension n-1 cells above).
class FiltrationChainGroup {
public:
    FiltrationChainGroup(const Tower& t, int degree, FiltrationMode mode, index_t depth);

    int degree() const { return degree_; }
    FiltrationMode mode() const { return mode_; }
    index_t depth() const { return depth_; }

    /// Generators per level (periodic beyond the tower's tail).
    index_t level_size(index_t level) const;
    SemilinearSet universe() const;

    bool member(const SemilinearSet& support) const;
    bool member(const kd::PatternElement& g) const { return member(g.support()); }

    /// Chain groups in the two chain modes agree, and in the two cochain
    /// modes agree; the truncated matrices realize the boundary at `depth`.
    alg::IntMatrix truncated_boundary() const;    // degree -> degree-1 of the coned model
    index_t truncated_rank() const;

private:
    const Tower* tower_;
    int degree_;
    FiltrationMode mode_;
    index_t depth_;
    Telescope model_;  // coned truncation
};

FiltrationChainGroup chain_group(const Tower& t, int degree, FiltrationMode mode, index_t depth);

struct SteenrodResult {
    enum class Provenance { TelescopeExact, MilnorOracle, CrossChecked };
    std::map<int, GroupResult> by_degree;
    GroupResult reduced_h0;
    Provenance provenance = Provenance::MilnorOracle;
    bool non_mittag_leffler = false;
};

/// Steenrod–Sitnikov homology of the tower's limit in degrees [lo, hi].
/// EventuallyConstant tails run the telescope pipeline (coned truncation,
/// degree shifted by one, stabilization verified) and cross-check against
/// the Milnor-type lim/lim1 oracle; EventuallyPeriodic tails run the oracle.
SteenrodResult steenrod_homology(const Tower& t, int lo, int hi);

/// Čech cohomology as the colimit of level cohomology along the dual
/// bondings, with the element calculus of the colimit.
struct CechResult {
    GroupResult group;
    index_t rational_rank = 0;
    std::shared_ptr<alg::Colimit> elements;  // null when the tail is truncated
};
CechResult cech_cohomology(const Tower& t, int n);

/// The telescope-pipeline isomorphism H_i(P_stable) -> H_{i+1}(D_depth, P_0)
/// for constant towers: z maps to the stack of prisms over z. Used by the
/// uniqueness cross-check, which needs the identification to be natural.
struct ShiftIso {
    alg::HomologyData cell_side;       // H_i of the level complex
    alg::HomologyData telescope_side;  // H_{i+1}(D, P_0)
    alg::GroupMap iso;
    alg::IntMatrix chain_map;  // C_i(level) -> C_{i+1}(D rel P_0) on generators
};
ShiftIso telescope_shift_iso(const Tower& t, int degree, index_t depth);

struct CorrespondenceReport {
    bool concentrated = false;       // skeletal pairs concentrated in their degree
    bool ranks_match = false;        // ... with the chain-group rank
    bool boundary_matches = false;   // triple boundary equals the chain boundary
    std::map<int, index_t> stabilization_index;  // per degree
    bool stabilized_consistent = false;
    std::string detail;
    bool pass() const {
        return concentrated && ranks_match && boundary_matches && stabilized_consistent;
    }
};

CorrespondenceReport skeletal_correspondence_check(const Tower& t, index_t depth);

struct AgreeReport {
    bool membership_agrees = false;  // KappaChains vs NuChains on sampled elements
    bool homology_agrees = false;    // both assembly routes give the pair homology
    index_t elements_checked = 0;
    std::string detail;
    bool pass() const { return membership_agrees && homology_agrees; }
};

AgreeReport telescope_complexes_agree(const Tower& t, const tow::Restriction& a,
                                      const tow::Restriction& b, index_t depth,
                                      index_t element_samples = 100, std::uint64_t seed = 1);

/// Finite-truncation duality of the chain and cochain groups: the generator
/// pairing is perfect (the identity matrix on dual bases) and the coboundary
/// is adjoint to the boundary under it.
bool hom_duality_spot_check(const Tower& t, int degree, index_t depth);

}  // namespace thom::sc
