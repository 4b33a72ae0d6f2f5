#pragma once

#include "thom/steenrod.hpp"

namespace thom::ax {

using alg::CanonicalGroup;
using alg::GroupMap;
using alg::GroupResult;
using cx::CellComplex;
using cx::ChainHomotopy;
using cx::ChainMap;
using cx::ComplexPtr;
using cx::PairPresentation;
using cx::Subcomplex;
using tow::Tower;

/// i_*, j_* and the connecting map of a pair at one degree, with the
/// homology data needed to verify exactness by exact arithmetic.
struct PairMaps {
    GroupMap inclusion;   // H_n(A) -> H_n(X)
    GroupMap quotient;    // H_n(X) -> H_n(X, A)
    GroupMap connecting;  // H_n(X, A) -> H_{n-1}(A)
};
PairMaps pair_maps(const PairPresentation& p, int n);

struct ExactnessReport {
    bool pass = false;
    int lo = 0, hi = 0;
    std::string detail;
};
/// Exactness of the long sequence of the pair at every node in degrees
/// [lo, hi], by exact rank/torsion arithmetic.
ExactnessReport check_exactness(const PairPresentation& p, int lo, int hi);

/// Excision instance: a pair with a designated excisable cell set U ⊆ A
/// (open in the combinatorial sense: closed under cofaces).
struct ExcisionInstance {
    PairPresentation pair;
    std::set<index_t> excised;
    std::string name;
};

struct ExcisionReport {
    bool excision_ok = false;
    bool dimension_ok = false;
    index_t instances = 0;
    std::string detail;
    bool pass() const { return excision_ok && dimension_ok; }
};
ExcisionReport check_excision_and_dimension(const std::vector<ExcisionInstance>& corpus);

struct StrongExcisionReport {
    bool pass = false;
    std::string detail;
};
/// The collapse (X, A) -> (X/A, pt) induces an isomorphism on relative
/// homology in every degree.
StrongExcisionReport check_strong_excision(const PairPresentation& p);

/// Homotopy axiom, on instances that supply the chain homotopy.
bool check_homotopy(const ChainMap& f, const ChainMap& g, const ChainHomotopy& h);

/// Scattered instance: one component complex replicated over an index
/// universe, with the paired ideals describing which index sets are
/// compactly closable / closed.
struct ScatteredInstance {
    enum class Attachment { Cluster, DisjointUnion, Example10_3a, Example10_3b };
    Attachment attachment;
    ComplexPtr component;
    std::string basepoint_id = "v";  // wedge point of the component copies
    ideals::IndexIdeal kappa, nubar;
    int universe_dim = 1;
    std::string name;

    static ScatteredInstance cluster(ComplexPtr component, std::string basepoint);
    static ScatteredInstance disjoint_union(ComplexPtr component);
    static ScatteredInstance example_a(ComplexPtr component, std::string basepoint);
    static ScatteredInstance example_b(ComplexPtr component, std::string basepoint);
};

struct AdditivityReport {
    bool phi_k_ok = false;      // relative homology of sampled closures = products
    bool psi_f_ok = false;      // cohomology of sampled unions = products
    bool assembled_ok = false;  // membership matches the K-direct-sum predicate
    bool dual_ok = false;       // dualized formulation agrees (chi)
    index_t components = 0;
    std::string detail;
    bool pass() const { return phi_k_ok && psi_f_ok && assembled_ok && dual_ok; }
};
AdditivityReport check_controlled_additivity(const ScatteredInstance& s, int degree,
                                             index_t truncation, std::uint64_t seed = 1);

/// Named evaluation pipelines for the cross-check.
struct TheoryHandle {
    enum class Pipeline { DirectCellular, TelescopeSteenrod, CechDual };
    Pipeline pipeline = Pipeline::DirectCellular;

    std::string name() const;
    /// Graded value on an EventuallyConstant tower.
    GroupResult evaluate(const Tower& t, int degree) const;
    bool functorial_on_identity(const Tower& t, int degree) const;
};

struct UniquenessInstance {
    Tower source;                      // EventuallyConstant towers
    std::optional<Tower> target;       // when a map is supplied
    std::optional<ChainMap> map;       // level-wise (constant-tower) map
    std::string name;
};

struct UniquenessReport {
    index_t instances = 0;
    index_t degrees_checked = 0;
    bool groups_agree = false;
    bool natural = false;
    std::string detail;
    bool pass() const { return groups_agree && natural; }
};
/// TelescopeSteenrod and DirectCellular agree on every instance (including
/// the degree shift), and the identification commutes with induced maps.
UniquenessReport uniqueness_cross_check(const std::vector<UniquenessInstance>& corpus,
                                        index_t depth = 3);

}  // namespace thom::ax
