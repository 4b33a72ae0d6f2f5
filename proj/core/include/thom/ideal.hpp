#pragma once

#include "thom/semilinear.hpp"

namespace thom::ideals {

/// Ideal in the boolean algebra of subsets of N or N^2 (downward and union
/// closed), given by a membership rule plus a finite generator sample. The
/// two corpus instances pair these as (kappa, nubar):
///   instance (a): BoundedCols with UnderGraphEnvelope,
///   instance (b): UnderGraphEnvelope with BoundedRows.
struct IndexIdeal {
    enum class Kind { KappaType, NubarType };
    enum class Rule {
        ExplicitGenerators,   // S ⊆ union of finitely many stored generators
        BoundedCols,          // S ⊆ N x {0..J} for some J
        BoundedRows,          // S ⊆ {0..I} x N for some I
        UnderGraphEnvelope,   // S ⊆ { (i,j) : i <= f(j) } for some step f
        RowGraphEnvelope,     // S ⊆ { (i,j) : j <= g(i) } for some step g
        FiniteSupport,        // S finite
        FullUniverse,         // every S
    };

    Kind kind = Kind::KappaType;
    Rule rule = Rule::ExplicitGenerators;
    std::vector<SemilinearSet> generators;  // sample for explicit rule & cross-checks
    std::string name;

    static IndexIdeal explicit_generators(Kind k, std::vector<SemilinearSet> gens,
                                          std::string name = "");
    static IndexIdeal bounded_cols(Kind k, std::string name = "");
    static IndexIdeal bounded_rows(Kind k, std::string name = "");
    static IndexIdeal under_graph_envelope(Kind k, std::string name = "");
    static IndexIdeal row_graph_envelope(Kind k, std::string name = "");
    static IndexIdeal finite_support(Kind k, std::string name = "");
    static IndexIdeal full_universe(Kind k, std::string name = "");

    /// A finite sample of members, used by randomized cross-checks.
    std::vector<SemilinearSet> sample_members(index_t count) const;
};

struct MembershipWitness {
    bool member = false;
    std::optional<SemilinearSet> covering;      // member containing S
    std::optional<StepFunction> graph_witness;  // f or g for envelope rules
    std::optional<Integer> bound_witness;       // J or I
    std::vector<index_t> generator_cover;       // explicit-rule cover
    std::string note;
};

/// Spec operation: is the set finite?
bool is_finite(const SemilinearSet& s);

/// S a member of the ideal, with a constructive witness on success.
MembershipWitness in_ideal(const SemilinearSet& s, const IndexIdeal& ideal);

/// "S meets every member of the ideal in a finite set" — the dual predicate
/// of Corollary-style discrete duality, decided from the rule (not sampled).
bool meets_every_member_finitely(const SemilinearSet& s, const IndexIdeal& ideal);

/// When S fails the dual predicate, a concrete member with infinite
/// intersection (the constructive refutation).
std::optional<SemilinearSet> infinite_intersection_member(const SemilinearSet& s,
                                                          const IndexIdeal& ideal);

struct WitnessConstructionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DualityReport {
    bool direction_a = false;  // S ∈ nubar  <=>  S ∩ K finite for all kappa members
    bool direction_b = false;  // S ∈ kappa  <=>  S ∩ F finite for all nubar members
    bool witness_verified = false;
    bool sampled_agree = false;
    std::string detail;
    bool pass() const { return direction_a && direction_b && witness_verified && sampled_agree; }
};

/// Verifies both biconditionals of discrete duality for one set against a
/// paired (kappa, nubar) instance; constructs and checks the step-function
/// witness for the membership directions.
DualityReport duality_check(const SemilinearSet& s, const IndexIdeal& kappa,
                            const IndexIdeal& nubar, index_t sample_count = 6);

/// The two bundled instances.
struct DualityInstance {
    IndexIdeal kappa, nubar;
};
DualityInstance example_a_instance();  // kappa_N products, nubar_0 graph regions
DualityInstance example_b_instance();  // kappa_0 graph regions, nubar_N products

}  // namespace thom::ideals
