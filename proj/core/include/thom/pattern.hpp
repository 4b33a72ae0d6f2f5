#pragma once

#include "thom/ideal.hpp"
#include "thom/tower_limits.hpp"

namespace thom::kd {

using alg::CanonicalGroup;
using ideals::IndexIdeal;
using ideals::SemilinearSet;

/// A single coefficient group G replicated over N or N^2, optionally with a
/// per-index direct tower (the same at every index) for exchange tests.
struct GroupFamily {
    int universe_dim = 2;
    CanonicalGroup group = CanonicalGroup::free(1);
    std::optional<alg::GroupTower> tower;  // reversed/direct when present

    alg::GroupPresentation presentation() const { return alg::GroupPresentation::of(group); }
};

/// Element of prod_{index} G described by finitely many (region, value)
/// pairs with pairwise disjoint regions and nonzero values; zero elsewhere.
class PatternElement {
public:
    using Value = std::vector<Integer>;

    explicit PatternElement(GroupFamily fam);
    static PatternElement piece(const GroupFamily& fam, const SemilinearSet& region, Value v);

    const GroupFamily& family() const { return fam_; }
    const std::vector<std::pair<SemilinearSet, Value>>& pieces() const { return pieces_; }

    PatternElement add(const PatternElement& o) const;
    PatternElement negate() const;
    SemilinearSet support() const;
    Value value_at(const Integer& i, const Integer& j) const;  // dim 2
    Value value_at(const Integer& m) const;                    // dim 1
    bool is_zero() const { return pieces_.empty(); }

private:
    GroupFamily fam_;
    alg::GroupPresentation pres_;
    std::vector<std::pair<SemilinearSet, Value>> pieces_;

    Value reduce(const Value& v) const;
    bool value_zero(const Value& v) const;
    void push_piece(SemilinearSet region, Value v);
};

/// supp(g) ∈ ideal, i.e. g lies in the K-direct sum cut out by the ideal.
bool in_kdirect_sum(const PatternElement& g, const IndexIdeal& ideal);
ideals::MembershipWitness in_kdirect_sum_witness(const PatternElement& g, const IndexIdeal& ideal);

/// The colim-of-products membership (supp ∈ kappa) must agree with the
/// lim-of-sums membership (supp meets every nubar member finitely), and
/// dually; chi is then the identity inclusion at element level.
struct ChiReport {
    bool homology_side = false;    // supp ∈ kappa  <=>  finite meets with nubar
    bool cohomology_side = false;  // supp ∈ nubar  <=>  finite meets with kappa
    bool pass() const { return homology_side && cohomology_side; }
};
ChiReport chi_check(const PatternElement& g, const IndexIdeal& kappa, const IndexIdeal& nubar);

/// The four nested groups of the strictness chain, as membership predicates
/// on pattern elements over the Example-(a) universe:
///   finite support ⊊ kappa_N-sum ⊊ row-finite sum ⊊ full product.
struct StrictnessChain {
    IndexIdeal finite_support, kappa_sum, row_finite, full_product;
};
StrictnessChain strictness_chain();

/// Witnesses separating the chain, each verified by the membership
/// predicates before being returned.
struct StrictnessWitnesses {
    PatternElement w0, w1, w2, w3;
    bool verified = false;
};
StrictnessWitnesses strictness_witnesses();

}  // namespace thom::kd
