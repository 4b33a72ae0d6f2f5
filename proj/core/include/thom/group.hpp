#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thom/snf.hpp"

namespace thom::alg {

/// Finitely generated abelian group in invariant form: free rank plus a
/// divisor chain d_1 | d_2 | ... with every d_i >= 2. The universal return
/// type for exactly computed (co)homology.
struct CanonicalGroup {
    index_t rank = 0;
    std::vector<Integer> torsion;

    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool finite() const { return rank == 0; }
    Integer order() const;  // 0 when infinite
    bool operator==(const CanonicalGroup&) const = default;
    std::string to_string() const;

    static CanonicalGroup free(index_t rank) { return {rank, {}}; }
    static CanonicalGroup cyclic(const Integer& d);
    /// Canonical form of a direct sum of cyclic factors (not necessarily a chain).
    static CanonicalGroup from_factors(index_t rank, std::vector<Integer> factors);
};

struct CompositionNonzero : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAChainMap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Z^n modulo the column span of a relation matrix. Canonical form is
/// computed eagerly; equality of groups means equality of canonical forms.
class GroupPresentation {
public:
    GroupPresentation();  // trivial group
    explicit GroupPresentation(index_t gens);
    GroupPresentation(index_t gens, IntMatrix relations);
    static GroupPresentation of(const CanonicalGroup& g);

    index_t generators() const { return d_->gens; }
    const IntMatrix& relations() const { return d_->rels; }
    const CanonicalGroup& canonical() const { return d_->canon; }

    /// Canonical residue of the class of x: y = U x with y_i reduced mod d_i
    /// (coordinates with d_i = 1 vanish; coordinates past the relation rank
    /// are free).
    std::vector<Integer> reduce(const std::vector<Integer>& x) const;
    bool is_zero(const std::vector<Integer>& x) const;
    bool same_class(const std::vector<Integer>& a, const std::vector<Integer>& b) const;

    /// Moduli of the canonical coordinates: d_i for relation rows, 0 for free.
    const std::vector<Integer>& moduli() const { return d_->moduli; }
    const IntMatrix& to_canonical() const { return d_->snf.U; }
    const IntMatrix& from_canonical() const { return d_->snf.Uinv; }

private:
    struct Data {
        index_t gens = 0;
        IntMatrix rels;
        SmithResult snf;
        CanonicalGroup canon;
        std::vector<Integer> moduli;
    };
    std::shared_ptr<const Data> d_;
};

/// Homomorphism between presented groups, as a matrix on generators.
struct GroupMap {
    GroupPresentation source, target;
    IntMatrix matrix;

    GroupMap() = default;
    GroupMap(GroupPresentation src, GroupPresentation tgt, IntMatrix m);

    static GroupMap identity(const GroupPresentation& g);
    static GroupMap zero(const GroupPresentation& src, const GroupPresentation& tgt);

    bool well_defined() const;
    std::vector<Integer> apply(const std::vector<Integer>& x) const;
    GroupMap after(const GroupMap& first) const;  // this ∘ first

    /// Generators (columns, in source generator coordinates) of ker.
    IntMatrix kernel_lattice() const;
    bool is_zero_map() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_isomorphism() const;
    CanonicalGroup cokernel() const;
};

/// g ∘ f = 0 and ker g = im f, decided exactly.
bool exact_at(const GroupMap& f, const GroupMap& g);

/// ker(d_out)/im(d_in) with the data needed to push chain-level cycles into
/// presentation coordinates (and back).
struct HomologyData {
    IntMatrix cycle_basis;   // chains x k
    IntMatrix cycle_coords;  // k x chains; cycle_coords * cycle_basis = I
    GroupPresentation pres;  // Z^k modulo boundaries
    const CanonicalGroup& group() const { return pres.canonical(); }

    std::vector<Integer> class_of(const std::vector<Integer>& cycle) const;
    std::vector<Integer> representative(const std::vector<Integer>& coords) const;
};

HomologyData homology_data(const IntMatrix& d_out, const IntMatrix& d_in);
CanonicalGroup homology_at(const IntMatrix& d_out, const IntMatrix& d_in);

/// Homology with Z/m coefficients, computed from the integral matrices by
/// exact lattice arithmetic (no universal-coefficient shortcut).
CanonicalGroup homology_at_mod(const IntMatrix& d_out, const IntMatrix& d_in, const Integer& m);

/// Induced map on homology of a degreewise chain map f (matrix C_n(X) -> C_n(Y)).
GroupMap induced_on_homology(const HomologyData& src, const HomologyData& tgt,
                             const IntMatrix& chain_map);

}  // namespace thom::alg
