#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "thom/group.hpp"

namespace thom::cx {

using alg::CanonicalGroup;
using alg::HomologyData;
using alg::IntMatrix;
using thom::Integer;
using thom::index_t;

/// Z or Z/m chain coefficients.
struct Coefficients {
    Integer modulus = 0;  // 0 means Z
    static Coefficients Z() { return {}; }
    static Coefficients mod(Integer m) { return {std::move(m)}; }
};

struct ValidationIssue {
    std::string cell;       // offending cell id
    std::string face;       // second id when relevant
    std::string what;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const;
};

/// Finite cell complex presented combinatorially: cells with dimensions and
/// incidence coefficients. The only structural requirements are that faces
/// drop dimension by exactly one and that the boundary squares to zero.
class CellComplex {
public:
    struct Cell {
        std::string id;
        int dim = 0;
        std::vector<std::pair<index_t, Integer>> faces;  // (cell index, coefficient)
    };

    CellComplex() = default;

    /// Cells may be added in any order; face references by id are resolved
    /// when all cells are present.
    struct PendingCell {
        std::string id;
        int dim;
        std::vector<std::pair<std::string, Integer>> faces;
    };
    static CellComplex build(const std::vector<PendingCell>& cells);

    index_t size() const { return static_cast<index_t>(cells_.size()); }
    const Cell& cell(index_t i) const { return cells_[static_cast<size_t>(i)]; }
    std::optional<index_t> find(const std::string& id) const;
    int max_dim() const { return max_dim_; }
    const std::vector<index_t>& cells_of_dim(int d) const;
    index_t count_in_dim(int d) const { return static_cast<index_t>(cells_of_dim(d).size()); }

    /// Position of a cell within its dimension block (chain coordinate).
    index_t slot_of(index_t cell_index) const { return slots_[static_cast<size_t>(cell_index)]; }

    IntMatrix boundary_matrix(int d) const;  // C_d -> C_{d-1}

    ValidationReport validate() const;

    CanonicalGroup homology(int n, const Coefficients& c = Coefficients::Z()) const;
    CanonicalGroup cohomology(int n, const Coefficients& c = Coefficients::Z()) const;
    HomologyData homology_data(int n) const;

    Integer euler_characteristic() const;

    /// Face closure of a set of cells (always a valid subcomplex cell set).
    std::set<index_t> closure(const std::set<index_t>& cells) const;

private:
    std::vector<Cell> cells_;
    std::map<std::string, index_t> by_id_;
    std::vector<std::vector<index_t>> by_dim_;
    std::vector<index_t> slots_;
    int max_dim_ = -1;
    static const std::vector<index_t> kEmpty;
};

using ComplexPtr = std::shared_ptr<const CellComplex>;

/// Subcomplex as a face-closed cell subset of a parent complex.
class Subcomplex {
public:
    Subcomplex() = default;
    Subcomplex(ComplexPtr parent, std::set<index_t> cells);
    static Subcomplex empty(ComplexPtr parent) { return {std::move(parent), {}}; }
    static Subcomplex full(ComplexPtr parent);

    const ComplexPtr& parent() const { return parent_; }
    const std::set<index_t>& cells() const { return cells_; }
    bool contains(index_t cell) const { return cells_.count(cell) > 0; }
    bool closed_under_faces() const;
    CellComplex as_complex() const;  // standalone copy with the same ids

    Subcomplex intersect(const Subcomplex& o) const;
    Subcomplex unite(const Subcomplex& o) const;
    bool subset_of(const Subcomplex& o) const;

private:
    ComplexPtr parent_;
    std::set<index_t> cells_;
};

/// (X, A) with A a subcomplex of X.
struct PairPresentation {
    ComplexPtr space;
    Subcomplex sub;  // may be empty

    PairPresentation(ComplexPtr x, Subcomplex a);
    static PairPresentation absolute(ComplexPtr x);

    /// Relative chain complex C_*(X)/C_*(A): generators are cells of X \ A.
    std::vector<index_t> relative_cells(int d) const;
    IntMatrix relative_boundary(int d) const;
    CanonicalGroup relative_homology(int n, const Coefficients& c = Coefficients::Z()) const;
    CanonicalGroup relative_cohomology(int n, const Coefficients& c = Coefficients::Z()) const;
    HomologyData relative_homology_data(int n) const;
};

/// Collapse A to a fresh basepoint vertex: the strong-excision comparison
/// space X/A with its canonical quotient chain structure.
CellComplex quotient_complex(const PairPresentation& p, const std::string& basepoint_id = "*");

}  // namespace thom::cx
