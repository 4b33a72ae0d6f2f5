#pragma once

#include "thom/complex.hpp"

namespace thom::cx {

using alg::GroupMap;

/// Degreewise map of cellular chains, one target chain per source cell.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(ComplexPtr source, ComplexPtr target);

    static ChainMap identity(ComplexPtr k);
    /// Everything to the chosen vertex: cells of dim 0 map to it, higher
    /// cells to zero.
    static ChainMap constant_to_vertex(ComplexPtr source, ComplexPtr target, index_t vertex);
    /// Source cells map to the target cells with the same ids.
    static ChainMap by_ids(ComplexPtr source, ComplexPtr target);

    const ComplexPtr& source() const { return source_; }
    const ComplexPtr& target() const { return target_; }

    void set_image(index_t source_cell, std::vector<std::pair<index_t, Integer>> chain);
    void set_image_by_id(const std::string& source_id,
                         const std::vector<std::pair<std::string, Integer>>& chain);
    const std::vector<std::pair<index_t, Integer>>& image(index_t source_cell) const;

    /// f ∂ = ∂ f in every degree.
    bool commutes_with_boundary() const;
    void require_chain_map() const;  // throws NotAChainMap

    IntMatrix matrix(int dim) const;  // C_dim(source) -> C_dim(target)
    ChainMap after(const ChainMap& first) const;

    /// Support of the image of a cell set (no closure taken).
    std::set<index_t> image_support(const std::set<index_t>& cells) const;
    /// The image chain of every cell of `cells` is supported inside `allowed`.
    bool maps_into(const std::set<index_t>& cells, const std::set<index_t>& allowed) const;

    GroupMap induced(int n) const;

private:
    ComplexPtr source_, target_;
    std::vector<std::vector<std::pair<index_t, Integer>>> image_;
};

/// Degree +1 map h with dh + hd = g - f (all three between the same pair).
class ChainHomotopy {
public:
    ChainHomotopy() = default;
    ChainHomotopy(ComplexPtr source, ComplexPtr target);

    void set_image(index_t source_cell, std::vector<std::pair<index_t, Integer>> chain);
    IntMatrix matrix(int dim) const;  // C_dim(source) -> C_{dim+1}(target)

    bool witnesses(const ChainMap& f, const ChainMap& g) const;

private:
    ComplexPtr source_, target_;
    std::vector<std::vector<std::pair<index_t, Integer>>> image_;
};

/// Algebraic mapping cylinder of f with its structure maps: generators are
/// the target cells, the source cells, and one prism per source cell one
/// dimension up; d(prism s) = f(s) - s - prism(ds).
struct CylinderData {
    ComplexPtr complex;
    ChainMap include_source;   // X -> cyl
    ChainMap include_target;   // Y -> cyl
    ChainMap retraction;       // cyl -> Y
    ChainHomotopy homotopy;    // id_cyl ≃ include_target ∘ retraction
};

CylinderData algebraic_mapping_cylinder(const ChainMap& f, const std::string& source_prefix = "s:",
                                        const std::string& target_prefix = "t:",
                                        const std::string& prism_prefix = "p:");

}  // namespace thom::cx
