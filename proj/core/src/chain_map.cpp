#include "thom/chain_map.hpp"

namespace thom::cx {

ChainMap::ChainMap(ComplexPtr source, ComplexPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
    image_.assign(static_cast<size_t>(source_->size()), {});
}

ChainMap ChainMap::identity(ComplexPtr k) {
    ChainMap f(k, k);
    for (index_t i = 0; i < k->size(); ++i) f.set_image(i, {{i, 1}});
    return f;
}

ChainMap ChainMap::constant_to_vertex(ComplexPtr source, ComplexPtr target, index_t vertex) {
    if (target->cell(vertex).dim != 0)
        throw std::invalid_argument("constant map target must be a vertex");
    ChainMap f(std::move(source), target);
    for (index_t i = 0; i < f.source()->size(); ++i)
        if (f.source()->cell(i).dim == 0) f.set_image(i, {{vertex, 1}});
    return f;
}

ChainMap ChainMap::by_ids(ComplexPtr source, ComplexPtr target) {
    ChainMap f(source, target);
    for (index_t i = 0; i < source->size(); ++i) {
        auto t = target->find(source->cell(i).id);
        if (!t) throw std::invalid_argument("target lacks cell id " + source->cell(i).id);
        f.set_image(i, {{*t, 1}});
    }
    return f;
}

void ChainMap::set_image(index_t source_cell, std::vector<std::pair<index_t, Integer>> chain) {
    int dim = source_->cell(source_cell).dim;
    for (const auto& [t, coeff] : chain) {
        (void)coeff;
        if (target_->cell(t).dim != dim)
            throw std::invalid_argument("chain map image must preserve degree");
    }
    image_[static_cast<size_t>(source_cell)] = std::move(chain);
}

void ChainMap::set_image_by_id(const std::string& source_id,
                               const std::vector<std::pair<std::string, Integer>>& chain) {
    auto s = source_->find(source_id);
    if (!s) throw std::invalid_argument("unknown source cell " + source_id);
    std::vector<std::pair<index_t, Integer>> conv;
    for (const auto& [tid, coeff] : chain) {
        auto t = target_->find(tid);
        if (!t) throw std::invalid_argument("unknown target cell " + tid);
        conv.emplace_back(*t, coeff);
    }
    set_image(*s, std::move(conv));
}

const std::vector<std::pair<index_t, Integer>>& ChainMap::image(index_t source_cell) const {
    return image_[static_cast<size_t>(source_cell)];
}

IntMatrix ChainMap::matrix(int dim) const {
    IntMatrix m(target_->count_in_dim(dim), source_->count_in_dim(dim));
    const auto& cells = source_->cells_of_dim(dim);
    for (index_t j = 0; j < static_cast<index_t>(cells.size()); ++j)
        for (const auto& [t, coeff] : image_[static_cast<size_t>(cells[static_cast<size_t>(j)])])
            m.add_at(target_->slot_of(t), j, coeff);
    return m;
}

bool ChainMap::commutes_with_boundary() const {
    int top = std::max(source_->max_dim(), target_->max_dim());
    for (int d = 1; d <= top; ++d) {
        IntMatrix lhs = target_->boundary_matrix(d) * matrix(d);
        IntMatrix rhs = matrix(d - 1) * source_->boundary_matrix(d);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

void ChainMap::require_chain_map() const {
    if (!commutes_with_boundary()) throw alg::NotAChainMap("df != fd");
}

ChainMap ChainMap::after(const ChainMap& first) const {
    if (first.target_ != source_) throw std::invalid_argument("after: middle complex mismatch");
    ChainMap out(first.source_, target_);
    for (index_t i = 0; i < first.source_->size(); ++i) {
        std::map<index_t, Integer> acc;
        for (const auto& [mid, c1] : first.image(i))
            for (const auto& [tgt, c2] : image(mid)) acc[tgt] += c1 * c2;
        std::vector<std::pair<index_t, Integer>> chain;
        for (auto& [t, c] : acc)
            if (c != 0) chain.emplace_back(t, c);
        out.set_image(i, std::move(chain));
    }
    return out;
}

std::set<index_t> ChainMap::image_support(const std::set<index_t>& cells) const {
    std::set<index_t> out;
    for (index_t c : cells)
        for (const auto& [t, coeff] : image(c)) {
            (void)coeff;
            out.insert(t);
        }
    return out;
}

bool ChainMap::maps_into(const std::set<index_t>& cells, const std::set<index_t>& allowed) const {
    for (index_t c : cells)
        for (const auto& [t, coeff] : image(c)) {
            (void)coeff;
            if (!allowed.count(t)) return false;
        }
    return true;
}

GroupMap ChainMap::induced(int n) const {
    require_chain_map();
    return alg::induced_on_homology(source_->homology_data(n), target_->homology_data(n),
                                    matrix(n));
}

ChainHomotopy::ChainHomotopy(ComplexPtr source, ComplexPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
    image_.assign(static_cast<size_t>(source_->size()), {});
}

void ChainHomotopy::set_image(index_t source_cell, std::vector<std::pair<index_t, Integer>> chain) {
    int dim = source_->cell(source_cell).dim;
    for (const auto& [t, coeff] : chain) {
        (void)coeff;
        if (target_->cell(t).dim != dim + 1)
            throw std::invalid_argument("homotopy must raise degree by one");
    }
    image_[static_cast<size_t>(source_cell)] = std::move(chain);
}

IntMatrix ChainHomotopy::matrix(int dim) const {
    IntMatrix m(target_->count_in_dim(dim + 1), source_->count_in_dim(dim));
    const auto& cells = source_->cells_of_dim(dim);
    for (index_t j = 0; j < static_cast<index_t>(cells.size()); ++j)
        for (const auto& [t, coeff] : image_[static_cast<size_t>(cells[static_cast<size_t>(j)])])
            m.add_at(target_->slot_of(t), j, coeff);
    return m;
}

bool ChainHomotopy::witnesses(const ChainMap& f, const ChainMap& g) const {
    int top = std::max(source_->max_dim(), target_->max_dim());
    for (int d = 0; d <= top; ++d) {
        IntMatrix dh = target_->boundary_matrix(d + 1) * matrix(d);
        IntMatrix hd = matrix(d - 1) * source_->boundary_matrix(d);
        IntMatrix residue = ((g.matrix(d) - f.matrix(d)) - dh) - hd;
        if (!residue.is_zero()) return false;
    }
    return true;
}

CylinderData algebraic_mapping_cylinder(const ChainMap& f, const std::string& source_prefix,
                                        const std::string& target_prefix,
                                        const std::string& prism_prefix) {
    f.require_chain_map();
    const CellComplex& x = *f.source();
    const CellComplex& y = *f.target();

    std::vector<CellComplex::PendingCell> pcs;
    auto tname = [&](index_t i) { return target_prefix + y.cell(i).id; };
    auto sname = [&](index_t i) { return source_prefix + x.cell(i).id; };
    auto pname = [&](index_t i) { return prism_prefix + x.cell(i).id; };

    for (index_t i = 0; i < y.size(); ++i) {
        CellComplex::PendingCell pc{tname(i), y.cell(i).dim, {}};
        for (const auto& [face, c] : y.cell(i).faces) pc.faces.emplace_back(tname(face), c);
        pcs.push_back(std::move(pc));
    }
    for (index_t i = 0; i < x.size(); ++i) {
        CellComplex::PendingCell pc{sname(i), x.cell(i).dim, {}};
        for (const auto& [face, c] : x.cell(i).faces) pc.faces.emplace_back(sname(face), c);
        pcs.push_back(std::move(pc));
    }
    for (index_t i = 0; i < x.size(); ++i) {
        // d(prism s) = f(s) - s - prism(ds)
        CellComplex::PendingCell pc{pname(i), x.cell(i).dim + 1, {}};
        for (const auto& [t, c] : f.image(i)) pc.faces.emplace_back(tname(t), c);
        pc.faces.emplace_back(sname(i), -1);
        for (const auto& [face, c] : x.cell(i).faces) pc.faces.emplace_back(pname(face), -c);
        pcs.push_back(std::move(pc));
    }

    CylinderData cyl;
    auto complex = std::make_shared<CellComplex>(CellComplex::build(pcs));
    cyl.complex = complex;

    cyl.include_source = ChainMap(f.source(), complex);
    for (index_t i = 0; i < x.size(); ++i)
        cyl.include_source.set_image(i, {{*complex->find(sname(i)), 1}});

    cyl.include_target = ChainMap(f.target(), complex);
    for (index_t i = 0; i < y.size(); ++i)
        cyl.include_target.set_image(i, {{*complex->find(tname(i)), 1}});

    cyl.retraction = ChainMap(complex, f.target());
    for (index_t i = 0; i < y.size(); ++i)
        cyl.retraction.set_image(*complex->find(tname(i)), {{i, 1}});
    for (index_t i = 0; i < x.size(); ++i) {
        std::vector<std::pair<index_t, Integer>> img;
        for (const auto& [t, c] : f.image(i)) img.emplace_back(t, c);
        cyl.retraction.set_image(*complex->find(sname(i)), std::move(img));
        cyl.retraction.set_image(*complex->find(pname(i)), {});
    }

    cyl.homotopy = ChainHomotopy(complex, complex);
    for (index_t i = 0; i < x.size(); ++i)
        cyl.homotopy.set_image(*complex->find(sname(i)), {{*complex->find(pname(i)), 1}});

    return cyl;
}

}  // namespace thom::cx
