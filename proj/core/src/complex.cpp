#include "thom/complex.hpp"

#include <algorithm>
#include <sstream>

namespace thom::cx {

const std::vector<index_t> CellComplex::kEmpty;

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& i : issues) {
        os << i.what << " [cell " << i.cell;
        if (!i.face.empty()) os << ", face " << i.face;
        os << "]\n";
    }
    return os.str();
}

CellComplex CellComplex::build(const std::vector<PendingCell>& cells) {
    CellComplex k;
    for (const auto& pc : cells) {
        if (k.by_id_.count(pc.id))
            throw std::invalid_argument("duplicate cell id: " + pc.id);
        k.by_id_[pc.id] = static_cast<index_t>(k.cells_.size());
        k.cells_.push_back({pc.id, pc.dim, {}});
    }
    for (size_t i = 0; i < cells.size(); ++i) {
        for (const auto& [fid, coeff] : cells[i].faces) {
            auto it = k.by_id_.find(fid);
            if (it == k.by_id_.end())
                throw std::invalid_argument("unknown face id '" + fid + "' in cell " + cells[i].id);
            if (coeff != 0) k.cells_[i].faces.emplace_back(it->second, coeff);
        }
    }
    for (const auto& c : k.cells_) k.max_dim_ = std::max(k.max_dim_, c.dim);
    k.by_dim_.assign(static_cast<size_t>(k.max_dim_ + 1), {});
    k.slots_.assign(k.cells_.size(), 0);
    for (index_t i = 0; i < k.size(); ++i) {
        auto& bucket = k.by_dim_[static_cast<size_t>(k.cells_[static_cast<size_t>(i)].dim)];
        k.slots_[static_cast<size_t>(i)] = static_cast<index_t>(bucket.size());
        bucket.push_back(i);
    }
    return k;
}

std::optional<index_t> CellComplex::find(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

const std::vector<index_t>& CellComplex::cells_of_dim(int d) const {
    if (d < 0 || d > max_dim_) return kEmpty;
    return by_dim_[static_cast<size_t>(d)];
}

IntMatrix CellComplex::boundary_matrix(int d) const {
    IntMatrix m(count_in_dim(d - 1), count_in_dim(d));
    for (index_t j = 0; j < count_in_dim(d); ++j) {
        const Cell& c = cell(cells_of_dim(d)[static_cast<size_t>(j)]);
        for (const auto& [face, coeff] : c.faces) m.add_at(slot_of(face), j, coeff);
    }
    return m;
}

ValidationReport CellComplex::validate() const {
    ValidationReport rep;
    for (const auto& c : cells_) {
        for (const auto& [face, coeff] : c.faces) {
            (void)coeff;
            const Cell& f = cells_[static_cast<size_t>(face)];
            if (f.dim != c.dim - 1)
                rep.issues.push_back({c.id, f.id, "face dimension is not one less"});
        }
    }
    if (!rep.issues.empty()) return rep;
    for (int d = 1; d <= max_dim_; ++d) {
        IntMatrix dd = boundary_matrix(d - 1) * boundary_matrix(d);
        if (dd.is_zero()) continue;
        dd.for_each_nonzero([&](index_t r, index_t c2, const Integer&) {
            rep.issues.push_back({cell(cells_of_dim(d)[static_cast<size_t>(c2)]).id,
                                  cell(cells_of_dim(d - 2)[static_cast<size_t>(r)]).id,
                                  "boundary of boundary is nonzero"});
        });
    }
    return rep;
}

CanonicalGroup CellComplex::homology(int n, const Coefficients& c) const {
    if (n < 0 || n > max_dim_) return {};
    if (c.modulus == 0) return alg::homology_at(boundary_matrix(n), boundary_matrix(n + 1));
    return alg::homology_at_mod(boundary_matrix(n), boundary_matrix(n + 1), c.modulus);
}

CanonicalGroup CellComplex::cohomology(int n, const Coefficients& c) const {
    if (n < 0 || n > max_dim_) return {};
    IntMatrix d_out = boundary_matrix(n + 1).transposed();  // delta^n
    IntMatrix d_in = boundary_matrix(n).transposed();       // delta^{n-1}
    if (c.modulus == 0) return alg::homology_at(d_out, d_in);
    return alg::homology_at_mod(d_out, d_in, c.modulus);
}

HomologyData CellComplex::homology_data(int n) const {
    return alg::homology_data(boundary_matrix(n), boundary_matrix(n + 1));
}

Integer CellComplex::euler_characteristic() const {
    Integer chi = 0;
    for (int d = 0; d <= max_dim_; ++d)
        chi += (d % 2 == 0 ? Integer(count_in_dim(d)) : Integer(-count_in_dim(d)));
    return chi;
}

std::set<index_t> CellComplex::closure(const std::set<index_t>& cells) const {
    std::set<index_t> out;
    std::vector<index_t> stack(cells.begin(), cells.end());
    while (!stack.empty()) {
        index_t c = stack.back();
        stack.pop_back();
        if (!out.insert(c).second) continue;
        for (const auto& [f, coeff] : cell(c).faces) {
            (void)coeff;
            stack.push_back(f);
        }
    }
    return out;
}

Subcomplex::Subcomplex(ComplexPtr parent, std::set<index_t> cells)
    : parent_(std::move(parent)), cells_(std::move(cells)) {
    if (!closed_under_faces())
        throw std::invalid_argument("subcomplex cell set is not closed under faces");
}

Subcomplex Subcomplex::full(ComplexPtr parent) {
    std::set<index_t> all;
    for (index_t i = 0; i < parent->size(); ++i) all.insert(i);
    return {std::move(parent), std::move(all)};
}

bool Subcomplex::closed_under_faces() const {
    for (index_t c : cells_)
        for (const auto& [f, coeff] : parent_->cell(c).faces) {
            (void)coeff;
            if (!cells_.count(f)) return false;
        }
    return true;
}

CellComplex Subcomplex::as_complex() const {
    std::vector<CellComplex::PendingCell> pcs;
    for (index_t c : cells_) {
        const auto& cell = parent_->cell(c);
        CellComplex::PendingCell pc{cell.id, cell.dim, {}};
        for (const auto& [f, coeff] : cell.faces)
            pc.faces.emplace_back(parent_->cell(f).id, coeff);
        pcs.push_back(std::move(pc));
    }
    return CellComplex::build(pcs);
}

Subcomplex Subcomplex::intersect(const Subcomplex& o) const {
    if (parent_ != o.parent_) throw std::invalid_argument("subcomplexes of different parents");
    std::set<index_t> out;
    std::set_intersection(cells_.begin(), cells_.end(), o.cells_.begin(), o.cells_.end(),
                          std::inserter(out, out.begin()));
    return {parent_, std::move(out)};
}

Subcomplex Subcomplex::unite(const Subcomplex& o) const {
    if (parent_ != o.parent_) throw std::invalid_argument("subcomplexes of different parents");
    std::set<index_t> out = cells_;
    out.insert(o.cells_.begin(), o.cells_.end());
    return {parent_, std::move(out)};
}

bool Subcomplex::subset_of(const Subcomplex& o) const {
    return std::includes(o.cells_.begin(), o.cells_.end(), cells_.begin(), cells_.end());
}

PairPresentation::PairPresentation(ComplexPtr x, Subcomplex a)
    : space(std::move(x)), sub(std::move(a)) {
    if (sub.parent() && sub.parent() != space)
        throw std::invalid_argument("subcomplex does not live in the pair's space");
    if (!sub.parent()) sub = Subcomplex::empty(space);
}

PairPresentation PairPresentation::absolute(ComplexPtr x) {
    Subcomplex a = Subcomplex::empty(x);
    return {std::move(x), std::move(a)};
}

std::vector<index_t> PairPresentation::relative_cells(int d) const {
    std::vector<index_t> out;
    for (index_t c : space->cells_of_dim(d))
        if (!sub.contains(c)) out.push_back(c);
    return out;
}

IntMatrix PairPresentation::relative_boundary(int d) const {
    auto rows = relative_cells(d - 1);
    auto cols = relative_cells(d);
    std::map<index_t, index_t> row_of;
    for (index_t i = 0; i < static_cast<index_t>(rows.size()); ++i)
        row_of[rows[static_cast<size_t>(i)]] = i;
    IntMatrix m(static_cast<index_t>(rows.size()), static_cast<index_t>(cols.size()));
    for (index_t j = 0; j < static_cast<index_t>(cols.size()); ++j) {
        const auto& cell = space->cell(cols[static_cast<size_t>(j)]);
        for (const auto& [f, coeff] : cell.faces) {
            auto it = row_of.find(f);
            if (it != row_of.end()) m.add_at(it->second, j, coeff);
        }
    }
    return m;
}

CanonicalGroup PairPresentation::relative_homology(int n, const Coefficients& c) const {
    if (n < 0 || n > space->max_dim()) return {};
    if (c.modulus == 0) return alg::homology_at(relative_boundary(n), relative_boundary(n + 1));
    return alg::homology_at_mod(relative_boundary(n), relative_boundary(n + 1), c.modulus);
}

CanonicalGroup PairPresentation::relative_cohomology(int n, const Coefficients& c) const {
    if (n < 0 || n > space->max_dim()) return {};
    IntMatrix d_out = relative_boundary(n + 1).transposed();
    IntMatrix d_in = relative_boundary(n).transposed();
    if (c.modulus == 0) return alg::homology_at(d_out, d_in);
    return alg::homology_at_mod(d_out, d_in, c.modulus);
}

HomologyData PairPresentation::relative_homology_data(int n) const {
    return alg::homology_data(relative_boundary(n), relative_boundary(n + 1));
}

CellComplex quotient_complex(const PairPresentation& p, const std::string& basepoint_id) {
    const CellComplex& x = *p.space;
    if (x.find(basepoint_id))
        throw std::invalid_argument("basepoint id already used: " + basepoint_id);
    std::vector<CellComplex::PendingCell> pcs;
    pcs.push_back({basepoint_id, 0, {}});
    for (index_t i = 0; i < x.size(); ++i) {
        if (p.sub.contains(i)) continue;
        const auto& cell = x.cell(i);
        CellComplex::PendingCell pc{cell.id, cell.dim, {}};
        for (const auto& [f, coeff] : cell.faces) {
            if (!p.sub.contains(f)) {
                pc.faces.emplace_back(x.cell(f).id, coeff);
            } else if (cell.dim == 1) {
                pc.faces.emplace_back(basepoint_id, coeff);
            }
            // faces inside A of higher-dimensional cells vanish in X/A
        }
        pcs.push_back(std::move(pc));
    }
    CellComplex q = CellComplex::build(pcs);
    auto rep = q.validate();
    if (!rep.ok())
        throw std::invalid_argument("collapse does not yield a chain complex: " + rep.to_string());
    return q;
}

}  // namespace thom::cx
