#include "thom/axioms.hpp"

#include <random>
#include <sstream>

namespace thom::ax {

using alg::HomologyData;
using alg::IntMatrix;
using ideals::IndexIdeal;
using ideals::NatSet;
using ideals::SemilinearSet;

PairMaps pair_maps(const PairPresentation& p, int n) {
    const CellComplex& x = *p.space;
    HomologyData ha = p.sub.cells().empty()
                          ? HomologyData{IntMatrix(0, 0), IntMatrix(0, 0),
                                         alg::GroupPresentation(0)}
                          : p.sub.as_complex().homology_data(n);
    HomologyData ha1 = p.sub.cells().empty()
                           ? HomologyData{IntMatrix(0, 0), IntMatrix(0, 0),
                                          alg::GroupPresentation(0)}
                           : p.sub.as_complex().homology_data(n - 1);
    HomologyData hx = x.homology_data(n);
    HomologyData hrel = p.relative_homology_data(n);

    // chain-level inclusion C_n(A) -> C_n(X); A's complex reuses ids
    CellComplex acx = p.sub.cells().empty() ? CellComplex() : p.sub.as_complex();
    IntMatrix inc(x.count_in_dim(n), acx.count_in_dim(n));
    for (index_t j = 0; j < acx.count_in_dim(n); ++j) {
        const auto& id = acx.cell(acx.cells_of_dim(n)[static_cast<size_t>(j)]).id;
        inc.set(x.slot_of(*x.find(id)), j, 1);
    }

    // chain-level projection C_n(X) -> C_n(X, A)
    auto rel_cells = p.relative_cells(n);
    IntMatrix proj(static_cast<index_t>(rel_cells.size()), x.count_in_dim(n));
    for (index_t r = 0; r < static_cast<index_t>(rel_cells.size()); ++r)
        proj.set(r, x.slot_of(rel_cells[static_cast<size_t>(r)]), 1);

    PairMaps out{alg::induced_on_homology(ha, hx, inc),
                 GroupMap(hx.pres, hrel.pres, hrel.cycle_coords * (proj * hx.cycle_basis)),
                 GroupMap()};
    if (!out.quotient.well_defined()) throw std::logic_error("j_* not well defined");

    // connecting map: boundary of a lifted relative cycle, read in A
    auto rel_cells_n = rel_cells;
    IntMatrix lift(x.count_in_dim(n), static_cast<index_t>(rel_cells_n.size()));
    for (index_t r = 0; r < static_cast<index_t>(rel_cells_n.size()); ++r)
        lift.set(x.slot_of(rel_cells_n[static_cast<size_t>(r)]), r, 1);
    IntMatrix bdry = x.boundary_matrix(n) * (lift * hrel.cycle_basis);
    // rows live on A-cells only; express in A's chain coordinates
    IntMatrix into_a(acx.count_in_dim(n - 1), bdry.cols());
    bdry.for_each_nonzero([&](index_t r, index_t c, const Integer& v) {
        index_t xcell = x.cells_of_dim(n - 1)[static_cast<size_t>(r)];
        auto a_ix = acx.find(x.cell(xcell).id);
        if (!a_ix) throw std::logic_error("relative cycle boundary escapes the subcomplex");
        into_a.add_at(acx.slot_of(*a_ix), c, v);
    });
    out.connecting = GroupMap(hrel.pres, ha1.pres, ha1.cycle_coords * into_a);
    if (!out.connecting.well_defined()) throw std::logic_error("connecting map not well defined");
    return out;
}

ExactnessReport check_exactness(const PairPresentation& p, int lo, int hi) {
    ExactnessReport rep;
    rep.lo = lo;
    rep.hi = hi;
    std::ostringstream detail;
    bool ok = true;
    std::map<int, PairMaps> maps;
    for (int n = lo; n <= hi + 1; ++n) maps.emplace(n, pair_maps(p, n));
    for (int n = lo; n <= hi; ++n) {
        const PairMaps& at = maps.at(n);
        // node H_n(X): im i = ker j
        if (!alg::exact_at(at.inclusion, at.quotient)) {
            ok = false;
            detail << "not exact at H_" << n << "(X); ";
        }
        // node H_n(X,A): im j = ker d
        if (!alg::exact_at(at.quotient, at.connecting)) {
            ok = false;
            detail << "not exact at H_" << n << "(X,A); ";
        }
        // node H_n(A): im d_{n+1} = ker i_n
        if (!alg::exact_at(maps.at(n + 1).connecting, at.inclusion)) {
            ok = false;
            detail << "not exact at H_" << n << "(A); ";
        }
    }
    rep.pass = ok;
    rep.detail = detail.str();
    return rep;
}

ExcisionReport check_excision_and_dimension(const std::vector<ExcisionInstance>& corpus) {
    ExcisionReport rep;
    std::ostringstream detail;
    rep.excision_ok = true;
    for (const auto& inst : corpus) {
        ++rep.instances;
        const CellComplex& x = *inst.pair.space;
        // validate openness: U closed under cofaces, contained in A
        for (index_t u : inst.excised) {
            if (!inst.pair.sub.contains(u)) {
                rep.excision_ok = false;
                detail << inst.name << ": excised set leaves the subcomplex; ";
            }
        }
        for (index_t c = 0; c < x.size(); ++c)
            for (const auto& [f, coeff] : x.cell(c).faces) {
                (void)coeff;
                if (inst.excised.count(f) && !inst.excised.count(c)) {
                    rep.excision_ok = false;
                    detail << inst.name << ": excised set is not open; ";
                }
            }
        // build (X \ U, A \ U) and compare relative homology via the
        // identity on relative cells
        std::set<index_t> keep;
        for (index_t c = 0; c < x.size(); ++c)
            if (!inst.excised.count(c)) keep.insert(c);
        auto xprime = std::make_shared<CellComplex>(Subcomplex(inst.pair.space, keep).as_complex());
        std::set<index_t> aprime;
        for (index_t c = 0; c < xprime->size(); ++c)
            if (inst.pair.sub.contains(*x.find(xprime->cell(c).id))) aprime.insert(c);
        PairPresentation small(xprime, Subcomplex(xprime, aprime));
        for (int n = 0; n <= x.max_dim(); ++n) {
            HomologyData hs = small.relative_homology_data(n);
            HomologyData hb = inst.pair.relative_homology_data(n);
            auto cells_s = small.relative_cells(n);
            auto cells_b = inst.pair.relative_cells(n);
            if (cells_s.size() != cells_b.size()) {
                rep.excision_ok = false;
                continue;
            }
            IntMatrix ident(static_cast<index_t>(cells_b.size()),
                            static_cast<index_t>(cells_s.size()));
            std::map<std::string, index_t> brow;
            for (index_t r = 0; r < static_cast<index_t>(cells_b.size()); ++r)
                brow[x.cell(cells_b[static_cast<size_t>(r)]).id] = r;
            for (index_t c = 0; c < static_cast<index_t>(cells_s.size()); ++c)
                ident.set(brow.at(xprime->cell(cells_s[static_cast<size_t>(c)]).id), c, 1);
            GroupMap u = alg::induced_on_homology(hs, hb, ident);
            if (!u.is_isomorphism()) {
                rep.excision_ok = false;
                detail << inst.name << ": excision fails in degree " << n << "; ";
            }
        }
    }
    // dimension axiom on the singleton
    auto pt = std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}}));
    rep.dimension_ok = pt->homology(0) == CanonicalGroup::free(1);
    for (int i = 1; i <= 4 && rep.dimension_ok; ++i)
        if (!pt->homology(i).trivial()) rep.dimension_ok = false;
    Tower pt_tower;
    pt_tower.levels = {pt, pt};
    pt_tower.bondings = {ChainMap::identity(pt)};
    pt_tower.tail = tow::TailPolicy::constant(0);
    auto st = sc::steenrod_homology(pt_tower, 0, 3);
    if (!(st.by_degree[0].value == CanonicalGroup::free(1))) rep.dimension_ok = false;
    for (int i = 1; i <= 3; ++i)
        if (!st.by_degree[i].exact_zero()) rep.dimension_ok = false;
    rep.detail = detail.str();
    return rep;
}

StrongExcisionReport check_strong_excision(const PairPresentation& p) {
    StrongExcisionReport rep;
    std::ostringstream detail;
    CellComplex q = cx::quotient_complex(p, "*");
    auto qp = std::make_shared<CellComplex>(std::move(q));
    PairPresentation collapsed(qp, Subcomplex(qp, {*qp->find("*")}));
    rep.pass = true;
    for (int n = 0; n <= p.space->max_dim(); ++n) {
        HomologyData hb = p.relative_homology_data(n);
        HomologyData hq = collapsed.relative_homology_data(n);
        auto cells_b = p.relative_cells(n);
        auto cells_q = collapsed.relative_cells(n);
        if (cells_b.size() != cells_q.size()) {
            rep.pass = false;
            detail << "relative cell count mismatch in degree " << n << "; ";
            continue;
        }
        IntMatrix ident(static_cast<index_t>(cells_q.size()),
                        static_cast<index_t>(cells_b.size()));
        std::map<std::string, index_t> qrow;
        for (index_t r = 0; r < static_cast<index_t>(cells_q.size()); ++r)
            qrow[qp->cell(cells_q[static_cast<size_t>(r)]).id] = r;
        for (index_t c = 0; c < static_cast<index_t>(cells_b.size()); ++c)
            ident.set(qrow.at(p.space->cell(cells_b[static_cast<size_t>(c)]).id), c, 1);
        GroupMap u = alg::induced_on_homology(hb, hq, ident);
        if (!u.is_isomorphism()) {
            rep.pass = false;
            detail << "collapse not an isomorphism in degree " << n << "; ";
        }
    }
    rep.detail = detail.str();
    return rep;
}

bool check_homotopy(const ChainMap& f, const ChainMap& g, const ChainHomotopy& h) {
    if (!h.witnesses(f, g)) return false;
    int top = std::max(f.source()->max_dim(), f.target()->max_dim());
    for (int n = 0; n <= top; ++n) {
        GroupMap hf = f.induced(n), hg = g.induced(n);
        for (index_t j = 0; j < hf.matrix.cols(); ++j)
            if (!hf.target.same_class(hf.matrix.col_vector(j), hg.matrix.col_vector(j)))
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// scattered instances

ScatteredInstance ScatteredInstance::cluster(ComplexPtr component, std::string basepoint) {
    ScatteredInstance s;
    s.attachment = Attachment::Cluster;
    s.component = std::move(component);
    s.basepoint_id = std::move(basepoint);
    s.universe_dim = 1;
    // a compact cluster: every index set has compact closure, closed sets are
    // arbitrary as well
    s.kappa = IndexIdeal::full_universe(IndexIdeal::Kind::KappaType, "kappa(cluster)");
    s.nubar = IndexIdeal::full_universe(IndexIdeal::Kind::NubarType, "nubar(cluster)");
    s.name = "cluster";
    return s;
}

ScatteredInstance ScatteredInstance::disjoint_union(ComplexPtr component) {
    ScatteredInstance s;
    s.attachment = Attachment::DisjointUnion;
    s.component = std::move(component);
    s.universe_dim = 1;
    // X empty: compact closures are the finite index sets, everything closed
    s.kappa = IndexIdeal::finite_support(IndexIdeal::Kind::KappaType, "kappa(disjoint)");
    s.nubar = IndexIdeal::full_universe(IndexIdeal::Kind::NubarType, "nubar(disjoint)");
    s.name = "disjoint-union";
    return s;
}

ScatteredInstance ScatteredInstance::example_a(ComplexPtr component, std::string basepoint) {
    ScatteredInstance s;
    s.attachment = Attachment::Example10_3a;
    s.component = std::move(component);
    s.basepoint_id = std::move(basepoint);
    s.universe_dim = 2;
    auto inst = ideals::example_a_instance();
    s.kappa = inst.kappa;
    s.nubar = inst.nubar;
    s.name = "example-10.3a";
    return s;
}

ScatteredInstance ScatteredInstance::example_b(ComplexPtr component, std::string basepoint) {
    ScatteredInstance s;
    s.attachment = Attachment::Example10_3b;
    s.component = std::move(component);
    s.basepoint_id = std::move(basepoint);
    s.universe_dim = 2;
    auto inst = ideals::example_b_instance();
    s.kappa = inst.kappa;
    s.nubar = inst.nubar;
    s.name = "example-10.3b";
    return s;
}

namespace {

// Finite model of the scattered space at a truncation: `count` copies of the
// component (ids suffixed @k) plus one basepoint vertex for instances with
// nonempty X.
struct FiniteModel {
    ComplexPtr complex;
    std::vector<std::string> copy_suffix;  // per copy
    bool has_basepoint = false;
    std::string basepoint = "*";
};

FiniteModel build_model(const ScatteredInstance& s, const std::vector<index_t>& copies) {
    FiniteModel m;
    m.has_basepoint = s.attachment != ScatteredInstance::Attachment::DisjointUnion;
    std::vector<CellComplex::PendingCell> pcs;
    if (m.has_basepoint) pcs.push_back({m.basepoint, 0, {}});
    for (index_t k : copies) {
        std::string suf = "@" + std::to_string(k);
        m.copy_suffix.push_back(suf);
        for (index_t c = 0; c < s.component->size(); ++c) {
            const auto& cell = s.component->cell(c);
            CellComplex::PendingCell pc{cell.id + suf, cell.dim, {}};
            for (const auto& [f, coeff] : cell.faces)
                pc.faces.emplace_back(s.component->cell(f).id + suf, coeff);
            pcs.push_back(std::move(pc));
        }
    }
    m.complex = std::make_shared<CellComplex>(CellComplex::build(pcs));
    return m;
}

PairPresentation model_pair(const FiniteModel& m) {
    if (!m.has_basepoint) return PairPresentation::absolute(m.complex);
    return {m.complex, Subcomplex(m.complex, {*m.complex->find(m.basepoint)})};
}

// Retraction of the model onto one copy (plus basepoint): identity there,
// everything else to the basepoint.
ChainMap retraction_onto(const FiniteModel& m, const ComplexPtr& copy_target,
                         const std::string& suffix) {
    ChainMap r(m.complex, copy_target);
    index_t base = *copy_target->find("*");
    for (index_t c = 0; c < m.complex->size(); ++c) {
        const auto& id = m.complex->cell(c).id;
        auto t = copy_target->find(id);
        if (t && id != m.basepoint && id.size() >= suffix.size() &&
            id.substr(id.size() - suffix.size()) == suffix) {
            r.set_image(c, {{*t, 1}});
        } else if (m.complex->cell(c).dim == 0) {
            r.set_image(c, {{base, 1}});
        } else {
            r.set_image(c, {});
        }
    }
    return r;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    IntMatrix out(a.rows() + b.rows(), a.cols());
    a.for_each_nonzero([&](index_t r, index_t c, const Integer& v) { out.set(r, c, v); });
    b.for_each_nonzero([&](index_t r, index_t c, const Integer& v) { out.set(a.rows() + r, c, v); });
    return out;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    a.for_each_nonzero([&](index_t r, index_t c, const Integer& v) { out.set(r, c, v); });
    b.for_each_nonzero(
        [&](index_t r, index_t c, const Integer& v) { out.set(a.rows() + r, a.cols() + c, v); });
    return out;
}

// The assembled map into the direct sum/product of the targets: vertically
// stacked matrices into the block-diagonal relation presentation.
GroupMap assemble_product(const alg::GroupPresentation& src,
                          const std::vector<GroupMap>& components) {
    IntMatrix stacked(0, src.generators());
    IntMatrix rels(0, 0);
    for (const auto& c : components) {
        stacked = vstack(stacked, c.matrix);
        rels = block_diag(rels, c.target.relations());
    }
    alg::GroupPresentation product(stacked.rows(), rels);
    return {src, product, stacked};
}

}  // namespace

AdditivityReport check_controlled_additivity(const ScatteredInstance& s, int degree,
                                             index_t truncation, std::uint64_t seed) {
    AdditivityReport rep;
    rep.components = truncation;
    std::ostringstream detail;
    std::mt19937_64 rng(seed);

    // index list: 1-D instances use 0..truncation-1; 2-D ones a square grid
    std::vector<index_t> all_indices;
    index_t side = s.universe_dim == 2
                       ? std::max<index_t>(2, static_cast<index_t>(std::sqrt(double(truncation))))
                       : truncation;
    if (s.universe_dim == 1)
        for (index_t i = 0; i < truncation; ++i) all_indices.push_back(i);
    else
        for (index_t i = 0; i < side * side; ++i) all_indices.push_back(i);

    CanonicalGroup comp_h = s.component->homology(degree);
    CanonicalGroup comp_hrel;  // relative to the basepoint when wedging
    {
        auto base = s.component->find(s.basepoint_id);
        if (base) {
            PairPresentation pp(s.component,
                                Subcomplex(s.component, s.component->closure({*base})));
            comp_hrel = pp.relative_homology(degree);
        } else {
            comp_hrel = comp_h;
        }
    }

    // (i) phi^K: relative homology of sampled closures vs finite products
    rep.phi_k_ok = true;
    std::vector<std::vector<index_t>> samples = {all_indices};
    if (all_indices.size() > 1) {
        samples.push_back({all_indices[0]});
        std::vector<index_t> half(all_indices.begin(),
                                  all_indices.begin() + all_indices.size() / 2);
        samples.push_back(half);
    }
    for (const auto& k_set : samples) {
        FiniteModel m = build_model(s, k_set);
        PairPresentation pair = model_pair(m);
        CanonicalGroup lhs = m.has_basepoint ? pair.relative_homology(degree)
                                             : m.complex->homology(degree);
        const CanonicalGroup& factor = m.has_basepoint ? comp_hrel : comp_h;
        std::vector<Integer> torsion;
        index_t rank = 0;
        for (size_t i = 0; i < k_set.size(); ++i) {
            rank += factor.rank;
            torsion.insert(torsion.end(), factor.torsion.begin(), factor.torsion.end());
        }
        CanonicalGroup rhs = CanonicalGroup::from_factors(rank, torsion);
        if (!(lhs == rhs)) {
            rep.phi_k_ok = false;
            detail << "phi^K group mismatch for |K|=" << k_set.size() << "; ";
            continue;
        }
        // the retraction-projections assemble to an isomorphism onto the
        // finite product
        if (m.has_basepoint && !k_set.empty()) {
            HomologyData hsrc = pair.relative_homology_data(degree);
            auto scells = pair.relative_cells(degree);
            std::vector<GroupMap> projections;
            for (index_t idx : k_set) {
                FiniteModel one = build_model(s, {idx});
                PairPresentation tp = model_pair(one);
                ChainMap r = retraction_onto(m, one.complex, "@" + std::to_string(idx));
                r.require_chain_map();
                HomologyData htgt = tp.relative_homology_data(degree);
                auto tcells = tp.relative_cells(degree);
                std::map<index_t, index_t> trow;
                for (index_t i = 0; i < static_cast<index_t>(tcells.size()); ++i)
                    trow[tcells[static_cast<size_t>(i)]] = i;
                IntMatrix mm(static_cast<index_t>(tcells.size()),
                             static_cast<index_t>(scells.size()));
                for (index_t j = 0; j < static_cast<index_t>(scells.size()); ++j)
                    for (const auto& [tc, coeff] : r.image(scells[static_cast<size_t>(j)])) {
                        auto it = trow.find(tc);
                        if (it != trow.end()) mm.add_at(it->second, j, coeff);
                    }
                projections.push_back(alg::induced_on_homology(hsrc, htgt, mm));
            }
            GroupMap phi_k = assemble_product(hsrc.pres, projections);
            if (!phi_k.well_defined() || !phi_k.is_isomorphism()) {
                rep.phi_k_ok = false;
                detail << "phi^K assembly not an isomorphism for |K|=" << k_set.size() << "; ";
            }
        }
        // X empty: disjoint-union additivity, assembled from the inclusions
        // out of the direct sum
        if (!m.has_basepoint && !k_set.empty()) {
            HomologyData htgt = m.complex->homology_data(degree);
            IntMatrix stacked(m.complex->count_in_dim(degree), 0);
            IntMatrix rels(0, 0);
            for (index_t idx : k_set) {
                std::string suf = "@" + std::to_string(idx);
                IntMatrix incl(m.complex->count_in_dim(degree),
                               s.component->count_in_dim(degree));
                for (index_t j = 0; j < s.component->count_in_dim(degree); ++j) {
                    const auto& id = s.component
                                         ->cell(s.component->cells_of_dim(
                                             degree)[static_cast<size_t>(j)])
                                         .id;
                    incl.set(m.complex->slot_of(*m.complex->find(id + suf)), j, 1);
                }
                GroupMap one = alg::induced_on_homology(s.component->homology_data(degree),
                                                        htgt, incl);
                stacked = IntMatrix::hstack(stacked, one.matrix);
                rels = block_diag(rels, one.source.relations());
            }
            alg::GroupPresentation sum(stacked.cols(), rels);
            GroupMap from_sum(sum, htgt.pres, stacked);
            if (!from_sum.well_defined() || !from_sum.is_isomorphism()) {
                rep.phi_k_ok = false;
                detail << "disjoint-union additivity assembly fails for |K|=" << k_set.size()
                       << "; ";
            }
        }
    }

    // (ii) psi_F: cohomology of sampled disjoint unions vs products, via the
    // inclusion-induced restriction maps
    rep.psi_f_ok = true;
    for (const auto& f_set : samples) {
        // C_F is a plain disjoint union (no basepoint)
        ScatteredInstance plain = s;
        plain.attachment = ScatteredInstance::Attachment::DisjointUnion;
        FiniteModel m = build_model(plain, f_set);
        CanonicalGroup lhs = m.complex->cohomology(degree);
        CanonicalGroup factor = s.component->cohomology(degree);
        std::vector<Integer> torsion;
        index_t rank = 0;
        for (size_t i = 0; i < f_set.size(); ++i) {
            rank += factor.rank;
            torsion.insert(torsion.end(), factor.torsion.begin(), factor.torsion.end());
        }
        if (!(lhs == CanonicalGroup::from_factors(rank, torsion))) {
            rep.psi_f_ok = false;
            detail << "psi_F group mismatch for |F|=" << f_set.size() << "; ";
            continue;
        }
        auto codata = [&](const CellComplex& k) {
            return alg::homology_data(k.boundary_matrix(degree + 1).transposed(),
                                      k.boundary_matrix(degree).transposed());
        };
        HomologyData hsrc = codata(*m.complex);
        std::vector<GroupMap> restrictions;
        for (index_t idx : f_set) {
            std::string suf = "@" + std::to_string(idx);
            // restriction of cochains = transpose of the chain inclusion
            IntMatrix incl(m.complex->count_in_dim(degree), s.component->count_in_dim(degree));
            for (index_t j = 0; j < s.component->count_in_dim(degree); ++j) {
                const auto& id =
                    s.component->cell(s.component->cells_of_dim(degree)[static_cast<size_t>(j)]).id;
                incl.set(m.complex->slot_of(*m.complex->find(id + suf)), j, 1);
            }
            restrictions.push_back(
                alg::induced_on_homology(hsrc, codata(*s.component), incl.transposed()));
        }
        GroupMap psi_f = assemble_product(hsrc.pres, restrictions);
        if (!psi_f.well_defined() || !psi_f.is_isomorphism()) {
            rep.psi_f_ok = false;
            detail << "psi_F assembly not an isomorphism for |F|=" << f_set.size() << "; ";
        }
    }

    // (iii) assembled membership against the K-direct-sum predicate
    rep.assembled_ok = true;
    kd::GroupFamily fam{s.universe_dim, comp_hrel.trivial() ? comp_h : comp_hrel, std::nullopt};
    if (fam.group.trivial()) fam.group = CanonicalGroup::free(1);
    for (int trial = 0; trial < 24; ++trial) {
        SemilinearSet supp =
            s.universe_dim == 1
                ? SemilinearSet((trial % 2) ? NatSet::finite({Integer(trial % 7)})
                                            : NatSet::from(trial % 5))
                : ((trial % 2) ? SemilinearSet::finite_points({{trial % 5, trial % 7}})
                               : SemilinearSet::rectangle(NatSet::all(),
                                                          NatSet::finite({Integer(trial % 4)})));
        std::vector<Integer> val(static_cast<size_t>(
                                     alg::GroupPresentation::of(fam.group).generators()),
                                 Integer(0));
        if (!val.empty()) val[0] = 1 + (trial % 3);
        kd::PatternElement g = kd::PatternElement::piece(fam, supp, val);
        bool member = kd::in_kdirect_sum(g, s.kappa);
        bool expected;
        switch (s.attachment) {
            case ScatteredInstance::Attachment::Cluster:
                expected = true;  // product membership for every pattern
                break;
            case ScatteredInstance::Attachment::DisjointUnion:
                expected = g.support().is_finite();
                break;
            default:
                expected = ideals::meets_every_member_finitely(g.support(), s.nubar);
                break;
        }
        if (member != expected) {
            rep.assembled_ok = false;
            detail << "membership mismatch on trial " << trial << "; ";
        }
        (void)rng;
    }

    // (iv) dualized formulation
    rep.dual_ok = true;
    if (s.universe_dim == 2) {
        for (int trial = 0; trial < 24; ++trial) {
            SemilinearSet supp = (trial % 2)
                                     ? SemilinearSet::finite_points({{trial % 6, trial % 5}})
                                     : SemilinearSet::under_graph(
                                           ideals::StepFunction::affine(trial % 2, trial % 4));
            kd::PatternElement g = kd::PatternElement::piece(fam, supp, {1});
            if (!kd::chi_check(g, s.kappa, s.nubar).pass()) rep.dual_ok = false;
        }
    }
    // the assembled group at the infinite level, as a symbolic value
    GroupResult assembled = s.attachment == ScatteredInstance::Attachment::DisjointUnion
                                ? GroupResult::symbolic("countable direct sum of " +
                                                        fam.group.to_string())
                                : GroupResult::product(fam.group);
    detail << "assembled group: " << assembled.to_string();
    rep.detail = detail.str();
    return rep;
}

// ---------------------------------------------------------------------------
// uniqueness

std::string TheoryHandle::name() const {
    switch (pipeline) {
        case Pipeline::DirectCellular: return "DirectCellular";
        case Pipeline::TelescopeSteenrod: return "TelescopeSteenrod";
        case Pipeline::CechDual: return "CechDual";
    }
    return "?";
}

GroupResult TheoryHandle::evaluate(const Tower& t, int degree) const {
    switch (pipeline) {
        case Pipeline::DirectCellular:
            return GroupResult::exact(t.level(t.tail.from)->homology(degree));
        case Pipeline::TelescopeSteenrod: {
            auto r = sc::steenrod_homology(t, degree, degree);
            return r.by_degree.at(degree);
        }
        case Pipeline::CechDual:
            return sc::cech_cohomology(t, degree).group;
    }
    return {};
}

bool TheoryHandle::functorial_on_identity(const Tower& t, int degree) const {
    if (pipeline != Pipeline::DirectCellular) return true;
    return ChainMap::identity(t.level(t.tail.from)).induced(degree).is_isomorphism();
}

UniquenessReport uniqueness_cross_check(const std::vector<UniquenessInstance>& corpus,
                                        index_t depth) {
    UniquenessReport rep;
    std::ostringstream detail;
    rep.groups_agree = true;
    rep.natural = true;
    for (const auto& inst : corpus) {
        ++rep.instances;
        const Tower& t = inst.source;
        const CellComplex& stable = *t.level(t.tail.from);
        for (int deg = 0; deg <= stable.max_dim(); ++deg) {
            ++rep.degrees_checked;
            CanonicalGroup direct = stable.homology(deg);
            try {
                sc::ShiftIso iso = sc::telescope_shift_iso(t, deg, depth);
                if (!(iso.telescope_side.group() == direct) ||
                    !(iso.cell_side.group() == direct)) {
                    rep.groups_agree = false;
                    detail << inst.name << ": disagreement in degree " << deg << "; ";
                }
            } catch (const std::exception& e) {
                rep.groups_agree = false;
                detail << inst.name << ": " << e.what() << "; ";
                continue;
            }
            auto st = sc::steenrod_homology(t, deg, deg);
            if (!(st.by_degree.at(deg).tag == GroupResult::Tag::Exact &&
                  st.by_degree.at(deg).value == direct)) {
                rep.groups_agree = false;
                detail << inst.name << ": pipeline value mismatch in degree " << deg << "; ";
            }
        }
        if (!inst.map || !inst.target) continue;
        // naturality: the identification commutes with induced maps
        const Tower& t2 = *inst.target;
        const ChainMap& f = *inst.map;
        f.require_chain_map();
        for (int deg = 0; deg <= std::max(stable.max_dim(), t2.level(0)->max_dim()); ++deg) {
            sc::ShiftIso is = sc::telescope_shift_iso(t, deg, depth);
            sc::ShiftIso it2 = sc::telescope_shift_iso(t2, deg, depth);
            // telescope-level chain map: levels and prisms follow f
            tow::Telescope da = tow::coned_telescope(t, depth);
            tow::Telescope db = tow::coned_telescope(t2, depth);
            ChainMap F(da.complex, db.complex);
            for (index_t g = 0; g < da.complex->size(); ++g) {
                const auto& id = da.complex->cell(g).id;
                auto colon = id.find(':');
                std::string prefix = id.substr(0, colon + 1);
                std::string cell = id.substr(colon + 1);
                std::vector<std::pair<index_t, Integer>> img;
                for (const auto& [tc, coeff] : f.image(*f.source()->find(cell))) {
                    auto gi = db.complex->find(prefix + f.target()->cell(tc).id);
                    if (gi) img.emplace_back(*gi, coeff);
                }
                F.set_image(g, std::move(img));
            }
            F.require_chain_map();
            // induced on the relative pairs
            PairPresentation pa(da.complex, Subcomplex(da.complex, da.level_zero_cells()));
            PairPresentation pb(db.complex, Subcomplex(db.complex, db.level_zero_cells()));
            auto acells = pa.relative_cells(deg + 1);
            auto bcells = pb.relative_cells(deg + 1);
            std::map<index_t, index_t> brow;
            for (index_t r = 0; r < static_cast<index_t>(bcells.size()); ++r)
                brow[bcells[static_cast<size_t>(r)]] = r;
            IntMatrix fm(static_cast<index_t>(bcells.size()),
                         static_cast<index_t>(acells.size()));
            for (index_t j = 0; j < static_cast<index_t>(acells.size()); ++j)
                for (const auto& [tc, coeff] : F.image(acells[static_cast<size_t>(j)])) {
                    auto it = brow.find(tc);
                    if (it != brow.end()) fm.add_at(it->second, j, coeff);
                }
            GroupMap tele_f = alg::induced_on_homology(is.telescope_side, it2.telescope_side, fm);
            GroupMap cell_f = alg::induced_on_homology(is.cell_side, it2.cell_side,
                                                       f.matrix(deg));
            GroupMap lhs = tele_f.after(is.iso);
            GroupMap rhs = it2.iso.after(cell_f);
            for (index_t j = 0; j < lhs.matrix.cols(); ++j)
                if (!lhs.target.same_class(lhs.matrix.col_vector(j),
                                           rhs.matrix.col_vector(j))) {
                    rep.natural = false;
                    detail << inst.name << ": naturality fails in degree " << deg << "; ";
                    break;
                }
        }
    }
    rep.detail = detail.str();
    return rep;
}

}  // namespace thom::ax
