#include "thom/tower_limits.hpp"

#include <algorithm>
#include <sstream>

namespace thom::alg {

namespace {

bool same_presentation(const GroupPresentation& a, const GroupPresentation& b) {
    return a.generators() == b.generators() && a.relations() == b.relations();
}

}  // namespace

const GroupPresentation& GroupTower::level(index_t i) const {
    if (i < stored_levels()) return levels[static_cast<size_t>(i)];
    switch (tail.kind) {
        case TailKind::TruncatedUnknown:
            throw DepthUnavailable("level beyond truncated tower");
        case TailKind::EventuallyConstant:
            return levels.back();
        case TailKind::EventuallyPeriodic: {
            index_t pos = tail.from + (i - tail.from) % tail.period;
            return levels[static_cast<size_t>(pos)];
        }
    }
    throw std::logic_error("bad tail kind");
}

GroupMap GroupTower::bonding(index_t i) const {
    if (i < static_cast<index_t>(bondings.size())) return bondings[static_cast<size_t>(i)];
    switch (tail.kind) {
        case TailKind::TruncatedUnknown:
            throw DepthUnavailable("bonding beyond truncated tower");
        case TailKind::EventuallyConstant:
            return GroupMap::identity(level(tail.from));
        case TailKind::EventuallyPeriodic: {
            index_t pos = tail.from + (i - tail.from) % tail.period;
            if (pos >= static_cast<index_t>(bondings.size()))
                throw DepthUnavailable("periodic block not fully stored");
            return bondings[static_cast<size_t>(pos)];
        }
    }
    throw std::logic_error("bad tail kind");
}

void GroupTower::validate() const {
    if (static_cast<index_t>(bondings.size()) + 1 != stored_levels() && stored_levels() > 0)
        throw std::invalid_argument("tower needs one bonding per consecutive level pair");
    for (index_t i = 0; i + 1 < stored_levels(); ++i) {
        const GroupMap& b = bondings[static_cast<size_t>(i)];
        const GroupPresentation& hi = levels[static_cast<size_t>(i + 1)];
        const GroupPresentation& lo = levels[static_cast<size_t>(i)];
        const GroupPresentation& src = reversed ? lo : hi;
        const GroupPresentation& tgt = reversed ? hi : lo;
        if (b.source.generators() != src.generators() || b.target.generators() != tgt.generators())
            throw std::invalid_argument("bonding shape mismatch at level " + std::to_string(i));
        if (!b.well_defined())
            throw std::invalid_argument("bonding not well defined at level " + std::to_string(i));
    }
    if (tail.kind == TailKind::EventuallyConstant && tail.from >= stored_levels())
        throw std::invalid_argument("EventuallyConstant: 'from' level not stored");
    if (tail.kind == TailKind::EventuallyPeriodic) {
        if (tail.period < 1) throw std::invalid_argument("period must be >= 1");
        // levels from .. from+period inclusive must be stored so the block
        // and its first repeat are visible
        if (stored_levels() < tail.from + tail.period + 1)
            throw std::invalid_argument("EventuallyPeriodic: repeating block not fully stored");
        if (!same_presentation(level(tail.from), level(tail.from + tail.period)))
            throw std::invalid_argument("EventuallyPeriodic: block endpoints differ");
    }
}

GroupResult GroupResult::adic(Integer m) {
    GroupResult r;
    r.tag = Tag::AdicQuotient;
    r.param = std::move(m);
    r.mittag_leffler = false;
    return r;
}

GroupResult GroupResult::localization(Integer m) {
    GroupResult r;
    r.tag = Tag::Localization;
    r.param = std::move(m);
    return r;
}

GroupResult GroupResult::product(CanonicalGroup factor) {
    GroupResult r;
    r.tag = Tag::CountableProduct;
    r.value = std::move(factor);
    return r;
}

GroupResult GroupResult::symbolic(std::string note) {
    GroupResult r;
    r.tag = Tag::SymbolicNonzero;
    r.note = std::move(note);
    r.mittag_leffler = false;
    return r;
}

GroupResult GroupResult::undetermined(std::vector<CanonicalGroup> data, std::string note) {
    GroupResult r;
    r.tag = Tag::Undetermined;
    r.truncation_data = std::move(data);
    r.note = std::move(note);
    return r;
}

std::string GroupResult::to_string() const {
    switch (tag) {
        case Tag::Exact:
            return value.to_string();
        case Tag::AdicQuotient:
            return "Z_" + param.get_str() + "-adic/Z";
        case Tag::CountableProduct:
            return "prod_N(" + value.to_string() + ")";
        case Tag::Localization:
            return "Z[1/" + param.get_str() + "]";
        case Tag::SymbolicNonzero:
            return "nonzero: " + note;
        case Tag::Undetermined: {
            std::ostringstream os;
            os << "undetermined (truncation:";
            for (const auto& g : truncation_data) os << " " << g.to_string();
            os << ")";
            return os.str();
        }
    }
    return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Canonical-coordinate analysis of the composite bonding over one period.

struct Endo {
    // live canonical coordinates: moduli 0 (free) or d >= 2 (torsion)
    std::vector<Integer> moduli;
    IntMatrix m;  // square on live coordinates, torsion rows reduced mod d
};

// Endomorphism of g induced by the generator matrix b, in live canonical
// coordinates.
Endo canonical_endo(const GroupPresentation& g, const IntMatrix& b) {
    IntMatrix full = g.to_canonical() * (b * g.from_canonical());
    std::vector<index_t> live;
    for (index_t i = 0; i < g.generators(); ++i)
        if (g.moduli()[static_cast<size_t>(i)] != 1) live.push_back(i);
    Endo e;
    e.moduli.reserve(live.size());
    for (index_t i : live) e.moduli.push_back(g.moduli()[static_cast<size_t>(i)]);
    e.m = full.select_rows(live).select_cols(live);
    for (index_t r = 0; r < e.m.rows(); ++r) {
        const Integer& d = e.moduli[static_cast<size_t>(r)];
        if (d == 0) continue;
        for (index_t c = 0; c < e.m.cols(); ++c) {
            const Integer& v = e.m.at(r, c);
            if (v != 0) e.m.set(r, c, mod_nonneg(v, d));
        }
    }
    return e;
}

struct Cycle {
    std::vector<index_t> coords;  // positions within the free block
    Integer weight;               // product of weights around the cycle
};

struct EndoShape {
    bool supported = true;
    std::string reason;
    std::vector<index_t> free_ix, tors_ix;  // positions in live coords
    std::vector<index_t> succ;              // per free position: successor or -1
    std::vector<Integer> weight;            // per free position
    std::vector<Cycle> cycles;
    IntMatrix t;                            // torsion block
    std::vector<Integer> tmod;
};

EndoShape analyze(const Endo& e) {
    EndoShape s;
    index_t n = e.m.rows();
    for (index_t i = 0; i < n; ++i)
        (e.moduli[static_cast<size_t>(i)] == 0 ? s.free_ix : s.tors_ix).push_back(i);

    std::vector<index_t> free_pos(static_cast<size_t>(n), -1);
    for (size_t p = 0; p < s.free_ix.size(); ++p)
        free_pos[static_cast<size_t>(s.free_ix[p])] = static_cast<index_t>(p);

    s.succ.assign(s.free_ix.size(), -1);
    s.weight.assign(s.free_ix.size(), Integer(0));
    std::vector<int> row_hits(s.free_ix.size(), 0);

    for (size_t cp = 0; cp < s.free_ix.size(); ++cp) {
        index_t c = s.free_ix[cp];
        for (index_t r = 0; r < n; ++r) {
            const Integer& v = e.m.at(r, c);
            if (v == 0) continue;
            if (e.moduli[static_cast<size_t>(r)] != 0) {
                s.supported = false;
                s.reason = "free summand maps into torsion";
                return s;
            }
            if (s.weight[cp] != 0) {
                s.supported = false;
                s.reason = "free block not monomial (column fan-out)";
                return s;
            }
            s.succ[cp] = free_pos[static_cast<size_t>(r)];
            s.weight[cp] = v;
            if (++row_hits[static_cast<size_t>(s.succ[cp])] > 1) {
                s.supported = false;
                s.reason = "free block not monomial (row fan-in)";
                return s;
            }
        }
    }

    // torsion rows of torsion columns; torsion -> free is forced zero by
    // well-definedness but verify anyway
    for (index_t tc : s.tors_ix)
        for (index_t r = 0; r < n; ++r)
            if (e.moduli[static_cast<size_t>(r)] == 0 && e.m.at(r, tc) != 0) {
                s.supported = false;
                s.reason = "torsion maps into free summand";
                return s;
            }
    s.t = e.m.select_rows(s.tors_ix).select_cols(s.tors_ix);
    for (index_t i : s.tors_ix) s.tmod.push_back(e.moduli[static_cast<size_t>(i)]);

    // cycle extraction on the partial injection succ
    std::vector<int> state(s.free_ix.size(), 0);
    for (size_t start = 0; start < s.free_ix.size(); ++start) {
        if (state[start] != 0) continue;
        std::vector<index_t> path;
        index_t cur = static_cast<index_t>(start);
        while (cur >= 0 && state[static_cast<size_t>(cur)] == 0) {
            state[static_cast<size_t>(cur)] = 1;
            path.push_back(cur);
            cur = s.weight[static_cast<size_t>(cur)] == 0 ? -1 : s.succ[static_cast<size_t>(cur)];
        }
        if (cur >= 0 && state[static_cast<size_t>(cur)] == 1) {
            auto it = std::find(path.begin(), path.end(), cur);
            Cycle cy;
            cy.weight = 1;
            for (auto p = it; p != path.end(); ++p) {
                cy.coords.push_back(*p);
                cy.weight *= s.weight[static_cast<size_t>(*p)];
            }
            s.cycles.push_back(std::move(cy));
        }
        for (index_t p : path) state[static_cast<size_t>(p)] = 2;
        if (cur >= 0) state[static_cast<size_t>(cur)] = 2;
    }
    return s;
}

// --- torsion-lattice helpers (subgroups of ⊕ Z/d as lattices in Z^s
//     containing diag(d)) ---

IntMatrix diag_of(const std::vector<Integer>& d) {
    IntMatrix m(static_cast<index_t>(d.size()), static_cast<index_t>(d.size()));
    for (index_t i = 0; i < m.rows(); ++i) m.set(i, i, d[static_cast<size_t>(i)]);
    return m;
}

// Reduce a spanning set to an actual basis of the lattice it spans:
// M = Uinv S Vinv, so im(M) has basis d_i * (col i of Uinv).
IntMatrix lattice_basis(const IntMatrix& span) {
    auto snf = smith_normal_form(span);
    IntMatrix b(span.rows(), snf.rank);
    for (index_t j = 0; j < snf.rank; ++j)
        for (index_t i = 0; i < span.rows(); ++i) {
            Integer v = snf.divisors[static_cast<size_t>(j)] * snf.Uinv.at(i, j);
            if (v != 0) b.set(i, j, v);
        }
    return b;
}

bool lattice_contains(const IntMatrix& big, const IntMatrix& small) {
    auto snf = smith_normal_form(big);
    for (index_t j = 0; j < small.cols(); ++j)
        if (!solve(snf, small.col_vector(j))) return false;
    return true;
}

bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
    return lattice_contains(a, b) && lattice_contains(b, a);
}

// quotient of Z^s by the lattice, as a canonical group
CanonicalGroup lattice_quotient(index_t s, const IntMatrix& lat) {
    return GroupPresentation(s, lat).canonical();
}

// L / D where D = diag(d) ⊆ L; lat must be an honest basis
CanonicalGroup sub_quotient(const IntMatrix& lat, const std::vector<Integer>& d) {
    auto x = solve_matrix(lat, diag_of(d));
    if (!x) throw std::logic_error("diag not inside lattice");
    return GroupPresentation(lat.cols(), std::move(*x)).canonical();
}

// stable image lattice of t acting on ⊕ Z/d
IntMatrix stable_image(const IntMatrix& t, const std::vector<Integer>& d) {
    IntMatrix cur = IntMatrix::identity(t.rows());
    for (;;) {
        IntMatrix next = lattice_basis(IntMatrix::hstack(t * cur, diag_of(d)));
        if (lattice_equal(next, cur)) return cur;
        cur = std::move(next);
    }
}

// stable kernel lattice of t acting on ⊕ Z/d
IntMatrix stable_kernel(const IntMatrix& t, const std::vector<Integer>& d) {
    IntMatrix cur = diag_of(d);
    for (;;) {
        // { x : t x ∈ span cur }
        IntMatrix stacked = IntMatrix::hstack(t, cur);
        IntMatrix ker = kernel_basis(stacked);
        std::vector<index_t> xs;
        for (index_t i = 0; i < t.cols(); ++i) xs.push_back(i);
        IntMatrix next = lattice_basis(IntMatrix::hstack(ker.select_rows(xs), diag_of(d)));
        if (lattice_equal(next, cur)) return cur;
        cur = std::move(next);
    }
}

// Composite bonding over one period, as an endomorphism of level `from`.
// For inverse towers this is b_from ∘ ... ∘ b_{from+p-1}; for direct towers
// b_{from+p-1} ∘ ... ∘ b_from.
GroupMap periodic_composite(const GroupTower& t) {
    index_t from = t.tail.from, p = t.tail.period;
    if (!same_presentation(t.level(from), t.level(from + p)))
        throw UnsupportedBonding("periodic block endpoints present different groups");
    GroupMap acc = GroupMap::identity(t.level(from));
    if (!t.reversed) {
        for (index_t i = from; i < from + p; ++i) acc = acc.after(t.bonding(i));
        // acc: level(from+p) -> level(from); reinterpret source as level(from)
        return {t.level(from), t.level(from), acc.matrix};
    }
    for (index_t i = from; i < from + p; ++i) acc = t.bonding(i).after(acc);
    return {t.level(from), t.level(from), acc.matrix};
}

struct TailAnalysis {
    GroupPresentation block;
    EndoShape shape;
};

TailAnalysis analyze_tail(const GroupTower& t) {
    GroupMap e = periodic_composite(t);
    TailAnalysis ta{e.source, analyze(canonical_endo(e.source, e.matrix))};
    if (!ta.shape.supported) throw UnsupportedBonding(ta.shape.reason);
    return ta;
}

std::vector<CanonicalGroup> truncation_groups(const GroupTower& t) {
    std::vector<CanonicalGroup> out;
    for (const auto& g : t.levels) out.push_back(g.canonical());
    return out;
}

}  // namespace

GroupResult tower_lim(const GroupTower& t) {
    t.validate();
    if (t.reversed) throw std::invalid_argument("tower_lim expects an inverse tower");
    if (t.tail.kind == TailKind::TruncatedUnknown)
        return GroupResult::undetermined(truncation_groups(t), "truncated tail");
    if (t.tail.kind == TailKind::EventuallyConstant)
        return GroupResult::exact(t.level(t.tail.from).canonical());

    TailAnalysis ta = analyze_tail(t);
    index_t rank = 0;
    for (const auto& cy : ta.shape.cycles)
        if (int_abs(cy.weight) == 1) rank += static_cast<index_t>(cy.coords.size());
    CanonicalGroup tors;
    if (!ta.shape.tmod.empty())
        tors = sub_quotient(stable_image(ta.shape.t, ta.shape.tmod), ta.shape.tmod);
    std::vector<Integer> factors = tors.torsion;
    return GroupResult::exact(CanonicalGroup::from_factors(rank + tors.rank, std::move(factors)));
}

bool tower_images_stabilize(const GroupTower& t) {
    t.validate();
    if (t.reversed) throw std::invalid_argument("expects an inverse tower");
    if (t.tail.kind == TailKind::TruncatedUnknown) return false;
    if (t.tail.kind == TailKind::EventuallyConstant) return true;
    TailAnalysis ta = analyze_tail(t);
    for (const auto& cy : ta.shape.cycles)
        if (int_abs(cy.weight) >= 2) return false;
    return true;
}

GroupResult tower_lim1(const GroupTower& t) {
    t.validate();
    if (t.reversed) throw std::invalid_argument("tower_lim1 expects an inverse tower");
    if (t.tail.kind == TailKind::TruncatedUnknown)
        return GroupResult::undetermined(truncation_groups(t), "truncated tail");
    if (t.tail.kind == TailKind::EventuallyConstant) return GroupResult::exact({});

    TailAnalysis ta = analyze_tail(t);
    std::vector<Cycle> expanding;
    for (const auto& cy : ta.shape.cycles)
        if (int_abs(cy.weight) >= 2) expanding.push_back(cy);
    if (expanding.empty()) return GroupResult::exact({});
    if (expanding.size() == 1 && expanding[0].coords.size() == 1)
        return GroupResult::adic(int_abs(expanding[0].weight));
    std::ostringstream os;
    for (size_t i = 0; i < expanding.size(); ++i) {
        if (i) os << " + ";
        os << "(Z_" << int_abs(expanding[i].weight).get_str() << "-adic/Z)";
        if (expanding[i].coords.size() > 1) os << "^" << expanding[i].coords.size();
    }
    return GroupResult::symbolic(os.str());
}

struct Colimit::Detail {
    GroupMap composite;
    EndoShape shape;
    IntMatrix stable_ker;
    SmithResult ker_snf;
    std::vector<index_t> live_to_full;  // live coordinate -> full canonical index
};

Colimit::Colimit(GroupTower direct) : tower_(std::move(direct)) {
    tower_.validate();
    if (!tower_.reversed) throw std::invalid_argument("Colimit expects a direct tower");
    if (tower_.tail.kind == TailKind::TruncatedUnknown) {
        result_ = GroupResult::undetermined(truncation_groups(tower_), "truncated tail");
        return;
    }
    if (tower_.tail.kind == TailKind::EventuallyConstant) {
        result_ = GroupResult::exact(tower_.level(tower_.tail.from).canonical());
        rational_rank_ = result_.value.rank;
        return;
    }
    auto det = std::make_shared<Detail>();
    det->composite = periodic_composite(tower_);
    TailAnalysis ta = analyze_tail(tower_);
    det->shape = ta.shape;
    if (!det->shape.tmod.empty()) {
        det->stable_ker = stable_kernel(det->shape.t, det->shape.tmod);
        det->ker_snf = smith_normal_form(det->stable_ker);
    }
    const auto& mods = det->composite.source.moduli();
    for (index_t i = 0; i < static_cast<index_t>(mods.size()); ++i)
        if (mods[static_cast<size_t>(i)] != 1) det->live_to_full.push_back(i);
    detail_ = det;
    index_t unit_rank = 0;
    std::vector<Integer> loc_weights;
    for (const auto& cy : det->shape.cycles) {
        Integer w = int_abs(cy.weight);
        if (w == 1)
            unit_rank += static_cast<index_t>(cy.coords.size());
        else
            for (size_t i = 0; i < cy.coords.size(); ++i) loc_weights.push_back(w);
        rational_rank_ += static_cast<index_t>(cy.coords.size());
    }
    CanonicalGroup tors;
    if (!det->shape.tmod.empty())
        tors = lattice_quotient(static_cast<index_t>(det->shape.tmod.size()), det->stable_ker);
    if (loc_weights.empty()) {
        std::vector<Integer> fac = tors.torsion;
        result_ = GroupResult::exact(CanonicalGroup::from_factors(unit_rank + tors.rank, fac));
        return;
    }
    bool uniform = std::all_of(loc_weights.begin(), loc_weights.end(),
                               [&](const Integer& w) { return w == loc_weights[0]; });
    if (uniform && unit_rank == 0 && tors.trivial() && loc_weights.size() == 1) {
        result_ = GroupResult::localization(loc_weights[0]);
        return;
    }
    std::ostringstream os;
    bool first = true;
    if (unit_rank > 0) {
        os << "Z^" << unit_rank;
        first = false;
    }
    for (const auto& w : loc_weights) {
        os << (first ? "" : " + ") << "Z[1/" << w.get_str() << "]";
        first = false;
    }
    if (!tors.trivial()) os << (first ? "" : " + ") << tors.to_string();
    result_ = GroupResult::symbolic(os.str());
}

Colimit::Elem Colimit::element(index_t level, std::vector<Integer> value) const {
    if (static_cast<index_t>(value.size()) != tower_.level(level).generators())
        throw std::invalid_argument("element length mismatch at its level");
    return {level, std::move(value)};
}

Colimit::Elem Colimit::push(const Elem& e, index_t to_level) const {
    if (to_level < e.level) throw std::invalid_argument("cannot push downward in a direct tower");
    Elem cur = e;
    for (index_t i = e.level; i < to_level; ++i) {
        cur.value = tower_.bonding(i).apply(cur.value);
        cur.level = i + 1;
    }
    return cur;
}

bool Colimit::is_zero(const Elem& e) const {
    index_t from = tower_.tail.from, p = tower_.tail.period;
    Elem cur = push(e, std::max(e.level, from));
    if (tower_.tail.kind == TailKind::EventuallyConstant)
        return tower_.level(cur.level).is_zero(cur.value);
    while ((cur.level - from) % p != 0) cur = push(cur, cur.level + 1);

    const Detail& det = *detail_;
    const GroupPresentation& g = det.composite.source;
    // The free monomial block and the torsion block evolve independently.
    // Free coordinates can only die by flowing into a zero weight, which
    // happens within #free-coords iterations if at all; torsion dies iff the
    // residue lies in the stable kernel lattice.
    std::vector<Integer> v = cur.value;
    index_t free_steps = static_cast<index_t>(det.shape.free_ix.size());
    for (index_t k = 0; k <= free_steps; ++k) {
        std::vector<Integer> r = g.reduce(v);
        bool free_dead = true;
        for (index_t pos : det.shape.free_ix)
            if (r[static_cast<size_t>(det.live_to_full[static_cast<size_t>(pos)])] != 0) {
                free_dead = false;
                break;
            }
        if (free_dead) {
            std::vector<Integer> tau;
            for (index_t pos : det.shape.tors_ix)
                tau.push_back(r[static_cast<size_t>(det.live_to_full[static_cast<size_t>(pos)])]);
            if (tau.empty()) return true;
            return solve(det.ker_snf, tau).has_value();
        }
        if (k < free_steps) v = det.composite.apply(v);
    }
    return false;
}

bool Colimit::equal(const Elem& a, const Elem& b) const {
    index_t top = std::max(a.level, b.level);
    Elem pa = push(a, top), pb = push(b, top);
    std::vector<Integer> diff(pa.value.size());
    for (size_t i = 0; i < diff.size(); ++i) diff[i] = pa.value[i] - pb.value[i];
    return is_zero({top, std::move(diff)});
}

index_t Colimit::rational_rank() const { return rational_rank_; }

GroupResult tower_colim(const GroupTower& direct) { return Colimit(direct).group(); }

}  // namespace thom::alg
