#include "thom/group.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace thom::alg {

Integer CanonicalGroup::order() const {
    if (rank > 0) return 0;
    Integer o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
}

std::string CanonicalGroup::to_string() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank == 1) {
        os << "Z";
        first = false;
    } else if (rank > 1) {
        os << "Z^" << rank;
        first = false;
    }
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

CanonicalGroup CanonicalGroup::cyclic(const Integer& d) {
    if (d == 0) return free(1);
    Integer a = int_abs(d);
    if (a == 1) return {};
    return {0, {a}};
}

CanonicalGroup CanonicalGroup::from_factors(index_t rank, std::vector<Integer> factors) {
    // Realize the sum of cyclics as the cokernel of a diagonal matrix and
    // canonicalize through SNF; avoids prime factorization.
    std::vector<Integer> fs;
    for (auto& f : factors) {
        Integer a = int_abs(f);
        if (a == 0)
            ++rank;
        else if (a > 1)
            fs.push_back(a);
    }
    if (fs.empty()) return free(rank);
    IntMatrix d(static_cast<index_t>(fs.size()), static_cast<index_t>(fs.size()));
    for (index_t i = 0; i < static_cast<index_t>(fs.size()); ++i)
        d.set(i, i, fs[static_cast<size_t>(i)]);
    auto snf = smith_normal_form(d);
    CanonicalGroup out;
    out.rank = rank;
    for (const auto& x : snf.divisors)
        if (x >= 2) out.torsion.push_back(x);
    return out;
}

GroupPresentation::GroupPresentation() : GroupPresentation(0) {}

GroupPresentation::GroupPresentation(index_t gens)
    : GroupPresentation(gens, IntMatrix(gens, 0)) {}

GroupPresentation::GroupPresentation(index_t gens, IntMatrix relations) {
    if (relations.rows() != gens)
        throw std::invalid_argument("relation matrix must have one row per generator");
    auto data = std::make_shared<Data>();
    data->gens = gens;
    data->rels = std::move(relations);
    data->snf = smith_normal_form(data->rels);
    data->moduli.assign(static_cast<size_t>(gens), Integer(0));
    for (index_t i = 0; i < data->snf.rank && i < gens; ++i)
        data->moduli[static_cast<size_t>(i)] = data->snf.divisors[static_cast<size_t>(i)];
    CanonicalGroup g;
    for (index_t i = 0; i < gens; ++i) {
        const Integer& m = data->moduli[static_cast<size_t>(i)];
        if (m == 0)
            ++g.rank;
        else if (m >= 2)
            g.torsion.push_back(m);
    }
    std::sort(g.torsion.begin(), g.torsion.end());
    data->canon = std::move(g);
    d_ = std::move(data);
}

GroupPresentation GroupPresentation::of(const CanonicalGroup& g) {
    index_t n = g.rank + static_cast<index_t>(g.torsion.size());
    IntMatrix rels(n, static_cast<index_t>(g.torsion.size()));
    for (index_t j = 0; j < static_cast<index_t>(g.torsion.size()); ++j)
        rels.set(j, j, g.torsion[static_cast<size_t>(j)]);
    return {n, std::move(rels)};
}

std::vector<Integer> GroupPresentation::reduce(const std::vector<Integer>& x) const {
    if (static_cast<index_t>(x.size()) != d_->gens)
        throw std::invalid_argument("reduce: coordinate length mismatch");
    std::vector<Integer> y = d_->snf.U.apply(x);
    for (index_t i = 0; i < d_->gens; ++i) {
        const Integer& m = d_->moduli[static_cast<size_t>(i)];
        if (m == 1)
            y[static_cast<size_t>(i)] = 0;
        else if (m >= 2)
            y[static_cast<size_t>(i)] = mod_nonneg(y[static_cast<size_t>(i)], m);
    }
    return y;
}

bool GroupPresentation::is_zero(const std::vector<Integer>& x) const {
    for (const auto& v : reduce(x))
        if (v != 0) return false;
    return true;
}

bool GroupPresentation::same_class(const std::vector<Integer>& a,
                                   const std::vector<Integer>& b) const {
    std::vector<Integer> diff(a.size());
    for (size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return is_zero(diff);
}

GroupMap::GroupMap(GroupPresentation src, GroupPresentation tgt, IntMatrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (matrix.rows() != target.generators() || matrix.cols() != source.generators())
        throw std::invalid_argument("GroupMap: matrix shape mismatch");
}

GroupMap GroupMap::identity(const GroupPresentation& g) {
    return {g, g, IntMatrix::identity(g.generators())};
}

GroupMap GroupMap::zero(const GroupPresentation& src, const GroupPresentation& tgt) {
    return {src, tgt, IntMatrix(tgt.generators(), src.generators())};
}

bool GroupMap::well_defined() const {
    const IntMatrix& rs = source.relations();
    IntMatrix image = matrix * rs;
    for (index_t j = 0; j < image.cols(); ++j)
        if (!target.is_zero(image.col_vector(j))) return false;
    return true;
}

std::vector<Integer> GroupMap::apply(const std::vector<Integer>& x) const {
    return matrix.apply(x);
}

GroupMap GroupMap::after(const GroupMap& first) const {
    if (first.target.generators() != source.generators())
        throw std::invalid_argument("GroupMap::after: middle group mismatch");
    return {first.source, target, matrix * first.matrix};
}

IntMatrix GroupMap::kernel_lattice() const {
    // { x : M x ∈ im R_T }: project ker [M | -R_T] onto the x block.
    IntMatrix rt = target.relations();
    IntMatrix stacked = IntMatrix::hstack(matrix, rt);
    IntMatrix ker = kernel_basis(stacked);
    std::vector<index_t> xs;
    for (index_t i = 0; i < source.generators(); ++i) xs.push_back(i);
    return ker.select_rows(xs);
}

bool GroupMap::is_zero_map() const {
    for (index_t j = 0; j < matrix.cols(); ++j)
        if (!target.is_zero(matrix.col_vector(j))) return false;
    return true;
}

bool GroupMap::is_injective() const {
    IntMatrix ker = kernel_lattice();
    for (index_t j = 0; j < ker.cols(); ++j)
        if (!source.is_zero(ker.col_vector(j))) return false;
    return true;
}

bool GroupMap::is_surjective() const { return cokernel().trivial(); }

bool GroupMap::is_isomorphism() const { return is_injective() && is_surjective(); }

CanonicalGroup GroupMap::cokernel() const {
    IntMatrix rels = IntMatrix::hstack(matrix, target.relations());
    return GroupPresentation(target.generators(), rels).canonical();
}

bool exact_at(const GroupMap& f, const GroupMap& g) {
    // im f ⊆ ker g
    if (!g.after(f).is_zero_map()) return false;
    // ker g ⊆ im f (modulo relations of the middle group)
    IntMatrix ker = g.kernel_lattice();
    IntMatrix span = IntMatrix::hstack(f.matrix, f.target.relations());
    auto snf = smith_normal_form(span);
    for (index_t j = 0; j < ker.cols(); ++j)
        if (!solve(snf, ker.col_vector(j))) return false;
    return true;
}

HomologyData homology_data(const IntMatrix& d_out, const IntMatrix& d_in) {
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("homology_data: chain group size mismatch");
    if (!(d_out * d_in).is_zero())
        throw CompositionNonzero("d_out * d_in != 0");
    auto snf = smith_normal_form(d_out);
    std::vector<index_t> free_ix;
    for (index_t j = snf.rank; j < d_out.cols(); ++j) free_ix.push_back(j);

    HomologyData h;
    h.cycle_basis = snf.V.select_cols(free_ix);
    h.cycle_coords = snf.Vinv.select_rows(free_ix);
    IntMatrix rels = h.cycle_coords * d_in;
    h.pres = GroupPresentation(static_cast<index_t>(free_ix.size()), std::move(rels));
    return h;
}

std::vector<Integer> HomologyData::class_of(const std::vector<Integer>& cycle) const {
    return cycle_coords.apply(cycle);
}

std::vector<Integer> HomologyData::representative(const std::vector<Integer>& coords) const {
    return cycle_basis.apply(coords);
}

CanonicalGroup homology_at(const IntMatrix& d_out, const IntMatrix& d_in) {
    return homology_data(d_out, d_in).group();
}

CanonicalGroup homology_at_mod(const IntMatrix& d_out, const IntMatrix& d_in, const Integer& m) {
    if (m == 0) return homology_at(d_out, d_in);
    if (m < 0) return homology_at_mod(d_out, d_in, Integer(-m));
    if (!(d_out * d_in).is_zero()) throw CompositionNonzero("d_out * d_in != 0");
    index_t c = d_out.cols();
    auto snf = smith_normal_form(d_out);
    // Lattice L = { x : d_out x ≡ 0 (mod m) } has basis V * diag(t),
    // t_i = m / gcd(d_i, m) on relation rows and 1 on free rows.
    std::vector<Integer> t(static_cast<size_t>(c), Integer(1));
    for (index_t i = 0; i < snf.rank && i < c; ++i)
        t[static_cast<size_t>(i)] = div_exact(m, int_gcd(snf.divisors[static_cast<size_t>(i)], m));
    // Relations m*Z^c + im d_in, written in L-coordinates: divide the rows of
    // V^{-1} * [mI | d_in] by t (exact by construction).
    IntMatrix gens = IntMatrix::hstack(IntMatrix::identity(c), d_in);
    IntMatrix scaled(c, gens.cols());
    gens.for_each_nonzero([&](index_t r, index_t col, const Integer& v) {
        scaled.set(r, col, col < c ? m * v : v);
    });
    IntMatrix coords = snf.Vinv * scaled;
    IntMatrix rels(c, coords.cols());
    for (index_t i = 0; i < c; ++i) {
        const Integer& ti = t[static_cast<size_t>(i)];
        coords.for_each_in_row(i, [&](index_t j, const Integer& v) {
            if (!divides(ti, v)) throw std::logic_error("mod-m lattice division not exact");
            rels.set(i, j, div_exact(v, ti));
        });
    }
    return GroupPresentation(c, std::move(rels)).canonical();
}

GroupMap induced_on_homology(const HomologyData& src, const HomologyData& tgt,
                             const IntMatrix& chain_map) {
    IntMatrix fz = chain_map * src.cycle_basis;
    IntMatrix a = tgt.cycle_coords * fz;
    if (!(tgt.cycle_basis * a == fz))
        throw NotAChainMap("map does not carry cycles to cycles");
    GroupMap out(src.pres, tgt.pres, std::move(a));
    if (!out.well_defined()) throw NotAChainMap("induced map not well defined on homology");
    return out;
}

}  // namespace thom::alg
