#include "thom/pattern.hpp"

namespace thom::kd {

using ideals::NatSet;
using ideals::StepFunction;

PatternElement::PatternElement(GroupFamily fam)
    : fam_(std::move(fam)), pres_(fam_.presentation()) {}

PatternElement PatternElement::piece(const GroupFamily& fam, const SemilinearSet& region,
                                     Value v) {
    PatternElement out(fam);
    if (region.dim() != fam.universe_dim)
        throw std::invalid_argument("region dimension does not match the family universe");
    out.push_piece(region, std::move(v));
    return out;
}

PatternElement::Value PatternElement::reduce(const Value& v) const { return pres_.reduce(v); }

bool PatternElement::value_zero(const Value& v) const { return pres_.is_zero(v); }

void PatternElement::push_piece(SemilinearSet region, Value v) {
    if (static_cast<index_t>(v.size()) != pres_.generators())
        throw std::invalid_argument("value length does not match the coefficient group");
    if (region.is_empty() || value_zero(v)) return;
    pieces_.emplace_back(std::move(region), reduce(v));
}

PatternElement PatternElement::add(const PatternElement& o) const {
    PatternElement out(fam_);
    SemilinearSet mine = support(), theirs = o.support();
    for (const auto& [r, v] : pieces_) {
        for (const auto& [s, w] : o.pieces_) {
            Value sum(v.size());
            for (size_t k = 0; k < v.size(); ++k) sum[k] = v[k] + w[k];
            out.push_piece(r.intersect(s), std::move(sum));
        }
        out.push_piece(r.minus(theirs), v);
    }
    for (const auto& [s, w] : o.pieces_) out.push_piece(s.minus(mine), w);
    return out;
}

PatternElement PatternElement::negate() const {
    PatternElement out(fam_);
    for (const auto& [r, v] : pieces_) {
        Value neg(v.size());
        for (size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
        out.push_piece(r, std::move(neg));
    }
    return out;
}

SemilinearSet PatternElement::support() const {
    SemilinearSet acc = fam_.universe_dim == 1 ? SemilinearSet(NatSet::empty())
                                               : SemilinearSet::empty2();
    for (const auto& [r, v] : pieces_) {
        (void)v;
        acc = acc.unite(r);
    }
    return acc;
}

PatternElement::Value PatternElement::value_at(const Integer& i, const Integer& j) const {
    for (const auto& [r, v] : pieces_)
        if (r.contains(i, j)) return v;
    return Value(static_cast<size_t>(pres_.generators()), Integer(0));
}

PatternElement::Value PatternElement::value_at(const Integer& m) const {
    for (const auto& [r, v] : pieces_)
        if (r.contains(m)) return v;
    return Value(static_cast<size_t>(pres_.generators()), Integer(0));
}

bool in_kdirect_sum(const PatternElement& g, const IndexIdeal& ideal) {
    return in_kdirect_sum_witness(g, ideal).member;
}

ideals::MembershipWitness in_kdirect_sum_witness(const PatternElement& g,
                                                 const IndexIdeal& ideal) {
    return ideals::in_ideal(g.support(), ideal);
}

ChiReport chi_check(const PatternElement& g, const IndexIdeal& kappa, const IndexIdeal& nubar) {
    ChiReport rep;
    SemilinearSet supp = g.support();
    rep.homology_side =
        (ideals::in_ideal(supp, kappa).member == ideals::meets_every_member_finitely(supp, nubar));
    rep.cohomology_side =
        (ideals::in_ideal(supp, nubar).member == ideals::meets_every_member_finitely(supp, kappa));
    return rep;
}

StrictnessChain strictness_chain() {
    StrictnessChain c;
    c.finite_support =
        IndexIdeal::finite_support(IndexIdeal::Kind::KappaType, "finite-support");
    c.kappa_sum = IndexIdeal::bounded_cols(IndexIdeal::Kind::KappaType, "kappa_N");
    c.row_finite = IndexIdeal::row_graph_envelope(IndexIdeal::Kind::NubarType, "row-finite");
    c.full_product = IndexIdeal::full_universe(IndexIdeal::Kind::NubarType, "full-product");
    return c;
}

StrictnessWitnesses strictness_witnesses() {
    GroupFamily fam;  // Z over N^2
    StrictnessChain chain = strictness_chain();
    StrictnessWitnesses w{
        PatternElement::piece(fam, SemilinearSet::finite_points({{0, 0}}), {1}),
        PatternElement::piece(
            fam, SemilinearSet::rectangle(NatSet::all(), NatSet::finite({Integer(1)})), {1}),
        PatternElement::piece(
            fam,
            SemilinearSet::under_graph(StepFunction::identity())
                .intersect(SemilinearSet::above_graph(StepFunction::identity())),
            {1}),
        PatternElement::piece(fam,
                              SemilinearSet::rectangle(NatSet::cofinite({Integer(0)}),
                                                       NatSet::cofinite({Integer(0)})),
                              {1}),
        false};

    const IndexIdeal* ladder[] = {&chain.finite_support, &chain.kappa_sum, &chain.row_finite,
                                  &chain.full_product};
    const PatternElement* ws[] = {&w.w0, &w.w1, &w.w2, &w.w3};
    bool ok = true;
    for (int k = 0; k < 4; ++k) {
        // w_k belongs to level k and every level above, but not to level k-1
        for (int l = 0; l < 4; ++l) {
            bool member = in_kdirect_sum(*ws[k], *ladder[l]);
            if (l >= k && !member) ok = false;
            if (l == k - 1 && member) ok = false;
        }
    }
    // the nubar membership of the diagonal (spec example): column-finite
    ok = ok && in_kdirect_sum(w.w2, IndexIdeal::under_graph_envelope(IndexIdeal::Kind::NubarType));
    w.verified = ok;
    return w;
}

}  // namespace thom::kd
