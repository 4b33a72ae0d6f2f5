#include "thom/exchange.hpp"

#include <sstream>

namespace thom::kd {

using ideals::NatSet;
using ideals::SemilinearSet;
using ideals::StepFunction;

namespace {

struct TailInfo {
    index_t from = 0;
    Integer k = 1;  // uniform multiplier per level beyond `from`
};

TailInfo analyze_family(const GroupFamily& fam) {
    if (!fam.tower) throw std::invalid_argument("exchange check needs a per-index tower");
    const alg::GroupTower& t = *fam.tower;
    t.validate();
    if (!t.reversed) throw std::invalid_argument("exchange towers are direct systems");
    if (t.tail.kind == alg::TailKind::TruncatedUnknown)
        throw alg::UnsupportedBonding("exchange needs a declared tail");
    for (const auto& lvl : t.levels)
        if (lvl.generators() != 1 || lvl.relations().cols() != 0)
            throw alg::UnsupportedBonding("exchange is implemented for rank-one free towers");
    TailInfo info;
    info.from = t.tail.from;
    if (t.tail.kind == alg::TailKind::EventuallyConstant) return info;
    info.k = t.bonding(info.from).matrix.at(0, 0);
    for (index_t i = info.from; i < info.from + t.tail.period; ++i)
        if (t.bonding(i).matrix.at(0, 0) != info.k)
            throw alg::UnsupportedBonding("periodic block multipliers must be uniform");
    return info;
}

Integer explicit_push(const alg::GroupTower& t, Integer v, index_t a, index_t b) {
    for (index_t i = a; i < b; ++i) v *= t.bonding(i).matrix.at(0, 0);
    return v;
}

index_t eval_level(const StepFunction& f, index_t m) {
    Integer v = f(Integer(m));
    if (v < 0 || !v.fits_slong_p()) throw std::invalid_argument("level function must be >= 0");
    return static_cast<index_t>(v.get_si());
}

Integer pow_int(const Integer& k, const Integer& e) {
    if (e < 0 || !e.fits_ulong_p()) throw std::overflow_error("exponent out of range");
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), k.get_mpz_t(), e.get_ui());
    return out;
}

struct AffineFn {
    Integer slope, offset;
    Integer operator()(index_t m) const { return slope * m + offset; }
};

// Does v * k^dv(m) == w * k^dw(m) hold for every m in a class on which both
// exponents are affine, nonnegative, and either identically zero or strictly
// positive throughout? One witness plus slope reasoning decides.
bool symbolic_equal(const Integer& k, const Integer& v, const AffineFn& dv, const Integer& w,
                    const AffineFn& dw, index_t witness) {
    if (k == 0) {
        Integer pv = dv(witness) > 0 ? Integer(0) : v;
        Integer pw = dw(witness) > 0 ? Integer(0) : w;
        return pv == pw;
    }
    if (v == 0 && w == 0) return true;
    if (v == 0 || w == 0) return false;  // k != 0 never kills a value
    Integer dslope = dv.slope - dw.slope;
    Integer d0 = dv(witness) - dw(witness);
    if (k == 1) return v == w;
    if (k == -1) {
        // v * (-1)^{d(m)} == w; the exponent's parity is constant on the
        // class iff the slope difference is even
        if (mod_nonneg(dslope, 2) != 0) return false;
        Integer sign = mod_nonneg(d0, 2) == 0 ? Integer(1) : Integer(-1);
        return v * sign == w;
    }
    if (dslope != 0) return false;  // |k| >= 2: magnitudes diverge
    if (d0 >= 0) return v * pow_int(k, d0) == w;
    return w * pow_int(k, -d0) == v;
}

struct IndexClass {
    NatSet idx;
    Integer v, w;
    index_t witness;
};

// Common refinement of the two samples' pieces (with zero background) over
// the tail [m0, inf).
std::vector<IndexClass> tail_classes(const ExchangeSample& a, const ExchangeSample& b,
                                     index_t m0) {
    auto regions = [](const ExchangeSample& s) {
        std::vector<std::pair<NatSet, Integer>> out;
        NatSet support;
        for (const auto& [r, val] : s.element.pieces()) {
            out.emplace_back(r.line(), val[0]);
            support = support.unite(r.line());
        }
        out.emplace_back(support.complement(), Integer(0));
        return out;
    };
    std::vector<IndexClass> classes;
    NatSet tail = NatSet::from(m0);
    for (const auto& [ra, va] : regions(a))
        for (const auto& [rb, vb] : regions(b)) {
            NatSet idx = ra.intersect(rb).intersect(tail);
            if (idx.is_empty()) continue;
            if (va == 0 && vb == 0) continue;
            IndexClass c{idx, va, vb, 0};
            c.witness = static_cast<index_t>(idx.min()->get_si());
            classes.push_back(std::move(c));
        }
    return classes;
}

// Beyond the explicit window every push runs through the uniform periodic
// multiplier, which requires the level functions to sit at or above the
// tower's periodic start there.
void require_tail_levels(const TailInfo& info, const ideals::StepFunction& f) {
    if (info.from == 0) return;
    if (f.slope() == 0 && f.offset() < info.from)
        throw alg::UnsupportedBonding("sample levels dip below the periodic block on the tail");
}

// Horizon behind which all tables, tails, the tower prefix and the level
// crossing are over; beyond it exponents keep a constant sign on each class.
index_t explicit_horizon(const GroupFamily& fam, const ExchangeSample& a,
                         const ExchangeSample& b) {
    TailInfo info = analyze_family(fam);
    require_tail_levels(info, a.level);
    require_tail_levels(info, b.level);
    index_t m0 = std::max({a.level.tail_start(), b.level.tail_start(), info.from, index_t(1)});
    for (const StepFunction* f : {&a.level, &b.level}) {
        if (f->slope() == 0) continue;
        auto past = f->geq_set(info.from);  // indices whose level reached the block
        if (past.infinite && past.from > m0) m0 = past.from;
    }
    if (a.level.slope() != b.level.slope()) {
        Integer num = b.level.offset() - a.level.offset();
        Integer den = a.level.slope() - b.level.slope();
        Integer cross;
        mpz_fdiv_q(cross.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        cross += 2;
        if (cross > m0 && cross.fits_slong_p()) m0 = static_cast<index_t>(cross.get_si());
    }
    for (const auto& s : {a, b})
        for (const auto& [r, val] : s.element.pieces()) {
            (void)val;
            if (r.line().tail_from() > m0) m0 = r.line().tail_from();
        }
    return m0;
}

// Strict equality of the two samples' pushforwards at the level function H
// (pointwise >= both levels).
bool equal_at_level(const GroupFamily& fam, const ExchangeSample& a, const ExchangeSample& b,
                    const StepFunction& h) {
    TailInfo info = analyze_family(fam);
    const alg::GroupTower& t = *fam.tower;
    index_t m0 = std::max({explicit_horizon(fam, a, b), h.tail_start()});

    for (index_t m = 0; m < m0; ++m) {
        Integer va = a.element.value_at(Integer(m))[0];
        Integer vb = b.element.value_at(Integer(m))[0];
        index_t hm = eval_level(h, m);
        if (explicit_push(t, va, eval_level(a.level, m), hm) !=
            explicit_push(t, vb, eval_level(b.level, m), hm))
            return false;
    }
    AffineFn da{h.slope() - a.level.slope(), h.offset() - a.level.offset()};
    AffineFn db{h.slope() - b.level.slope(), h.offset() - b.level.offset()};
    for (const auto& cls : tail_classes(a, b, m0))
        if (!symbolic_equal(info.k, cls.v, da, cls.w, db, cls.witness)) return false;
    return true;
}

}  // namespace

ExchangeSample push_sample(const GroupFamily& fam, const ExchangeSample& s,
                           const StepFunction& to_level) {
    TailInfo info = analyze_family(fam);
    const alg::GroupTower& t = *fam.tower;
    if (!StepFunction::leq(s.level, to_level))
        throw std::invalid_argument("can only push to pointwise-larger levels");
    if (to_level.slope() != s.level.slope())
        throw std::invalid_argument("push_sample needs a constant level increment on the tail");
    Integer inc = to_level.offset() - s.level.offset();

    require_tail_levels(info, s.level);
    index_t m0 = std::max({s.level.tail_start(), to_level.tail_start(), info.from, index_t(1)});
    if (s.level.slope() != 0) {
        auto past = s.level.geq_set(info.from);
        if (past.infinite && past.from > m0) m0 = past.from;
    }
    for (const auto& [r, val] : s.element.pieces()) {
        (void)val;
        if (r.line().tail_from() > m0) m0 = r.line().tail_from();
    }

    PatternElement acc(fam);
    for (index_t m = 0; m < m0; ++m) {
        Integer v = s.element.value_at(Integer(m))[0];
        if (v == 0) continue;
        Integer pushed = explicit_push(t, v, eval_level(s.level, m), eval_level(to_level, m));
        if (pushed == 0) continue;
        acc = acc.add(
            PatternElement::piece(fam, SemilinearSet(NatSet::finite({Integer(m)})), {pushed}));
    }
    for (const auto& [r, val] : s.element.pieces()) {
        NatSet tail_part = r.line().intersect(NatSet::from(m0));
        if (tail_part.is_empty()) continue;
        Integer pushed = val[0] * pow_int(info.k, inc);
        if (pushed == 0) continue;
        acc = acc.add(PatternElement::piece(fam, SemilinearSet(tail_part), {pushed}));
    }
    return {to_level, acc};
}

bool phi_equal(const GroupFamily& fam, const ExchangeSample& a, const ExchangeSample& b) {
    TailInfo info = analyze_family(fam);
    alg::Colimit colim(*fam.tower);
    index_t m0 = explicit_horizon(fam, a, b);

    for (index_t m = 0; m < m0; ++m) {
        alg::Colimit::Elem ea{eval_level(a.level, m), {a.element.value_at(Integer(m))[0]}};
        alg::Colimit::Elem eb{eval_level(b.level, m), {b.element.value_at(Integer(m))[0]}};
        if (!colim.equal(ea, eb)) return false;
    }
    // representatives merge at max(f, g), one level higher when the
    // multiplier is zero
    StepFunction top = StepFunction::pointwise_max(a.level, b.level);
    if (info.k == 0) top = top.plus(1);
    AffineFn da{top.slope() - a.level.slope(), top.offset() - a.level.offset()};
    AffineFn db{top.slope() - b.level.slope(), top.offset() - b.level.offset()};
    for (const auto& cls : tail_classes(a, b, m0))
        if (!symbolic_equal(info.k, cls.v, da, cls.w, db, cls.witness)) return false;
    return true;
}

ExchangeReport exchange_iso_check(const GroupFamily& fam,
                                  const std::vector<ExchangeSample>& samples) {
    ExchangeReport rep;
    rep.samples = static_cast<index_t>(samples.size());
    TailInfo info = analyze_family(fam);
    std::ostringstream detail;

    // Inverse construction: a second representative of each sampled class
    // one level up must merge with the original at h = max(f, g) (+1 for a
    // zero multiplier), per index.
    rep.inverse_reconstruction_ok = true;
    for (const auto& s : samples) {
        ExchangeSample up = push_sample(fam, s, s.level.plus(1));
        if (!phi_equal(fam, s, up))
            throw LevelSearchExhausted("pushforward not merged within the declared block");
        StepFunction h = StepFunction::pointwise_max(s.level, up.level);
        if (info.k == 0) h = h.plus(1);
        if (!equal_at_level(fam, s, up, h)) {
            rep.inverse_reconstruction_ok = false;
            detail << "merge at h failed for a sample at levels " << s.level.to_string() << "; ";
        }
    }

    // Injectivity on samples: whenever the per-index classes agree, the two
    // sampled sequences must define the same class on the left-hand side,
    // witnessed by an explicit merge at a common level.
    rep.injective_on_samples = true;
    for (size_t x = 0; x < samples.size(); ++x)
        for (size_t y = x + 1; y < samples.size(); ++y) {
            ++rep.pairs_compared;
            if (!phi_equal(fam, samples[x], samples[y])) continue;
            StepFunction h =
                StepFunction::pointwise_max(samples[x].level, samples[y].level);
            if (info.k == 0) h = h.plus(1);
            if (!equal_at_level(fam, samples[x], samples[y], h)) {
                rep.injective_on_samples = false;
                detail << "pair (" << x << "," << y << ") has equal images but no merge; ";
            }
        }
    rep.detail = detail.str();
    return rep;
}

}  // namespace thom::kd
