#include "thom/semilinear.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace thom::ideals {

namespace {

index_t to_index(const Integer& x) {
    if (x < 0 || !x.fits_slong_p() || x > 1000000)
        throw std::overflow_error("semilinear index out of range");
    return static_cast<index_t>(x.get_si());
}

NatSet threshold_to_natset(const StepFunction::ThresholdSet& t) {
    std::vector<Integer> fin;
    for (index_t j : t.finite) fin.emplace_back(j);
    NatSet out = NatSet::finite(fin);
    if (t.infinite) out = out.unite(NatSet::from(t.from));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// NatSet

NatSet::NatSet(index_t start, std::vector<bool> prefix, std::vector<bool> word)
    : start_(start), prefix_(std::move(prefix)), word_(std::move(word)) {
    if (word_.empty()) word_.push_back(false);
}

NatSet NatSet::all() { return {0, {}, {true}}; }

NatSet NatSet::finite(const std::vector<Integer>& xs) {
    index_t top = 0;
    for (const auto& x : xs) top = std::max(top, to_index(x) + 1);
    std::vector<bool> prefix(static_cast<size_t>(top), false);
    for (const auto& x : xs) prefix[static_cast<size_t>(to_index(x))] = true;
    return {top, std::move(prefix), {false}};
}

NatSet NatSet::from(index_t a) {
    return {a, std::vector<bool>(static_cast<size_t>(a), false), {true}};
}

NatSet NatSet::range(index_t a, index_t b) {
    if (b < a) return empty();
    std::vector<bool> prefix(static_cast<size_t>(b + 1), false);
    for (index_t x = a; x <= b; ++x) prefix[static_cast<size_t>(x)] = true;
    return {b + 1, std::move(prefix), {false}};
}

NatSet NatSet::cofinite(const std::vector<Integer>& excluded) {
    return finite(excluded).complement();
}

NatSet NatSet::periodic(index_t start, std::vector<bool> word) {
    if (word.empty()) word.push_back(false);
    return {start, std::vector<bool>(static_cast<size_t>(start), false), std::move(word)};
}

bool NatSet::contains(const Integer& x) const {
    if (x < 0) return false;
    if (x < start_) return prefix_[static_cast<size_t>(x.get_si())];
    Integer r = mod_nonneg(x - start_, Integer(static_cast<long>(word_.size())));
    return word_[static_cast<size_t>(r.get_si())];
}

NatSet NatSet::complement() const {
    std::vector<bool> p = prefix_, w = word_;
    p.flip();
    w.flip();
    return {start_, std::move(p), std::move(w)};
}

NatSet aligned_op(const NatSet& a, const NatSet& b, bool (*op)(bool, bool)) {
    index_t start = std::max(a.start_, b.start_);
    index_t period = static_cast<index_t>(
        std::lcm(a.word_.size(), b.word_.size()));
    std::vector<bool> prefix(static_cast<size_t>(start));
    for (index_t x = 0; x < start; ++x)
        prefix[static_cast<size_t>(x)] = op(a.contains(x), b.contains(x));
    std::vector<bool> word(static_cast<size_t>(period));
    for (index_t k = 0; k < period; ++k)
        word[static_cast<size_t>(k)] = op(a.contains(start + k), b.contains(start + k));
    return {start, std::move(prefix), std::move(word)};
}

NatSet NatSet::intersect(const NatSet& o) const {
    return aligned_op(*this, o, [](bool x, bool y) { return x && y; });
}

NatSet NatSet::unite(const NatSet& o) const {
    return aligned_op(*this, o, [](bool x, bool y) { return x || y; });
}

bool NatSet::word_all(bool v) const {
    return std::all_of(word_.begin(), word_.end(), [v](bool b) { return b == v; });
}

bool NatSet::is_empty() const {
    return word_all(false) && std::none_of(prefix_.begin(), prefix_.end(), [](bool b) { return b; });
}

bool NatSet::is_finite() const { return word_all(false); }

std::optional<Integer> NatSet::min() const {
    for (index_t x = 0; x < start_; ++x)
        if (prefix_[static_cast<size_t>(x)]) return Integer(x);
    for (index_t k = 0; k < static_cast<index_t>(word_.size()); ++k)
        if (word_[static_cast<size_t>(k)]) return Integer(start_ + k);
    return std::nullopt;
}

std::optional<Integer> NatSet::max() const {
    if (!is_finite()) return std::nullopt;
    for (index_t x = start_ - 1; x >= 0; --x)
        if (prefix_[static_cast<size_t>(x)]) return Integer(x);
    return std::nullopt;
}

std::vector<Integer> NatSet::elements() const {
    if (!is_finite()) throw std::logic_error("elements() on an infinite NatSet");
    std::vector<Integer> out;
    for (index_t x = 0; x < start_; ++x)
        if (prefix_[static_cast<size_t>(x)]) out.emplace_back(x);
    return out;
}

index_t NatSet::count_finite() const {
    if (!is_finite()) throw std::logic_error("count_finite() on an infinite NatSet");
    return static_cast<index_t>(std::count(prefix_.begin(), prefix_.end(), true));
}

std::string NatSet::to_string() const {
    std::ostringstream os;
    os << "{";
    for (index_t x = 0; x < start_; ++x)
        if (prefix_[static_cast<size_t>(x)]) os << x << ",";
    os << "| ";
    for (bool b : word_) os << (b ? '1' : '0');
    os << " from " << start_ << "}";
    return os.str();
}

// ---------------------------------------------------------------------------
// Band

bool Band::contains(const Integer& i, const Integer& j) const {
    if (i < 0 || j < 0 || !cols.contains(j)) return false;
    if (i < lo(j)) return false;
    if (hi && i > (*hi)(j)) return false;
    return excluded_rows.find(i) == excluded_rows.end();
}

namespace {

// Smallest non-excluded row of the column interval, if any.
std::optional<Integer> first_free_row(const Integer& lo, const std::optional<Integer>& hi,
                                      const std::set<Integer>& excluded) {
    Integer i = lo < 0 ? Integer(0) : lo;
    index_t budget = static_cast<index_t>(excluded.size()) + 1;
    for (index_t k = 0; k < budget; ++k, ++i) {
        if (hi && i > *hi) return std::nullopt;
        if (!excluded.count(i)) return i;
    }
    return std::nullopt;  // unreachable: |excluded|+1 candidates cannot all be excluded
}

std::optional<Integer> last_free_row(const Integer& lo, const Integer& hi,
                                     const std::set<Integer>& excluded) {
    Integer i = hi;
    index_t budget = static_cast<index_t>(excluded.size()) + 1;
    for (index_t k = 0; k < budget; ++k, --i) {
        if (i < lo || i < 0) return std::nullopt;
        if (!excluded.count(i)) return i;
    }
    return std::nullopt;
}

}  // namespace

NatSet Band::effective_cols() const {
    if (!hi) return cols;  // [max(lo,0), inf) minus a finite set is never empty

    // Horizon past every tail start, every tail crossing, and the window where
    // the excluded rows can still interfere; beyond it the column verdict is
    // constant.
    index_t h = std::max(lo.tail_start(), hi->tail_start());
    auto extend_past_geq = [&h](const StepFunction& f, const Integer& c) {
        if (f.slope() == 0) return;
        auto t = f.geq_set(c);
        if (t.infinite && t.from > h) h = t.from;
    };
    if (lo.slope() != hi->slope()) {
        Integer num = hi->offset() - lo.offset();
        Integer den = lo.slope() - hi->slope();
        Integer cross;
        mpz_fdiv_q(cross.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        cross += 2;
        if (cross > h) h = to_index(cross);
    }
    extend_past_geq(lo, 0);
    extend_past_geq(*hi, 0);
    if (!excluded_rows.empty()) {
        Integer top = *excluded_rows.rbegin();
        // once lo escapes the excluded set, or the interval is wider than it,
        // exclusions are moot
        extend_past_geq(lo, top + 1);
        Integer base = lo.slope() == 0 ? std::max(lo.offset(), Integer(0)) : Integer(0);
        extend_past_geq(*hi, top + base + Integer(static_cast<long>(excluded_rows.size())) + 1);
    }

    std::vector<Integer> explicit_cols;
    for (index_t j = 0; j < h; ++j) {
        if (!cols.contains(j)) continue;
        if (first_free_row(lo(j), (*hi)(j), excluded_rows)) explicit_cols.emplace_back(j);
    }
    NatSet out = NatSet::finite(explicit_cols);
    // constant verdict beyond the horizon, witnessed at j = h
    bool tail_nonempty = first_free_row(lo(h), (*hi)(h), excluded_rows).has_value();
    if (tail_nonempty) out = out.unite(cols.intersect(NatSet::from(h)));
    return out;
}

bool Band::is_finite() const {
    NatSet eff = effective_cols();
    if (eff.is_empty()) return true;
    if (!hi) return false;
    return eff.is_finite();
}

bool Band::rows_all_finite() const {
    NatSet eff = effective_cols();
    if (eff.is_finite()) return true;
    return lo.slope() >= 1;
}

// ---------------------------------------------------------------------------
// SemilinearSet

SemilinearSet::SemilinearSet(std::vector<Band> bands) : dim_(2), bands_(std::move(bands)) {
    prune();
}

SemilinearSet SemilinearSet::universe2() { return SemilinearSet(std::vector<Band>{Band{}}); }

SemilinearSet SemilinearSet::finite_points(const std::vector<std::pair<Integer, Integer>>& pts) {
    std::vector<Band> bands;
    for (const auto& [i, j] : pts) {
        Band b;
        b.cols = NatSet::finite({j});
        b.lo = StepFunction::constant(i);
        b.hi = StepFunction::constant(i);
        bands.push_back(std::move(b));
    }
    return SemilinearSet(std::move(bands));
}

SemilinearSet SemilinearSet::rectangle(NatSet rows, NatSet cols) {
    Band b;
    b.cols = std::move(cols);
    if (rows.is_finite()) {
        auto xs = rows.elements();
        if (xs.empty()) return empty2();
        Integer top = xs.back();
        b.lo = StepFunction::constant(0);
        b.hi = StepFunction::constant(top);
        for (Integer i = 0; i <= top; ++i)
            if (!rows.contains(i)) b.excluded_rows.insert(i);
        return SemilinearSet(std::vector<Band>{std::move(b)});
    }
    NatSet missing = rows.complement();
    if (!missing.is_finite())
        throw std::invalid_argument("rectangle rows must be finite or cofinite");
    b.lo = StepFunction::constant(0);
    b.hi = std::nullopt;
    for (const auto& i : missing.elements()) b.excluded_rows.insert(i);
    return SemilinearSet(std::vector<Band>{std::move(b)});
}

SemilinearSet SemilinearSet::under_graph(const StepFunction& f) {
    Band b;
    b.lo = StepFunction::constant(0);
    b.hi = f;
    return SemilinearSet(std::vector<Band>{std::move(b)});
}

SemilinearSet SemilinearSet::above_graph(const StepFunction& f) {
    Band b;
    b.lo = f;
    b.hi = std::nullopt;
    return SemilinearSet(std::vector<Band>{std::move(b)});
}

void SemilinearSet::require_dim(int d) const {
    if (dim_ != d) throw std::logic_error("semilinear set dimension mismatch");
}

const NatSet& SemilinearSet::line() const {
    require_dim(1);
    return line_;
}

const std::vector<Band>& SemilinearSet::bands() const {
    require_dim(2);
    return bands_;
}

bool SemilinearSet::contains(const Integer& i, const Integer& j) const {
    require_dim(2);
    return std::any_of(bands_.begin(), bands_.end(),
                       [&](const Band& b) { return b.contains(i, j); });
}

bool SemilinearSet::contains(const Integer& x) const {
    require_dim(1);
    return line_.contains(x);
}

SemilinearSet& SemilinearSet::prune() {
    if (dim_ == 2)
        std::erase_if(bands_, [](const Band& b) { return b.is_empty(); });
    return *this;
}

SemilinearSet SemilinearSet::unite(const SemilinearSet& o) const {
    if (dim_ != o.dim_) throw std::logic_error("dimension mismatch");
    if (dim_ == 1) return SemilinearSet(line_.unite(o.line_));
    std::vector<Band> bands = bands_;
    bands.insert(bands.end(), o.bands_.begin(), o.bands_.end());
    return SemilinearSet(std::move(bands));
}

namespace {

Band intersect_bands(const Band& a, const Band& b) {
    Band out;
    out.cols = a.cols.intersect(b.cols);
    out.lo = StepFunction::pointwise_max(a.lo, b.lo);
    if (a.hi && b.hi)
        out.hi = StepFunction::pointwise_min(*a.hi, *b.hi);
    else
        out.hi = a.hi ? a.hi : b.hi;
    out.excluded_rows = a.excluded_rows;
    out.excluded_rows.insert(b.excluded_rows.begin(), b.excluded_rows.end());
    return out;
}

std::vector<Band> complement_band(const Band& b) {
    std::vector<Band> out;
    {
        Band other;
        other.cols = b.cols.complement();
        out.push_back(std::move(other));
    }
    {
        Band below;
        below.cols = b.cols;
        below.lo = StepFunction::constant(0);
        below.hi = b.lo.plus(-1);
        out.push_back(std::move(below));
    }
    if (b.hi) {
        Band above;
        above.cols = b.cols;
        above.lo = b.hi->plus(1);
        out.push_back(std::move(above));
    }
    for (const auto& a : b.excluded_rows) {
        Band row;
        row.cols = b.cols.intersect(threshold_to_natset(b.lo.leq_set(a)));
        if (b.hi) row.cols = row.cols.intersect(threshold_to_natset(b.hi->geq_set(a)));
        row.lo = StepFunction::constant(a);
        row.hi = StepFunction::constant(a);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

SemilinearSet SemilinearSet::intersect(const SemilinearSet& o) const {
    if (dim_ != o.dim_) throw std::logic_error("dimension mismatch");
    if (dim_ == 1) return SemilinearSet(line_.intersect(o.line_));
    std::vector<Band> bands;
    for (const auto& a : bands_)
        for (const auto& b : o.bands_) bands.push_back(intersect_bands(a, b));
    return SemilinearSet(std::move(bands));
}

SemilinearSet SemilinearSet::complement() const {
    if (dim_ == 1) return SemilinearSet(line_.complement());
    SemilinearSet acc = universe2();
    for (const auto& b : bands_) acc = acc.intersect(SemilinearSet(complement_band(b)));
    return acc;
}

bool SemilinearSet::is_empty() const {
    if (dim_ == 1) return line_.is_empty();
    return std::all_of(bands_.begin(), bands_.end(), [](const Band& b) { return b.is_empty(); });
}

bool SemilinearSet::is_finite() const {
    if (dim_ == 1) return line_.is_finite();
    return std::all_of(bands_.begin(), bands_.end(), [](const Band& b) { return b.is_finite(); });
}

std::vector<std::pair<Integer, Integer>> SemilinearSet::points() const {
    require_dim(2);
    if (!is_finite()) throw std::logic_error("points() on an infinite set");
    std::set<std::pair<Integer, Integer>> acc;
    for (const auto& b : bands_) {
        for (const auto& j : b.effective_cols().elements()) {
            Integer top = (*b.hi)(j);
            for (Integer i = std::max(b.lo(j), Integer(0)); i <= top; ++i)
                if (!b.excluded_rows.count(i)) acc.emplace(i, j);
        }
    }
    return {acc.begin(), acc.end()};
}

NatSet SemilinearSet::column_support() const {
    require_dim(2);
    NatSet out = NatSet::empty();
    for (const auto& b : bands_) out = out.unite(b.effective_cols());
    return out;
}

bool SemilinearSet::columns_all_finite() const {
    require_dim(2);
    for (const auto& b : bands_)
        if (!b.hi && !b.effective_cols().is_empty()) return false;
    return true;
}

std::optional<StepFunction> SemilinearSet::column_max_envelope() const {
    require_dim(2);
    StepFunction f = StepFunction::constant(0);
    for (const auto& b : bands_) {
        if (b.effective_cols().is_empty()) continue;
        if (!b.hi) return std::nullopt;
        f = StepFunction::pointwise_max(f, *b.hi);
    }
    return f;
}

bool SemilinearSet::rows_all_finite() const {
    require_dim(2);
    return std::all_of(bands_.begin(), bands_.end(),
                       [](const Band& b) { return b.rows_all_finite(); });
}

std::optional<StepFunction> SemilinearSet::row_max_envelope() const {
    require_dim(2);
    StepFunction g = StepFunction::constant(0);
    for (const auto& b : bands_) {
        NatSet eff = b.effective_cols();
        if (eff.is_empty()) continue;
        if (eff.is_finite()) {
            g = StepFunction::pointwise_max(g, StepFunction::constant(*eff.max()));
            continue;
        }
        if (b.lo.slope() < 1) return std::nullopt;  // some row is infinite
        // every point has i >= lo(j), so j <= g(i) holds for g(i) = i + c with
        // c >= j - lo(j); that difference is non-increasing on the tail
        Integer c = 0;
        for (index_t j = 0; j <= b.lo.tail_start(); ++j) {
            Integer gap = Integer(j) - b.lo(j);
            if (gap > c) c = gap;
        }
        g = StepFunction::pointwise_max(g, StepFunction::affine(1, c));
    }
    return g;
}

std::optional<Integer> SemilinearSet::row_sup() const {
    require_dim(2);
    Integer sup = -1;
    for (const auto& b : bands_) {
        NatSet eff = b.effective_cols();
        if (eff.is_empty()) continue;
        if (!b.hi) return std::nullopt;
        if (eff.is_finite()) {
            for (const auto& j : eff.elements()) {
                auto top = last_free_row(std::max(b.lo(j), Integer(0)), (*b.hi)(j),
                                         b.excluded_rows);
                if (top) sup = std::max(sup, *top);
            }
            continue;
        }
        if (b.hi->slope() >= 1) return std::nullopt;
        // constant hi on an infinite column set: exact sup from the horizon
        // witness plus the explicit prefix columns
        index_t h = eff.tail_from();
        for (index_t j = 0; j <= h; ++j) {
            if (!eff.contains(j)) continue;
            auto top = last_free_row(std::max(b.lo(j), Integer(0)), (*b.hi)(j), b.excluded_rows);
            if (top) sup = std::max(sup, *top);
        }
        // beyond the horizon the interval is constant; one witness suffices
        Integer jw = h;
        while (!eff.contains(jw)) ++jw;
        auto top = last_free_row(std::max(b.lo(jw), Integer(0)), (*b.hi)(jw), b.excluded_rows);
        if (top) sup = std::max(sup, *top);
    }
    if (sup < 0) return Integer(0);  // empty set: bounded by anything
    return sup;
}

StepFunction SemilinearSet::min_row_cover() const {
    require_dim(2);
    StepFunction f = StepFunction::constant(0);
    Integer slack = 0;
    for (const auto& b : bands_) slack += static_cast<long>(b.excluded_rows.size());
    for (const auto& b : bands_) {
        if (b.effective_cols().is_empty()) continue;
        f = StepFunction::pointwise_max(f, b.lo.plus(slack));
    }
    return f;
}

std::string SemilinearSet::to_string() const {
    if (dim_ == 1) return line_.to_string();
    std::ostringstream os;
    os << "union of " << bands_.size() << " band(s)";
    return os.str();
}

}  // namespace thom::ideals
