#include "thom/step_function.hpp"

#include <sstream>
#include <stdexcept>

namespace thom::ideals {

namespace {

index_t to_index(const Integer& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("step-function index out of range");
    return static_cast<index_t>(x.get_si());
}

}  // namespace

StepFunction::StepFunction(std::vector<Integer> table, Integer slope, Integer offset)
    : table_(std::move(table)), slope_(std::move(slope)), offset_(std::move(offset)) {
    if (slope_ < 0) throw std::invalid_argument("step-function tail slope must be >= 0");
    shrink();
}

void StepFunction::shrink() {
    while (!table_.empty() &&
           table_.back() == tail_at(Integer(static_cast<long>(table_.size()) - 1)))
        table_.pop_back();
}

Integer StepFunction::operator()(const Integer& j) const {
    if (j < 0) throw std::invalid_argument("step functions are defined on N");
    if (j < static_cast<long>(table_.size())) return table_[static_cast<size_t>(to_index(j))];
    return tail_at(j);
}

bool StepFunction::nonnegative() const {
    for (const auto& v : table_)
        if (v < 0) return false;
    if (slope_ == 0) return offset_ >= 0;
    return tail_at(tail_start()) >= 0;
}

StepFunction StepFunction::plus(const Integer& c) const {
    StepFunction out = *this;
    for (auto& v : out.table_) v += c;
    out.offset_ += c;
    return out;
}

namespace {

StepFunction combine(const StepFunction& f, const StepFunction& g, bool take_max) {
    index_t t = std::max(f.tail_start(), g.tail_start());
    // Crossing point of the two tails, if any, pushes the explicit window out.
    if (f.slope() != g.slope()) {
        Integer num = g.offset() - f.offset();
        Integer den = f.slope() - g.slope();
        Integer cross;
        mpz_fdiv_q(cross.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        cross += 2;
        if (cross > t && cross.fits_slong_p()) t = std::max(t, static_cast<index_t>(cross.get_si()));
    }
    std::vector<Integer> table;
    table.reserve(static_cast<size_t>(t));
    for (index_t j = 0; j < t; ++j) {
        Integer a = f(j), b = g(j);
        table.push_back(take_max ? (a >= b ? a : b) : (a <= b ? a : b));
    }
    Integer ta = f(t), tb = g(t);
    bool f_wins = take_max ? (f.slope() > g.slope() || (f.slope() == g.slope() && ta >= tb))
                           : (f.slope() < g.slope() || (f.slope() == g.slope() && ta <= tb));
    const StepFunction& w = f_wins ? f : g;
    return {std::move(table), w.slope(), w.offset()};
}

}  // namespace

StepFunction StepFunction::pointwise_max(const StepFunction& f, const StepFunction& g) {
    return combine(f, g, true);
}

StepFunction StepFunction::pointwise_min(const StepFunction& f, const StepFunction& g) {
    return combine(f, g, false);
}

bool StepFunction::leq(const StepFunction& f, const StepFunction& g) {
    index_t t = std::max(f.tail_start(), g.tail_start());
    for (index_t j = 0; j < t; ++j)
        if (f(j) > g(j)) return false;
    if (f.slope() > g.slope()) return false;
    if (f.slope() == g.slope()) return f.offset() <= g.offset();
    return f(t) <= g(t);  // smaller slope: only the window start can fail
}

bool StepFunction::operator==(const StepFunction& o) const {
    return leq(*this, o) && leq(o, *this);
}

StepFunction::ThresholdSet StepFunction::leq_set(const Integer& c) const {
    ThresholdSet out;
    for (index_t j = 0; j < tail_start(); ++j)
        if (table_[static_cast<size_t>(j)] <= c) out.finite.push_back(j);
    if (slope_ == 0) {
        if (offset_ <= c) {
            out.infinite = true;
            out.from = tail_start();
        }
        return out;
    }
    // increasing tail: slope*j + offset <= c up to a cutoff
    Integer cutoff;
    Integer num = c - offset_;
    mpz_fdiv_q(cutoff.get_mpz_t(), num.get_mpz_t(), slope_.get_mpz_t());
    if (cutoff > 1000000) throw std::overflow_error("threshold window too large");
    for (index_t j = tail_start(); Integer(j) <= cutoff; ++j) out.finite.push_back(j);
    return out;
}

StepFunction::ThresholdSet StepFunction::geq_set(const Integer& c) const {
    ThresholdSet out;
    for (index_t j = 0; j < tail_start(); ++j)
        if (table_[static_cast<size_t>(j)] >= c) out.finite.push_back(j);
    if (slope_ == 0) {
        if (offset_ >= c) {
            out.infinite = true;
            out.from = tail_start();
        }
        return out;
    }
    Integer first;  // smallest tail j with slope*j + offset >= c
    Integer num = c - offset_;
    mpz_cdiv_q(first.get_mpz_t(), num.get_mpz_t(), slope_.get_mpz_t());
    out.infinite = true;
    Integer start = std::max(Integer(tail_start()), first);
    out.from = to_index(start);
    return out;
}

std::string StepFunction::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < table_.size(); ++i) os << (i ? "," : "") << table_[i].get_str();
    os << "]+" << slope_.get_str() << "j+" << offset_.get_str() << "@" << tail_start();
    return os.str();
}

}  // namespace thom::ideals
