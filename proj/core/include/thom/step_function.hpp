#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thom/integer.hpp"

namespace thom::ideals {

/// Total function on N with finitely many explicit values followed by an
/// affine tail f(j) = slope*j + offset. Values are integers so that band
/// arithmetic (hi - 1 and friends) stays in the class; duality witnesses are
/// constructed non-negative.
class StepFunction {
public:
    StepFunction() : slope_(0), offset_(0) {}
    StepFunction(std::vector<Integer> table, Integer slope, Integer offset);

    static StepFunction constant(Integer v) { return {{}, 0, std::move(v)}; }
    static StepFunction affine(Integer slope, Integer offset) {
        return {{}, std::move(slope), std::move(offset)};
    }
    static StepFunction identity() { return affine(1, 0); }

    Integer operator()(const Integer& j) const;
    index_t tail_start() const { return static_cast<index_t>(table_.size()); }
    const Integer& slope() const { return slope_; }
    const Integer& offset() const { return offset_; }
    const std::vector<Integer>& table() const { return table_; }

    bool nonnegative() const;  // f(j) >= 0 for every j
    StepFunction plus(const Integer& c) const;

    static StepFunction pointwise_max(const StepFunction& f, const StepFunction& g);
    static StepFunction pointwise_min(const StepFunction& f, const StepFunction& g);

    /// Pointwise f <= g everywhere.
    static bool leq(const StepFunction& f, const StepFunction& g);
    bool operator==(const StepFunction& o) const;  // extensional equality

    /// Largest j with f(j) <= c, when the set {j : f(j) <= c} is finite;
    /// nullopt when it is infinite or empty (distinguished by `empty_out`).
    struct ThresholdSet {
        bool infinite = false;        // cofinite-from-some-point
        index_t from = 0;             // when infinite: contains all j >= from
        std::vector<index_t> finite;  // explicit members below the tail
    };
    ThresholdSet leq_set(const Integer& c) const;  // { j : f(j) <= c }
    ThresholdSet geq_set(const Integer& c) const;  // { j : f(j) >= c }

    std::string to_string() const;

private:
    std::vector<Integer> table_;
    Integer slope_, offset_;

    void shrink();  // fold table entries that already match the tail
    Integer tail_at(const Integer& j) const { return slope_ * j + offset_; }
};

}  // namespace thom::ideals
