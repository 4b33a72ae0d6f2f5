#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "thom/step_function.hpp"

namespace thom::ideals {

/// Ultimately periodic subset of N: explicit bits below `start`, then a
/// repeating word. Closed under complement, union and intersection, with
/// every cardinality question decidable.
class NatSet {
public:
    NatSet() : word_{false} {}

    static NatSet empty() { return {}; }
    static NatSet all();
    static NatSet finite(const std::vector<Integer>& xs);
    static NatSet from(index_t a);                      // { x : x >= a }
    static NatSet range(index_t a, index_t b);          // { a..b }
    static NatSet cofinite(const std::vector<Integer>& excluded);
    /// Nothing below `start`, then the word repeated.
    static NatSet periodic(index_t start, std::vector<bool> word);

    bool contains(const Integer& x) const;
    NatSet complement() const;
    NatSet intersect(const NatSet& o) const;
    NatSet unite(const NatSet& o) const;
    NatSet minus(const NatSet& o) const { return intersect(o.complement()); }

    bool is_empty() const;
    bool is_finite() const;
    bool subset_of(const NatSet& o) const { return minus(o).is_empty(); }
    bool operator==(const NatSet& o) const { return subset_of(o) && o.subset_of(*this); }

    std::optional<Integer> min() const;                  // nonempty only
    std::optional<Integer> max() const;                  // finite nonempty only
    std::vector<Integer> elements() const;               // finite only
    index_t count_finite() const;                        // finite only
    index_t tail_from() const { return start_; }
    index_t period_hint() const { return static_cast<index_t>(word_.size()); }

    std::string to_string() const;

private:
    index_t start_ = 0;
    std::vector<bool> prefix_;  // size start_
    std::vector<bool> word_;    // nonempty

    NatSet(index_t start, std::vector<bool> prefix, std::vector<bool> word);
    bool word_all(bool v) const;
    friend NatSet aligned_op(const NatSet& a, const NatSet& b, bool (*op)(bool, bool));
};

/// One region of N^2 (pairs (i, j), i the row, j the column): columns from an
/// ultimately periodic set, rows an interval [lo(j), hi(j)] with step-function
/// bounds (hi absent = unbounded), minus finitely many excluded rows.
struct Band {
    NatSet cols = NatSet::all();
    StepFunction lo;                  // row lower bound, >= 0 where it matters
    std::optional<StepFunction> hi;   // row upper bound; may dip below lo
    std::set<Integer> excluded_rows;

    bool contains(const Integer& i, const Integer& j) const;
    /// Columns whose row set is nonempty.
    NatSet effective_cols() const;
    bool is_empty() const { return effective_cols().is_empty(); }
    bool is_finite() const;
    /// All rows finite? (equivalently: no single row meets the band in an
    /// infinite column set)
    bool rows_all_finite() const;
};

/// Finite union of bands over N^2, or an ultimately periodic subset of N.
/// Exactly the closure of the four presentation kinds (finite set, rectangle,
/// under-graph, above-graph) under union, intersection and complement.
class SemilinearSet {
public:
    SemilinearSet() : dim_(2) {}
    explicit SemilinearSet(NatSet line) : dim_(1), line_(std::move(line)) {}
    explicit SemilinearSet(std::vector<Band> bands);

    static SemilinearSet empty2() { return SemilinearSet(std::vector<Band>{}); }
    static SemilinearSet universe2();
    static SemilinearSet finite_points(const std::vector<std::pair<Integer, Integer>>& pts);
    static SemilinearSet rectangle(NatSet rows, NatSet cols);
    static SemilinearSet under_graph(const StepFunction& f);  // { (i,j) : i <= f(j) }
    static SemilinearSet above_graph(const StepFunction& f);  // { (i,j) : i >= f(j) }

    int dim() const { return dim_; }
    const NatSet& line() const;
    const std::vector<Band>& bands() const;

    bool contains(const Integer& i, const Integer& j) const;  // dim 2
    bool contains(const Integer& x) const;                    // dim 1

    SemilinearSet unite(const SemilinearSet& o) const;
    SemilinearSet intersect(const SemilinearSet& o) const;
    SemilinearSet complement() const;
    SemilinearSet minus(const SemilinearSet& o) const { return intersect(o.complement()); }

    bool is_empty() const;
    bool is_finite() const;
    bool subset_of(const SemilinearSet& o) const { return minus(o).is_empty(); }
    bool same_set(const SemilinearSet& o) const { return subset_of(o) && o.subset_of(*this); }

    /// Exact point list; throws when infinite.
    std::vector<std::pair<Integer, Integer>> points() const;
    index_t count_finite() const { return static_cast<index_t>(points().size()); }

    /// Drop empty bands (cheap canonicalization applied by the ops).
    SemilinearSet& prune();

    // -- structure queries used by the ideal rules (dim 2) --
    NatSet column_support() const;                // { j : column j nonempty }
    bool columns_all_finite() const;              // every column a finite set
    std::optional<StepFunction> column_max_envelope() const;  // f with S ⊆ UnderGraph(f)
    bool rows_all_finite() const;
    std::optional<StepFunction> row_max_envelope() const;     // g with S ⊆ {(i,j): j <= g(i)}
    std::optional<Integer> row_sup() const;       // sup of i-values, nullopt = unbounded
    /// Lower envelope used to refute bounded-column membership: a step f with
    /// one point of S under f in every nonempty column.
    StepFunction min_row_cover() const;

    std::string to_string() const;

private:
    int dim_;
    NatSet line_;
    std::vector<Band> bands_;
    void require_dim(int d) const;
};

}  // namespace thom::ideals
