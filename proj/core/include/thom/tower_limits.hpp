#pragma once

#include <string>
#include <vector>

#include "thom/group.hpp"

namespace thom::alg {

enum class TailKind { TruncatedUnknown, EventuallyConstant, EventuallyPeriodic };

struct TailPolicy {
    TailKind kind = TailKind::TruncatedUnknown;
    index_t from = 0;
    index_t period = 1;

    static TailPolicy truncated() { return {TailKind::TruncatedUnknown, 0, 1}; }
    static TailPolicy constant(index_t from) { return {TailKind::EventuallyConstant, from, 1}; }
    static TailPolicy periodic(index_t from, index_t period) {
        return {TailKind::EventuallyPeriodic, from, period};
    }
};

struct UnsupportedBonding : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DepthUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inverse (or, when `reversed`, direct) sequence of finitely generated
/// abelian groups with a declared tail.
struct GroupTower {
    std::vector<GroupPresentation> levels;
    std::vector<GroupMap> bondings;  // inverse: [i] maps level i+1 -> i; direct: i -> i+1
    TailPolicy tail;
    bool reversed = false;

    index_t stored_levels() const { return static_cast<index_t>(levels.size()); }
    const GroupPresentation& level(index_t i) const;  // tail may synthesize
    GroupMap bonding(index_t i) const;
    void validate() const;
};

/// Either an exact canonical group or a symbolic descriptor for the values
/// lim/lim1/colim take outside the finitely generated world.
struct GroupResult {
    enum class Tag { Exact, AdicQuotient, CountableProduct, Localization, SymbolicNonzero, Undetermined };

    Tag tag = Tag::Exact;
    CanonicalGroup value;              // Exact; factor for CountableProduct
    Integer param = 0;                 // m for AdicQuotient / Localization(Z, m)
    std::string note;
    bool mittag_leffler = true;        // meaningful on lim1 results
    std::vector<CanonicalGroup> truncation_data;

    bool exact_zero() const { return tag == Tag::Exact && value.trivial(); }
    bool operator==(const GroupResult& o) const {
        return tag == o.tag && value == o.value && param == o.param;
    }
    std::string to_string() const;

    static GroupResult exact(CanonicalGroup g) { return {Tag::Exact, std::move(g), 0, "", true, {}}; }
    static GroupResult adic(Integer m);
    static GroupResult localization(Integer m);
    static GroupResult product(CanonicalGroup factor);
    static GroupResult symbolic(std::string note);
    static GroupResult undetermined(std::vector<CanonicalGroup> data, std::string note = "");
};

/// Threads of an inverse tower. Exact for EventuallyConstant tails and for
/// EventuallyPeriodic tails whose composite bonding is block-diagonal with
/// identity / zero / multiplication / permutation blocks on Z summands and
/// arbitrary blocks on torsion.
GroupResult tower_lim(const GroupTower& t);

/// Derived limit. Exact(0) iff images stabilize (Mittag-Leffler); symbolic
/// otherwise, never materialized elementwise.
GroupResult tower_lim1(const GroupTower& t);

bool tower_images_stabilize(const GroupTower& t);

/// Direct limit with an element calculus: elements are (level, value) pairs,
/// equality is decided by pushing to a common level and testing eventual
/// vanishing of the difference.
class Colimit {
public:
    explicit Colimit(GroupTower direct);

    struct Elem {
        index_t level = 0;
        std::vector<Integer> value;
    };

    Elem element(index_t level, std::vector<Integer> value) const;
    Elem push(const Elem& e, index_t to_level) const;
    bool is_zero(const Elem& e) const;
    bool equal(const Elem& a, const Elem& b) const;
    index_t rational_rank() const;
    const GroupResult& group() const { return result_; }
    const GroupTower& tower() const { return tower_; }

private:
    struct Detail;
    GroupTower tower_;
    GroupResult result_;
    index_t rational_rank_ = 0;
    std::shared_ptr<const Detail> detail_;
};

GroupResult tower_colim(const GroupTower& direct);

}  // namespace thom::alg
