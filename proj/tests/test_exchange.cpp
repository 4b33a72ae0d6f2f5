#include <random>

#include "doctest.h"
#include "thom/exchange.hpp"

using namespace thom;
using namespace thom::kd;
using namespace thom::ideals;

namespace {

GroupFamily times2_family() {
    alg::GroupPresentation z(1);
    alg::IntMatrix two(1, 1);
    two.set(0, 0, 2);
    alg::GroupTower t;
    t.levels = {z, z, z};
    t.bondings = {alg::GroupMap(z, z, two), alg::GroupMap(z, z, two)};
    t.tail = alg::TailPolicy::periodic(0, 1);
    t.reversed = true;
    return GroupFamily{1, alg::CanonicalGroup::free(1), std::move(t)};
}

GroupFamily identity_family() {
    alg::GroupPresentation z(1);
    alg::GroupTower t;
    t.levels = {z, z};
    t.bondings = {alg::GroupMap::identity(z)};
    t.tail = alg::TailPolicy::constant(0);
    t.reversed = true;
    return GroupFamily{1, alg::CanonicalGroup::free(1), std::move(t)};
}

ExchangeSample sample_of(const GroupFamily& fam, StepFunction level, NatSet region, long value) {
    return {std::move(level),
            PatternElement::piece(fam, SemilinearSet(std::move(region)), {Integer(value)})};
}

}  // namespace

TEST_CASE("identity towers: phi is the identity on patterns") {
    auto fam = identity_family();
    auto a = sample_of(fam, StepFunction::constant(0), NatSet::all(), 3);
    auto b = sample_of(fam, StepFunction::constant(1), NatSet::all(), 3);
    auto c = sample_of(fam, StepFunction::constant(0), NatSet::all(), 4);
    CHECK(phi_equal(fam, a, b));  // identity bonding: same value at any level
    CHECK_FALSE(phi_equal(fam, a, c));
    auto rep = exchange_iso_check(fam, {a, b, c});
    CHECK(rep.pass());
}

TEST_CASE("x2 towers: class of 1 at level f equals class of 2 at level f+1") {
    auto fam = times2_family();
    auto one = sample_of(fam, StepFunction::identity(), NatSet::all(), 1);
    auto two = sample_of(fam, StepFunction::identity().plus(1), NatSet::all(), 2);
    CHECK(phi_equal(fam, one, two));
    auto three = sample_of(fam, StepFunction::identity().plus(1), NatSet::all(), 3);
    CHECK_FALSE(phi_equal(fam, one, three));
    // distinct level slopes with nonzero values cannot agree everywhere
    auto slope = sample_of(fam, StepFunction::affine(2, 0), NatSet::all(), 1);
    CHECK_FALSE(phi_equal(fam, one, slope));
}

TEST_CASE("push_sample is the canonical second representative") {
    auto fam = times2_family();
    auto s = sample_of(fam, StepFunction::constant(2), NatSet::from(1), 5);
    auto up = push_sample(fam, s, StepFunction::constant(3));
    CHECK(up.element.value_at(Integer(4))[0] == 10);
    CHECK(up.element.value_at(Integer(0))[0] == 0);
    CHECK(phi_equal(fam, s, up));
}

TEST_CASE("exchange report on twenty x2 samples") {
    auto fam = times2_family();
    std::mt19937_64 rng(20250101u);
    std::vector<ExchangeSample> samples;
    for (int k = 0; k < 20; ++k) {
        StepFunction level = (k % 3 == 0) ? StepFunction::identity()
                             : (k % 3 == 1)
                                 ? StepFunction::constant(static_cast<long>(rng() % 4))
                                 : StepFunction({1, 3}, 1, static_cast<long>(rng() % 3));
        NatSet region = (k % 2) ? NatSet::all() : NatSet::from(static_cast<index_t>(rng() % 5));
        samples.push_back(sample_of(fam, level, region, static_cast<long>(rng() % 9) - 4));
    }
    auto rep = exchange_iso_check(fam, samples);
    CHECK(rep.samples == 20);
    CHECK(rep.pairs_compared == 190);
    CHECK(rep.pass());
}

TEST_CASE("towers with a prefix accept only levels reaching the periodic block") {
    alg::GroupPresentation z(1);
    alg::IntMatrix two(1, 1), three(1, 1);
    two.set(0, 0, 2);
    three.set(0, 0, 3);
    alg::GroupTower t;
    t.levels = {z, z, z, z};
    t.bondings = {alg::GroupMap(z, z, three), alg::GroupMap(z, z, two),
                  alg::GroupMap(z, z, two)};
    t.tail = alg::TailPolicy::periodic(1, 1);
    t.reversed = true;
    GroupFamily fam{1, alg::CanonicalGroup::free(1), std::move(t)};
    // constant level 0 sits below the periodic block forever: rejected
    auto low = sample_of(fam, StepFunction::constant(0), NatSet::all(), 1);
    CHECK_THROWS_AS(phi_equal(fam, low, low), alg::UnsupportedBonding);
    // levels at or above the block work, prefix pushes included
    auto ok = sample_of(fam, StepFunction::constant(1), NatSet::all(), 1);
    auto up = push_sample(fam, ok, StepFunction::constant(2));
    CHECK(up.element.value_at(Integer(0))[0] == 2);
    CHECK(phi_equal(fam, ok, up));
    // a growing level function crosses into the block and is accepted
    auto grow = sample_of(fam, StepFunction::identity(), NatSet::all(), 1);
    CHECK(phi_equal(fam, grow, push_sample(fam, grow, StepFunction::identity().plus(1))));
}

TEST_CASE("unsupported towers are rejected") {
    alg::GroupPresentation z2(2);
    alg::IntMatrix shear(2, 2);
    shear.set(0, 0, 1);
    shear.set(0, 1, 1);
    shear.set(1, 1, 1);
    alg::GroupTower t;
    t.levels = {z2, z2};
    t.bondings = {alg::GroupMap(z2, z2, shear)};
    t.tail = alg::TailPolicy::periodic(0, 1);
    t.reversed = true;
    GroupFamily fam{1, alg::CanonicalGroup::free(2), std::move(t)};
    auto s = ExchangeSample{StepFunction::constant(0),
                            PatternElement::piece(fam, SemilinearSet(NatSet::all()), {1, 0})};
    CHECK_THROWS_AS(exchange_iso_check(fam, {s}), alg::UnsupportedBonding);
}
