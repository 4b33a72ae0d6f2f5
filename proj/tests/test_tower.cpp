#include "doctest.h"
#include "thom/tower.hpp"

using namespace thom;
using namespace thom::tow;

namespace {

ComplexPtr point() {
    return std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}}));
}

ComplexPtr circle() {
    return std::make_shared<CellComplex>(CellComplex::build({{"v", 0, {}}, {"e", 1, {}}}));
}

ComplexPtr torus() {
    return std::make_shared<CellComplex>(
        CellComplex::build({{"v", 0, {}}, {"a", 1, {}}, {"b", 1, {}}, {"f", 2, {}}}));
}

Tower constant_tower(ComplexPtr k, index_t n) {
    Tower t;
    for (index_t i = 0; i < n; ++i) t.levels.push_back(k);
    for (index_t i = 0; i + 1 < n; ++i) t.bondings.push_back(ChainMap::identity(k));
    t.tail = TailPolicy::constant(0);
    return t;
}

Tower solenoid_tower(long m, index_t n) {
    auto s1 = circle();
    Tower t;
    for (index_t i = 0; i < n; ++i) t.levels.push_back(s1);
    for (index_t i = 0; i + 1 < n; ++i) {
        ChainMap f(s1, s1);
        f.set_image(*s1->find("v"), {{*s1->find("v"), 1}});
        f.set_image(*s1->find("e"), {{*s1->find("e"), m}});
        t.bondings.push_back(std::move(f));
    }
    t.tail = TailPolicy::periodic(0, 1);
    return t;
}

}  // namespace

TEST_CASE("telescope of the constant point tower is contractible") {
    Tower t = constant_tower(point(), 4);
    t.validate();
    Telescope tel = build_telescope(t, 3);
    CHECK(tel.complex->validate().ok());
    CHECK(tel.complex->size() == 7);  // 4 vertices + 3 prisms
    CHECK(tel.complex->homology(0) == alg::CanonicalGroup::free(1));
    CHECK(tel.complex->homology(1).trivial());
    REQUIRE(tel.collapse.has_value());
    tel.collapse->require_chain_map();
}

TEST_CASE("telescope of the constant circle tower retracts to one level") {
    Tower t = constant_tower(circle(), 3);
    Telescope tel = build_telescope(t, 2);
    CHECK(tel.complex->validate().ok());
    CHECK(tel.complex->homology(1) == alg::CanonicalGroup::free(1));
    CHECK(tel.complex->homology(0) == alg::CanonicalGroup::free(1));
    CHECK(tel.collapse->induced(1).is_isomorphism());
}

TEST_CASE("solenoid telescope truncation retracts to level 0") {
    Tower t = solenoid_tower(2, 4);
    Telescope tel = build_telescope(t, 3);
    CHECK(tel.complex->validate().ok());
    CHECK(tel.complex->homology(1) == alg::CanonicalGroup::free(1));
    CHECK(tel.collapse->induced(1).is_isomorphism());
}

TEST_CASE("telescope depth restriction is the deeper telescope truncated") {
    Tower t = solenoid_tower(3, 4);
    Telescope small = build_telescope(t, 1);
    Telescope big = build_telescope(t, 3);
    // every generator of the small telescope appears in the big one
    for (index_t g = 0; g < small.complex->size(); ++g)
        CHECK(big.complex->find(small.complex->cell(g).id).has_value());
    CHECK(small.complex->size() ==
          2 * (t.level(0)->size()) + t.level(1)->size());
}

TEST_CASE("tail policies synthesize levels") {
    Tower t = solenoid_tower(2, 3);
    CHECK(t.level(10) == t.level(0));
    Telescope tel = build_telescope(t, 6);  // deeper than stored
    CHECK(tel.complex->validate().ok());
    Tower trunc = solenoid_tower(2, 3);
    trunc.tail = TailPolicy::truncated();
    CHECK_THROWS_AS(build_telescope(trunc, 6), DepthUnavailable);
}

TEST_CASE("coned telescope models the quotient by everything above") {
    // constant point tower: the coned ray is acyclic in all degrees
    Tower t = constant_tower(point(), 3);
    Telescope d = coned_telescope(t, 2);
    CHECK(d.complex->validate().ok());
    for (int n = 0; n <= 2; ++n) CHECK(d.complex->homology(n).trivial());
    // relative to level 0 the homology is H_{i} shifted up by one
    cx::PairPresentation rel(d.complex, cx::Subcomplex(d.complex, d.level_zero_cells()));
    CHECK(rel.relative_homology(1) == alg::CanonicalGroup::free(1));
    CHECK(rel.relative_homology(0).trivial());
    CHECK(rel.relative_homology(2).trivial());
}

TEST_CASE("homology towers carry induced bondings and tails") {
    Tower t = solenoid_tower(2, 3);
    alg::GroupTower h1 = t.homology_tower(1);
    CHECK(h1.levels.size() == 3);
    CHECK(h1.bondings[0].matrix.at(0, 0) == 2);
    auto lim = alg::tower_lim(h1);
    CHECK(lim.value.trivial());
    auto lim1 = alg::tower_lim1(h1);
    CHECK(lim1.tag == alg::GroupResult::Tag::AdicQuotient);

    alg::GroupTower h1co = t.cohomology_tower(1);
    auto colim = alg::tower_colim(h1co);
    CHECK(colim.tag == alg::GroupResult::Tag::Localization);
    CHECK(colim.param == 2);
}
